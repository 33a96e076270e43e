"""Inspectable records of what the checker did at each rewrite site."""

from __future__ import annotations

from ._record import Frozen, Record


class ConditionSite(Frozen):
    """A branch or loop condition: ``pc_inner`` is ``pc_outer`` joined with ``cond_label``."""

    __slots__ = ("line", "kind", "cond_label", "pc_outer", "pc_inner")  # kind: if | while | for


class AssignSite(Frozen):
    __slots__ = ("line", "target", "target_label", "pc", "accepted")


class CallSite(Frozen):
    __slots__ = ("line", "callee", "accepted")


class PcEvent(Frozen):
    """Entering or leaving a branch scope: ``pc`` is the witness label in force afterwards."""

    __slots__ = ("kind", "line", "pc")  # kind: enter | exit


class BlockRewritePlan(Record):
    __slots__ = ("label", "line", "end_line", "conditions", "assignments", "calls", "events")
    _defaults = {"end_line": 0}
    _factories = {"conditions": list, "assignments": list, "calls": list, "events": list}
    __hash__ = None


class CallRewriteRecord(Frozen):
    """One fcall/mcall/chain site.  ``kind`` is function, method-chain or field-access."""

    __slots__ = ("kind", "line", "callee", "root_label", "arg_labels", "result_label")
