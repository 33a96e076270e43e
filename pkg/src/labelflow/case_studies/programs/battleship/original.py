"""Two-player Battleship (no labels).

Usage: python original.py SEED_A SEED_B
"""

from __future__ import annotations

import random
import sys

GRID_SIZE = 10
FLEET = (5, 4, 3, 3, 2)
Grid = list[list[bool]]


def empty_grid() -> Grid:
    return [[False] * GRID_SIZE for _ in range(GRID_SIZE)]


def random_placement(rng: random.Random, size: int, occupied: set) -> list:
    """Draw an in-bounds position for one ship, re-drawing on overlap."""
    while True:
        horizontal = rng.random() < 0.5
        row = rng.randrange(GRID_SIZE if horizontal else GRID_SIZE - size + 1)
        col = rng.randrange(GRID_SIZE - size + 1 if horizontal else GRID_SIZE)
        cells = [(row, col + i) if horizontal else (row + i, col) for i in range(size)]
        if not any(cell in occupied for cell in cells):
            return cells


def place_ship(grid: Grid, cells: list) -> None:
    for row, col in cells:
        grid[row][col] = True


def place_fleet(grid: Grid, rng: random.Random) -> None:
    occupied: set = set()
    for size in FLEET:
        cells = random_placement(rng, size, occupied)
        place_ship(grid, cells)
        occupied.update(cells)


def guess_order(rng: random.Random) -> list:
    cells = [(row, col) for row in range(GRID_SIZE) for col in range(GRID_SIZE)]
    rng.shuffle(cells)
    return cells


def check_guess(grid: Grid, row: int, col: int) -> bool:
    hit = grid[row][col]
    if hit:
        grid[row][col] = False
    return hit


def fleet_sunk(grid: Grid) -> bool:
    remaining = 0
    for row in range(GRID_SIZE):
        for col in range(GRID_SIZE):
            remaining = remaining + grid[row][col]
    return remaining == 0


def take_turn(turn: int, shooter: str, target: Grid, guess: tuple) -> bool:
    row, col = guess
    hit = check_guess(target, row, col)
    print(f"turn {turn}: {shooter} fires at ({row}, {col}): {'hit' if hit else 'miss'}")
    return hit and fleet_sunk(target)


def play(seed_a: int, seed_b: int) -> None:
    rng_a = random.Random(seed_a)
    rng_b = random.Random(seed_b)
    grid_a = empty_grid()
    grid_b = empty_grid()
    place_fleet(grid_a, rng_a)
    place_fleet(grid_b, rng_b)
    guesses_a = guess_order(rng_a)
    guesses_b = guess_order(rng_b)
    for turn in range(2 * GRID_SIZE * GRID_SIZE):
        index = turn // 2
        if turn % 2 == 0:
            won = take_turn(turn + 1, "A", grid_b, guesses_a[index])
        else:
            won = take_turn(turn + 1, "B", grid_a, guesses_b[index])
        if won:
            print(f"winner: {'A' if turn % 2 == 0 else 'B'} after {turn + 1} turns")
            return


if __name__ == "__main__":
    play(int(sys.argv[1]), int(sys.argv[2]))
