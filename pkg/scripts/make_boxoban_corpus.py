#!/usr/bin/env python3
"""Regenerate the box-pushing corpus files under src/gridhack/data/boxoban/.

Levels are built by placing boxes on their goals and scrambling with random
box *pulls* interleaved with player walks.  Replaying the reversed move list
as pushes restores the solved state, so every emitted level is solvable; the
script asserts that replay before writing.  Output is deterministic for a
given split name and master seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gridhack.rng import Rng, derive_seed, text_salt

SIZE = 10
N_BOXES = 4
DIRS = ((1, 0), (-1, 0), (0, 1), (0, -1))

# split -> (interior wall count range, scramble steps, min boxes off goal)
SPLITS = {
    "unfiltered": ((3, 6), 30, 1),
    "medium": ((6, 10), 60, 2),
    "hard": ((8, 14), 120, 3),
}


def _connected(floor: set) -> bool:
    seen = {next(iter(floor))}
    queue = list(seen)
    while queue:
        x, y = queue.pop()
        for dx, dy in DIRS:
            n = (x + dx, y + dy)
            if n in floor and n not in seen:
                seen.add(n)
                queue.append(n)
    return len(seen) == len(floor)


def _gen_level(rng: Rng, walls_range, steps, min_off):
    interior = [(x, y) for y in range(1, SIZE - 1) for x in range(1, SIZE - 1)]
    n_walls = rng.randint(*walls_range)
    cells = interior[:]
    rng.shuffle(cells)
    walls = set(cells[:n_walls])
    floor = set(interior) - walls
    if len(floor) < 5 * N_BOXES or not _connected(floor):
        return None

    spots = sorted(floor)
    rng.shuffle(spots)
    goals = set(spots[:N_BOXES])
    boxes = set(goals)
    player = spots[N_BOXES]

    moves = []  # ("walk", from, to) | ("pull", box_from, box_to, player_to)
    for _ in range(steps):
        pulls = []
        for bx, by in boxes:
            for dx, dy in DIRS:
                p = (bx + dx, by + dy)
                q = (bx + 2 * dx, by + 2 * dy)
                if (p == player and q in floor and q not in boxes):
                    pulls.append(((bx, by), p, q))
        if pulls and rng.chance(60):
            b, p, q = pulls[rng.randrange(len(pulls))]
            boxes.remove(b)
            boxes.add(p)
            moves.append(("pull", b, p, q))
            player = q
        else:
            opts = [(player[0] + dx, player[1] + dy) for dx, dy in DIRS]
            opts = [c for c in opts if c in floor and c not in boxes]
            if not opts:
                return None
            nxt = opts[rng.randrange(len(opts))]
            moves.append(("walk", player, nxt))
            player = nxt

    # every box must scramble fully off its goal: the text format has no
    # box-on-goal or player-on-goal characters
    if len(boxes - goals) < min_off or not boxes.isdisjoint(goals):
        return None
    if player in goals:
        return None

    # push-replay check: undoing the scramble must re-solve the level
    cb, cp = set(boxes), player
    for mv in reversed(moves):
        if mv[0] == "walk":
            assert cp == mv[2]
            cp = mv[1]
        else:
            b, p, q = mv[1], mv[2], mv[3]
            assert cp == q and p in cb and b not in cb
            cb.remove(p)
            cb.add(b)
            cp = p
    assert cb == goals

    rows = []
    for y in range(SIZE):
        row = []
        for x in range(SIZE):
            c = (x, y)
            if c not in floor and not (0 < x < SIZE - 1 and 0 < y < SIZE - 1):
                row.append("#")
            elif c in walls:
                row.append("#")
            elif c in boxes:
                row.append("$")
            elif c == player:
                row.append("@")
            elif c in goals:
                row.append(".")
            else:
                row.append(" ")
        rows.append("".join(row))
    return rows


def make_split(name: str, count: int, master_seed: int) -> str:
    walls_range, steps, min_off = SPLITS[name]
    out = []
    made = 0
    attempt = 0
    while made < count:
        rng = Rng(derive_seed(master_seed,
                              text_salt(f"boxoban:{name}:{attempt}")))
        attempt += 1
        rows = _gen_level(rng, walls_range, steps, min_off)
        if rows is None:
            continue
        out.append(f"; {made}")
        out.extend(rows)
        out.append("")
        made += 1
    return "\n".join(out) + "\n"


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=20240917)
    args = ap.parse_args()
    dest = (Path(__file__).resolve().parent.parent /
            "src" / "gridhack" / "data" / "boxoban")
    dest.mkdir(parents=True, exist_ok=True)
    for name in SPLITS:
        text = make_split(name, args.count, args.seed)
        (dest / f"{name}.txt").write_text(text)
        print(f"{name}: {args.count} levels")


if __name__ == "__main__":
    main()
