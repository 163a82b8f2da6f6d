"""Search for transversal subcollections through a point.

The problem is phrased over an abstract compatibility tensor: ``ok(i, j, k)``
says that lines (or curves) i, j, k of families 1, 2, 3 admit spanning
directions. A collection (S1, S2, S3) is transversal when every triple in
S1 x S2 x S3 is ok. Subsets of a transversal collection are transversal, so
it suffices to look for sets of size exactly (N1, N2, N3).
"""
from __future__ import annotations

from itertools import product
from typing import Callable, List, Sequence, Tuple

from .errors import SearchBudgetExceeded

DEFAULT_EXACT_LIMIT = 12


def ok_masks(sizes: Sequence[int], ok: Callable[[int, int, int], bool]) -> List[List[int]]:
    """``masks[i][j]`` has bit k set iff ok(i, j, k)."""
    a, b, c = sizes
    masks = []
    for i in range(a):
        row = []
        for j in range(b):
            m = 0
            for k in range(c):
                if ok(i, j, k):
                    m |= 1 << k
            row.append(m)
        masks.append(row)
    return masks


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _exhaustive(masks, sizes, q) -> bool:
    a, b, c = sizes
    n1, n2, n3 = q
    full = (1 << c) - 1

    def pick2(rows, cands, start, count, mask):
        if count == n2:
            return True
        for pos in range(start, len(cands) - (n2 - count) + 1):
            m = mask & rows[cands[pos]]
            if _popcount(m) >= n3 and pick2(rows, cands, pos + 1, count + 1, m):
                return True
        return False

    def pick1(start, count, rows):
        cands = [j for j in range(b) if _popcount(rows[j]) >= n3]
        if len(cands) < n2:
            return False
        if count == n1:
            return pick2(rows, cands, 0, 0, full)
        for i in range(start, a - (n1 - count) + 1):
            nrows = [r & masks[i][j] for j, r in enumerate(rows)]
            if pick1(i + 1, count + 1, nrows):
                return True
        return False

    return pick1(0, 0, [full] * b)


def _greedy(masks, sizes, q) -> bool:
    """Grow a transversal collection one line at a time; True is always sound."""
    chosen = [[], [], []]
    alive = [set(range(n)) for n in sizes]

    def consistent(f, x):
        trial = [list(s) for s in chosen]
        trial[f].append(x)
        for i in trial[0]:
            for j in trial[1]:
                row = masks[i][j]
                for k in trial[2]:
                    if not (row >> k) & 1:
                        return False
        return True

    while True:
        deficits = [q[f] - len(chosen[f]) for f in range(3)]
        if max(deficits) <= 0:
            return True
        f = max(range(3), key=lambda g: (deficits[g], -g))
        best, best_score = None, -1
        for x in sorted(alive[f]):
            if not consistent(f, x):
                continue
            chosen[f].append(x)
            score = sum(1 for g in range(3) for y in alive[g] if g != f and consistent(g, y))
            chosen[f].pop()
            if score > best_score:
                best, best_score = x, score
        if best is None:
            return False
        chosen[f].append(best)
        alive[f].discard(best)
        for g in range(3):
            alive[g] = {y for y in alive[g] if consistent(g, y)}


def has_transversal(sizes: Tuple[int, int, int], ok: Callable[[int, int, int], bool],
                    q: Tuple[int, int, int], limit: int = DEFAULT_EXACT_LIMIT,
                    exact: bool = True) -> bool:
    """Decide whether a transversal collection of sizes >= q exists.

    Exhaustive when every family has at most ``limit`` members. Beyond that a
    greedy search runs; its "True" is trusted, and a failure raises
    :class:`SearchBudgetExceeded` in exact mode or returns False otherwise.
    """
    if any(n > s for n, s in zip(q, sizes)):
        return False
    if tuple(q) == (1, 1, 1):
        return any(ok(i, j, k) for i, j, k in product(*(range(s) for s in sizes)))
    masks = ok_masks(sizes, ok)
    if max(sizes) <= limit:
        return _exhaustive(masks, sizes, q)
    if _greedy(masks, sizes, q):
        return True
    if exact:
        raise SearchBudgetExceeded(
            f"through-counts {tuple(sizes)} exceed the exhaustive limit {limit}")
    return False
