"""Brute-force ground truth for order endomorphisms of the finite chain 0 < ... < n-1."""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable

MAX_N = 8

FiniteMap = tuple  # values[i] is the image of i; non-decreasing


class LimitError(ValueError):
    pass


def _check_n(n: int):
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise LimitError(f"n must be in 1..{MAX_N}, got {n!r}")


def enumerate_On(n: int) -> list[FiniteMap]:
    """All monotone self-maps of the n-chain in lexicographic order."""
    _check_n(n)
    return list(itertools.combinations_with_replacement(range(n), n))


def identity(n: int) -> FiniteMap:
    return tuple(range(n))


def compose(f: FiniteMap, g: FiniteMap) -> FiniteMap:
    """x -> g(f(x))."""
    return tuple(g[x] for x in f)


def image_size(f: FiniteMap) -> int:
    return len(set(f))


def top_class(n: int) -> list[FiniteMap]:
    return [f for f in enumerate_On(n) if image_size(f) == n]


def closure(n: int, generators: Iterable[FiniteMap]) -> set[FiniteMap]:
    _check_n(n)
    gens = list(dict.fromkeys(tuple(g) for g in generators))
    seen = set(gens)
    queue = deque(gens)
    while queue:
        f = queue.popleft()
        for g in gens:
            for h in (compose(f, g), compose(g, f)):
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
    return seen


def image_law_holds(n: int) -> bool:
    """|Im(fg)| <= min(|Im f|, |Im g|) over all pairs in O_n."""
    maps = enumerate_On(n)
    return all(
        image_size(compose(f, g)) <= min(image_size(f), image_size(g))
        for f in maps
        for g in maps
    )


def report(n: int) -> dict:
    order = len(enumerate_On(n))
    top = top_class(n)
    closed = closure(n, top)
    return {
        "n": n,
        "order": order,
        "top_class_size": len(top),
        "closure_size": len(closed),
        "generated": len(closed) == order,
    }
