"""Exact binomial arithmetic and constrained composition enumeration.

Everything here works on Python ints, so there is no overflow regime to
worry about. ``block_sum`` is the enumerative workhorse behind the tabloid
counts: it sums products of binomials over compositions, and it is memoized
because the same (total, parts) pairs recur across many instances.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Sequence


def binom(a: int, b: int) -> int:
    """C(a, b), defined as 0 outside the Pascal triangle."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def multinomial(parts: Sequence[int]) -> int:
    """(sum parts)! / prod(part!) for non-negative parts."""
    total = 0
    result = 1
    for part in parts:
        if part < 0:
            return 0
        total += part
        result *= math.comb(total, part)
    return result


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def compositions(
    total: int, d: int, positive: bool = True, bound: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield the compositions of ``total`` into exactly ``d`` parts.

    Parts are >= 1 when ``positive`` (otherwise >= 0) and strictly below
    ``bound`` when one is given. Output is in lexicographic order.
    """
    if total < 0 or d < 0:
        return
    lo = 1 if positive else 0
    hi = total if bound is None else min(total, bound - 1)
    if hi < lo and d > 0:
        return

    prefix = [0] * d

    def rec(i: int, remaining: int) -> Iterator[tuple[int, ...]]:
        left = d - i
        if left == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        # parts after this one must be able to absorb the remainder
        first = max(lo, remaining - hi * (left - 1))
        last = min(hi, remaining - lo * (left - 1))
        for part in range(first, last + 1):
            prefix[i] = part
            yield from rec(i + 1, remaining - part)

    yield from rec(0, total)


@lru_cache(maxsize=None)
def _binom_row(a: int) -> tuple[int, ...]:
    return tuple(math.comb(a, i) for i in range(a + 1))


def block_sum(
    p: int, a0: int, total: int, d: int, with_tail: bool = False, bounded: bool = False
) -> int:
    """Sum of prod C(p, mu_i) over compositions mu of ``total``.

    The d block parts are positive (and < p when ``bounded``). With
    ``with_tail`` an extra positive part mu_{d+1} is drawn from the ``a0``
    fixed points and weighted by C(a0, mu_{d+1}).
    """
    if total < 0 or d < 0:
        return 0
    # a0 only matters for the tail; normalizing it keeps the cache small
    return _block_sum(p, a0 if with_tail else 0, total, d, with_tail, bounded)


@lru_cache(maxsize=None)
def _block_sum(p: int, a0: int, total: int, d: int, with_tail: bool, bounded: bool) -> int:
    if with_tail:
        acc = 0
        for tail in range(1, min(a0, total) + 1):
            acc += math.comb(a0, tail) * _block_sum(p, 0, total - tail, d, False, bounded)
        return acc
    if d == 0:
        return int(total == 0)
    # peel off the first part; the remaining d - 1 parts need at least d - 1
    row = _binom_row(p)
    top = min(total - d + 1, p - 1 if bounded else p)
    acc = 0
    for first in range(1, top + 1):
        acc += row[first] * _block_sum(p, 0, total - first, d - 1, False, bounded)
    return acc


def composition_product_sum(
    p: int, total: int, d: int, positive: bool = True
) -> int:
    """prod C(p, mu_i) summed over (possibly non-positive) compositions."""
    acc = 0
    # parts above p contribute C(p, part) = 0
    for mu in compositions(total, d, positive=positive, bound=p + 1):
        acc += math.prod(binom(p, part) for part in mu)
    return acc
