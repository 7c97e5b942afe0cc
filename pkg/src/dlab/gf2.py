"""GF(2) bit-mask linear algebra and the exact combinatorial kernels.

Vectors over GF(2) are plain Python ints used as bit-masks, so XOR is
vector addition.  Everything here is exact: integers are unbounded and
the only non-integer values are `fractions.Fraction` instances.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError

# Labels are bit-masks over the run-index space; desk scale tops out
# around 2^20 runs, so a hard 64-bit cap is comfortable.
MAX_WIDTH = 64


def gf2_rank(vectors: Iterable[int], width: int) -> int:
    """Rank over GF(2) of the given bit-mask vectors."""
    if width < 0 or width > MAX_WIDTH:
        raise InputError(f"width {width} outside 0..{MAX_WIDTH}")
    pivots: list[int] = []
    for v in vectors:
        if v < 0 or v >> width:
            raise InputError(f"vector {v:#x} does not fit in width {width}")
        for p in pivots:
            v = min(v, v ^ p)
        if v:
            pivots.append(v)
    return len(pivots)


def gf2_reduce_basis(vectors: Iterable[int]) -> list[int]:
    """Greedy row-reduced basis of the span of the given bit-masks."""
    pivots: list[int] = []
    for v in vectors:
        for p in pivots:
            v = min(v, v ^ p)
        if v:
            pivots.append(v)
    return pivots


def binomial(n: int, r: int) -> int:
    """C(n, r) with the convention C(n, r) = 0 for r < 0 or r > n."""
    if n < 0:
        raise InputError(f"binomial requires n >= 0, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


@lru_cache(maxsize=None)
def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind S(k, j)."""
    if k < 0 or j < 0:
        raise InputError(f"stirling2 requires k, j >= 0, got ({k}, {j})")
    if k == j:
        return 1
    if j == 0 or j > k:
        return 0
    return j * stirling2(k - 1, j) + stirling2(k - 1, j - 1)


@lru_cache(maxsize=None)
def q_coefficient(k: int, i: int, n: int) -> Fraction:
    """Power-moment coefficient Q_k(i; n).

    Q_k(i; n) = (-1)^i * sum_{j=0..k} j! S(k,j) 2^{-j} C(n-i, j-i).
    Defined for k >= 0; Q_0(i; n) is 1 for i = 0 and 0 otherwise.
    """
    if k < 0 or i < 0 or n < 0:
        raise InputError(f"q_coefficient requires k, i, n >= 0, got ({k}, {i}, {n})")
    total = Fraction(0)
    for j in range(i, k + 1):
        c = binomial(n - i, j - i) if n - i >= 0 else 0
        if c:
            total += Fraction(math.factorial(j) * stirling2(k, j) * c, 1 << j)
    return -total if i % 2 else total


@lru_cache(maxsize=None)
def krawtchouk(i: int, j: int, n: int) -> int:
    """Binary Krawtchouk value K_i(j; n) = sum_s (-1)^s C(j,s) C(n-j, i-s)."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise InputError(f"krawtchouk requires 0 <= i, j <= n, got ({i}, {j}, {n})")
    total = 0
    for s in range(max(0, i - (n - j)), min(i, j) + 1):
        term = math.comb(j, s) * math.comb(n - j, i - s)
        total += -term if s % 2 else term
    return total


def xor_subset_counts(values: Sequence[int], size: int, space: int) -> list[int]:
    """Count the `size`-subsets of `values` by their XOR, over 0..space-1.

    Returns a list c with c[v] = number of `size`-subsets whose XOR is v.
    Values must lie in 0..space-1.
    """
    counts = [0] * space
    if size == 0:
        counts[0] = 1
        return counts
    if size > len(values):
        return counts

    def rec(start: int, left: int, acc: int) -> None:
        if left == 0:
            counts[acc] += 1
            return
        for idx in range(start, len(values) - left + 1):
            rec(idx + 1, left - 1, acc ^ values[idx])

    rec(0, size, 0)
    return counts


def xor_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """XOR (dyadic) convolution of two integer count vectors."""
    out = [0] * len(a)
    for x, ax in enumerate(a):
        if not ax:
            continue
        for y, by in enumerate(b):
            if by:
                out[x ^ y] += ax * by
    return out
