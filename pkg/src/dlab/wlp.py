"""Wordlength patterns, resolution, power-moment identities and orders.

The full pattern (A_0, A_1, ..., A_n) is computed through the dual
weight-distribution transform: with B the weight distribution of the
2^r distinct row-codewords of the design (r = rank), A_i is
sum_j B_j K_i(j; n) / 2^r.  The division must be exact; anything else
is an internal fault, never rounded away.  A direct subset-enumeration
path serves as an independent oracle for the transform.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .design import Design, codeword_weight_distribution, moment
from .errors import CapacityError, ConsistencyError, VerificationError
from .gf2 import binomial, krawtchouk, q_coefficient

ENUM_BUDGET = 20_000_000

WordlengthPattern = tuple[int, ...]


def wordlength_pattern(d: Design) -> WordlengthPattern:
    """Full exact pattern (A_0, A_1, ..., A_n); A_0 is always 1."""
    counts, r = codeword_weight_distribution(d)
    size = 1 << r
    pattern = []
    for i in range(d.n + 1):
        total = sum(c * krawtchouk(i, j, d.n) for j, c in enumerate(counts) if c)
        a, rem = divmod(total, size)
        if rem or a < 0:
            raise ConsistencyError(
                f"transform produced non-integral or negative A_{i} = {total}/{size}"
            )
        pattern.append(a)
    if pattern[0] != 1:
        raise ConsistencyError(f"transform produced A_0 = {pattern[0]}")
    return tuple(pattern)


def wordlength_pattern_enum(
    d: Design, max_len: int, budget: int = ENUM_BUDGET
) -> tuple[int, ...]:
    """(A_1, ..., A_max_len) by direct subset enumeration."""
    if max_len > d.n:
        raise CapacityError(f"max_len {max_len} exceeds {d.n} columns")
    work = sum(binomial(d.n, i) for i in range(1, max_len + 1))
    if work > budget:
        raise CapacityError(f"enumeration of {work} subsets exceeds budget {budget}")
    out = []
    for i in range(1, max_len + 1):
        count = 0
        for comb in combinations(d.labels, i):
            acc = 0
            for lab in comb:
                acc ^= lab
            if acc == 0:
                count += 1
        out.append(count)
    return tuple(out)


def resolution(d: Design) -> float:
    """Length of the shortest defining word; math.inf if there is none."""
    pattern = wordlength_pattern(d)
    for i in range(1, len(pattern)):
        if pattern[i]:
            return i
    return math.inf


def pless_rhs(wlp: WordlengthPattern, runs: int, n: int, k: int) -> Fraction:
    """N * sum_{i=0}^{min(n,k)} Q_k(i; n) A_i -- the moment identity RHS."""
    total = Fraction(0)
    for i in range(0, min(n, k) + 1):
        a = wlp[i] if i < len(wlp) else 0
        if a:
            total += q_coefficient(k, i, n) * a
    return runs * total


def verify_pless(d: Design, k_max: int, raise_on_fail: bool = False) -> dict:
    """Check M_k = pless_rhs exactly for k = 1..k_max."""
    wlp = wordlength_pattern(d)
    rows = []
    ok = True
    for k in range(1, k_max + 1):
        lhs = Fraction(moment(d, k))
        rhs = pless_rhs(wlp, d.runs, d.n, k)
        match = lhs == rhs
        ok = ok and match
        rows.append({"k": k, "lhs": lhs, "rhs": rhs, "pass": match})
    report = {
        "check": "pless",
        "params": {"runs": d.runs, "n": d.n, "k_max": k_max},
        "rows": rows,
        "pass": ok,
    }
    if raise_on_fail and not ok:
        raise VerificationError(f"power-moment identity failed: {report}")
    return report


def ma_key(wlp: WordlengthPattern, length: int | None = None) -> tuple[int, ...]:
    """(A_1, A_2, ...) padded with zeros to `length` entries."""
    tail = wlp[1:]
    if length is not None:
        tail = tail[:length] + (0,) * (length - len(tail))
    return tuple(tail)


def ma_compare(a: WordlengthPattern, b: WordlengthPattern) -> int:
    """Aberration order: -1 if a is better (less aberrant), 0 if tied, 1 if worse."""
    n = max(len(a), len(b)) - 1
    ka, kb = ma_key(a, n), ma_key(b, n)
    return -1 if ka < kb else (1 if ka > kb else 0)


def seq_key(wlp: WordlengthPattern, depth: int | None = None) -> tuple[int, ...]:
    """Key (A_4, -A_5, A_6, -A_7, ...) for the complement ranking.

    Minimizing this lexicographically minimizes A_4, then maximizes A_5,
    then minimizes A_6, and so on, up to index `depth` (default: full
    pattern length).
    """
    if depth is None:
        depth = len(wlp) - 1
    key = []
    for i in range(4, depth + 1):
        a = wlp[i] if i < len(wlp) else 0
        key.append(-a if i % 2 else a)
    return tuple(key)


def seq_compare(a: WordlengthPattern, b: WordlengthPattern) -> int:
    """Order by seq_key with common padding; -1 means a wins."""
    depth = max(len(a), len(b)) - 1
    ka, kb = seq_key(a, depth), seq_key(b, depth)
    return -1 if ka < kb else (1 if ka > kb else 0)
