"""Identities linking the wordlength patterns of complement pairs.

For a design X built by doubling a base design t times, any split of
its columns into (D, D-bar) satisfies an exact linear relation between
the two wordlength patterns plus a correction term Delta_k that depends
only on the base design and the per-group frequencies of the deleted
columns.  This module evaluates Delta_k both from its row-weight
definition and from the family-specific closed forms, and carries the
frequency-space minimization results and bounds built on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .design import (
    Design,
    DoublingPedigree,
    double_iter,
    row_weights_prefix,
)
from .errors import InputError
from .gf2 import binomial, q_coefficient
from .wlp import WordlengthPattern, wordlength_pattern


@dataclass(frozen=True)
class DeltaContext:
    """Doubling ambient for a complement split: base design and count."""

    base: Design
    t: int

    @classmethod
    def from_design(cls, x: Design) -> "DeltaContext":
        if x.pedigree is None:
            raise InputError("design carries no doubling pedigree")
        return cls(x.pedigree.base, x.pedigree.t)

    @property
    def m0(self) -> int:
        return self.base.n

    @property
    def base_runs(self) -> int:
        return self.base.runs

    @property
    def m(self) -> int:
        return self.base.n << self.t

    @property
    def runs(self) -> int:
        return self.base.runs << self.t

    @cached_property
    def doubled_labels(self) -> tuple[int, ...]:
        return tuple(sorted(double_iter(self.base, self.t).labels))

    @property
    def half_m(self) -> Fraction:
        return Fraction(self.m, 2)


def _check_split(d: Design, dbar: Design, ctx: DeltaContext) -> None:
    if d.log2_runs != dbar.log2_runs or d.log2_runs != ctx.base.log2_runs + ctx.t:
        raise InputError("split run sizes do not match the doubling context")
    if tuple(sorted(d.labels + dbar.labels)) != ctx.doubled_labels:
        raise InputError("columns of D and D-bar do not partition the ambient design")


def delta_k(d: Design, dbar: Design, ctx: DeltaContext, k: int) -> int:
    """Correction term over the base rows:
    sum_i [w_i(D)^k - (m/2 - w_i(D-bar))^k] for i over the base runs."""
    if k < 1:
        raise InputError(f"delta order must be >= 1, got {k}")
    _check_split(d, dbar, ctx)
    n0 = ctx.base_runs
    wd = row_weights_prefix(d, n0)
    wb = row_weights_prefix(dbar, n0) if dbar.n else [0] * n0
    half = ctx.half_m
    total = sum(Fraction(a) ** k - (half - b) ** k for a, b in zip(wd, wb))
    if total.denominator != 1:
        raise InputError(
            f"delta_{k} is non-integral ({total}); ambient column count is odd"
        )
    return total.numerator


def theorem1_residual(
    d: Design,
    dbar: Design,
    ctx: DeltaContext,
    k: int,
    wlp_d: WordlengthPattern | None = None,
    wlp_dbar: WordlengthPattern | None = None,
) -> Fraction:
    """LHS minus RHS of the complement-pair identity; must always be 0.

    LHS = sum_i Q_k(i; n) A_i(D),
    RHS = sum_i [sum_{j=i..k} C(k,j) (m/2)^{k-j} (-1)^j Q_j(i; u)] A_i(D-bar)
          + Delta_k / N.
    """
    _check_split(d, dbar, ctx)
    n, u = d.n, dbar.n
    if wlp_d is None:
        wlp_d = wordlength_pattern(d)
    if wlp_dbar is None:
        wlp_dbar = wordlength_pattern(dbar)
    half = ctx.half_m
    lhs = Fraction(0)
    for i in range(0, k + 1):
        a = wlp_d[i] if i <= n else 0
        if a:
            lhs += q_coefficient(k, i, n) * a
    rhs = Fraction(delta_k(d, dbar, ctx, k), ctx.runs)
    for i in range(0, k + 1):
        a = wlp_dbar[i] if i <= u else 0
        if not a:
            continue
        coeff = Fraction(0)
        for j in range(i, k + 1):
            term = binomial(k, j) * half ** (k - j) * q_coefficient(j, i, u)
            coeff += -term if j % 2 else term
        rhs += coeff * a
    return lhs - rhs


def theorem1_report(d: Design, dbar: Design, ctx: DeltaContext, k_max: int) -> dict:
    wlp_d = wordlength_pattern(d)
    wlp_dbar = wordlength_pattern(dbar)
    rows = []
    ok = True
    for k in range(1, k_max + 1):
        res = theorem1_residual(d, dbar, ctx, k, wlp_d, wlp_dbar)
        rows.append({"k": k, "residual": res, "pass": res == 0})
        ok = ok and res == 0
    return {
        "check": "theorem1",
        "params": {"n": d.n, "u": dbar.n, "k_max": k_max},
        "rows": rows,
        "pass": ok,
    }


def corollary1_check(
    d: Design,
    dbar: Design,
    ctx: DeltaContext,
    wlp_d: WordlengthPattern | None = None,
    wlp_dbar: WordlengthPattern | None = None,
) -> dict:
    """The resolution-IV consequences: fixed Delta_1..Delta_3 and the
    A_4 transfer relation."""
    _check_split(d, dbar, ctx)
    n, m, runs = d.n, ctx.m, ctx.runs
    if wlp_d is None:
        wlp_d = wordlength_pattern(d)
    if wlp_dbar is None:
        wlp_dbar = wordlength_pattern(dbar)
    d1 = delta_k(d, dbar, ctx, 1)
    d2 = delta_k(d, dbar, ctx, 2)
    d3 = delta_k(d, dbar, ctx, 3)
    d4 = delta_k(d, dbar, ctx, 4)
    a4_d = wlp_d[4] if n >= 4 else 0
    a4_db = wlp_dbar[4] if dbar.n >= 4 else 0
    expect_a4 = (
        a4_db
        - Fraction((2 * n - m) * (6 * n * n + 3 * m - 2), 24)
        + Fraction(2 * d4, 3 * runs)
    )
    rows = [
        {"relation": "delta1", "got": d1, "want": 0, "pass": d1 == 0},
        {
            "relation": "delta2",
            "got": d2,
            "want": Fraction(runs * (2 * n - m), 4),
            "pass": d2 == Fraction(runs * (2 * n - m), 4),
        },
        {
            "relation": "delta3",
            "got": d3,
            "want": Fraction(3 * runs * n * (2 * n - m), 8),
            "pass": d3 == Fraction(3 * runs * n * (2 * n - m), 8),
        },
        {"relation": "a4", "got": a4_d, "want": expect_a4, "pass": a4_d == expect_a4},
    ]
    return {
        "check": "corollary1",
        "params": {"n": n, "u": dbar.n},
        "rows": rows,
        "pass": all(r["pass"] for r in rows),
    }


def delta_closed_5n16(f: Sequence[int], t: int, k: int) -> int:
    """Frequency-only closed form of Delta_k for the 5N/16 family."""
    if len(f) != 5:
        raise InputError(f"expected 5 frequencies, got {len(f)}")
    if t < 1:
        raise InputError(f"closed form needs t >= 1, got {t}")
    cap = 1 << t
    if any(fi < 0 or fi > cap for fi in f):
        raise InputError(f"frequencies must lie in 0..{cap}: {f}")
    u = sum(f)
    half = 5 << (t - 1)
    total = -(half**k)
    for fi in f:
        total += ((1 << (t + 2)) - u + fi) ** k - (half - u + fi) ** k
    for fi, fj in combinations(f, 2):
        total += ((1 << (t + 1)) - fi - fj) ** k - (half - fi - fj) ** k
    return total


def delta4_closed_9n32(f: Sequence[int], t: int) -> int:
    """Frequency-only closed form of Delta_4 for the 9N/32 family.

    Cyclic in f_1..f_7 and symmetric in f_8, f_9.
    """
    if len(f) != 9:
        raise InputError(f"expected 9 frequencies, got {len(f)}")
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    cap = 1 << t
    if any(fi < 0 or fi > cap for fi in f):
        raise InputError(f"frequencies must lie in 0..{cap}: {f}")
    big_t = 1 << t
    f1to7 = f[:7]
    f8, f9 = f[7], f[8]
    s1 = sum(f1to7)
    s2 = sum(fi * fi for fi in f1to7)
    g1 = f8 + f9
    g2 = f8 * f8 + f9 * f9
    g3 = f8**3 + f9**3
    cyc = sum(
        f1to7[i] * f1to7[(i + 2) % 7] * f1to7[(i + 3) % 7] for i in range(7)
    )
    return (
        9534 * big_t**4
        - 8 * big_t**3 * (535 * s1 + 511 * g1)
        + 12 * big_t**2 * (51 * s1 * s1 + 3 * s2 + 94 * s1 * g1 + 47 * g1 * g1 + 7 * g2)
        - 8
        * big_t
        * (
            4 * s1**3
            + 9 * s1 * s1 * g1
            + 3 * s2 * g1
            + 12 * g1 * g2
            + 9 * s1 * g1 * g1
            + 3 * s1 * g2
            - 8 * g3
        )
        + 48 * big_t * cyc
    )


def balanced_frequencies(u: int, m0: int) -> tuple[int, ...]:
    """The unique nonincreasing frequency multiset with spread <= 1."""
    lo, hi = divmod(u, m0)
    return tuple([lo + 1] * hi + [lo] * (m0 - hi))


def frequency_vectors(u: int, m0: int, cap: int) -> Iterable[tuple[int, ...]]:
    """All ordered frequency vectors with sum u and entries in 0..cap."""

    def rec(prefix: tuple[int, ...], left: int, slots: int):
        if slots == 1:
            if left <= cap:
                yield prefix + (left,)
            return
        for v in range(min(left, cap) + 1):
            yield from rec(prefix + (v,), left - v, slots - 1)

    if u > m0 * cap or u < 0:
        return
    yield from rec((), u, m0)


def frequency_multisets(u: int, m0: int, cap: int) -> Iterable[tuple[int, ...]]:
    """Nonincreasing frequency vectors with sum u and entries in 0..cap."""

    def rec(prefix: tuple[int, ...], left: int, slots: int, bound: int):
        if slots == 0:
            if left == 0:
                yield prefix
            return
        for v in range(min(left, bound), -1, -1):
            if v * slots >= left:
                yield from rec(prefix + (v,), left - v, slots - 1, v)

    if u > m0 * cap or u < 0:
        return
    yield from rec((), u, m0, cap)


def lemma2_minimizers(t: int, u: int) -> list[tuple[int, ...]]:
    """Frequency multisets minimizing Delta_4 in the 5N/16 family.

    The closed form depends on the frequencies only through their
    multiset, so scanning nonincreasing vectors is exhaustive.
    """
    if t < 1:
        raise InputError("lemma2 scan needs t >= 1")
    cap = 1 << t
    if u > 5 * cap:
        raise InputError(f"u = {u} exceeds the {5 * cap} available columns")
    best: list[tuple[int, ...]] = []
    best_val: int | None = None
    for f in frequency_multisets(u, 5, cap):
        val = delta_closed_5n16(f, t, 4)
        if best_val is None or val < best_val:
            best_val, best = val, [f]
        elif val == best_val:
            best.append(f)
    return sorted(best)


def lemma2_check(t: int, u: int) -> dict:
    """Scan report: inside u <= 15*2^(t-3) the argmin must be exactly
    the balanced multiset; outside, ties are reported, not enforced."""
    minimizers = lemma2_minimizers(t, u)
    balanced = balanced_frequencies(u, 5)
    in_range = 8 * u <= 15 * (1 << t)
    ok = minimizers == [balanced] if in_range else True
    return {
        "check": "lemma2",
        "params": {"t": t, "u": u, "contract_active": in_range},
        "minimizers": minimizers,
        "balanced": balanced,
        "pass": ok,
    }


def lemma3_bound(n: int, t: int) -> Fraction:
    """Delta_4 lower bound for the 9N/32 family, in terms of n = 9*2^t - u."""
    big_t = 1 << t
    poly = (
        760 * n**3
        - 5400 * n * n * big_t
        + 17380 * n * big_t**2
        - 39477 * big_t**3
    )
    return Fraction(2 * big_t * poly, 49)


def lemma3_check(t: int, u: int) -> dict:
    """Exhaustive Delta_4 scan over all 9-group frequency vectors.

    Inside u <= 3*2^(t-1) every minimizer must have f_8 = f_9 = 0 and
    spread <= 1 among f_1..f_7, and the closed-form bound must hold for
    every vector (with equality possible only when 7 divides u).
    """
    cap = 1 << t
    if u > 9 * cap:
        raise InputError(f"u = {u} exceeds the {9 * cap} available columns")
    best_val: int | None = None
    minimizers: list[tuple[int, ...]] = []
    scanned = 0
    for f in frequency_vectors(u, 9, cap):
        scanned += 1
        val = delta4_closed_9n32(f, t)
        if best_val is None or val < best_val:
            best_val, minimizers = val, [f]
        elif val == best_val:
            minimizers.append(f)
    bound = lemma3_bound(9 * cap - u, t)
    in_range = 2 * u <= 3 * cap
    conditions_ok = all(
        f[7] == 0 and f[8] == 0 and max(f[:7]) - min(f[:7]) <= 1 for f in minimizers
    )
    bound_ok = best_val is not None and best_val >= bound
    ok = bound_ok and (conditions_ok if in_range else True)
    return {
        "check": "lemma3",
        "params": {"t": t, "u": u, "contract_active": in_range},
        "scanned": scanned,
        "min_value": best_val,
        "minimizers": sorted(minimizers)[:16],
        "necessary_conditions": conditions_ok,
        "bound": bound,
        "bound_holds": bound_ok,
        "bound_tight": best_val == bound,
        "tightness_expected": u % 7 == 0,
        "pass": ok,
    }


def lemma4_lower_bound(n: int, t: int) -> Fraction:
    """A_4 lower bound for n-factor projections of the 9N/32 family."""
    runs = 32 << t
    if not 15 * runs <= 64 * n or not 32 * n <= 9 * runs:
        raise InputError(
            f"n = {n} outside [{Fraction(15 * runs, 64)}, {Fraction(9 * runs, 32)}]"
        )
    a = 196 * n + 172 * n**3
    b = 882 + 2646 * n + 2754 * n * n
    c = 11907 + 17380 * n
    big_t = 1 << t
    return Fraction(a - b * big_t + c * big_t**2 - 39477 * big_t**3, 1176)


def example_deltas(kind: str, t: int, u: int, k: int) -> int:
    """Closed-form Delta_k for the two seed families.

    'saturated' is the doubled 2x2 seed (zero column included), where
    Delta_k = -2^(t*k) independently of the frequencies; 'even' is the
    doubled single column, where Delta_k depends on u alone.
    """
    if k < 1:
        raise InputError(f"delta order must be >= 1, got {k}")
    if kind == "saturated":
        if t < 0 or not 0 <= u <= 2 << t:
            raise InputError(f"bad saturated parameters t={t}, u={u}")
        return -((1 << t) ** k)
    if kind == "even":
        if t < 1 or not 0 <= u <= 1 << t:
            raise InputError(f"bad even parameters t={t}, u={u}")
        return (
            ((1 << t) - u) ** k
            - (1 << (t - 1)) ** k
            - ((1 << (t - 1)) - u) ** k
        )
    raise InputError(f"unknown example kind {kind!r}")


def copy_set_columns(ped: DoublingPedigree, copy_sets: Sequence[Iterable[int]]) -> tuple[int, ...]:
    """Column indices selected by per-group copy sets."""
    m0 = ped.m0
    if len(copy_sets) != m0:
        raise InputError(f"expected {m0} copy sets, got {len(copy_sets)}")
    cols = []
    for i, copies in enumerate(copy_sets, start=1):
        for c in copies:
            if not 0 <= c < (1 << ped.t):
                raise InputError(f"copy {c} outside 0..{(1 << ped.t) - 1}")
            cols.append(m0 * c + i)
    return tuple(sorted(cols))


def random_split_for_frequencies(
    ped: DoublingPedigree, f: Sequence[int], rng: random.Random
) -> tuple[int, ...]:
    """Random complement columns realizing the frequency vector f."""
    if len(f) != ped.m0:
        raise InputError(f"expected {ped.m0} frequencies, got {len(f)}")
    copy_sets = [rng.sample(range(1 << ped.t), fi) for fi in f]
    return copy_set_columns(ped, copy_sets)
