"""Constructors for the named designs the rest of the package studies.

Column-index conventions matter here: doubling appends whole column
blocks, so column j of a doubled design descends from base column
((j-1) mod m0) + 1.  The deletion sets below (`s_complement`,
`u9_pair`) rely on exactly that indexing.
"""

from __future__ import annotations

from .design import (
    Design,
    defining_words,
    design_from_defining_words,
    design_from_labels,
    double_iter,
)
from .errors import ConsistencyError, InputError

# Deletion-set prefix for the 5N/16 family, valid for N >= 128.
S_COMPLEMENT = (1, 2, 3, 4, 5, 6, 12, 18, 24, 30, 31)

# Generating words of the 32-run 9-factor base design; they expand to a
# 15-word defining contrast subgroup cyclic in factors 1..7.
NINE_FACTOR_WORDS = (
    frozenset({1, 2, 3, 5}),
    frozenset({2, 3, 4, 6}),
    frozenset({3, 4, 5, 7}),
    frozenset({1, 3, 4, 8, 9}),
)

NINE_FACTOR_SUBGROUP = frozenset(
    frozenset(w)
    for w in (
        {1, 2, 3, 5},
        {2, 3, 4, 6},
        {3, 4, 5, 7},
        {4, 5, 6, 1},
        {5, 6, 7, 2},
        {6, 7, 1, 3},
        {7, 1, 2, 4},
        {1, 2, 3, 4, 5, 6, 7, 8, 9},
        {1, 3, 4, 8, 9},
        {2, 4, 5, 8, 9},
        {3, 5, 6, 8, 9},
        {4, 6, 7, 8, 9},
        {5, 7, 1, 8, 9},
        {6, 1, 2, 8, 9},
        {7, 2, 3, 8, 9},
    )
)


def x0_resV() -> Design:
    """The 16x5 resolution-V design with the single full-length word."""
    return design_from_labels(4, (1, 2, 4, 8, 15))


def maximal_5n16(t: int) -> Design:
    """Maximal resolution-IV design with N = 16*2^t runs and 5N/16 factors."""
    return double_iter(x0_resV(), t)


def x0_9f() -> Design:
    """The 32-run 9-factor base design, validated word-for-word.

    The labels are re-derived from the generating words with factors
    1, 2, 3, 4, 8 kept basic; the defining subgroup (not the label
    choice) is the contract, so the full 15-word expansion is checked
    on every construction.
    """
    d = design_from_defining_words(9, NINE_FACTOR_WORDS, prefer_basic=(1, 2, 3, 4, 8))
    words = frozenset(defining_words(d))
    if words != NINE_FACTOR_SUBGROUP:
        raise ConsistencyError(
            "nine-factor base subgroup mismatch: "
            f"got {sorted(map(sorted, words))}"
        )
    return d


def maximal_9n32(t: int) -> Design:
    """Maximal resolution-IV design with N = 32*2^t runs and 9N/32 factors."""
    return double_iter(x0_9f(), t)


def maximal_even(t: int) -> Design:
    """Maximal even design: the single column (0,1)' doubled t times."""
    return double_iter(design_from_labels(1, (1,)), t)


def even_doubling_seed() -> Design:
    """The 2x2 matrix with a zero first column (saturated-family base)."""
    return design_from_labels(1, (0, 1))


def saturated_family(t: int) -> Design:
    """The 2x2 seed doubled t times: N = m = 2^(t+1), zero column included."""
    return double_iter(even_doubling_seed(), t)


def saturated_resIII(t: int) -> Design:
    """Saturated resolution-III design: drop the doubled zero column."""
    if t < 1:
        raise InputError(f"saturated family needs t >= 1, got {t}")
    x = saturated_family(t)
    labels = [lab for lab in x.labels if lab]
    if len(labels) != x.n - 1:
        raise ConsistencyError("expected exactly one zero column before deletion")
    return design_from_labels(x.log2_runs, labels)


def s_complement(u: int, t: int) -> tuple[int, ...]:
    """First-u deletion columns for the 5N/16 family.

    For u <= 5 this is simply columns 1..u; for u = 6..11 it is the
    prefix of S_COMPLEMENT and requires N = 16*2^t >= 128.
    """
    if not 1 <= u <= 11:
        raise InputError(f"u must be in 1..11, got {u}")
    if u <= 5:
        return tuple(range(1, u + 1))
    if t < 3:
        raise InputError(f"u = {u} needs N >= 128 (t >= 3), got t = {t}")
    return S_COMPLEMENT[:u]


def u9_pair(t: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two optimal-but-different 9-column deletion sets (N >= 128)."""
    if t < 3:
        raise InputError(f"the 9-column pair needs N >= 128 (t >= 3), got t = {t}")
    return (1, 2, 3, 4, 5, 6, 12, 18, 24), (1, 2, 3, 4, 5, 6, 12, 23, 39)


FAMILIES = {
    "x0-5": lambda t: _base_only("x0-5", x0_resV(), t),
    "max-5n16": maximal_5n16,
    "x0-9": lambda t: _base_only("x0-9", x0_9f(), t),
    "max-9n32": maximal_9n32,
    "max-even": maximal_even,
    "saturated": saturated_family,
}


def _base_only(name: str, d: Design, t: int) -> Design:
    if t not in (0, None):
        raise InputError(f"family {name} does not take a doubling count, got t={t}")
    return d


def build_family(family: str, t: int = 0) -> Design:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise InputError(
            f"unknown family {family!r}; choose from {sorted(FAMILIES)}"
        ) from None
    return builder(t)
