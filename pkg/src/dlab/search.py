"""Complement search, greedy projection, and the closed-form bounds.

The complement search ranks u-column deletion sets of a doubled design
by the alternating key (A_4, -A_5, A_6, -A_7, ...) of the deleted
columns' wordlength pattern.  Candidates are streamed as per-group copy
subsets (never materialized as a list) and pruned with an exact,
monotone running A_4: within-group quadruple collisions, cross-group
pair collisions, and length-4 base words are all accounted the moment
the groups involved are placed.  Ties are kept, counted exactly, and
broken for the canonical winner by lexicographic column order.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .complementary import (
    copy_set_columns,
    frequency_multisets,
    frequency_vectors,
)
from .design import Design, DoublingPedigree, defining_words, design_from_dict, design_to_dict, project
from .errors import CapacityError, InputError
from .gf2 import binomial, xor_subset_counts
from .wlp import WordlengthPattern, wordlength_pattern

DEFAULT_BUDGET = 50_000_000
BUDGET_ENV = "DLAB_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class SearchConstraints:
    balanced_only: bool = True
    depth: int = 8
    budget: int | None = None
    tie_cap: int = 4096
    spot_check_samples: int = 200
    seed: int = 1

    def __post_init__(self) -> None:
        if self.depth < 4:
            raise InputError(f"criterion depth must be >= 4, got {self.depth}")
        if self.budget is not None and self.budget <= 0:
            raise InputError(f"budget must be positive, got {self.budget}")

    def effective_budget(self) -> int:
        return self.budget if self.budget is not None else default_budget()


@dataclass
class SearchResult:
    u: int
    t: int
    balanced_only: bool
    depth: int
    candidate_space: int
    examined: int
    complete: bool
    best_key: tuple[int, ...] | None
    winner: tuple[int, ...] | None
    winner_tail: tuple[int, ...] | None
    winner_wlp: WordlengthPattern | None
    winner_f: tuple[int, ...] | None
    ties_total: int
    ties: list[tuple[int, ...]]
    ties_truncated: bool
    stage2: list[dict]
    spot_check: dict | None = None
    conditions_satisfiable: bool | None = None

    def as_dict(self) -> dict:
        return {
            "u": self.u,
            "t": self.t,
            "balanced_only": self.balanced_only,
            "depth": self.depth,
            "candidate_space": self.candidate_space,
            "examined": self.examined,
            "complete": self.complete,
            "best_key": list(self.best_key) if self.best_key is not None else None,
            "winner": list(self.winner) if self.winner is not None else None,
            "winner_tail": list(self.winner_tail)
            if self.winner_tail is not None
            else None,
            "winner_wlp": list(self.winner_wlp)
            if self.winner_wlp is not None
            else None,
            "winner_f": list(self.winner_f) if self.winner_f is not None else None,
            "ties_total": self.ties_total,
            "ties": [list(c) for c in self.ties],
            "ties_truncated": self.ties_truncated,
            "stage2": [
                {
                    "tail": list(s["tail"]),
                    "count": s["count"],
                    "lexmin": list(s["lexmin"]),
                    "f": list(s["f"]),
                }
                for s in self.stage2
            ],
            "spot_check": self.spot_check,
            "conditions_satisfiable": self.conditions_satisfiable,
        }


class _BudgetExhausted(Exception):
    pass


def projection_tail(
    base_words: Sequence[frozenset[int]],
    copy_sets: Sequence[tuple[int, ...]],
    t: int,
    max_len: int,
) -> tuple[int, ...]:
    """(A_1..A_max_len) of the projection given by per-group copy sets.

    A subset of the projection's columns is a defining word exactly when
    its per-group odd/even pattern is a base defining word (or empty)
    and the chosen copy labels XOR to zero; the count is assembled per
    size composition via XOR convolutions of per-group subset tallies.
    """
    if max_len < 1:
        return ()
    space = 1 << t
    m0 = len(copy_sets)
    sizes = [len(c) for c in copy_sets]
    vec_cache: dict[tuple[int, int], list[int]] = {}

    def vec(g: int, s: int) -> list[int]:
        key = (g, s)
        if key not in vec_cache:
            vec_cache[key] = xor_subset_counts(copy_sets[g], s, space)
        return vec_cache[key]

    out = [0] * max_len

    def compositions(parities: list[int], total: int):
        def rec(idx: int, left: int, acc: list[int]):
            if idx == m0:
                if left == 0:
                    yield tuple(acc)
                return
            for s in range(parities[idx], min(sizes[idx], left) + 1, 2):
                acc.append(s)
                yield from rec(idx + 1, left - s, acc)
                acc.pop()

        yield from rec(0, total, [])

    patterns = [frozenset()] + [w for w in base_words if w]
    for pattern in patterns:
        parities = [1 if (g + 1) in pattern else 0 for g in range(m0)]
        if any(parities[g] > sizes[g] for g in range(m0)):
            continue
        min_total = sum(parities)
        for length in range(max(min_total, 1), max_len + 1):
            if (length - min_total) % 2:
                continue
            for comp in compositions(parities, length):
                acc = [0] * space
                acc[0] = 1
                for g, s in enumerate(comp):
                    if s == 0:
                        continue
                    v = vec(g, s)
                    nxt = [0] * space
                    for xv, cnt in enumerate(acc):
                        if cnt:
                            for yv, c2 in enumerate(v):
                                if c2:
                                    nxt[xv ^ yv] += cnt * c2
                    acc = nxt
                out[length - 1] += acc[0]
    return tuple(out)


def _base_word_sets(base: Design) -> list[frozenset[int]]:
    return sorted(defining_words(base), key=lambda w: (len(w), sorted(w)))


def _signed_key(tail: tuple[int, ...], depth: int) -> tuple[int, ...]:
    """tail is (A_4, A_5, ...); key alternates signs up to index depth."""
    key = []
    for i in range(4, depth + 1):
        a = tail[i - 4] if i - 4 < len(tail) else 0
        key.append(-a if i % 2 else a)
    return tuple(key)


@dataclass
class _Stage:
    """Mutable best-so-far state for one enumeration partition."""

    depth: int
    tail_len: int
    tie_cap: int
    best_a4: int | None = None
    best2: tuple[int, int] | None = None
    best_key: tuple[int, ...] | None = None
    tails: dict[tuple[int, ...], dict] = field(default_factory=dict)
    examined: int = 0

    def consider(
        self,
        a4: int,
        a5: int,
        copy_sets: tuple[tuple[int, ...], ...],
        f: tuple[int, ...],
        ped: DoublingPedigree,
        words: Sequence[frozenset[int]],
    ) -> None:
        key2 = (a4, -a5)
        if self.best2 is not None and key2 > self.best2:
            return
        if self.best2 is None or key2 < self.best2:
            self.best2 = key2
            self.best_key = None
            self.tails.clear()
        full = projection_tail(words, copy_sets, ped.t, self.tail_len)
        if full[3] != a4 or full[4] != a5:
            raise AssertionError(
                f"incremental counts disagree with evaluator: {(a4, a5)} vs {full[3:5]}"
            )
        tail = full[3:]
        key = _signed_key(tail, min(self.depth, self.tail_len))
        cols = copy_set_columns(ped, copy_sets)
        entry = self.tails.get(tail)
        if entry is None:
            self.tails[tail] = {
                "count": 1,
                "lexmin": cols,
                "f": f,
                "key": key,
                "sample": [cols],
            }
        else:
            entry["count"] += 1
            if cols < entry["lexmin"]:
                entry["lexmin"] = cols
            if len(entry["sample"]) < self.tie_cap:
                entry["sample"].append(cols)
        if self.best_key is None or key < self.best_key:
            self.best_key = key

    def merge(self, other: "_Stage") -> None:
        self.examined += other.examined
        if other.best_a4 is not None and (
            self.best_a4 is None or other.best_a4 < self.best_a4
        ):
            self.best_a4 = other.best_a4
        if other.best2 is None:
            return
        if self.best2 is None or other.best2 < self.best2:
            self.best2 = other.best2
            self.best_key = other.best_key
            self.tails = other.tails
            return
        if other.best2 == self.best2:
            if other.best_key is not None and (
                self.best_key is None or other.best_key < self.best_key
            ):
                self.best_key = other.best_key
            for tail, entry in other.tails.items():
                mine = self.tails.get(tail)
                if mine is None:
                    self.tails[tail] = entry
                else:
                    mine["count"] += entry["count"]
                    if entry["lexmin"] < mine["lexmin"]:
                        mine["lexmin"] = entry["lexmin"]
                    room = self.tie_cap - len(mine["sample"])
                    if room > 0:
                        mine["sample"].extend(entry["sample"][:room])


def _subset_features(t_copies: int, size: int) -> list[tuple]:
    """(copies, pair-xor count items, quad-zero count) per subset."""
    feats = []
    for copies in combinations(range(t_copies), size):
        pair_counts: dict[int, int] = {}
        for a, b in combinations(copies, 2):
            v = a ^ b
            pair_counts[v] = pair_counts.get(v, 0) + 1
        quad0 = 0
        for quad in combinations(copies, 4):
            if quad[0] ^ quad[1] ^ quad[2] ^ quad[3] == 0:
                quad0 += 1
        feats.append((copies, tuple(pair_counts.items()), quad0))
    return feats


def _word_tuple_count(
    groups: Sequence[int], chosen: dict[int, tuple[int, ...]], skip: int | None = None
) -> dict[int, int]:
    """XOR tally of one-copy-per-group tuples over `groups` (minus skip)."""
    acc = {0: 1}
    for g in groups:
        if g == skip:
            continue
        nxt: dict[int, int] = {}
        for v, cnt in acc.items():
            for c in chosen[g]:
                key = v ^ c
                nxt[key] = nxt.get(key, 0) + cnt
        acc = nxt
    return acc


def _enumerate_f_vector(
    ped: DoublingPedigree,
    f: tuple[int, ...],
    words: Sequence[frozenset[int]],
    stage: _Stage,
    budget: int,
) -> None:
    """Exhaust all copy-subset choices realizing f, updating the stage."""
    t_copies = 1 << ped.t
    active = [g for g in range(1, ped.m0 + 1) if f[g - 1] > 0]
    order = sorted(active, key=lambda g: (-f[g - 1], g))
    if not order:
        stage.examined += 1
        stage.consider(0, 0, tuple(() for _ in range(ped.m0)), f, ped, words)
        return
    feats = {g: _subset_features(t_copies, f[g - 1]) for g in order}
    level_of = {g: i for i, g in enumerate(order)}
    active_set = set(order)
    words4 = [sorted(w) for w in words if len(w) == 4 and set(w) <= active_set]
    words5 = [sorted(w) for w in words if len(w) == 5 and set(w) <= active_set]
    words4_at: list[list[list[int]]] = [[] for _ in order]
    for w in words4:
        words4_at[max(level_of[g] for g in w)].append(w)
    last = order[-1]
    words5_with_last = [w for w in words5 if last in w]
    words5_without_last = [w for w in words5 if last not in w]

    chosen: dict[int, tuple[int, ...]] = {}
    placed_pairs: list[dict[int, int]] = []
    n_levels = len(order)
    m0 = ped.m0

    def rec(level: int, partial_a4: int) -> None:
        g = order[level]
        is_last = level == n_levels - 1
        if is_last:
            tallies = [
                _word_tuple_count(w, chosen, skip=last) for w in words5_with_last
            ]
            const5 = sum(
                _word_tuple_count(w, chosen).get(0, 0)
                for w in words5_without_last
            )
        for copies, pair_items, quad0 in feats[g]:
            a4 = partial_a4 + quad0
            if pair_items:
                for other in placed_pairs:
                    for v, c in pair_items:
                        o = other.get(v)
                        if o:
                            a4 += c * o
            if is_last:
                stage.examined += 1
                if stage.examined > budget:
                    raise _BudgetExhausted
                if words4_at[level]:
                    chosen[g] = copies
                    for w in words4_at[level]:
                        a4 += _word_tuple_count(w, chosen).get(0, 0)
                    del chosen[g]
                if stage.best_a4 is None or a4 < stage.best_a4:
                    stage.best_a4 = a4
                if a4 == stage.best_a4:
                    a5 = const5
                    for tally in tallies:
                        for c in copies:
                            a5 += tally.get(c, 0)
                    chosen[g] = copies
                    copy_sets = tuple(
                        tuple(chosen.get(gg, ())) for gg in range(1, m0 + 1)
                    )
                    del chosen[g]
                    stage.consider(a4, a5, copy_sets, f, ped, words)
            else:
                if words4_at[level]:
                    chosen[g] = copies
                    for w in words4_at[level]:
                        a4 += _word_tuple_count(w, chosen).get(0, 0)
                    del chosen[g]
                if stage.best_a4 is None or a4 <= stage.best_a4:
                    chosen[g] = copies
                    placed_pairs.append(dict(pair_items))
                    rec(level + 1, a4)
                    placed_pairs.pop()
                    del chosen[g]

    rec(0, 0)


def _balanced_assignments(u: int, m0: int, cap: int) -> list[tuple[int, ...]]:
    lo, hi = divmod(u, m0)
    if lo > cap or (hi and lo + 1 > cap):
        raise InputError(f"u = {u} cannot be balanced over {m0} groups of {cap}")
    out = []
    for high_groups in combinations(range(m0), hi):
        f = [lo] * m0
        for g in high_groups:
            f[g] = lo + 1
        out.append(tuple(f))
    return out


def _space_for(f: tuple[int, ...], cap: int) -> int:
    space = 1
    for fi in f:
        space *= binomial(cap, fi)
    return space


def _tail_len_for(u: int, depth: int) -> int:
    return max(depth, min(u, 16), 5)


def _search_f_vector_task(args: tuple) -> _Stage:
    """Worker entry: run one frequency vector to completion."""
    x_doc, f, depth, tail_len, tie_cap, budget = args
    x = design_from_dict(x_doc)
    ped = x.pedigree
    words = _base_word_sets(ped.base)
    stage = _Stage(depth=depth, tail_len=tail_len, tie_cap=tie_cap)
    try:
        _enumerate_f_vector(ped, f, words, stage, budget)
        stage.complete = True  # type: ignore[attr-defined]
    except _BudgetExhausted:
        stage.complete = False  # type: ignore[attr-defined]
    return stage


def complement_search(
    x: Design,
    u: int,
    constraints: SearchConstraints | None = None,
    workers: int = 1,
) -> SearchResult:
    """Seq-key minimization over u-column deletion sets of a doubled design.

    With balanced_only, the candidate space is every copy-subset choice
    realizing the balanced frequency multiset; a budget-bounded sample
    of unbalanced candidates is then checked against the winner.  With
    workers > 1 the frequency vectors are searched in separate
    processes; the merged result is identical to a sequential run.
    """
    cons = constraints or SearchConstraints()
    ped = x.pedigree
    if ped is None:
        raise InputError("complement_search needs a design with a pedigree")
    if not 0 <= u <= x.n:
        raise InputError(f"u = {u} outside 0..{x.n}")
    words = _base_word_sets(ped.base)
    if any(len(w) < 4 for w in words):
        raise InputError(
            "complement search requires an ambient design of resolution >= 4"
        )
    budget = cons.effective_budget()
    cap = 1 << ped.t
    tail_len = _tail_len_for(u, cons.depth)

    if u == 0:
        return SearchResult(
            u=0,
            t=ped.t,
            balanced_only=cons.balanced_only,
            depth=cons.depth,
            candidate_space=1,
            examined=1,
            complete=True,
            best_key=(),
            winner=(),
            winner_tail=(),
            winner_wlp=wordlength_pattern(x),
            winner_f=(0,) * ped.m0,
            ties_total=1,
            ties=[()],
            ties_truncated=False,
            stage2=[],
            spot_check=None,
            conditions_satisfiable=True,
        )

    if cons.balanced_only:
        f_vectors = _balanced_assignments(u, ped.m0, cap)
    else:
        f_vectors = list(frequency_vectors(u, ped.m0, cap))
    space = sum(_space_for(f, cap) for f in f_vectors)

    stage = _Stage(depth=cons.depth, tail_len=tail_len, tie_cap=cons.tie_cap)
    complete = True
    if workers > 1 and len(f_vectors) > 1:
        x_doc = design_to_dict(x)
        tasks = [
            (x_doc, f, cons.depth, tail_len, cons.tie_cap, budget)
            for f in f_vectors
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_search_f_vector_task, tasks):
                complete = complete and getattr(part, "complete", True)
                stage.merge(part)
    else:
        try:
            for f in f_vectors:
                _enumerate_f_vector(ped, f, words, stage, budget)
        except _BudgetExhausted:
            complete = False

    if stage.best_key is None:
        raise CapacityError("budget exhausted before any candidate was evaluated")
    winner_tails = {
        tail: entry
        for tail, entry in stage.tails.items()
        if entry["key"] == stage.best_key
    }
    ties_total = sum(e["count"] for e in winner_tails.values())
    winner = min(e["lexmin"] for e in winner_tails.values())
    winner_f = next(e["f"] for e in winner_tails.values() if e["lexmin"] == winner)
    winner_tail = next(
        tail for tail, e in winner_tails.items() if e["lexmin"] == winner
    )
    winner_design = project(x, winner)
    winner_wlp = wordlength_pattern(winner_design)
    expect = tuple(
        winner_wlp[i] if i < len(winner_wlp) else 0
        for i in range(4, 4 + len(winner_tail))
    )
    if expect != winner_tail:
        raise AssertionError("winner tail does not match its recomputed pattern")

    ties: list[tuple[int, ...]] = []
    for entry in winner_tails.values():
        ties.extend(entry["sample"])
    ties = sorted(ties)[: cons.tie_cap]
    ties_truncated = ties_total > len(ties)

    stage2 = sorted(
        (
            {"tail": tail, "count": e["count"], "lexmin": e["lexmin"], "f": e["f"]}
            for tail, e in stage.tails.items()
        ),
        key=lambda s: s["tail"],
    )

    result = SearchResult(
        u=u,
        t=ped.t,
        balanced_only=cons.balanced_only,
        depth=cons.depth,
        candidate_space=space,
        examined=stage.examined,
        complete=complete,
        best_key=stage.best_key,
        winner=winner,
        winner_tail=winner_tail,
        winner_wlp=winner_wlp,
        winner_f=winner_f,
        ties_total=ties_total,
        ties=ties,
        ties_truncated=ties_truncated,
        stage2=stage2,
    )
    if cons.balanced_only:
        result.spot_check = _spot_check_unbalanced(
            x, u, stage.best_key, cons, words, tail_len
        )
        result.conditions_satisfiable = not result.spot_check["contradiction"]
    return result


def _spot_check_unbalanced(
    x: Design,
    u: int,
    best_key: tuple[int, ...],
    cons: SearchConstraints,
    words: Sequence[frozenset[int]],
    tail_len: int,
) -> dict:
    """Sample unbalanced frequency vectors; flag any that beat the winner."""
    ped = x.pedigree
    cap = 1 << ped.t
    rng = random.Random(cons.seed)
    depth = min(cons.depth, tail_len)
    sampled = 0
    witness = None
    unbalanced = [
        m for m in frequency_multisets(u, ped.m0, cap) if m[0] - m[-1] > 1
    ]
    for mult in unbalanced:
        per_mult = max(1, cons.spot_check_samples // max(len(unbalanced), 1))
        for _ in range(per_mult):
            if sampled >= cons.spot_check_samples:
                break
            perm = list(mult)
            rng.shuffle(perm)
            copy_sets = tuple(
                tuple(sorted(rng.sample(range(cap), fi))) for fi in perm
            )
            full = projection_tail(words, copy_sets, ped.t, tail_len)
            key = _signed_key(full[3:], depth)
            sampled += 1
            if key < best_key:
                witness = {
                    "f": perm,
                    "columns": list(copy_set_columns(ped, copy_sets)),
                    "key": list(key),
                }
                break
        if witness:
            break
    return {
        "sampled": sampled,
        "contradiction": witness is not None,
        "witness": witness,
    }


@dataclass
class MaProjection:
    design: Design
    kept_columns: tuple[int, ...]
    deleted_columns: tuple[int, ...]
    wlp: WordlengthPattern
    search: SearchResult
    ma_among_regular: bool
    ma_within_family: bool


def ma_project(
    x: Design,
    n: int,
    constraints: SearchConstraints | None = None,
    workers: int = 1,
) -> MaProjection:
    """Delete the winning complement to get an n-factor projection."""
    if not 0 < n <= x.n:
        raise InputError(f"n = {n} outside 1..{x.n}")
    result = complement_search(x, x.n - n, constraints, workers=workers)
    deleted = set(result.winner)
    kept = tuple(j for j in range(1, x.n + 1) if j not in deleted)
    design = project(x, kept)
    pattern = wordlength_pattern(design)
    runs = x.runs
    certified_base = (
        result.complete
        and result.balanced_only
        and result.conditions_satisfiable is not False
    )
    within_family = certified_base and 128 * n >= 25 * runs and 16 * n <= 5 * runs
    among_regular = (
        certified_base and runs >= 32 and 64 * n >= 17 * runs and 16 * n <= 5 * runs
    )
    return MaProjection(
        design=design,
        kept_columns=kept,
        deleted_columns=result.winner,
        wlp=pattern,
        search=result,
        ma_among_regular=among_regular,
        ma_within_family=within_family,
    )


@dataclass
class GreedyResult:
    design: Design
    kept_columns: tuple[int, ...]
    achieved: int
    bound: Fraction


def word_count_per_factor(d: Design, r: int, budget: int = 20_000_000) -> list[int]:
    """Number of length-r defining words through each column.

    For r = 4 with distinct nonzero labels the count comes from pair-XOR
    collisions (two disjoint pairs with equal XOR make a word); the
    general path enumerates r-subsets directly.
    """
    if not 1 <= r <= d.n:
        raise InputError(f"r = {r} outside 1..{d.n}")
    labels = d.labels
    if r == 4 and len(set(labels)) == d.n and 0 not in labels:
        buckets: dict[int, int] = {}
        pair_xor = []
        for i, j in combinations(range(d.n), 2):
            v = labels[i] ^ labels[j]
            pair_xor.append((i, j, v))
            buckets[v] = buckets.get(v, 0) + 1
        counts = [0] * d.n
        for i, j, v in pair_xor:
            extra = buckets[v] - 1
            if extra:
                counts[i] += extra
                counts[j] += extra
        for i, c in enumerate(counts):
            if c % 3:
                raise AssertionError(f"pair-collision count not divisible by 3 at {i}")
            counts[i] = c // 3
        return counts
    if binomial(d.n, r) > budget:
        raise CapacityError(
            f"enumerating C({d.n},{r}) length-{r} subsets exceeds budget {budget}"
        )
    counts = [0] * d.n
    for comb in combinations(range(d.n), r):
        acc = 0
        for i in comb:
            acc ^= labels[i]
        if acc == 0:
            for i in comb:
                counts[i] += 1
    return counts


def greedy_projection(
    x: Design, n: int, r: int, budget: int = 20_000_000
) -> GreedyResult:
    """Delete one factor at a time, always the one in the most length-r words.

    Ties break to the smallest column index.  The result satisfies
    A_r <= A_r(X) * C(n,r) / C(m,r).
    """
    if not r <= n <= x.n:
        raise InputError(f"need r <= n <= {x.n}, got n={n}, r={r}")
    a_r_start = wordlength_pattern(x)[r]
    kept = list(range(1, x.n + 1))
    current = x
    while current.n > n:
        counts = word_count_per_factor(current, r, budget)
        drop = max(range(current.n), key=lambda i: (counts[i], -i))
        kept.pop(drop)
        current = project(x, kept)
    achieved = wordlength_pattern(current)[r] if current.n >= r else 0
    bound = Fraction(a_r_start * binomial(n, r), binomial(x.n, r))
    if achieved > bound:
        raise AssertionError(
            f"greedy projection exceeded its bound: {achieved} > {bound}"
        )
    return GreedyResult(
        design=current, kept_columns=tuple(kept), achieved=achieved, bound=bound
    )


def a4_maximal_5n16(t: int) -> Fraction:
    """Closed-form A_4 of the full 5N/16-family design."""
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    return Fraction(65 * 8**t - 75 * 4**t + 10 * 2**t, 24)


def corollary2_bound(n: int, t: int) -> Fraction:
    """Upper bound on A_4 attainable by some n-factor projection."""
    m = 5 << t
    if n > m:
        raise InputError(f"n = {n} exceeds {m} factors")
    return a4_maximal_5n16(t) * binomial(n, 4) / binomial(m, 4)


def lemma6_check(t: int) -> dict:
    """Even-family projections lose: the family-wide A_4 upper bound is
    strictly below the even-design lower bound for N/4 < n <= 5N/16."""
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    m = 5 << t
    numerator = Fraction(65 * 8**t - 75 * 4**t + 10 * 2**t, 4)
    rows = []
    ok = True
    for n in range(4 * 2**t + 1, m + 1):
        lhs = numerator * (n - 2) * (n - 3)
        rhs = (Fraction(6 * n * (n - 1), (1 << (t + 3)) - 1) - 12) * binomial(m, 4)
        holds = lhs < rhs
        ok = ok and holds
        rows.append({"n": n, "lhs": lhs, "rhs": rhs, "pass": holds})
    return {"check": "lemma6", "params": {"t": t}, "rows": rows, "pass": ok}


def _poly_eval(coeffs: Sequence[Fraction], x: int) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _poly_derive(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [coeffs[i] * i for i in range(1, len(coeffs))]


def lemma7_check(t: int) -> dict:
    """Nine-per-32 projections lose on N/4 < n <= 9N/32.

    F(n) = L(n) - U(n) must be positive there; shown via the derivative
    sign pattern of the degree-4 polynomial plus integer monotonicity.
    """
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    big_t = 1 << t
    el = [
        Fraction(-882 * big_t + 11907 * big_t**2 - 39477 * big_t**3, 1176),
        Fraction(196 - 2646 * big_t + 17380 * big_t**2, 1176),
        Fraction(-2754 * big_t, 1176),
        Fraction(172, 1176),
        Fraction(0),
    ]
    q = Fraction(65 * 2 * 8**t - 75 * 4**t + 5 * 2**t, 6) / binomial(10 << t, 4)
    u_poly = [Fraction(0), -6 * q / 24, 11 * q / 24, -6 * q / 24, q / 24]
    f_poly = [a - b for a, b in zip(el, u_poly)]
    f1 = _poly_derive(f_poly)
    f2 = _poly_derive(f1)
    f3 = _poly_derive(f2)
    f4 = _poly_derive(f3)
    lo, hi = 8 * big_t, 9 * big_t
    rows = [
        {"condition": "F4 < 0 on range", "pass": f4[0] < 0},
        {"condition": "F3(9T) > 0", "pass": _poly_eval(f3, hi) > 0},
        {"condition": "F2(8T) > 0", "pass": _poly_eval(f2, lo) > 0},
        {"condition": "F1(8T) > 0", "pass": _poly_eval(f1, lo) > 0},
        {"condition": "F(8T+1) > 0", "pass": _poly_eval(f_poly, lo + 1) > 0},
    ]
    increasing = all(
        _poly_eval(f_poly, n + 1) > _poly_eval(f_poly, n) for n in range(lo, hi)
    )
    rows.append({"condition": "F strictly increasing on integers", "pass": increasing})
    return {
        "check": "lemma7",
        "params": {"t": t},
        "rows": rows,
        "pass": all(r["pass"] for r in rows),
    }
