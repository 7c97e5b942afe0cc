"""Two-level regular designs as ordered GF(2) column labels.

A design with N = 2^k runs and n factors is stored as k (`log2_runs`)
plus one bit-mask label per column; the implicit N x n matrix has entry
(x, j) = parity(x & labels[j]) for run index x in 0..N-1.  The matrix
is never materialized: row weights come from a Gray-code sweep over the
row space of the k x n generator matrix, which keeps N = 2^20, n = 320
well inside memory.

Column indices are 1-based everywhere in the public interface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CapacityError, InputError
from .gf2 import MAX_WIDTH, gf2_rank, gf2_reduce_basis


@dataclass(frozen=True)
class Design:
    log2_runs: int
    labels: tuple[int, ...]
    pedigree: "DoublingPedigree | None" = None

    def __post_init__(self) -> None:
        if not 0 <= self.log2_runs <= MAX_WIDTH:
            raise CapacityError(f"log2_runs {self.log2_runs} outside 0..{MAX_WIDTH}")
        for lab in self.labels:
            if lab < 0 or lab >> self.log2_runs:
                raise InputError(
                    f"label {lab:#x} does not fit in width {self.log2_runs}"
                )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def runs(self) -> int:
        return 1 << self.log2_runs


@dataclass(frozen=True)
class DoublingPedigree:
    """Provenance of a design built by doubling `base` `t` times.

    Column j (1-based) of the doubled design descends from base column
    ((j-1) mod m0) + 1 and carries copy index (j-1) // m0; the copy
    index occupies the t bits appended above the base label.
    """

    base: Design
    t: int

    def __post_init__(self) -> None:
        if self.t < 0:
            raise InputError(f"doubling count must be >= 0, got {self.t}")

    @property
    def m0(self) -> int:
        return self.base.n

    @property
    def columns(self) -> int:
        return self.base.n << self.t

    def column_group(self, j: int) -> int:
        self._check_column(j)
        return (j - 1) % self.m0 + 1

    def column_copy(self, j: int) -> int:
        self._check_column(j)
        return (j - 1) // self.m0

    def column_label(self, j: int) -> int:
        group = self.column_group(j)
        copy = self.column_copy(j)
        return self.base.labels[group - 1] | (copy << self.base.log2_runs)

    def _check_column(self, j: int) -> None:
        if not 1 <= j <= self.columns:
            raise InputError(f"column {j} outside 1..{self.columns}")


@dataclass(frozen=True)
class FrequencyVector:
    """Per-group counts of complement columns under a doubling pedigree."""

    f: tuple[int, ...]

    @property
    def u(self) -> int:
        return sum(self.f)

    def is_balanced(self) -> bool:
        return max(self.f) - min(self.f) <= 1


def design_from_labels(
    log2_runs: int,
    labels: Iterable[int],
    pedigree: DoublingPedigree | None = None,
) -> Design:
    """Design with the given columns in the given order."""
    labs = tuple(labels)
    if not labs:
        raise InputError("a design needs at least one column")
    return Design(log2_runs, labs, pedigree)


def design_from_defining_words(
    n: int,
    generator_words: Sequence[Iterable[int]],
    prefer_basic: Sequence[int] = (),
) -> Design:
    """Design whose defining contrast subgroup is generated by the words.

    Each word is a set of 1-based column indices.  The p words must be
    independent over GF(2); the resulting design has 2^(n-p) runs.
    Columns listed in `prefer_basic` are kept as unit-label (basic)
    factors when the words permit it.
    """
    p = len(generator_words)
    if not 1 <= p < n:
        raise InputError(f"need 1 <= #words < n, got {p} words for n={n}")
    masks = []
    for word in generator_words:
        m = 0
        for col in word:
            if not 1 <= col <= n:
                raise InputError(f"word column {col} outside 1..{n}")
            if m >> (col - 1) & 1:
                raise InputError(f"word lists column {col} twice")
            m |= 1 << (col - 1)
        masks.append(m)

    # Eliminate with pivots preferentially outside `prefer_basic` so the
    # preferred columns survive as basic factors.
    preferred = set(prefer_basic)
    order = [c for c in range(1, n + 1) if c not in preferred]
    order += [c for c in range(1, n + 1) if c in preferred]
    rows = list(masks)
    pivot_of_row: list[int] = []
    for r in range(p):
        pivot = None
        for col in order:
            if col in pivot_of_row:
                continue
            candidates = [
                i for i in range(r, p) if rows[i] >> (col - 1) & 1
            ]
            if candidates:
                pivot = col
                rows[r], rows[candidates[0]] = rows[candidates[0]], rows[r]
                break
        if pivot is None:
            raise InputError(
                f"defining word {r + 1} is dependent on the words before it"
            )
        pivot_of_row.append(pivot)
        for i in range(p):
            if i != r and rows[i] >> (pivot - 1) & 1:
                rows[i] ^= rows[r]

    k = n - p
    basic = [c for c in range(1, n + 1) if c not in set(pivot_of_row)]
    labels = [0] * n
    for idx, col in enumerate(basic):
        labels[col - 1] = 1 << idx
    for r, col in enumerate(pivot_of_row):
        lab = 0
        rest = rows[r] & ~(1 << (col - 1))
        for b in range(n):
            if rest >> b & 1:
                lab ^= labels[b]
        labels[col - 1] = lab
    return Design(k, tuple(labels))


def defining_words(d: Design, max_cols: int = 24) -> set[frozenset[int]]:
    """All nonempty column subsets whose labels XOR to zero.

    Exponential in n; guarded for catalog-scale use only.
    """
    if d.n > max_cols:
        raise CapacityError(f"defining_words limited to {max_cols} columns")
    words: set[frozenset[int]] = set()
    for mask in range(1, 1 << d.n):
        acc = 0
        m = mask
        while m:
            acc ^= d.labels[(m & -m).bit_length() - 1]
            m &= m - 1
        if acc == 0:
            words.add(frozenset(i + 1 for i in range(d.n) if mask >> i & 1))
    return words


def double(d: Design) -> Design:
    """One doubling step: 2N runs, 2n columns, block-append convention.

    Old columns keep their labels (new top bit 0); the appended block
    repeats them with the new top bit set.
    """
    w = d.log2_runs
    if w + 1 > MAX_WIDTH:
        raise CapacityError(f"doubling past width {MAX_WIDTH}")
    top = 1 << w
    labels = d.labels + tuple(lab | top for lab in d.labels)
    if d.pedigree is not None:
        ped = DoublingPedigree(d.pedigree.base, d.pedigree.t + 1)
    else:
        ped = DoublingPedigree(Design(d.log2_runs, d.labels), 1)
    return Design(w + 1, labels, ped)


def double_iter(d: Design, t: int) -> Design:
    """`d` doubled `t` times, carrying a pedigree rooted at `d`."""
    if t < 0:
        raise InputError(f"doubling count must be >= 0, got {t}")
    base = Design(d.log2_runs, d.labels)
    out = Design(d.log2_runs, d.labels, DoublingPedigree(base, 0))
    for _ in range(t):
        out = double(out)
    return out


def project(d: Design, keep: Sequence[int]) -> Design:
    """Design made of the 1-based columns `keep`, in the given order."""
    seen = set()
    labels = []
    for j in keep:
        if not 1 <= j <= d.n:
            raise InputError(f"column {j} outside 1..{d.n}")
        if j in seen:
            raise InputError(f"column {j} selected twice")
        seen.add(j)
        labels.append(d.labels[j - 1])
    return design_from_labels(d.log2_runs, labels)


def complement_split(
    x: Design, complement_cols: Iterable[int]
) -> tuple[Design, Design, FrequencyVector]:
    """Split a pedigreed design into (kept D, deleted D-bar, frequencies)."""
    ped = x.pedigree
    if ped is None:
        raise InputError("complement_split needs a design with a pedigree")
    cols = sorted(set(complement_cols))
    for j in cols:
        if not 1 <= j <= x.n:
            raise InputError(f"column {j} outside 1..{x.n}")
    chosen = set(cols)
    kept = [j for j in range(1, x.n + 1) if j not in chosen]
    if not kept:
        raise InputError("complement may not take every column")
    f = [0] * ped.m0
    for j in cols:
        f[ped.column_group(j) - 1] += 1
    d = project(x, kept)
    if cols:
        dbar = project(x, cols)
    else:
        dbar = Design(x.log2_runs, ())
    return d, dbar, FrequencyVector(tuple(f))


def column_basis_rows(d: Design) -> list[int]:
    """Rows of the k x n generator matrix, packed as n-bit ints."""
    rows = []
    for s in range(d.log2_runs):
        r = 0
        for j, lab in enumerate(d.labels):
            r |= (lab >> s & 1) << j
        rows.append(r)
    return rows


def codeword_weight_distribution(d: Design) -> tuple[list[int], int]:
    """Weight counts of the 2^rank distinct row-codewords, plus the rank."""
    basis = gf2_reduce_basis(column_basis_rows(d))
    r = len(basis)
    counts = [0] * (d.n + 1)
    counts[0] += 1
    cur = 0
    for i in range(1, 1 << r):
        cur ^= basis[(i & -i).bit_length() - 1]
        counts[cur.bit_count()] += 1
    return counts, r


def row_weight_distribution(d: Design) -> dict[int, int]:
    """Hamming-weight counts over all N rows; values sum to N."""
    counts, r = codeword_weight_distribution(d)
    mult = 1 << (d.log2_runs - r)
    return {w: c * mult for w, c in enumerate(counts) if c}


def row_weights_prefix(d: Design, rows: int) -> list[int]:
    """Weights of rows 0..rows-1, evaluated directly per row."""
    if rows > d.runs:
        raise InputError(f"asked for {rows} rows of a {d.runs}-run design")
    out = []
    for x in range(rows):
        out.append(sum((x & lab).bit_count() & 1 for lab in d.labels))
    return out


def moment(d: Design, k: int) -> int:
    """Power moment M_k = sum over rows of weight^k, exact."""
    if k < 0:
        raise InputError(f"moment order must be >= 0, got {k}")
    return sum(c * w**k for w, c in row_weight_distribution(d).items())


def design_to_dict(d: Design) -> dict:
    doc: dict = {"log2_runs": d.log2_runs, "labels": list(d.labels)}
    if d.pedigree is None:
        doc["pedigree"] = None
    else:
        doc["pedigree"] = {
            "base_log2_runs": d.pedigree.base.log2_runs,
            "base_labels": list(d.pedigree.base.labels),
            "t": d.pedigree.t,
        }
    return doc


def design_from_dict(doc: Mapping) -> Design:
    try:
        log2_runs = int(doc["log2_runs"])
        labels = tuple(int(v) for v in doc["labels"])
        ped_doc = doc.get("pedigree")
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed design document: {exc}") from exc
    ped = None
    if ped_doc is not None:
        try:
            base = Design(
                int(ped_doc["base_log2_runs"]),
                tuple(int(v) for v in ped_doc["base_labels"]),
            )
            ped = DoublingPedigree(base, int(ped_doc["t"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed pedigree document: {exc}") from exc
        if ped.columns != len(labels):
            raise InputError(
                f"pedigree implies {ped.columns} columns, document has {len(labels)}"
            )
        for j in range(1, len(labels) + 1):
            if ped.column_label(j) != labels[j - 1]:
                raise InputError(f"pedigree label mismatch at column {j}")
    return Design(log2_runs, labels, ped)


def save_design(d: Design, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(design_to_dict(d), fh, sort_keys=True)
        fh.write("\n")


def load_design(path: str) -> Design:
    with open(path, encoding="utf-8") as fh:
        return design_from_dict(json.load(fh))
