"""Difference tables and second-order zero differential spectra.

For a function F on GF(p^n) this module computes, by full enumeration:

* the difference distribution table  |{x : F(x+a) - F(x) = b}|,
* the second-order zero differential counts
  |{x : F(x+a+b) - F(x+b) - F(x+a) + F(x) = 0}|,
* (p = 2 only) the Feistel boomerang connectivity table, whose entries
  coincide with the second-order counts because the signs vanish,

together with the derived uniformities, histogram summaries, a
structural property check for the char-2 table, and CSV/JSON emission.
Counting one (a, b) entry is O(p^n); full tables are O(p^3n) and are
meant for desk-scale fields.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .gf import Field, FieldElement


class PowerFunction:
    """The power map x -> x^d on a field, with 0^d = 0 for every d >= 1."""

    __slots__ = ("field", "d")

    def __init__(self, field: Field, d: int):
        if d < 1:
            raise ValueError(f"exponent must be >= 1, got {d}")
        self.field = field
        self.d = d

    def __call__(self, e: FieldElement) -> FieldElement:
        return self.field.element(e) ** self.d

    def values(self) -> np.ndarray:
        """Value table over all elements in canonical order."""
        return self.field.tables.pow_map(self.d)

    def __repr__(self) -> str:
        return f"x^{self.d} over {self.field!r}"


class LookupFunction:
    """An arbitrary function on a field given by its value table.

    Used for structural testing of non-power maps; the table lists the
    image of every element in canonical index order.
    """

    __slots__ = ("field", "_values")

    def __init__(self, field: Field, values):
        vals = np.asarray(list(values), dtype=np.int64)
        if vals.shape != (field.order,):
            raise ValueError(f"value table must have length {field.order}")
        if vals.min() < 0 or vals.max() >= field.order:
            raise ValueError("value table entries out of range")
        vals.setflags(write=False)
        self.field = field
        self._values = vals

    def __call__(self, e: FieldElement) -> FieldElement:
        return self.field.element(int(self._values[self.field.element(e).idx]))

    def values(self) -> np.ndarray:
        return self._values

    def __repr__(self) -> str:
        return f"lookup function over {self.field!r}"


def _as_idx(field: Field, v) -> int:
    if isinstance(v, FieldElement):
        if v.field.spec != field.spec:
            raise ValueError("element belongs to a different field")
        return v.idx
    if isinstance(v, (int, np.integer)):
        i = int(v)
        if not 0 <= i < field.order:
            raise ValueError(f"index {i} out of range for {field!r}")
        return i
    raise TypeError(f"expected a field element or index, got {type(v).__name__}")


# ---------------------------------------------------------------------------
# entry kernels
# ---------------------------------------------------------------------------

class _PairCounter:
    """Counts second-order zero solutions for one (a, b) pair, vectorized
    over x.  In characteristic 2 the four terms combine by xor; otherwise
    the signed sum is carried out digitwise mod p."""

    def __init__(self, fn):
        self.field: Field = fn.field
        self.tables = self.field.tables
        self.values = fn.values()
        if self.field.p == 2:
            self.X = self.tables.indices
        else:
            self.vdigits = self.tables.digits[self.values]
            self._perms: dict[int, np.ndarray] = {}

    def _perm(self, e: int) -> np.ndarray:
        # x -> x + e as an index permutation; idempotent to recompute, so
        # the cache needs no locking under concurrent row workers.
        perm = self._perms.get(e)
        if perm is None:
            perm = self.tables.add_vec(self.tables.indices, e)
            self._perms[e] = perm
        return perm

    def count(self, ia: int, ib: int) -> int:
        f = self.field
        if f.p == 2:
            v = self.values
            x = self.X
            acc = v[x ^ (ia ^ ib)] ^ v[x ^ ib] ^ v[x ^ ia] ^ v
            return int(np.count_nonzero(acc == 0))
        iab = f._add_idx(ia, ib)
        vd = self.vdigits
        m = vd[self._perm(iab)] - vd[self._perm(ib)] - vd[self._perm(ia)] + vd
        return int(np.count_nonzero(np.all(m % f.p == 0, axis=1)))


def make_sozd_counter(fn) -> Callable[[int, int], int]:
    """A reusable (a_idx, b_idx) -> count closure for hot loops."""
    return _PairCounter(fn).count


def _ddt_row(fn, tables, ia: int) -> np.ndarray:
    values = fn.values()
    diffs = tables.sub_vec(values[tables.add_vec(tables.indices, ia)], values)
    return np.bincount(diffs, minlength=fn.field.order)


# ---------------------------------------------------------------------------
# public entry/uniformity operations
# ---------------------------------------------------------------------------

def ddt_entry(fn, a, b) -> int:
    """|{x : F(x+a) - F(x) = b}| by full enumeration."""
    ia, ib = _as_idx(fn.field, a), _as_idx(fn.field, b)
    return int(_ddt_row(fn, fn.field.tables, ia)[ib])


def differential_uniformity(fn) -> int:
    """Max DDT entry over a != 0 (all b)."""
    if fn.field.order < 2:
        raise ValueError("field too small")
    tables = fn.field.tables
    best = 0
    for ia in range(1, fn.field.order):
        best = max(best, int(_ddt_row(fn, tables, ia).max()))
    return best


def sozd_entry(fn, a, b) -> int:
    """|{x : F(x+a+b) - F(x+b) - F(x+a) + F(x) = 0}| by full enumeration."""
    ia, ib = _as_idx(fn.field, a), _as_idx(fn.field, b)
    return _PairCounter(fn).count(ia, ib)


def fbct_entry(fn, a, b) -> int:
    """Feistel boomerang table entry; defined in characteristic 2 only,
    where it equals the second-order zero differential count."""
    if fn.field.p != 2:
        raise ValueError("the Feistel boomerang table requires characteristic 2")
    return sozd_entry(fn, a, b)


def _admissible_pairs(field: Field):
    """Pairs over which the second-order uniformity is taken: both nonzero,
    and additionally a != b when p = 2."""
    q = field.order
    if field.p == 2:
        return ((a, b) for a in range(1, q) for b in range(1, q) if a != b)
    return ((a, b) for a in range(1, q) for b in range(1, q))


def admissible_descriptor(field: Field) -> str:
    if field.p == 2:
        return "a != 0, b != 0, a != b"
    return "a != 0, b != 0"


@dataclass(frozen=True)
class SpectrumSummary:
    """Histogram of second-order counts over the admissible (a, b) set."""

    histogram: dict[int, int]
    uniformity: int
    admissible: str

    def total_pairs(self) -> int:
        return sum(self.histogram.values())

    def to_dict(self) -> dict:
        hist = {str(k): self.histogram[k] for k in sorted(self.histogram)}
        return {"histogram": hist, "uniformity": self.uniformity,
                "admissible": self.admissible}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def sozd_spectrum(fn) -> SpectrumSummary:
    """Histogram and max of the second-order counts over admissible pairs."""
    field = fn.field
    count = _PairCounter(fn).count
    hist: dict[int, int] = {}
    for ia, ib in _admissible_pairs(field):
        c = count(ia, ib)
        hist[c] = hist.get(c, 0) + 1
    uniformity = max(hist) if hist else 0
    return SpectrumSummary(hist, uniformity, admissible_descriptor(field))


def sozd_uniformity(fn) -> int:
    return sozd_spectrum(fn).uniformity


def feistel_boomerang_uniformity(fn) -> int:
    """Max FBCT entry over ab(a+b) != 0 (characteristic 2)."""
    if fn.field.p != 2:
        raise ValueError("the Feistel boomerang table requires characteristic 2")
    return sozd_uniformity(fn)


# ---------------------------------------------------------------------------
# full tables
# ---------------------------------------------------------------------------

TABLE_KINDS = ("ddt", "fbct", "sozd")


def evaluation_estimate(field: Field, which: str) -> int:
    """Number of point evaluations a full table costs."""
    q = field.order
    return q * q if which == "ddt" else q * q * q


def full_table(fn, which: str, threads: int | None = None) -> np.ndarray:
    """Full q x q table of counts, rows and columns in canonical order.

    Rows are independent and computed in parallel; assembly indexes rows
    by position, so the output is identical for any thread count.
    """
    if which not in TABLE_KINDS:
        raise ValueError(f"unknown table kind {which!r}; expected one of {TABLE_KINDS}")
    field = fn.field
    if which == "fbct" and field.p != 2:
        raise ValueError("the Feistel boomerang table requires characteristic 2")
    q = field.order
    out = np.empty((q, q), dtype=np.int64)
    tables = field.tables
    if which == "ddt":
        def row(ia: int) -> np.ndarray:
            return _ddt_row(fn, tables, ia)
    else:
        counter = _PairCounter(fn)

        def row(ia: int) -> np.ndarray:
            return np.fromiter((counter.count(ia, ib) for ib in range(q)),
                               dtype=np.int64, count=q)

    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    if workers == 1 or q == 1:
        for ia in range(q):
            out[ia] = row(ia)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for ia, r in enumerate(pool.map(row, range(q))):
                out[ia] = r
    return out


# ---------------------------------------------------------------------------
# FBCT property suite
# ---------------------------------------------------------------------------

@dataclass
class PropertyCheck:
    name: str
    holds: bool
    counterexample: tuple | None = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "holds": self.holds}
        if self.counterexample is not None:
            d["counterexample"] = list(self.counterexample)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class PropertySuiteReport:
    """Results of the six structural checks on a full char-2 table."""

    checks: list[PropertyCheck]
    literal_equalities: PropertyCheck = dc_field(default=None)  # informational

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed,
                "checks": [c.to_dict() for c in self.checks],
                "literal_equalities": self.literal_equalities.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _first_bad(mask: np.ndarray) -> tuple | None:
    bad = np.argwhere(~mask)
    return tuple(int(v) for v in bad[0]) if bad.size else None


def fbct_property_suite(fn, threads: int | None = None) -> PropertySuiteReport:
    """Check the standard structural identities of the char-2 table.

    The last identity is checked as FBCT(a,b) = FBCT(a,a+b), which holds
    because replacing x by x+a permutes the four summands.  The variant
    FBCT(a,a) = FBCT(a,a+b) is evaluated too but reported separately: it
    would force every row to be constant and looks like a misprint of
    the row-shift identity.
    """
    field = fn.field
    if field.p != 2:
        raise ValueError("the property suite requires characteristic 2")
    q = field.order
    m = full_table(fn, "fbct", threads=threads)
    x = np.arange(q)
    shifted = m[x[:, None], x[:, None] ^ x[None, :]]  # FBCT(a, a^b)

    checks = [
        PropertyCheck("symmetry", bool((m == m.T).all()), _first_bad(m == m.T)),
        PropertyCheck("multiplicity_mod_4", bool((m % 4 == 0).all()), _first_bad(m % 4 == 0)),
        PropertyCheck("first_line", bool((m[0, :] == q).all())),
        PropertyCheck("first_column", bool((m[:, 0] == q).all())),
        PropertyCheck("diagonal", bool((np.diag(m) == q).all())),
        PropertyCheck("equalities_row_shift", bool((m == shifted).all()),
                      _first_bad(m == shifted)),
    ]
    lit_mask = np.diag(m)[:, None] == shifted
    literal = PropertyCheck(
        "equalities_literal", bool(lit_mask.all()), _first_bad(lit_mask),
        note=("variant FBCT(a,a) = FBCT(a,a+b); fails whenever a row is not "
              "constant and is recorded as a suspected misprint of the "
              "row-shift identity FBCT(a,b) = FBCT(a,a+b)"),
    )
    return PropertySuiteReport(checks, literal)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def element_label(field: Field, idx: int) -> str:
    return FieldElement(field, idx).label


def table_to_csv(matrix: np.ndarray, field: Field) -> str:
    """CSV with a header row of element labels; rows carry their label too."""
    q = field.order
    if matrix.shape != (q, q):
        raise ValueError("matrix shape does not match the field order")
    labels = [element_label(field, i) for i in range(q)]
    lines = ["a\\b," + ",".join(labels)]
    for ia in range(q):
        lines.append(labels[ia] + "," + ",".join(str(int(v)) for v in matrix[ia]))
    return "\n".join(lines) + "\n"


def table_to_json(matrix: np.ndarray, field: Field, which: str, d: int | None = None) -> str:
    payload = {
        "table": which,
        "field": {"p": field.p, "n": field.n, "modulus": list(field.modulus)},
        "labels": [element_label(field, i) for i in range(field.order)],
        "rows": [[int(v) for v in row] for row in matrix],
    }
    if d is not None:
        payload["d"] = d
    return json.dumps(payload, indent=2) + "\n"
