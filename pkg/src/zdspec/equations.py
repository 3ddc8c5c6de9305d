"""Root solvers over GF(2^n) and the brute-force oracles that check them.

Covers three families used by the closed-form predictors:

* quadratics a x^2 + b x + c, solved through the Artin-Schreier form
  y^2 + y = ac/b^2 (trace trichotomy decides the root count),
* affine trinomials z^(2^k) + z + B, solved by the explicit summation
  formula with subfield-trace solvability test, plus an independent
  GF(2)-linear-system solver,
* quartic x^4 + a2 x^2 + a1 x + a0 factor-shape classification through
  the companion cubic y^3 + a2 y + a1 and trace conditions, with a
  brute-force shape oracle that counts roots in extension fields.

Every solver returns verified data: trinomial roots are substituted back
before being returned, and the quartic classifier cross-checks its shape
against the base-field root count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf import Field, FieldElement, find_irreducible

CUBIC_SHAPES = frozenset({(1, 1, 1), (1, 2), (3,)})
QUARTIC_SHAPES = frozenset({(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)})


def _require_char2(field: Field) -> None:
    if field.p != 2:
        raise ValueError("solver requires characteristic 2")


def _same_field(*elems: FieldElement) -> Field:
    f = elems[0].field
    for e in elems[1:]:
        if e.field.spec != f.spec:
            raise ValueError("coefficients belong to different fields")
    return f


@dataclass(frozen=True)
class QuadraticChar2:
    """a x^2 + b x + c over GF(2^n), a != 0."""

    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __post_init__(self):
        f = _same_field(self.a, self.b, self.c)
        _require_char2(f)
        if self.a.is_zero:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def field(self) -> Field:
        return self.a.field


@dataclass(frozen=True)
class TrinomialEq:
    """z^(2^k) + z + B over GF(2^n), 0 < k < n."""

    field: Field
    k: int
    B: FieldElement

    def __post_init__(self):
        _require_char2(self.field)
        if not 0 < self.k < self.field.n:
            raise ValueError(f"k must satisfy 0 < k < {self.field.n}, got {self.k}")
        if self.B.field.spec != self.field.spec:
            raise ValueError("B belongs to a different field")

    @property
    def d(self) -> int:
        return math.gcd(self.k, self.field.n)

    @property
    def l(self) -> int:
        return self.field.n // self.d


@dataclass(frozen=True)
class QuarticEq:
    """x^4 + a2 x^2 + a1 x + a0 over GF(2^n) with a0 a1 != 0."""

    a2: FieldElement
    a1: FieldElement
    a0: FieldElement

    def __post_init__(self):
        f = _same_field(self.a2, self.a1, self.a0)
        _require_char2(f)
        if self.a0.is_zero or self.a1.is_zero:
            raise ValueError("a0 and a1 must both be nonzero")

    @property
    def field(self) -> Field:
        return self.a2.field


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------

def brute_roots(field: Field, coeffs) -> frozenset[FieldElement]:
    """Roots found by evaluating the polynomial at every field element.

    coeffs lists the coefficient of x^i at position i, as elements or
    canonical indices.  The zero polynomial vanishes everywhere.
    """
    idxs = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            if c.field.spec != field.spec:
                raise ValueError("coefficient belongs to a different field")
            idxs.append(c.idx)
        else:
            idxs.append(int(c))
    vals = field.tables.eval_poly(idxs)
    return frozenset(FieldElement(field, int(i)) for i in np.nonzero(vals == 0)[0])


_EXT_CACHE: dict = {}


def extension_embedding(field: Field, t: int) -> tuple[Field, np.ndarray]:
    """GF(p^(nt)) with the canonical modulus, and the embedding table that
    maps every base-field index to its image index.

    The embedding sends the base generator to the smallest-index root of
    the base modulus inside the extension, so it is reproducible.
    """
    if t == 1:
        return field, np.asarray(field.tables.indices)
    key = (field.spec, t)
    hit = _EXT_CACHE.get(key)
    if hit is not None:
        return hit
    ext = Field(field.p, field.n * t,
                find_irreducible(field.p, field.n * t, max_order=2 ** 63))
    # modulus coefficients are prime-subfield scalars: index == value
    vals = ext.tables.eval_poly(list(field.modulus))
    roots = np.nonzero(vals == 0)[0]
    if roots.size != field.n:
        raise RuntimeError("base modulus does not split as expected in the extension")
    beta = int(roots[0])
    bpow = [1]
    for _ in range(field.n - 1):
        bpow.append(ext._mul_idx(bpow[-1], beta))
    emb = np.zeros(field.order, dtype=np.int64)
    for i in range(field.order):
        acc = 0
        rem = i
        for j in range(field.n):
            dig = rem % field.p
            rem //= field.p
            if dig:
                acc = ext._add_idx(acc, ext._mul_idx(dig, bpow[j]))
        emb[i] = acc
    emb.setflags(write=False)
    _EXT_CACHE[key] = (ext, emb)
    return ext, emb


def brute_factor_shape(field: Field, coeffs) -> tuple[int, ...]:
    """Factor shape of a monic separable cubic or quartic, decided purely by
    root counts in the base field and its quadratic and cubic extensions."""
    _require_char2(field)
    elems = [field.element(c) if not isinstance(c, FieldElement) else c for c in coeffs]
    deg = len(elems) - 1
    if deg not in (3, 4):
        raise ValueError("shape oracle handles cubics and quartics only")
    if elems[-1] != field.one:
        raise ValueError("polynomial must be monic")
    if deg == 4 and (elems[0].is_zero or elems[1].is_zero):
        raise ValueError("quartic oracle needs a0 a1 != 0 (separability)")
    if deg == 3 and elems[0].is_zero:
        raise ValueError("cubic oracle needs a nonzero constant term (separability)")
    counts = []
    for t in (1, 2, 3):
        ext, emb = extension_embedding(field, t)
        vals = ext.tables.eval_poly([int(emb[e.idx]) for e in elems])
        counts.append(int(np.count_nonzero(vals == 0)))
    sig = tuple(counts)
    if deg == 3:
        table = {(3, 3, 3): (1, 1, 1), (1, 3, 1): (1, 2), (0, 0, 3): (3,)}
    else:
        table = {(4, 4, 4): (1, 1, 1, 1), (2, 4, 2): (1, 1, 2),
                 (1, 1, 4): (1, 3), (0, 4, 0): (2, 2), (0, 0, 0): (4,)}
    shape = table.get(sig)
    if shape is None:
        raise RuntimeError(f"unexpected extension root counts {sig}")
    return shape


# ---------------------------------------------------------------------------
# quadratics
# ---------------------------------------------------------------------------

def quadratic_batch(field: Field, a, b, c_indices=None):
    """Root data of a x^2 + b x + c for a vector of c values at once.

    Returns (counts, root1, root2) arrays indexed like c_indices (all c
    in canonical order when omitted); absent roots hold the sentinel q.
    This is the kernel behind solve_quadratic_char2, exposed so that
    exhaustive sweeps stay vectorized.
    """
    _require_char2(field)
    t = field.tables
    q = field.order
    ia = a.idx if isinstance(a, FieldElement) else int(a)
    ib = b.idx if isinstance(b, FieldElement) else int(b)
    if ia == 0:
        raise ValueError("leading coefficient must be nonzero")
    C = np.asarray(t.indices if c_indices is None else c_indices)
    counts = np.zeros(C.shape, dtype=np.int64)
    r1 = np.full(C.shape, q, dtype=np.int64)
    r2 = np.full(C.shape, q, dtype=np.int64)
    if ib == 0:
        # unique root sqrt(c / a)
        counts[:] = 1
        r1 = t.sqrt_map[t.mul_vec(C, field._inv_idx(ia))]
        return counts, r1, r2
    scale = field._mul_idx(ia, field._inv_idx(field._mul_idx(ib, ib)))  # a / b^2
    ba = field._mul_idx(ib, field._inv_idx(ia))                         # b / a
    arg = t.mul_vec(C, scale)
    solvable = t.trace1[arg] == 0
    y0 = t.artin_schreier[arg[solvable]]
    x0 = t.mul_vec(y0, ba)
    counts[solvable] = 2
    r1[solvable] = x0
    r2[solvable] = np.bitwise_xor(x0, ba)
    return counts, r1, r2


def solve_quadratic_char2(eq: QuadraticChar2) -> frozenset[FieldElement]:
    """All roots of a x^2 + b x + c in the base field.

    The count follows the trace trichotomy: one root when b = 0, else
    two or zero as the absolute trace of ac/b^2 is 0 or 1.
    """
    field = eq.field
    counts, r1, r2 = quadratic_batch(field, eq.a, eq.b, np.array([eq.c.idx]))
    n = int(counts[0])
    roots = []
    if n >= 1:
        roots.append(FieldElement(field, int(r1[0])))
    if n == 2:
        roots.append(FieldElement(field, int(r2[0])))
    return frozenset(roots)


# ---------------------------------------------------------------------------
# affine trinomials z^(2^k) + z + B
# ---------------------------------------------------------------------------

def trinomial_solvability(eq: TrinomialEq) -> FieldElement:
    """The obstruction Tr from GF(2^n) onto GF(2^d) applied to B; the
    trinomial has roots exactly when this vanishes."""
    return eq.field.trace(eq.B, eq.d)


def solve_trinomial(eq: TrinomialEq) -> frozenset[FieldElement]:
    """Roots of z^(2^k) + z + B via the explicit summation formula.

    Returns the empty set when the subfield trace of B is nonzero;
    otherwise a particular solution is built from the first canonical c
    with nonzero subfield trace, and the full 2^d-root coset x + GF(2^d)
    is verified by substitution before being returned.
    """
    field, k, B = eq.field, eq.k, eq.B
    d, l = eq.d, eq.l
    if not trinomial_solvability(eq).is_zero:
        return frozenset()
    c = None
    for i in range(1, field.order):
        cand = FieldElement(field, i)
        if not field.trace(cand, d).is_zero:
            c = cand
            break
    if c is None:  # trace onto a proper subfield is surjective; unreachable
        raise RuntimeError("no element with nonzero subfield trace")
    tc = field.trace(c, d)
    inner = field.zero
    total = field.zero
    for i in range(l):
        inner = inner + c.frobenius(k * i)
        total = total + inner * B.frobenius(k * i)
    x = total / tc
    roots = [x + delta for delta in field.subfield(d).elements()]
    for r in roots:
        if not (r.frobenius(k) + r + B).is_zero:
            raise RuntimeError("summation formula produced a non-root")
    return frozenset(roots)


def solve_trinomial_linear(eq: TrinomialEq) -> frozenset[FieldElement]:
    """Independent solver: z -> z^(2^k) + z as a GF(2)-linear map on
    coefficient vectors, solved by Gaussian elimination."""
    field, k, B = eq.field, eq.k, eq.B
    n = field.n
    cols = [field._pow_idx(1 << j, 2 ** k) ^ (1 << j) for j in range(n)]
    rows = []
    for i in range(n):
        mask = 0
        for j in range(n):
            if (cols[j] >> i) & 1:
                mask |= 1 << j
        rows.append((mask, (B.idx >> i) & 1))
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        for pb, (pm, pr) in pivots.items():
            if (mask >> pb) & 1:
                mask ^= pm
                rhs ^= pr
        if mask:
            pb = (mask & -mask).bit_length() - 1
            pivots[pb] = (mask, rhs)
        elif rhs:
            return frozenset()
    free = [j for j in range(n) if j not in pivots]
    out = []
    for assign in range(1 << len(free)):
        v = 0
        for t, j in enumerate(free):
            if (assign >> t) & 1:
                v |= 1 << j
        for pb in sorted(pivots, reverse=True):
            pm, pr = pivots[pb]
            val = pr ^ ((pm & v) & ~(1 << pb)).bit_count() % 2
            if val:
                v |= 1 << pb
        out.append(FieldElement(field, v))
    return frozenset(out)


# ---------------------------------------------------------------------------
# cubics and quartics (factor shapes)
# ---------------------------------------------------------------------------

def classify_cubic(a2: FieldElement, a1: FieldElement):
    """Factor shape of y^3 + a2 y + a1 and its base-field roots.

    Root counting is exhaustive; with a1 = 0 the cubic is y (y + s)^2
    for s = sqrt(a2), which is three linear factors.
    """
    field = _same_field(a2, a1)
    _require_char2(field)
    if a1.is_zero:
        s = a2 ** (1 << (field.n - 1))  # square root
        return (1, 1, 1), frozenset({field.zero, s})
    roots = brute_roots(field, [a1, a2, field.zero, field.one])
    shape = {0: (3,), 1: (1, 2), 3: (1, 1, 1)}.get(len(roots))
    if shape is None:  # a1 != 0 makes the cubic separable
        raise RuntimeError(f"separable cubic with {len(roots)} roots")
    return shape, roots


def classify_quartic(eq: QuarticEq):
    """Factor shape of x^4 + a2 x^2 + a1 x + a0 and its base-field roots.

    The shape follows from the companion cubic y^3 + a2 y + a1: a cubic
    of shape (3) forces (1,3); shape (1,2) gives (1,1,2) or (4) as the
    trace of w1 = a0 r1^2 / a1^2 is 0 or 1; shape (1,1,1) gives
    (1,1,1,1) when all three traces vanish and (2,2) when exactly two
    are 1 (the trace sum is always even because the cubic roots sum to
    zero).  Root values come from the exhaustive scan and their number
    is checked against the shape's linear-factor count.
    """
    field = eq.field
    a2, a1, a0 = eq.a2, eq.a1, eq.a0
    cubic_shape, cubic_roots = classify_cubic(a2, a1)
    a1sq_inv = (a1 * a1).inverse()

    def tr(w: FieldElement) -> int:
        return int(field.tables.trace1[w.idx])

    if cubic_shape == (3,):
        shape = (1, 3)
    elif cubic_shape == (1, 2):
        (r1,) = cubic_roots
        shape = (1, 1, 2) if tr(a0 * r1 * r1 * a1sq_inv) == 0 else (4,)
    else:
        traces = sorted(tr(a0 * r * r * a1sq_inv) for r in cubic_roots)
        if traces == [0, 0, 0]:
            shape = (1, 1, 1, 1)
        elif traces == [0, 1, 1]:
            shape = (2, 2)
        else:
            raise RuntimeError(f"trace parity violated: {traces}")
    roots = brute_roots(field, [a0, a1, a2, field.zero, field.one])
    if len(roots) != shape.count(1):
        raise RuntimeError(
            f"shape {shape} disagrees with {len(roots)} base-field roots")
    return shape, roots
