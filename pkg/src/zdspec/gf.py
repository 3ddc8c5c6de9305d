"""Finite fields GF(p^n) with a canonical element order.

An element is the residue of a polynomial over Z_p modulo a monic
irreducible modulus of degree n, stored as the coefficient vector
(c0, ..., c_{n-1}) with c_i the coefficient of x^i.  The canonical index
of an element is sum(c_i * p**i), so enumeration in increasing index
varies the constant term fastest: index 0 is zero, index 1 is one, and
for k < p index k is the prime-subfield constant k.  For p = 2 the index
is the familiar packed-bit encoding and arithmetic works directly on
machine integers.

FieldSpec, Field and FieldElement never mutate after construction and
every operation is a pure function, so they can be shared freely across
threads.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

#: Largest field order constructed without an explicit override.
DESK_SCALE_BOUND = 1 << 20


def is_prime(m: int) -> bool:
    """Trial-division primality check, adequate for desk-scale inputs."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _digits(index: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(index % p)
        index //= p
    return out


def _index(coeffs: Sequence[int], p: int) -> int:
    idx = 0
    for c in reversed(coeffs):
        idx = idx * p + c
    return idx


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over Z_p (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _ptrim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m must be monic
    a = list(a)
    dm = len(m) - 1
    while a and len(a) - 1 >= dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _ptrim(a)


def _pmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        monic_b = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, monic_b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


# ---------------------------------------------------------------------------
# irreducibility and modulus search
# ---------------------------------------------------------------------------

def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial-division irreducibility test for a monic polynomial over Z_p."""
    m = list(modulus)
    n = len(m) - 1
    if n < 1 or m[n] != 1:
        return False
    if n == 1:
        return True
    if m[0] == 0:
        return False  # divisible by x
    for deg in range(1, n // 2 + 1):
        for k in range(p ** deg):
            cand = _digits(k, p, deg) + [1]
            if not _pmod(m, cand, p):
                return False
    return True


def irreducibility_oracle(modulus: Sequence[int], p: int) -> bool:
    """Independent irreducibility check via gcd(f, x^(p^i) - x).

    A monic f of degree n is irreducible exactly when the gcd stays
    trivial for every 1 <= i < n: a factor of degree d < n would divide
    x^(p^d) - x and be detected at i = d.
    """
    m = list(modulus)
    n = len(m) - 1
    if n < 1 or m[n] != 1:
        return False
    if n == 1:
        return True
    t = [0, 1]
    for _ in range(1, n):
        t = _ppowmod(t, p, m, p)
        diff = list(t) + [0] * (2 - len(t))
        diff[1] = (diff[1] - 1) % p
        diff = _ptrim(diff)
        if not diff:
            return False  # x^(p^i) == x mod f, so f splits into small factors
        g = _pgcd(diff, m, p)
        if len(g) - 1 >= 1:
            return False
    return True


def find_irreducible(p: int, n: int, max_order: int = DESK_SCALE_BOUND) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n over Z_p.

    Candidates are ordered by the canonical index of their coefficient
    vector (constant term least significant), which makes the choice
    reproducible bit-for-bit.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    if p ** n > max_order:
        raise ValueError(f"field order {p}^{n} exceeds the bound {max_order}")
    for k in range(p ** n):
        cand = _digits(k, p, n) + [1]
        if n > 1 and cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {n} over Z_{p}")


# ---------------------------------------------------------------------------
# field types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Value object pinning down a field: characteristic, degree, modulus.

    Two specs with equal (p, n, modulus) define identical arithmetic.
    """

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"degree must be >= 1, got {self.n}")
        mod = self.modulus
        if len(mod) != self.n + 1:
            raise ValueError(
                f"modulus needs {self.n + 1} coefficients for degree {self.n}, got {len(mod)}"
            )
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over Z_{self.p}")

    @property
    def order(self) -> int:
        return self.p ** self.n


class Field:
    """Arithmetic engine for GF(p^n); elements are created through it."""

    __slots__ = ("spec", "_modbits", "_zero", "_one", "_tables", "_subfields")

    def __init__(self, p, n: int | None = None, modulus: Sequence[int] | None = None,
                 *, max_order: int = DESK_SCALE_BOUND):
        if isinstance(p, FieldSpec):
            if n is not None or modulus is not None:
                raise ValueError("pass either a FieldSpec or (p, n[, modulus])")
            spec = p
        else:
            if n is None:
                raise ValueError("degree n is required")
            if modulus is None:
                modulus = find_irreducible(p, n, max_order)
            spec = FieldSpec(p, n, tuple(int(c) for c in modulus))
        if spec.order > max_order:
            raise ValueError(f"field order {spec.p}^{spec.n} exceeds the bound {max_order}")
        self.spec = spec
        # packed modulus bits for the char-2 fast path
        self._modbits = sum(c << i for i, c in enumerate(spec.modulus)) if spec.p == 2 else 0
        self._zero = FieldElement(self, 0)
        self._one = FieldElement(self, 1)
        self._tables = None
        self._subfields = {}

    # -- identity ----------------------------------------------------------

    @property
    def p(self) -> int:
        return self.spec.p

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def order(self) -> int:
        return self.spec.order

    @property
    def modulus(self) -> tuple[int, ...]:
        return self.spec.modulus

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    # -- element construction ----------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return self._zero

    @property
    def one(self) -> "FieldElement":
        return self._one

    @property
    def x(self) -> "FieldElement":
        """The residue of the indeterminate itself (degree >= 2 only)."""
        if self.n < 2:
            raise ValueError("prime field has no polynomial generator x")
        return FieldElement(self, self.p)

    def element(self, value) -> "FieldElement":
        """Element from a canonical index, a coefficient sequence, or another
        element of the same field.  Integers are indices, not scalars."""
        if isinstance(value, FieldElement):
            if value.field.spec != self.spec:
                raise ValueError("element belongs to a different field")
            return value if value.field is self else FieldElement(self, value.idx)
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise ValueError(f"index {value} out of range for {self!r}")
            return FieldElement(self, value)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            raise ValueError(f"coefficient vector longer than degree {self.n}")
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElement(self, _index(coeffs, self.p))

    def scalar(self, k: int) -> "FieldElement":
        """The prime-subfield constant k mod p."""
        return FieldElement(self, k % self.p)

    def elements(self) -> list["FieldElement"]:
        """All p^n elements in canonical index order (zero first)."""
        return [FieldElement(self, i) for i in range(self.order)]

    def __iter__(self) -> Iterator["FieldElement"]:
        return (FieldElement(self, i) for i in range(self.order))

    def __len__(self) -> int:
        return self.order

    # -- index-space arithmetic ---------------------------------------------

    def _add_idx(self, i: int, j: int) -> int:
        p = self.spec.p
        if p == 2:
            return i ^ j
        out = 0
        mult = 1
        for _ in range(self.spec.n):
            out += ((i + j) % p) * mult
            i //= p
            j //= p
            mult *= p
        return out

    def _neg_idx(self, i: int) -> int:
        p = self.spec.p
        if p == 2:
            return i
        out = 0
        mult = 1
        for _ in range(self.spec.n):
            out += (-i % p) * mult
            i //= p
            mult *= p
        return out

    def _sub_idx(self, i: int, j: int) -> int:
        p = self.spec.p
        if p == 2:
            return i ^ j
        out = 0
        mult = 1
        for _ in range(self.spec.n):
            out += ((i - j) % p) * mult
            i //= p
            j //= p
            mult *= p
        return out

    def _mul_idx(self, i: int, j: int) -> int:
        if i == 0 or j == 0:
            return 0
        p, n = self.spec.p, self.spec.n
        if p == 2:
            acc = 0
            a = i
            while j:
                if j & 1:
                    acc ^= a
                a <<= 1
                j >>= 1
            mb = self._modbits
            top = acc.bit_length() - 1
            while top >= n:
                acc ^= mb << (top - n)
                top = acc.bit_length() - 1
            return acc
        da = _digits(i, p, n)
        db = _digits(j, p, n)
        t = [0] * (2 * n - 1)
        for xi, ax in enumerate(da):
            if ax:
                for yi, by in enumerate(db):
                    t[xi + yi] += ax * by
        mod = self.spec.modulus
        for deg in range(2 * n - 2, n - 1, -1):
            c = t[deg] % p
            if c:
                for k in range(n):
                    t[deg - n + k] -= c * mod[k]
        return _index([t[k] % p for k in range(n)], p)

    def _pow_idx(self, i: int, e: int) -> int:
        if e < 0:
            return self._pow_idx(self._inv_idx(i), -e)
        r = 1
        b = i
        while e:
            if e & 1:
                r = self._mul_idx(r, b)
            b = self._mul_idx(b, b)
            e >>= 1
        return r

    def _inv_idx(self, i: int) -> int:
        if i == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._pow_idx(i, self.order - 2)

    def _frob_idx(self, i: int, k: int) -> int:
        k %= self.spec.n
        if k == 0:
            return i
        return self._pow_idx(i, self.spec.p ** k)

    # -- maps ---------------------------------------------------------------

    def frobenius(self, e: "FieldElement", k: int = 1) -> "FieldElement":
        """e^(p^k); k is taken mod n since the automorphism has order n."""
        e = self.element(e)
        return FieldElement(self, self._frob_idx(e.idx, k))

    def trace(self, e: "FieldElement", m: int = 1) -> "FieldElement":
        """Relative trace onto GF(p^m): sum of e^(p^(m*i)) for i < n/m."""
        if m < 1 or self.spec.n % m:
            raise ValueError(f"{m} does not divide {self.spec.n}")
        e = self.element(e)
        step = self.spec.p ** m
        acc = cur = e.idx
        for _ in range(self.spec.n // m - 1):
            cur = self._pow_idx(cur, step)
            acc = self._add_idx(acc, cur)
        return FieldElement(self, acc)

    def quadratic_character(self, e: "FieldElement") -> int:
        """0 on zero, +1 on nonzero squares, -1 on non-squares (p odd)."""
        if self.spec.p == 2:
            raise ValueError("quadratic character needs odd characteristic")
        e = self.element(e)
        if e.idx == 0:
            return 0
        t = self._pow_idx(e.idx, (self.order - 1) // 2)
        if t == 1:
            return 1
        if t != self._neg_idx(1):
            raise RuntimeError("quadratic character power landed outside {1, -1}")
        return -1

    def subfield(self, m: int) -> "SubfieldMap":
        sub = self._subfields.get(m)
        if sub is None:
            sub = SubfieldMap(self, m)
            self._subfields[m] = sub
        return sub

    @property
    def tables(self):
        """Lazy numpy lookup tables for vectorized index arithmetic."""
        if self._tables is None:
            from .fastfield import FieldTables
            self._tables = FieldTables(self)
        return self._tables


class FieldElement:
    """Immutable element of a Field, identified by its canonical index."""

    __slots__ = ("field", "idx")

    def __init__(self, field: Field, idx: int):
        self.field = field
        self.idx = idx

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_digits(self.idx, self.field.spec.p, self.field.spec.n))

    @property
    def is_zero(self) -> bool:
        return self.idx == 0

    @property
    def label(self) -> str:
        """Base-p digit string, constant term first (dots separate digits
        when p > 10, where single characters would be ambiguous)."""
        digits = self.coeffs
        if self.field.spec.p <= 10:
            return "".join(str(d) for d in digits)
        return ".".join(str(d) for d in digits)

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.field.spec != self.field.spec:
                raise ValueError("elements belong to different fields")
            return other.idx
        if isinstance(other, int):
            return other % self.field.spec.p
        return None

    def __add__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add_idx(self.idx, j))

    __radd__ = __add__

    def __sub__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub_idx(self.idx, j))

    def __rsub__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field._sub_idx(j, self.idx))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg_idx(self.idx))

    def __mul__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul_idx(self.idx, j))

    __rmul__ = __mul__

    def __truediv__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul_idx(self.idx, self.field._inv_idx(j)))

    def __rtruediv__(self, other):
        j = self._coerce(other)
        if j is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul_idx(j, self.field._inv_idx(self.idx)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field._pow_idx(self.idx, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field._inv_idx(self.idx))

    def frobenius(self, k: int = 1) -> "FieldElement":
        return self.field.frobenius(self, k)

    def trace(self, m: int = 1) -> "FieldElement":
        return self.field.trace(self, m)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field.spec == self.field.spec and other.idx == self.idx
        if isinstance(other, int):
            return self.idx == other % self.field.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.spec, self.idx))

    def __bool__(self) -> bool:
        return self.idx != 0

    def _poly_str(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                parts.append(f"{head}x" if i == 1 else f"{head}x^{i}")
        return " + ".join(reversed(parts)) if parts else "0"

    def __repr__(self) -> str:
        return f"<{self._poly_str()} in {self.field!r}>"


class SubfieldMap:
    """Identifies GF(p^m) inside GF(p^n) for m | n.

    An element lies in the subfield exactly when Frobenius^m fixes it.
    """

    __slots__ = ("field", "m", "_indices")

    def __init__(self, field: Field, m: int):
        if m < 1 or field.spec.n % m:
            raise ValueError(f"{m} does not divide {field.spec.n}")
        self.field = field
        self.m = m
        self._indices = None

    @property
    def order(self) -> int:
        return self.field.spec.p ** self.m

    def contains(self, e: FieldElement) -> bool:
        e = self.field.element(e)
        return self.field._frob_idx(e.idx, self.m) == e.idx

    __contains__ = contains

    def indices(self) -> tuple[int, ...]:
        if self._indices is None:
            f = self.field
            found = tuple(i for i in range(f.order) if f._frob_idx(i, self.m) == i)
            if len(found) != self.order:
                raise RuntimeError("subfield scan found the wrong number of elements")
            self._indices = found
        return self._indices

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, i) for i in self.indices()]


# ---------------------------------------------------------------------------
# field cache file: one field per line, "p,n,c0,c1,...,cn"
# ---------------------------------------------------------------------------

def cache_line(spec: FieldSpec) -> str:
    return ",".join(str(v) for v in (spec.p, spec.n, *spec.modulus))


def read_field_cache(path: str) -> dict[tuple[int, int], tuple[int, ...]]:
    """Parse a cache file into {(p, n): modulus}; later lines win."""
    out: dict[tuple[int, int], tuple[int, ...]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                parts = [int(v) for v in line.split(",")]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed cache line") from exc
            if len(parts) < 4:
                raise ValueError(f"{path}:{lineno}: cache line too short")
            p, n, modulus = parts[0], parts[1], tuple(parts[2:])
            if len(modulus) != n + 1:
                raise ValueError(f"{path}:{lineno}: modulus length does not match degree")
            out[(p, n)] = modulus
    return out


def append_field_cache(path: str, spec: FieldSpec) -> bool:
    """Record spec in the cache file unless (p, n) is already present.

    Returns True when a line was written.
    """
    if os.path.exists(path):
        entries = read_field_cache(path)
        if (spec.p, spec.n) in entries:
            return False
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(cache_line(spec) + "\n")
    return True


def canonical_field(p: int, n: int, cache_path: str | None = None,
                    *, max_order: int = DESK_SCALE_BOUND) -> Field:
    """The field with the canonical modulus, honoring a cache file first."""
    if cache_path and os.path.exists(cache_path):
        modulus = read_field_cache(cache_path).get((p, n))
        if modulus is not None:
            return Field(p, n, modulus, max_order=max_order)
    return Field(p, n, max_order=max_order)
