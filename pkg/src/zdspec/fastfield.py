"""numpy lookup tables for vectorized arithmetic in one field's index space.

Everything here operates on canonical element indices (see gf).  Tables
are built lazily on first use and cached; a Field owns at most one
instance, reachable as ``field.tables``.  Cached arrays are marked
read-only so accidental mutation fails loudly.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


class FieldTables:
    """Vectorized index-space kernels for a single field."""

    def __init__(self, field):
        self.field = field
        self.p = field.p
        self.n = field.n
        self.q = field.order
        self._pow_cache: dict[int, np.ndarray] = {}
        self._trace_cache: dict[int, np.ndarray] = {}

    # -- additive layer ------------------------------------------------------

    @cached_property
    def indices(self) -> np.ndarray:
        return _frozen(np.arange(self.q, dtype=np.int64))

    @cached_property
    def digits(self) -> np.ndarray:
        """(q, n) matrix of base-p digits, constant term in column 0."""
        x = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.n), dtype=np.int64)
        for i in range(self.n):
            out[:, i] = x % self.p
            x //= self.p
        return _frozen(out)

    @cached_property
    def _pw(self) -> np.ndarray:
        return _frozen(self.p ** np.arange(self.n, dtype=np.int64))

    def _recompose(self, dig: np.ndarray) -> np.ndarray:
        return dig @ self._pw

    def add_vec(self, a, b) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._recompose((self.digits[a] + self.digits[b]) % self.p)

    def sub_vec(self, a, b) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._recompose((self.digits[a] - self.digits[b]) % self.p)

    def neg_vec(self, a) -> np.ndarray:
        if self.p == 2:
            return np.asarray(a)
        return self._recompose((-self.digits[a]) % self.p)

    # -- multiplicative layer --------------------------------------------------

    @cached_property
    def generator(self) -> int:
        """Smallest-index generator of the multiplicative group."""
        q = self.q
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        for cand in range(2, q):
            if all(self.field._pow_idx(cand, (q - 1) // r) != 1 for r in factors):
                return cand
        raise RuntimeError("no multiplicative generator found")

    @cached_property
    def _explog(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        exp = np.zeros(max(q - 1, 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        g = self.generator
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self.field._mul_idx(cur, g)
        if cur != 1:
            raise RuntimeError("generator order check failed")
        return _frozen(exp), _frozen(log)

    def mul_vec(self, a, b) -> np.ndarray:
        exp, log = self._explog
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        if nz.any():
            out[nz] = exp[(log[a[nz]] + log[b[nz]]) % (self.q - 1)]
        return out

    def pow_map(self, d: int) -> np.ndarray:
        """x -> x^d over all x, with 0^d = 0 (d >= 1)."""
        if d < 1:
            raise ValueError("exponent must be >= 1")
        cached = self._pow_cache.get(d)
        if cached is not None:
            return cached
        q = self.q
        out = np.zeros(q, dtype=np.int64)
        if q == 2:
            out[1] = 1
        else:
            e = d % (q - 1)
            if e == 0:
                out[1:] = 1
            else:
                exp, log = self._explog
                out[1:] = exp[(log[1:] * e) % (q - 1)]
        self._pow_cache[d] = _frozen(out)
        return out

    def frob_map(self, k: int) -> np.ndarray:
        """x -> x^(p^k) over all x."""
        k %= self.n
        if k == 0:
            return self.indices
        return self.pow_map(self.p ** k)

    def trace_map(self, m: int) -> np.ndarray:
        """Relative trace onto GF(p^m), as element indices."""
        if m < 1 or self.n % m:
            raise ValueError(f"{m} does not divide {self.n}")
        cached = self._trace_cache.get(m)
        if cached is not None:
            return cached
        frob = self.frob_map(m)
        acc = self.indices.copy()
        cur = self.indices
        for _ in range(self.n // m - 1):
            cur = frob[cur]
            acc = self.add_vec(acc, cur)
        acc = np.asarray(acc)
        self._trace_cache[m] = _frozen(acc)
        return acc

    @cached_property
    def trace1(self) -> np.ndarray:
        """Absolute trace values in [0, p); scalar indices equal values."""
        return self.trace_map(1)

    @cached_property
    def sqrt_map(self) -> np.ndarray:
        """Inverse of squaring (characteristic 2, where it is a bijection)."""
        if self.p != 2:
            raise ValueError("square roots are tabulated only for p = 2")
        sq = self.pow_map(2)
        out = np.empty(self.q, dtype=np.int64)
        out[sq] = self.indices
        return _frozen(out)

    @cached_property
    def artin_schreier(self) -> np.ndarray:
        """Table t -> y with y^2 + y = t (smallest such y), q when no solution.

        Built by exhausting y, which is the honest inverse of the
        two-to-one map y -> y^2 + y; solvable t are those of trace 0.
        """
        if self.p != 2:
            raise ValueError("Artin-Schreier table requires p = 2")
        u = np.bitwise_xor(self.pow_map(2), self.indices)
        out = np.full(self.q, self.q, dtype=np.int64)
        desc = self.indices[::-1]
        out[u[desc]] = desc  # later (smaller) y wins
        return _frozen(out)

    @cached_property
    def quadchar(self) -> np.ndarray:
        """Quadratic character per element: 0 on zero, otherwise +-1 (p odd)."""
        if self.p == 2:
            raise ValueError("quadratic character needs odd characteristic")
        t = self.pow_map((self.q - 1) // 2)
        out = np.where(t == 1, 1, -1).astype(np.int64)
        out[0] = 0
        return _frozen(out)

    def subfield_mask(self, m: int) -> np.ndarray:
        return self.frob_map(m % self.n) == self.indices if m % self.n else np.ones(self.q, bool)

    def eval_poly(self, coeff_indices) -> np.ndarray:
        """Evaluate sum(c_i x^i) at every field element (Horner)."""
        coeffs = [int(c) for c in coeff_indices]
        if not coeffs:
            return np.zeros(self.q, dtype=np.int64)
        acc = np.full(self.q, coeffs[-1], dtype=np.int64)
        for c in reversed(coeffs[:-1]):
            acc = self.add_vec(self.mul_vec(acc, self.indices), c)
        return np.asarray(acc)
