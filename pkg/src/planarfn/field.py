"""Exact arithmetic in F_p and F_{p^n}, plus the distinguished elements of the
quadratic extension F_{p^2} that the rest of the package relies on.

Elements are plain ints in [0, q): the rank of the coefficient vector
(a_0, ..., a_{n-1}) in lexicographic order, where the element is
a_0 + a_1*b + ... + a_{n-1}*b^(n-1) for the residue class b of x modulo the
defining polynomial.  All "first"/"smallest" tie-breaks in this package refer
to this one ordering.  Index 0 is always the zero element; for n = 2 the
basis element b has index 1 and the scalar c has index c*p.

For n = 2 the modulus is fixed as x^2 - s with s the smallest nonsquare mod
p.  The basis element then satisfies b^2 = s and b^(p-1) = -1, i.e. b is a
trace-zero element whose square is a nonsquare scalar.
"""

from __future__ import annotations

import numpy as np

# Dense q x q helper tables are only built below this size; they are what the
# planarity / character-sum hot paths index into.
TABLE_LIMIT = 4096


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def legendre(a: int, p: int) -> int:
    """Quadratic character of a mod p: 0, +1 or -1, via a^((p-1)/2)."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def smallest_nonsquare(p: int) -> int:
    for c in range(2, p):
        if legendre(c, p) == -1:
            return c
    raise ValueError(f"no nonsquare mod {p} (p must be an odd prime)")


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


class FiniteField:
    """F_{p^n} with elements encoded as ints (lexicographic coefficient rank).

    The defining monic polynomial x^n - r(x) is stored as the reduction
    vector ``reduction`` of length n, meaning x^n = sum(reduction[i] * x^i).
    If no modulus is given, the lexicographically first irreducible one is
    used (for n = 2: x^2 - s, s the smallest nonsquare).
    """

    def __init__(self, p: int, n: int = 1, reduction: tuple[int, ...] | None = None):
        if p < 3 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if n < 1:
            raise ValueError(f"extension degree must be >= 1, got {n}")
        self.p = p
        self.n = n
        self.q = p ** n
        if reduction is None:
            reduction = self._find_reduction()
        if len(reduction) != n or any(not (0 <= c < p) for c in reduction):
            raise ValueError(f"reduction vector must have {n} residues mod {p}")
        self.reduction = tuple(reduction)
        if n > 1 and not self._is_irreducible():
            raise ValueError("defining polynomial is reducible")

        self._pows = [p ** (n - 1 - i) for i in range(n)]  # digit weights, a_0 first
        self.gamma = self._find_primitive()
        self._build_exp_log()
        self._trace = [self._trace_slow(u) for u in range(self.q)]
        self.tables_built = self.q <= TABLE_LIMIT
        if self.tables_built:
            self._build_numpy_tables()

    # -- encoding ------------------------------------------------------------

    def coeffs(self, u: int) -> tuple[int, ...]:
        """Coefficient vector (a_0, ..., a_{n-1}) of element index u."""
        out = []
        for _ in range(self.n):
            u, r = divmod(u, self.p)
            out.append(r)
        out.reverse()
        return tuple(out)

    def encode(self, vec) -> int:
        u = 0
        for c in vec:
            u = u * self.p + (c % self.p)
        return u

    def scalar(self, c: int) -> int:
        """Embed the residue c of F_p as a field element."""
        return (c % self.p) * self._pows[0]

    def as_scalar(self, u: int) -> int:
        """Inverse of scalar(); raises if u is not in the prime subfield."""
        c, rest = divmod(u, self._pows[0])
        if rest:
            raise ValueError(f"element {self.coeffs(u)} is not in F_{self.p}")
        return c

    def elements(self):
        return range(self.q)

    def render(self, u: int) -> str:
        """Human-readable form "a0+a1*b+..." of an element."""
        cs = self.coeffs(u)
        parts = [str(cs[0])]
        for i, c in enumerate(cs[1:], start=1):
            parts.append(f"{c}*b" if i == 1 else f"{c}*b^{i}")
        return "+".join(parts)

    # -- ring operations -----------------------------------------------------

    def add(self, u: int, v: int) -> int:
        p = self.p
        if self.n == 2:
            a0, a1 = divmod(u, p)
            b0, b1 = divmod(v, p)
            return ((a0 + b0) % p) * p + (a1 + b1) % p
        return self.encode(a + b for a, b in zip(self.coeffs(u), self.coeffs(v)))

    def neg(self, u: int) -> int:
        p = self.p
        if self.n == 2:
            a0, a1 = divmod(u, p)
            return ((-a0) % p) * p + (-a1) % p
        return self.encode(-a for a in self.coeffs(u))

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg(v))

    def smul(self, c: int, u: int) -> int:
        """Scalar multiple c*u with c a residue of F_p."""
        c %= self.p
        return self.encode(c * a for a in self.coeffs(u))

    def mul(self, u: int, v: int) -> int:
        if u == 0 or v == 0:
            return 0
        return self._exp[self._log[u] + self._log[v]]

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._exp[self.q - 1 - self._log[u]]

    def pow(self, u: int, k: int) -> int:
        if u == 0:
            return 0 if k != 0 else self.scalar(1)
        return self._exp[(self._log[u] * k) % (self.q - 1)]

    def frobenius(self, u: int) -> int:
        return self.pow(u, self.p)

    def trace(self, u: int) -> int:
        """Trace to F_p (the sum of the n Frobenius conjugates), as a residue."""
        return self._trace[u]

    def norm(self, u: int) -> int:
        """Norm to F_p, as a residue."""
        return self.as_scalar(self.pow(u, (self.q - 1) // (self.p - 1))) if u else 0

    def order(self, u: int) -> int:
        if u == 0:
            raise ValueError("0 has no multiplicative order")
        k = self.q - 1
        for r in _prime_factors(self.q - 1):
            while k % r == 0 and self.pow(u, k // r) == self.scalar(1):
                k //= r
        return k

    # -- internals -----------------------------------------------------------

    def _raw_mul(self, a: tuple, b: tuple) -> tuple:
        """Multiply two coefficient vectors mod the defining polynomial."""
        n, p = self.n, self.p
        tmp = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    tmp[i + j] += ai * bj
        for deg in range(2 * n - 2, n - 1, -1):
            c = tmp[deg]
            if c:
                tmp[deg] = 0
                for i, r in enumerate(self.reduction):
                    tmp[deg - n + i] += c * r
        return tuple(c % p for c in tmp[:n])

    def _raw_pow(self, a: tuple, k: int) -> tuple:
        out = tuple([1] + [0] * (self.n - 1))
        while k:
            if k & 1:
                out = self._raw_mul(out, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return out

    def _find_reduction(self) -> tuple[int, ...]:
        if self.n == 1:
            return (0,)
        if self.n == 2:
            return (smallest_nonsquare(self.p), 0)
        # First irreducible x^n - r(x) in lexicographic order of r.
        for u in range(self.q):
            cand = tuple(reversed(self._decode_plain(u)))
            if self._reduction_irreducible(cand):
                return cand
        raise ValueError("no irreducible modulus found")

    def _decode_plain(self, u):
        out = []
        for _ in range(self.n):
            u, r = divmod(u, self.p)
            out.append(r)
        out.reverse()
        return out

    def _reduction_irreducible(self, reduction) -> bool:
        # Trial division of x^n - r(x) by every monic polynomial of degree
        # <= n//2; brute force is fine at the sizes this package targets.
        n, p = self.n, self.p
        poly = [(-c) % p for c in reduction] + [1]  # degree n, monic
        for d in range(1, n // 2 + 1):
            for u in range(p ** d):
                div = self._decode_plain_general(u, d) + [1]
                if self._poly_mod(poly, div):
                    continue
                return False
        return True

    def _decode_plain_general(self, u, length):
        out = []
        for _ in range(length):
            u, r = divmod(u, self.p)
            out.append(r)
        return out

    def _poly_mod(self, a, b):
        """Remainder of a by monic b over F_p; truthy iff nonzero."""
        p = self.p
        a = list(a)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] % p
            if c:
                off = len(a) - 1 - db
                for i, bi in enumerate(b):
                    a[off + i] = (a[off + i] - c * bi) % p
            a.pop()
        return any(c % p for c in a)

    def _is_irreducible(self) -> bool:
        return self.n == 1 or self._reduction_irreducible(self.reduction)

    def _find_primitive(self) -> int:
        one = tuple([1] + [0] * (self.n - 1))
        factors = _prime_factors(self.q - 1)
        for u in range(1, self.q):
            a = self.coeffs(u)
            if all(self._raw_pow(a, (self.q - 1) // r) != one for r in factors):
                return u
        raise ValueError("no primitive element found")  # pragma: no cover

    def _build_exp_log(self):
        q = self.q
        g = self.coeffs(self.gamma)
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        a = tuple([1] + [0] * (self.n - 1))
        for k in range(q - 1):
            u = self.encode(a)
            exp[k] = u
            exp[k + q - 1] = u
            log[u] = k
            a = self._raw_mul(a, g)
        self._exp = exp
        self._log = log

    def _trace_slow(self, u: int) -> int:
        acc = u
        v = u
        for _ in range(self.n - 1):
            v = self.frobenius(v)
            acc = self.add(acc, v)
        return self.as_scalar(acc)

    def _build_numpy_tables(self):
        q, p, n = self.q, self.p, self.n
        idx = np.arange(q, dtype=np.int64)
        digits = np.empty((q, n), dtype=np.int64)
        for i in range(n):
            digits[:, i] = (idx // self._pows[i]) % p
        pows = np.asarray(self._pows, dtype=np.int64)
        self.add_t = (((digits[:, None, :] + digits[None, :, :]) % p) * pows).sum(-1)
        self.neg_v = (((-digits) % p) * pows).sum(-1)
        self.sub_t = self.add_t[:, self.neg_v]
        log = np.asarray(self._log, dtype=np.int64)
        exp = np.asarray(self._exp, dtype=np.int64)
        self.mul_t = np.zeros((q, q), dtype=np.int64)
        nz = idx[1:]
        self.mul_t[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.trace_v = np.asarray(self._trace, dtype=np.int64)


class FieldContext(FiniteField):
    """F_{p^2} together with its distinguished elements.

    ``beta``  the basis element b (index 1), with b^2 = s and b^(p-1) = -1;
    ``gamma`` the first element of multiplicative order p^2 - 1 in
              lexicographic coefficient order;
    ``T``     an ordered transversal of F_p* in F_{p^2}*, one representative
              per coset.  The default is the monic choice [1, b, 1+b, ...,
              (p-1)+b]; a custom transversal may be passed for cross-checks.

    Immutable after construction; all methods are pure.
    """

    def __init__(self, p: int, T: list[int] | None = None):
        super().__init__(p, 2)
        self.s = self.reduction[0]
        self.beta = 1  # coefficient vector (0, 1)
        assert self.pow(self.beta, p - 1) == self.scalar(-1)
        assert self.mul(self.beta, self.beta) == self.scalar(self.s)
        assert legendre(self.s, p) == -1
        if T is None:
            T = [self.scalar(1)] + [self.encode((c, 1)) for c in range(p)]
        if len(T) != p + 1:
            raise ValueError(f"transversal must have {p + 1} members")
        self.T = tuple(T)
        self._rep_pos = [-1] * self.q
        self._rep_scalar = [0] * self.q
        for j, y in enumerate(self.T):
            for lam in range(1, p):
                v = self.smul(lam, y)
                if self._rep_pos[v] != -1:
                    raise ValueError("transversal members share a coset")
                self._rep_pos[v] = j
                self._rep_scalar[v] = lam
        if self._rep_pos.count(-1) != 1:  # only 0 must be uncovered
            raise ValueError("transversal does not cover every coset")

    def coset_rep(self, x: int) -> tuple[int, int]:
        """The unique (y, lam) with y in T, lam in F_p* and x = lam*y."""
        if x == 0:
            raise ValueError("0 is not in any multiplicative coset")
        return self.T[self._rep_pos[x]], self._rep_scalar[x]

    def rep_position(self, x: int) -> int:
        """Index into T of the coset representative of x != 0."""
        if x == 0:
            raise ValueError("0 is not in any multiplicative coset")
        return self._rep_pos[x]

    def with_randomized_T(self, rng) -> "FieldContext":
        """A context over the same field whose transversal picks a random
        representative in every coset (for T-invariance cross-checks)."""
        T = [self.smul(rng.randrange(1, self.p), y) for y in self.T]
        return FieldContext(self.p, T=T)

    def element_from_coeffs(self, vec) -> int:
        vec = list(vec)
        if len(vec) > 2 or not vec:
            raise ValueError(f"expected at most 2 coefficients, got {vec}")
        while len(vec) < 2:
            vec.append(0)
        return self.encode(vec)

    def summary(self) -> dict:
        """JSON-friendly description of the context."""
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "s": self.s,
            "modulus": "x^2 - %d" % self.s,
            "beta": list(self.coeffs(self.beta)),
            "gamma": list(self.coeffs(self.gamma)),
            "T": [list(self.coeffs(y)) for y in self.T],
        }


def build_context(p: int) -> FieldContext:
    """The canonical F_{p^2} context for an odd prime p."""
    return FieldContext(p)
