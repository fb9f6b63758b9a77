"""Total maps f: F_q -> F_q as value tables, with the constructors,
homogeneity detection and equivalence machinery used by the rest of the
package.

A function is stored as a q-entry tuple indexed by element rank; polynomial
form is derived on demand by interpolation.  Additive (linearized) maps on
F_{p^2} are represented by their images of the basis {1, b}, i.e. a 2x2
matrix over F_p; such a map is bijective iff that matrix has nonzero
determinant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ContractViolationError
from .field import FieldContext, FiniteField


class FunctionSpecError(ValueError):
    """A function mini-language string could not be parsed."""


class FiniteFunction:
    """A total map F_q -> F_q held as a value table.

    ``table[x]`` is the image of the element with rank x.  Instances are
    immutable, hashable and compare by table, so solution sets can be
    deduplicated directly.
    """

    __slots__ = ("ctx", "table", "provenance")

    def __init__(self, ctx: FiniteField, table, provenance: str | None = None):
        table = tuple(table)
        if len(table) != ctx.q:
            raise ValueError(f"table must have {ctx.q} entries, got {len(table)}")
        if any(not (0 <= v < ctx.q) for v in table):
            raise ValueError("table entries must be element ranks in [0, q)")
        self.ctx = ctx
        self.table = table
        self.provenance = provenance

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        return isinstance(other, FiniteFunction) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        tag = self.provenance or "table"
        return f"FiniteFunction(q={self.ctx.q}, {tag})"


def from_monomial(ctx: FiniteField, k: int) -> FiniteFunction:
    """The monomial map x -> x^k (with 0 -> 0)."""
    if k < 1:
        raise ValueError(f"monomial exponent must be >= 1, got {k}")
    return FiniteFunction(ctx, [ctx.pow(x, k) for x in range(ctx.q)], f"x^{k}")


def from_do_coeffs(ctx: FiniteField, coeffs: dict) -> FiniteFunction:
    """The additive-degree-two polynomial sum(a[i,j] * x^(p^i + p^j)).

    ``coeffs`` maps (i, j) with 0 <= i <= j <= n-1 to element ranks.
    """
    for (i, j) in coeffs:
        if not (0 <= i <= j <= ctx.n - 1):
            raise ValueError(f"exponent pair {(i, j)} out of range for n={ctx.n}")
    exps = {(i, j): ctx.p ** i + ctx.p ** j for (i, j) in coeffs}
    table = []
    for x in range(ctx.q):
        acc = 0
        for ij, a in coeffs.items():
            acc = ctx.add(acc, ctx.mul(a, ctx.pow(x, exps[ij])))
        table.append(acc)
    return FiniteFunction(ctx, table, "do:" + repr(sorted(coeffs.items())))


def from_table_json(ctx: FiniteField, data) -> FiniteFunction:
    """Inverse of to_json(): a table given as q coefficient vectors."""
    return FiniteFunction(ctx, [ctx.encode(vec) for vec in data])


def to_json(f: FiniteFunction) -> list:
    """Bit-exact JSON form: the table as q coefficient vectors."""
    return [list(f.ctx.coeffs(v)) for v in f.table]


@dataclass(frozen=True)
class HomogeneityCertificate:
    is_homogeneous: bool
    d: int | None  # smallest valid exponent in [0, p-2], defined mod p-1


def detect_homogeneity(ctx: FiniteField, f: FiniteFunction) -> HomogeneityCertificate:
    """Smallest d in [0, p-2] with f(lam*x) = lam^d * f(x) for every scalar
    lam != 0 and every x != 0, if one exists.

    Exponents are only meaningful mod p-1 since lam^(p-1) = 1.
    """
    p = ctx.p
    for d in range(p - 1):
        ok = True
        for lam in range(2, p):
            ld = pow(lam, d, p)
            for x in range(1, ctx.q):
                if f.table[ctx.smul(lam, x)] != ctx.smul(ld, f.table[x]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return HomogeneityCertificate(True, d)
    return HomogeneityCertificate(False, None)


@dataclass(frozen=True)
class AdditiveMap:
    """F_p-linear map on F_{p^2}, stored as the images of 1 and b."""

    img_one: int
    img_basis: int

    def apply(self, ctx: FieldContext, x: int) -> int:
        a0, a1 = ctx.coeffs(x)
        return ctx.add(ctx.smul(a0, self.img_one), ctx.smul(a1, self.img_basis))

    def det(self, ctx: FieldContext) -> int:
        c = ctx.coeffs(self.img_one)
        d = ctx.coeffs(self.img_basis)
        return (c[0] * d[1] - c[1] * d[0]) % ctx.p

    def is_bijective(self, ctx: FieldContext) -> bool:
        return self.det(ctx) != 0

    def compose(self, ctx: FieldContext, other: "AdditiveMap") -> "AdditiveMap":
        """self o other."""
        return AdditiveMap(self.apply(ctx, other.img_one), self.apply(ctx, other.img_basis))

    def as_table(self, ctx: FieldContext) -> tuple[int, ...]:
        return tuple(self.apply(ctx, x) for x in range(ctx.q))

    @staticmethod
    def identity(ctx: FieldContext) -> "AdditiveMap":
        return AdditiveMap(ctx.scalar(1), ctx.beta)

    @staticmethod
    def zero() -> "AdditiveMap":
        return AdditiveMap(0, 0)

    @staticmethod
    def mult_by(ctx: FieldContext, u: int) -> "AdditiveMap":
        """x -> u*x, bijective iff u != 0."""
        return AdditiveMap(u, ctx.mul(u, ctx.beta))

    @staticmethod
    def random_bijective(ctx: FieldContext, rng) -> "AdditiveMap":
        while True:
            m = AdditiveMap(rng.randrange(ctx.q), rng.randrange(ctx.q))
            if m.is_bijective(ctx):
                return m


@dataclass(frozen=True)
class EquivalenceMap:
    """x -> L2(f(L1(x))) + L3(x) + c with L1, L2 additive bijections and L3
    additive."""

    l1: AdditiveMap
    l2: AdditiveMap
    l3: AdditiveMap
    c: int

    @staticmethod
    def identity(ctx: FieldContext) -> "EquivalenceMap":
        ident = AdditiveMap.identity(ctx)
        return EquivalenceMap(ident, ident, AdditiveMap.zero(), 0)

    @staticmethod
    def random(ctx: FieldContext, rng) -> "EquivalenceMap":
        return EquivalenceMap(
            AdditiveMap.random_bijective(ctx, rng),
            AdditiveMap.random_bijective(ctx, rng),
            AdditiveMap(rng.randrange(ctx.q), rng.randrange(ctx.q)),
            rng.randrange(ctx.q),
        )


def apply_equivalence(ctx: FieldContext, f: FiniteFunction, m: EquivalenceMap) -> FiniteFunction:
    if not m.l1.is_bijective(ctx) or not m.l2.is_bijective(ctx):
        raise ValueError("L1 and L2 must be additive bijections")
    table = [
        ctx.add(ctx.add(m.l2.apply(ctx, f.table[m.l1.apply(ctx, x)]), m.l3.apply(ctx, x)), m.c)
        for x in range(ctx.q)
    ]
    return FiniteFunction(ctx, table)


def normalize(ctx: FieldContext, f: FiniteFunction) -> tuple[FiniteFunction, EquivalenceMap]:
    """An equivalent homogeneous planar g with g(1) = 1, g(b) = b^2 and
    g(gamma) = gamma^2, together with the equivalence that produces it.

    Uses basis transitivity: pick the first u (in element order) with
    f(u) = b^2 * f(1) and send (1, b) -> (1, u) on the inside; on the
    outside, the linear map fixing 1 and sending the gamma-image to gamma^2
    is then uniquely determined.  The only freedom is the sign of u.
    """
    from .planarity import is_planar  # deferred to avoid an import cycle

    cert = detect_homogeneity(ctx, f)
    if not cert.is_homogeneous or not is_planar(ctx, f).is_planar:
        raise ContractViolationError("normalize() needs a homogeneous planar function")

    one = ctx.scalar(1)
    f1 = f
    scale = None
    if f.table[one] != one:
        if f.table[one] == 0:
            raise ContractViolationError("f(1) = 0 is impossible for a planar function")
        scale = AdditiveMap.mult_by(ctx, ctx.inv(f.table[one]))
        f1 = FiniteFunction(ctx, [scale.apply(ctx, v) for v in f.table])

    beta_sq = ctx.scalar(ctx.s)
    u = next((x for x in range(1, ctx.q) if f1.table[x] == beta_sq), None)
    if u is None:
        raise ContractViolationError("no u with f(u) = b^2; f is not planar homogeneous")
    l1 = AdditiveMap(one, u)
    assert l1.is_bijective(ctx)  # u is never in F_p: u^2 = s has no scalar root

    g1_gamma = f1.table[l1.apply(ctx, ctx.gamma)]
    g0, g1c = ctx.coeffs(g1_gamma)
    if g1c == 0:
        raise ContractViolationError("gamma-image in F_p; f is not planar homogeneous")
    gamma_sq = ctx.mul(ctx.gamma, ctx.gamma)
    img_basis = ctx.smul(pow(g1c, -1, ctx.p), ctx.sub(gamma_sq, ctx.scalar(g0)))
    l2 = AdditiveMap(one, img_basis)
    if scale is not None:
        l2 = l2.compose(ctx, scale)

    m = EquivalenceMap(l1, l2, AdditiveMap.zero(), 0)
    g = apply_equivalence(ctx, f, m)
    assert g.table[one] == one
    assert g.table[ctx.beta] == beta_sq
    assert g.table[ctx.gamma] == gamma_sq
    return g, m


def to_polynomial(ctx: FiniteField, f: FiniteFunction) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_{q-1}) of the unique polynomial of degree
    < q interpolating the table.

    Uses that prod_{b != a}(a - b) = -1 in any finite field, so each Lagrange
    basis polynomial is -(x^q - x)/(x - a), which synthetic division gives in
    O(q) time.
    """
    q = ctx.q
    coeff = [0] * q
    for a in range(q):
        fa = f.table[a]
        if fa == 0:
            continue
        nfa = ctx.neg(fa)
        # quotient of x^q - x by (x - a): b_{q-1} = 1, b_k = a*b_{k+1} (+ the
        # dividend's -x correction at k = 0)
        b = ctx.scalar(1)
        coeff[q - 1] = ctx.add(coeff[q - 1], nfa)
        for k in range(q - 2, 0, -1):
            b = ctx.mul(a, b)
            coeff[k] = ctx.add(coeff[k], ctx.mul(nfa, b))
        b0 = ctx.sub(ctx.mul(a, b), ctx.scalar(1))
        coeff[0] = ctx.add(coeff[0], ctx.mul(nfa, b0))
    return tuple(coeff)


def eval_polynomial(ctx: FiniteField, coeff, x: int) -> int:
    acc = 0
    for c in reversed(coeff):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def parse_function_spec(ctx: FieldContext, spec: str) -> FiniteFunction:
    """Parse the function mini-language.

    ``x^K``                        monomial
    ``do:[(i,j,coeff),...]``       additive-degree-two coefficients; coeff is
                                   a scalar or a coefficient vector [a0,a1]
    ``table:@file.json``           value table as q coefficient vectors
    """
    spec = spec.strip()
    if spec.startswith("x^"):
        try:
            k = int(spec[2:])
        except ValueError:
            raise FunctionSpecError(f"bad monomial exponent {spec[2:]!r}") from None
        if k < 1:
            raise FunctionSpecError(f"monomial exponent must be >= 1, got {k}")
        return from_monomial(ctx, k)
    if spec.startswith("do:"):
        body = spec[3:].replace("(", "[").replace(")", "]")
        try:
            triples = json.loads(body)
        except json.JSONDecodeError:
            raise FunctionSpecError(f"bad do-coefficient list {spec[3:]!r}") from None
        coeffs = {}
        for entry in triples:
            if len(entry) != 3:
                raise FunctionSpecError(f"bad do-coefficient entry {entry!r}")
            i, j, a = entry
            coeffs[(i, j)] = ctx.scalar(a) if isinstance(a, int) else ctx.element_from_coeffs(a)
        try:
            return from_do_coeffs(ctx, coeffs)
        except ValueError as exc:
            raise FunctionSpecError(str(exc)) from None
    if spec.startswith("table:@"):
        path = spec[len("table:@"):]
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise FunctionSpecError(f"cannot read table file {path!r}: {exc}") from None
        except json.JSONDecodeError:
            raise FunctionSpecError(f"table file {path!r} is not valid JSON") from None
        try:
            return from_table_json(ctx, data)
        except (ValueError, TypeError) as exc:
            raise FunctionSpecError(f"bad table in {path!r}: {exc}") from None
    raise FunctionSpecError(f"unrecognized function spec {spec!r}")
