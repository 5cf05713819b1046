"""Graded cohomology rings of complex-projective and lens product spaces.

Every ring is a free module over the ring of its base factor (the r = 1
space) on the exterior monomials x_S, S a subset of {2..r}, with deg x_i =
2 n_i + 1 and x_i^2 = 0. The base factor depends on the coefficient domain:

* t = INFINITY ("free"): Z[z]/(z^{n1+1}) style truncated polynomial ring.
* finite t over Z ("integral"): 1 and w free, z^a of order t for 1 <= a <= n1.
* finite t with t invertible ("unit", rationals or F_p with p not dividing t):
  just 1 and w, the torsion is killed and t*z = 0 forces z = 0.
* finite t over F_p with p | t ("primary"): the mod-p ring of the p-primary
  lens space, monomials y^eps z^a with y^2 = z exactly when p = 2 and
  nu_2(t) = 1, else y^2 = 0.

Here w denotes the odd-degree class of the base factor in degree 2 n1 + 1
(it restricts from the covering sphere); it kills every positive-degree class
of the base factor for degree reasons, while w * x_S are basis monomials.

Rings are immutable after construction and all queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    Coeff,
    GF,
    GradedAbGroup,
    INFINITY,
    PoincareSeries,
    QQ,
    TupleSpec,
    ZZ,
    nu_p,
    prime_factors,
)
from . import fgl

__all__ = [
    "FREE",
    "INTEGRAL",
    "UNIT",
    "PRIMARY",
    "CoeffMode",
    "BasisMonomial",
    "CohomologyRing",
    "BundleSpec",
    "build_ring",
    "graded_groups",
    "poincare_polynomial",
    "restriction_p",
    "projection_pi_star",
    "change_coefficients",
    "cup_length",
    "zero_divisor_cup_length",
    "field_modes",
    "tensor_mul",
]

FREE = "free"
INTEGRAL = "integral"
UNIT = "unit"
PRIMARY = "primary"


@dataclass(frozen=True)
class CoeffMode:
    """A coefficient domain resolved against a specific (n, t): which base
    presentation applies, and the local parameter e = nu_p(t) when p | t."""

    dom: Coeff
    presentation: str
    e: int = 0


def resolve_mode(spec: TupleSpec, dom: Coeff) -> CoeffMode:
    if not spec.finite:
        return CoeffMode(dom, FREE)
    if dom.kind == "Z":
        return CoeffMode(dom, INTEGRAL)
    if dom.kind == "Fp" and spec.t % dom.p == 0:
        return CoeffMode(dom, PRIMARY, nu_p(dom.p, spec.t))
    return CoeffMode(dom, UNIT)


@dataclass(frozen=True)
class BundleSpec:
    """k-fold Whitney sum of the canonical complex line bundle over the base."""

    k: int
    base: TupleSpec

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("multiplicity must be non-negative")

    def sphere_space(self) -> TupleSpec:
        """The unit-sphere bundle of k copies of the line bundle is again a
        space of the same family, with k-1 appended to the tuple."""
        if self.k < 1:
            raise ValueError("the sphere bundle needs at least one summand")
        return TupleSpec.make(self.base.n + (self.k - 1,), self.base.t, sort=True)


@dataclass(frozen=True, order=True)
class BasisMonomial:
    """base part ('z', a) | ('w',) | ('yz', eps, a) times an exterior subset."""

    base: tuple
    ext: tuple = ()

    def label(self) -> str:
        parts = []
        kind = self.base[0]
        if kind == "z":
            a = self.base[1]
            if a == 1:
                parts.append("z")
            elif a > 1:
                parts.append(f"z^{a}")
        elif kind == "w":
            parts.append("w")
        else:
            eps, a = self.base[1], self.base[2]
            if eps:
                parts.append("y")
            if a == 1:
                parts.append("z")
            elif a > 1:
                parts.append(f"z^{a}")
        parts += [f"x{i}" for i in self.ext]
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return self.label()


class CohomologyRing:
    """Monomial-basis model of the cohomology ring of one space over one
    coefficient domain. Built by build_ring; treat as immutable."""

    def __init__(self, spec: TupleSpec, mode: CoeffMode):
        self.spec = spec
        self.mode = mode
        self.dom = mode.dom
        n1, t = spec.n[0], spec.t
        pres = mode.presentation

        if pres == FREE:
            bases = [("z", a) for a in range(n1 + 1)]
        elif pres == INTEGRAL:
            bases = [("z", 0)]
            if t > 1:
                bases += [("z", a) for a in range(1, n1 + 1)]
            bases.append(("w",))
        elif pres == UNIT:
            bases = [("z", 0), ("w",)]
        else:
            bases = [("yz", eps, a) for a in range(n1 + 1) for eps in (0, 1)]

        monomials = []
        for base in bases:
            for ext in _subsets(range(2, spec.r + 1)):
                monomials.append(BasisMonomial(base, ext))
        monomials.sort(key=lambda m: (self._degree_raw(m), m))
        self.basis: tuple = tuple(monomials)
        self._basis_set = frozenset(monomials)
        by_degree: dict[int, list] = {}
        for m in monomials:
            by_degree.setdefault(self._degree_raw(m), []).append(m)
        self.basis_by_degree = {d: tuple(v) for d, v in sorted(by_degree.items())}
        self.relations = self._relation_records()
        self.generators = self._generator_records()

    # -- structure ----------------------------------------------------------

    def _degree_raw(self, m: BasisMonomial) -> int:
        base = m.base
        if base[0] == "z":
            d = 2 * base[1]
        elif base[0] == "w":
            d = 2 * self.spec.n[0] + 1
        else:
            d = base[1] + 2 * base[2]
        return d + sum(2 * self.spec.n[i - 1] + 1 for i in m.ext)

    def degree(self, m: BasisMonomial) -> int:
        self._require(m)
        return self._degree_raw(m)

    def _require(self, m: BasisMonomial) -> None:
        if m not in self._basis_set:
            raise ValueError(f"{m} is not a basis monomial of {self.spec} over {self.dom}")

    @property
    def is_field(self) -> bool:
        return self.dom.is_field

    @property
    def unit(self) -> BasisMonomial:
        base = ("yz", 0, 0) if self.mode.presentation == PRIMARY else ("z", 0)
        return BasisMonomial(base, ())

    def torsion_order(self, m: BasisMonomial) -> int:
        """0 for a free/field summand, q >= 2 for Z/q (integral mode only)."""
        self._require(m)
        if self.mode.presentation == INTEGRAL and m.base[0] == "z" and m.base[1] >= 1:
            return self.spec.t
        return 0

    def z_power(self, a: int):
        """The basis monomial representing z^a, or None when z^a = 0."""
        if a == 0:
            return self.unit
        pres = self.mode.presentation
        if a > self.spec.n[0]:
            return None
        if pres == FREE:
            return BasisMonomial(("z", a), ())
        if pres == PRIMARY:
            return BasisMonomial(("yz", 0, a), ())
        if pres == INTEGRAL and self.spec.t > 1:
            return BasisMonomial(("z", a), ())
        return None

    def positive_generators(self) -> tuple:
        """Ring generators of positive degree, as basis monomials."""
        n1 = self.spec.n[0]
        pres = self.mode.presentation
        gens = []
        if pres == FREE:
            if n1 >= 1:
                gens.append(BasisMonomial(("z", 1), ()))
        elif pres == UNIT:
            gens.append(BasisMonomial(("w",), ()))
        elif pres == PRIMARY:
            gens.append(BasisMonomial(("yz", 1, 0), ()))
            if n1 >= 1:
                gens.append(BasisMonomial(("yz", 0, 1), ()))
        else:
            if n1 >= 1 and self.spec.t > 1:
                gens.append(BasisMonomial(("z", 1), ()))
            gens.append(BasisMonomial(("w",), ()))
        gens += [BasisMonomial(self.unit.base, (i,)) for i in range(2, self.spec.r + 1)]
        return tuple(gens)

    # -- multiplication -----------------------------------------------------

    def _base_mul(self, b1: tuple, b2: tuple):
        """(coefficient, base) for the product of two base parts; coefficient
        0 encodes the zero product."""
        n1 = self.spec.n[0]
        if b1 == self.unit.base:
            return 1, b2
        if b2 == self.unit.base:
            return 1, b1
        k1, k2 = b1[0], b2[0]
        if k1 == "w" or k2 == "w":
            # w annihilates every positive-degree class of the base factor
            return 0, None
        if k1 == "z" and k2 == "z":
            a = b1[1] + b2[1]
            if a <= n1 and (self.mode.presentation != INTEGRAL or self.spec.t > 1):
                return 1, ("z", a)
            return 0, None
        # primary presentation: y^e1 z^a1 * y^e2 z^a2
        eps, a = b1[1] + b2[1], b1[2] + b2[2]
        if eps <= 1:
            return (1, ("yz", eps, a)) if a <= n1 else (0, None)
        if self.dom.p == 2 and self.mode.e == 1:
            # y^2 = z
            return (1, ("yz", 0, a + 1)) if a + 1 <= n1 else (0, None)
        return 0, None

    def _odd_word(self, m: BasisMonomial) -> tuple:
        """Odd-degree letters in canonical order; the base letter (w or y)
        sorts before every exterior index."""
        base_odd = m.base[0] == "w" or (m.base[0] == "yz" and m.base[1] == 1)
        return ((0,) if base_odd else ()) + m.ext

    def multiply(self, m1: BasisMonomial, m2: BasisMonomial) -> dict:
        """Graded-commutative product of two basis monomials as a (at most
        singleton) linear combination {monomial: coefficient}."""
        self._require(m1)
        self._require(m2)
        if set(m1.ext) & set(m2.ext):
            return {}
        c, base = self._base_mul(m1.base, m2.base)
        if c == 0:
            return {}
        w1, w2 = self._odd_word(m1), self._odd_word(m2)
        inversions = sum(1 for a in w1 for b in w2 if b < a)
        if inversions % 2:
            c = -c
        mono = BasisMonomial(base, tuple(sorted(m1.ext + m2.ext)))
        return self._normalize({mono: c})

    def _normalize(self, elem: dict) -> dict:
        out = {}
        for m, c in elem.items():
            c = self.dom(c)
            q = self.torsion_order(m)
            if q:
                c %= q
            if c != self.dom(0):
                out[m] = c
        return out

    def mul(self, e1: dict, e2: dict) -> dict:
        """Bilinear extension of multiply to linear combinations."""
        out: dict = {}
        for m1, c1 in e1.items():
            for m2, c2 in e2.items():
                for m, c in self.multiply(m1, m2).items():
                    out[m] = out.get(m, 0) + c1 * c2 * c
        return self._normalize(out)

    def add(self, e1: dict, e2: dict) -> dict:
        out = dict(e1)
        for m, c in e2.items():
            out[m] = out.get(m, 0) + c
        return self._normalize(out)

    # -- records ------------------------------------------------------------

    def _relation_records(self) -> tuple:
        n1, t = self.spec.n[0], self.spec.t
        pres = self.mode.presentation
        rels = []
        if pres == FREE:
            rels.append(f"z^{n1 + 1} = 0")
        elif pres == INTEGRAL:
            rels.append(f"z^{n1 + 1} = 0")
            series = fgl.t_series(fgl.make_additive(ZZ, n1 + 1), t, n1 + 1)
            rels.append(f"{series.poly} = 0")
            rels.append("w*z = 0, w^2 = 0")
        elif pres == UNIT:
            rels.append("z = 0 (t acts invertibly)")
            rels.append("w^2 = 0")
        else:
            if self.dom.p == 2 and self.mode.e == 1:
                rels.append("y^2 = z")
            else:
                rels.append("y^2 = 0")
            rels.append(f"z^{n1 + 1} = 0")
        for i in range(2, self.spec.r + 1):
            rels.append(f"x{i}^2 = 0")
        return tuple(rels)

    def _generator_records(self) -> tuple:
        n1 = self.spec.n[0]
        pres = self.mode.presentation
        gens = []
        if pres == FREE:
            if n1 >= 1:
                gens.append(("z", 2))
        elif pres == INTEGRAL:
            if n1 >= 1 and self.spec.t > 1:
                gens.append(("z", 2))
            gens.append(("w", 2 * n1 + 1))
        elif pres == UNIT:
            gens.append(("w", 2 * n1 + 1))
        else:
            gens.append(("y", 1))
            if n1 >= 1:
                gens.append(("z", 2))
        gens += [(f"x{i}", 2 * self.spec.n[i - 1] + 1) for i in range(2, self.spec.r + 1)]
        return tuple(gens)

    def __str__(self):
        return f"H*({self.spec}; {self.dom})"


def _subsets(indices) -> list:
    out = [()]
    for i in indices:
        out += [s + (i,) for s in out]
    return sorted(out)


@lru_cache(maxsize=None)
def build_ring(spec: TupleSpec, dom: Coeff = ZZ) -> CohomologyRing:
    """The cohomology ring of the space named by spec over the given domain.

    Finite t paired with rational or F_p coefficients is answered by the
    matching presentation, never rejected. The returned object is cached and
    shared; it is immutable."""
    return CohomologyRing(spec, resolve_mode(spec, dom))


def graded_groups(ring: CohomologyRing) -> GradedAbGroup:
    """Per-degree group data collecting the free/torsion contributions of all
    basis monomials (for a field: dimensions in the free slot)."""
    data: dict[int, list] = {}
    for m in ring.basis:
        data.setdefault(ring.degree(m), []).append(ring.torsion_order(m))
    return GradedAbGroup.of(
        {
            d: (sum(1 for q in orders if q == 0), tuple(q for q in orders if q))
            for d, orders in data.items()
        }
    )


def poincare_polynomial(ring: CohomologyRing) -> PoincareSeries:
    if not ring.is_field:
        raise ValueError("Poincare polynomial needs field coefficients")
    dims: dict[int, int] = {}
    for m in ring.basis:
        d = ring.degree(m)
        dims[d] = dims.get(d, 0) + 1
    return PoincareSeries.from_dict(dims)


def field_modes(spec: TupleSpec) -> tuple[Coeff, ...]:
    """Canonical field domains used when an invariant maximizes over fields:
    the rationals plus F_p for every prime p dividing finite t."""
    if not spec.finite:
        return (QQ,)
    return (QQ,) + tuple(GF(p) for p in prime_factors(spec.t))


# ---------------------------------------------------------------------------
# induced maps


@dataclass(frozen=True)
class RestrictionMap:
    """Basis-level monomorphism from the ring of a kept sub-tuple into the
    full ring (induced by the coordinate-repetition section of the
    coordinate-dropping projection)."""

    sub: CohomologyRing
    full: CohomologyRing
    kept: tuple[int, ...]

    def image(self, m: BasisMonomial) -> BasisMonomial:
        self.sub._require(m)
        ext = tuple(sorted(self.kept[j - 1] for j in m.ext))
        out = BasisMonomial(m.base, ext)
        self.full._require(out)
        return out

    def retract(self, m: BasisMonomial):
        """Preimage of a full-ring monomial in the image, else None."""
        self.full._require(m)
        pos = {idx: j for j, idx in enumerate(self.kept, start=1)}
        if any(i not in pos for i in m.ext):
            return None
        return BasisMonomial(m.base, tuple(sorted(pos[i] for i in m.ext)))


def restriction_p(ring: CohomologyRing, kept) -> RestrictionMap:
    """The injection of the ring of the reduced tuple; index 1 must be kept."""
    kept = tuple(sorted(set(int(i) for i in kept)))
    if not kept or kept[0] != 1 or kept[-1] > ring.spec.r:
        raise ValueError(
            f"kept set {kept} must be a subset of 1..{ring.spec.r} containing 1"
        )
    sub_spec = TupleSpec(tuple(ring.spec.n[i - 1] for i in kept), ring.spec.t)
    sub = build_ring(sub_spec, ring.dom)
    return RestrictionMap(sub, ring, kept)


@dataclass(frozen=True)
class ProjectionRule:
    """Pullback along the covering projection from the t-quotient to the
    t'-quotient: z and the x_i map to their namesakes, and for finite t' the
    class w' maps to (t'/t) * w (both pull back to t' times the sphere
    generator). For t' = INFINITY there is no w'."""

    t: int
    t_prime: object
    omega_multiplier: object  # int for finite t', None otherwise

    def apply_base(self, base: tuple):
        if base[0] == "w":
            if self.omega_multiplier is None:
                raise ValueError("the t' = INFINITY ring has no w class")
            return self.omega_multiplier, base
        return 1, base

    def apply(self, m: BasisMonomial):
        c, base = self.apply_base(m.base)
        return c, BasisMonomial(base, m.ext)

    def push(self, m: BasisMonomial, source: CohomologyRing, target: CohomologyRing) -> dict:
        """Image in the target (t) ring of a basis monomial of the source
        (t') ring, as an element; classes killed by the coarser torsion
        (e.g. z over t = 1) push to zero."""
        if source.spec.t != self.t_prime or target.spec.t != self.t:
            raise ValueError("rings do not match the projection's torsions")
        if source.spec.n != target.spec.n:
            raise ValueError("the projection maps rings of the same tuple")
        source._require(m)
        base = m.base
        if base[0] == "yz":
            # the rule covers z, the x_i and w; the degree-1 class of the
            # p-primary presentations does not pull back by name
            raise ValueError("push is defined on the z/w presentations only")
        if base[0] == "w":
            img, c = BasisMonomial(("w",), m.ext), self.omega_multiplier
        else:
            zp = target.z_power(base[1])
            if zp is None:
                return {}
            img, c = BasisMonomial(zp.base, m.ext), 1
        return target._normalize({img: c})


def projection_pi_star(t: int, t_prime) -> ProjectionRule:
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be a finite positive integer, got {t}")
    if t_prime == INFINITY:
        return ProjectionRule(t, t_prime, None)
    if not isinstance(t_prime, int) or t_prime < 1 or t_prime % t != 0:
        raise ValueError(f"t' = {t_prime} is not a multiple of t = {t}")
    return ProjectionRule(t, t_prime, t_prime // t)


@dataclass(frozen=True)
class ReductionMap:
    """Mod-p reduction of the integral ring on basis monomials. It acts on
    the base factor (universal coefficients degree by degree) and fixes every
    x_S."""

    source: CohomologyRing
    target: CohomologyRing
    table: tuple  # ((monomial, image-or-None), ...)

    def __post_init__(self):
        object.__setattr__(self, "_map", dict(self.table))

    def image(self, m: BasisMonomial) -> dict:
        self.source._require(m)
        img = self._map.get(m)
        return {} if img is None else {img: self.target.dom(1)}


def change_coefficients(ring: CohomologyRing, p: int) -> ReductionMap:
    if ring.mode.presentation not in (FREE, INTEGRAL):
        raise ValueError("coefficient reduction starts from the integral ring")
    target = build_ring(ring.spec, GF(p))
    n1 = ring.spec.n[0]
    table = []
    for m in ring.basis:
        base = m.base
        if ring.mode.presentation == FREE:
            img_base = base
        elif target.mode.presentation == PRIMARY:
            if base[0] == "z":
                img_base = ("yz", 0, base[1])
            else:  # w reduces to the top class y z^{n1} of the base factor
                img_base = ("yz", 1, n1)
        else:
            # p does not divide t: torsion dies, 1 and w survive
            img_base = None if (base[0] == "z" and base[1] >= 1) else base
        if img_base is None:
            table.append((m, None))
        else:
            table.append((m, BasisMonomial(img_base, m.ext)))
    return ReductionMap(ring, target, tuple(table))


# ---------------------------------------------------------------------------
# cup-length searches


def cup_length(ring: CohomologyRing) -> int:
    """Largest m with a nonzero product of m positive-degree classes, by
    exhaustive search over products of ring generators."""
    if not ring.is_field:
        raise ValueError("cup length is computed in field modes")
    gens = ring.positive_generators()
    best: dict[BasisMonomial, int] = {}
    for g in gens:
        best[g] = 1
    for m in ring.basis:  # already sorted by degree
        length = best.get(m)
        if not length:
            continue
        for g in gens:
            for m2, c in ring.multiply(m, g).items():
                if c != ring.dom(0) and best.get(m2, 0) < length + 1:
                    best[m2] = length + 1
    return max(best.values(), default=0)


def tensor_mul(ring: CohomologyRing, e1: dict, e2: dict) -> dict:
    """Product in ring tensor ring with the Koszul sign; elements are maps
    (m_left, m_right) -> coefficient."""
    out: dict = {}
    for (a1, b1), c1 in e1.items():
        for (a2, b2), c2 in e2.items():
            sign = -1 if (ring.degree(b1) * ring.degree(a2)) % 2 else 1
            for ma, ca in ring.multiply(a1, a2).items():
                for mb, cb in ring.multiply(b1, b2).items():
                    key = (ma, mb)
                    out[key] = out.get(key, 0) + sign * c1 * c2 * ca * cb
    dom = ring.dom
    return {k: dom(v) for k, v in out.items() if dom(v) != dom(0)}


def zero_divisor_cup_length(ring: CohomologyRing) -> int:
    """Largest m with a nonzero m-fold product of zero divisors of the form
    g x 1 - 1 x g, g a ring generator; a lower bound for the reduced
    topological complexity."""
    if not ring.is_field:
        raise ValueError("zero-divisor cup length is computed in field modes")
    gens = ring.positive_generators()
    one = ring.unit
    bars = [
        {(g, one): ring.dom(1), (one, g): ring.dom(-1)} for g in gens
    ]
    best = 0

    def extend(elem: dict, start: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for idx in range(start, len(bars)):
            nxt = tensor_mul(ring, elem, bars[idx])
            if nxt:
                extend(nxt, idx, length + 1)

    extend({(one, one): ring.dom(1)}, 0, 0)
    return best
