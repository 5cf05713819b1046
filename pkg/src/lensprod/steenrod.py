"""Mod-2 Steenrod squares on the F_2 cohomology rings, total Stiefel-Whitney
classes of the tangent bundle, and the orientability/Spin predicates.

The total square is defined on generators: Sq(y) = y + y^2, Sq(z) = z + z^2,
Sq(x_i) = (1+z)^{n_i+1} x_i with z read as 0 when the presentation has no
degree-2 class, and Sq(w) = w. It extends multiplicatively to monomials
(Cartan formula), with every product reduced by the ring's relations.
"""

from __future__ import annotations

from .algebra import GF, TruncPoly, TupleSpec, binom_mod2, binom_mod2_expand
from .cohomology import BasisMonomial, CohomologyRing, FREE, UNIT

__all__ = [
    "total_sq",
    "sq_k",
    "stiefel_whitney_total",
    "is_orientable",
    "is_spin",
]

F2 = GF(2)


def _require_f2(ring: CohomologyRing) -> None:
    if ring.dom != F2:
        raise ValueError(f"Steenrod squares act on F_2 rings, not {ring.dom}")


def _sq_z_power(ring: CohomologyRing, a: int) -> dict:
    """Sq(z^a) = (z + z^2)^a = sum C(a, j) z^{a+j}, truncated by the ring."""
    out: dict = {}
    for j in range(a + 1):
        if binom_mod2(a, j):
            m = ring.z_power(a + j)
            if m is not None:
                out[m] = 1
    return out


def _sq_base(ring: CohomologyRing, base: tuple) -> dict:
    pres = ring.mode.presentation
    if pres == FREE:
        return _sq_z_power(ring, base[1])
    if pres == UNIT:
        # the only positive-degree base class restricts from the sphere:
        # positive squares vanish by instability and the top degree
        return {BasisMonomial(base, ()): 1}
    eps, a = base[1], base[2]
    out = _sq_z_power(ring, a)
    if eps:
        sq_y = {BasisMonomial(("yz", 1, 0), ()): 1}
        y_sq = ring.multiply(
            BasisMonomial(("yz", 1, 0), ()), BasisMonomial(("yz", 1, 0), ())
        )
        for m, c in y_sq.items():
            sq_y[m] = sq_y.get(m, 0) + c
        out = ring.mul(sq_y, out)
    return out


def _sq_ext(ring: CohomologyRing, i: int) -> dict:
    """Sq(x_i) = (1+z)^{n_i+1} x_i."""
    ni = ring.spec.n[i - 1]
    zpart: dict = {}
    for j in range(ni + 2):
        if binom_mod2(ni + 1, j):
            m = ring.z_power(j)
            if m is not None:
                zpart[m] = 1
    return ring.mul(zpart, {BasisMonomial(ring.unit.base, (i,)): 1})


def total_sq(ring: CohomologyRing, m: BasisMonomial) -> dict:
    """Total Steenrod square of a basis monomial as an F_2 combination."""
    _require_f2(ring)
    ring._require(m)
    cache = getattr(ring, "_sq_cache", None)
    if cache is None:
        cache = {}
        ring._sq_cache = cache
    if m in cache:
        return dict(cache[m])
    out = _sq_base(ring, m.base)
    for i in m.ext:
        out = ring.mul(out, _sq_ext(ring, i))
    cache[m] = dict(out)
    return out


def sq_k(ring: CohomologyRing, m: BasisMonomial, k: int) -> dict:
    """Degree-k component Sq^k(m); zero above the degree of m."""
    target = ring.degree(m) + k
    return {
        m2: c for m2, c in total_sq(ring, m).items() if ring.degree(m2) == target
    }


def sq_k_elem(ring: CohomologyRing, elem: dict, k: int) -> dict:
    out: dict = {}
    for m, c in elem.items():
        for m2, c2 in sq_k(ring, m, k).items():
            out[m2] = (out.get(m2, 0) + c * c2) % 2
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------------------
# characteristic classes of the tangent bundle


def stiefel_whitney_total(spec: TupleSpec) -> TruncPoly:
    """W(tau) = (1+z)^{|n|+r} as an F_2 polynomial in the degree-2 class z,
    truncated by z^{n1+1} = 0; z itself vanishes for odd finite t."""
    n1 = spec.n[0]
    if spec.finite and spec.t % 2 == 1:
        return TruncPoly.one(F2, n1)
    return binom_mod2_expand(spec.size_sum + spec.r, n1)


def is_orientable(spec: TupleSpec) -> bool:
    """Quotients of products of odd spheres by subgroups of the circle are
    orientable; equivalently w_1 = 0 (the SW polynomial is even-graded)."""
    return True


def is_spin(spec: TupleSpec) -> bool:
    """Spin iff w_2 = 0, i.e. iff (|n|+r) z = 0: so iff n1 = 0, or |n|+r is
    even, or the degree-2 class itself vanishes (odd finite t)."""
    return stiefel_whitney_total(spec).coeff(1) == 0
