"""Brute-force homology oracle.

Builds the free Z[Z_t]-equivariant cell complex of a product of odd spheres
(one cell per dimension per factor, boundary alternating between lambda - 1
and the norm element), passes to the quotient by the diagonal action, and
computes integral or mod-p homology by exact Smith normal form. A comparison
routine converts the result to cohomology via universal coefficients and
matches it degree by degree against the predicted ring.

There is no oracle for t = INFINITY: the circle quotient is not a finite free
quotient. That regime is validated elsewhere (duality, Euler characteristics,
wedge bookkeeping).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Coeff, GradedAbGroup, TupleSpec, ZZ

__all__ = [
    "DEFAULT_CAP",
    "MemoryCapError",
    "EquivariantComplex",
    "QuotientComplex",
    "HomologyResult",
    "ComparisonReport",
    "sphere_complex",
    "product_quotient_complex",
    "smith_normal_form",
    "homology",
    "compare_with_theory",
]

DEFAULT_CAP = 50_000


class MemoryCapError(ValueError):
    """Raised when the quotient basis would exceed the configured cap."""


# ---------------------------------------------------------------------------
# group-ring helpers: elements of Z[Z_t] are integer vectors of length t


def _gr_mul(u: tuple, v: tuple, t: int) -> tuple:
    out = [0] * t
    for a, x in enumerate(u):
        if x:
            for b, y in enumerate(v):
                if y:
                    out[(a + b) % t] += x * y
    return tuple(out)


def _gr_norm(t: int) -> tuple:
    return (1,) * t


def _gr_lambda_minus_1(t: int) -> tuple:
    if t == 1:
        return (0,)
    out = [0] * t
    out[0] = -1
    out[1] += 1
    return tuple(out)


@dataclass(frozen=True)
class EquivariantComplex:
    """Free Z[Z_t] complex with one generator per degree 0..dim; diffs[d] is
    the group-ring coefficient of the boundary of the degree-d generator."""

    t: int
    dim: int
    diffs: tuple

    @property
    def ranks(self) -> tuple[int, ...]:
        return (1,) * (self.dim + 1)

    def check_dd_zero(self) -> None:
        zero = (0,) * self.t
        for d in range(2, self.dim + 1):
            if _gr_mul(self.diffs[d], self.diffs[d - 1], self.t) != zero:
                raise AssertionError(f"d o d != 0 at degree {d}")


def sphere_complex(n: int, t: int) -> EquivariantComplex:
    """Minimal free Z_t-cell structure on S^{2n+1}: one cell per degree,
    even boundaries the norm element, odd boundaries lambda - 1."""
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"t must be a positive integer, got {t}")
    if n < 0:
        raise ValueError("n must be non-negative")
    diffs: list = [None]
    for d in range(1, 2 * n + 2):
        diffs.append(_gr_lambda_minus_1(t) if d % 2 == 1 else _gr_norm(t))
    cx = EquivariantComplex(t, 2 * n + 1, tuple(diffs))
    cx.check_dd_zero()
    return cx


# ---------------------------------------------------------------------------
# the quotient complex of the product


@dataclass(frozen=True)
class QuotientComplex:
    """Integral cell complex of the quotient space. basis[d] lists the cells
    (cells j_1..j_r, twists a_2..a_r) of degree d; boundaries[d] is a sparse
    matrix {(row, col): int} into degree d-1."""

    spec: TupleSpec
    basis: tuple
    boundaries: tuple

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1


def _sphere_terms(j: int, t: int):
    """Boundary of the degree-j sphere cell as (coefficient, group shift)."""
    if j % 2 == 1:
        if t == 1:
            return ()
        return ((-1, 0), (1, 1))
    return tuple((1, c) for c in range(t))


def product_quotient_complex(spec: TupleSpec, cap: int = DEFAULT_CAP) -> QuotientComplex:
    """Tensor the sphere complexes over the group ring of the diagonal action;
    quotient basis fixes the first coordinate's group element to the identity."""
    if not spec.finite:
        raise ValueError("no finite-quotient complex exists for t = INFINITY")
    t, r = spec.t, spec.r
    total = t ** (r - 1)
    for ni in spec.n:
        total *= 2 * ni + 2
    if total > cap:
        raise MemoryCapError(
            f"quotient basis has {total} cells, above the cap {cap}"
        )

    dim = spec.dim
    basis: list[list] = [[] for _ in range(dim + 1)]

    def gen_cells(i: int, prefix: tuple):
        if i == r:
            yield prefix
            return
        for j in range(2 * spec.n[i] + 2):
            yield from gen_cells(i + 1, prefix + (j,))

    def gen_twists(count: int, prefix: tuple):
        if count == 0:
            yield prefix
            return
        for a in range(t):
            yield from gen_twists(count - 1, prefix + (a,))

    for cells in gen_cells(0, ()):
        d = sum(cells)
        for twists in gen_twists(r - 1, ()):
            basis[d].append((cells, twists))
    for rows in basis:
        rows.sort()
    index = [{cell: i for i, cell in enumerate(rows)} for rows in basis]

    boundaries: list = [None]
    for d in range(1, dim + 1):
        mat: dict = {}
        for col, (cells, twists) in enumerate(basis[d]):
            for i in range(r):
                j = cells[i]
                if j == 0:
                    continue
                sign = -1 if sum(cells[:i]) % 2 else 1
                new_cells = cells[:i] + (j - 1,) + cells[i + 1 :]
                shift = 0 if i == 0 else twists[i - 1]
                for coef, c in _sphere_terms(j, t):
                    s = (shift + c) % t
                    if i == 0:
                        new_twists = tuple((a - s) % t for a in twists)
                    else:
                        new_twists = twists[: i - 1] + (s,) + twists[i:]
                    row = index[d - 1][(new_cells, new_twists)]
                    key = (row, col)
                    v = mat.get(key, 0) + sign * coef
                    if v:
                        mat[key] = v
                    elif key in mat:
                        del mat[key]
        boundaries.append(mat)

    cx = QuotientComplex(spec, tuple(tuple(b) for b in basis), tuple(boundaries))
    _check_dd_zero(cx)
    return cx


def _check_dd_zero(cx: QuotientComplex) -> None:
    for d in range(2, cx.dim + 1):
        inner, outer = cx.boundaries[d], cx.boundaries[d - 1]
        rows_of_outer: dict = {}
        for (i, j), v in outer.items():
            rows_of_outer.setdefault(j, []).append((i, v))
        acc: dict = {}
        for (mid, col), v in inner.items():
            for row, w in rows_of_outer.get(mid, ()):
                key = (row, col)
                s = acc.get(key, 0) + v * w
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        if acc:
            raise AssertionError(f"d o d != 0 at degree {d} of {cx.spec}")


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(matrix) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix given as a list
    of rows (zero factors dropped, units included)."""
    entries = {}
    ncols = 0
    for i, row in enumerate(matrix):
        ncols = max(ncols, len(row))
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = int(v)
    return _snf_factors(entries)


def _snf_factors(entries: dict) -> tuple[int, ...]:
    """Invariant factors of a sparse integer matrix {(i, j): value}."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    unit_rank = 0
    # unit-pivot sweep: boundary matrices here are mostly made of +-1 entries,
    # so this removes nearly everything without coefficient growth
    while True:
        pivot = None
        best = None
        scanned = 0
        for i, row in rows.items():
            for j, v in row.items():
                if v in (1, -1):
                    cost = (len(row) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best:
                        best, pivot = cost, (i, j)
                    scanned += 1
                    if cost == 0 or scanned > 200:
                        break
            if pivot is not None and (best == 0 or scanned > 200):
                break
        if pivot is None:
            break
        i, j = pivot
        piv = rows[i][j]
        prow = rows[i]
        for i2 in list(cols[j]):
            if i2 == i:
                continue
            mult = rows[i2][j] // piv  # exact: piv is +-1
            if mult:
                row2 = rows[i2]
                for j2, v in prow.items():
                    w = row2.get(j2, 0) - mult * v
                    if w:
                        row2[j2] = w
                        cols[j2].add(i2)
                    elif j2 in row2:
                        del row2[j2]
                        cols[j2].discard(i2)
                if not row2:
                    del rows[i2]
        for j2 in prow:
            cols[j2].discard(i)
            if not cols[j2]:
                del cols[j2]
        del rows[i]
        unit_rank += 1

    residual = [
        [(i, j, v) for j, v in row.items()] for i, row in rows.items() if row
    ]
    if not residual:
        return (1,) * unit_rank

    # compact the residual into a small dense matrix
    live_rows = sorted({i for i, row in rows.items() if row})
    live_cols = sorted({j for row in rows.values() for j in row})
    rmap = {i: a for a, i in enumerate(live_rows)}
    cmap = {j: b for b, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for i, row in rows.items():
        for j, v in row.items():
            dense[rmap[i]][cmap[j]] = v
    chain = _dense_snf(dense)
    return (1,) * unit_rank + chain


def _dense_snf(mat: list[list[int]]) -> tuple[int, ...]:
    """Classical SNF with gcd pivoting on a dense matrix; returns the nonzero
    diagonal in divisibility order."""
    m, n = len(mat), len(mat[0]) if mat else 0
    out = []
    k = 0
    while True:
        pos = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                v = abs(mat[i][j])
                if v and (best is None or v < best):
                    best, pos = v, (i, j)
        if pos is None:
            break
        i, j = pos
        mat[k], mat[i] = mat[i], mat[k]
        if j != k:
            for row in mat:
                row[k], row[j] = row[j], row[k]
        while True:
            piv = mat[k][k]
            done = True
            for i in range(k + 1, m):
                if mat[i][k]:
                    q = mat[i][k] // piv
                    if q:
                        mat[i] = [a - q * b for a, b in zip(mat[i], mat[k])]
                    if mat[i][k]:
                        mat[k], mat[i] = mat[i], mat[k]
                        done = False
                        break
            if not done:
                continue
            for j in range(k + 1, n):
                if mat[k][j]:
                    q = mat[k][j] // piv
                    if q:
                        for row in mat:
                            row[j] -= q * row[k]
                    if mat[k][j]:
                        for row in mat:
                            row[k], row[j] = row[j], row[k]
                        done = False
                        break
            if not done:
                continue
            offender = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if mat[i][j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            mat[k] = [a + b for a, b in zip(mat[k], mat[offender])]
        out.append(abs(mat[k][k]))
        k += 1
        if k >= m or k >= n:
            break
    return tuple(out)


def _rank_mod_p(entries: dict, p: int) -> int:
    """Rank of a sparse integer matrix over F_p by sparse elimination."""
    rows: dict[int, dict[int, int]] = {}
    for (i, j), v in entries.items():
        v %= p
        if v:
            rows.setdefault(i, {})[j] = v
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        i = min(rows, key=lambda i2: len(rows[i2]))
        row = rows[i]
        j = min(row, key=lambda j2: len(cols[j2]))
        inv = pow(row[j], -1, p)
        prow = {j2: (v * inv) % p for j2, v in row.items()}
        for i2 in list(cols[j]):
            if i2 == i:
                continue
            row2 = rows[i2]
            f = row2[j]
            for j2, v in prow.items():
                w = (row2.get(j2, 0) - f * v) % p
                if w:
                    row2[j2] = w
                    cols[j2].add(i2)
                elif j2 in row2:
                    del row2[j2]
                    cols[j2].discard(i2)
            if not row2:
                del rows[i2]
        for j2 in prow:
            cols[j2].discard(i)
            if not cols[j2]:
                del cols[j2]
        del rows[i]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# homology and the theory comparison


@dataclass(frozen=True)
class HomologyResult:
    groups: GradedAbGroup
    dom: Coeff

    def betti(self) -> tuple[int, ...]:
        return self.groups.betti()


def homology(cx: QuotientComplex, dom: Coeff = ZZ) -> HomologyResult:
    """H_*(cx) over Z (free part + invariant-factor torsion) or over a field
    (Betti numbers from ranks)."""
    dims = cx.ranks
    top = cx.dim
    data: dict[int, tuple[int, tuple[int, ...]]] = {}
    if dom.kind == "Fp":
        p = dom.p
        ranks = [0] + [_rank_mod_p(cx.boundaries[d], p) for d in range(1, top + 1)]
        ranks.append(0)
        for d in range(top + 1):
            b = dims[d] - ranks[d] - ranks[d + 1]
            data[d] = (b, ())
    else:
        factor_lists = [()] + [
            _snf_factors(cx.boundaries[d]) for d in range(1, top + 1)
        ]
        factor_lists.append(())
        for d in range(top + 1):
            free = dims[d] - len(factor_lists[d]) - len(factor_lists[d + 1])
            torsion = () if dom.kind == "Q" else tuple(
                q for q in factor_lists[d + 1] if q > 1
            )
            data[d] = (free, torsion)
    return HomologyResult(GradedAbGroup.of(data), dom)


def cohomology_from_homology(h: HomologyResult, top: int) -> GradedAbGroup:
    """Universal coefficients: over Z, H^d = free(H_d) + torsion(H_{d-1});
    over a field the Betti numbers agree."""
    if h.dom.is_field:
        return h.groups
    data = {}
    for d in range(top + 1):
        data[d] = (h.groups.free_rank(d), h.groups.torsion(d - 1))
    return GradedAbGroup.of(data)


@dataclass(frozen=True)
class ComparisonReport:
    spec: TupleSpec
    dom: Coeff
    ok: bool
    degrees: tuple  # (degree, theory (free, torsion), oracle (free, torsion), match)

    def first_mismatch(self):
        for d, th, orc, m in self.degrees:
            if not m:
                return d
        return None

    def __str__(self):
        verdict = "match" if self.ok else f"MISMATCH at degree {self.first_mismatch()}"
        return f"{self.spec} over {self.dom}: {verdict}"


@lru_cache(maxsize=None)
def _cached_complex(spec: TupleSpec, cap: int) -> QuotientComplex:
    return product_quotient_complex(spec, cap)


@lru_cache(maxsize=None)
def _cached_oracle_cohomology(spec: TupleSpec, dom: Coeff, cap: int) -> GradedAbGroup:
    cx = _cached_complex(spec, cap)
    return cohomology_from_homology(homology(cx, dom), spec.dim)


def compare_with_theory(spec: TupleSpec, dom: Coeff = ZZ, cap: int = DEFAULT_CAP) -> ComparisonReport:
    """Oracle cohomology vs the predicted ring, degree by degree after
    elementary-divisor normalization. A mismatch signals a bug in one side."""
    from .cohomology import build_ring, graded_groups

    oracle_side = _cached_oracle_cohomology(spec, dom, cap).normalized()
    theory_side = graded_groups(build_ring(spec, dom)).normalized()
    rows = []
    ok = True
    for d in range(spec.dim + 1):
        th = (theory_side.free_rank(d), theory_side.torsion(d))
        orc = (oracle_side.free_rank(d), oracle_side.torsion(d))
        match = th == orc
        ok = ok and match
        rows.append((d, th, orc, match))
    return ComparisonReport(spec, dom, ok, tuple(rows))
