import pytest

from lensprod.algebra import GF, GradedAbGroup, QQ, TupleSpec, ZZ
from lensprod.oracle import (
    MemoryCapError,
    compare_with_theory,
    homology,
    product_quotient_complex,
    smith_normal_form,
    sphere_complex,
)

from _grid import grid_specs


def test_sphere_complex_structure():
    cx = sphere_complex(1, 3)
    assert cx.ranks == (1, 1, 1, 1)
    assert cx.diffs[1] == (-1, 1, 0)  # lambda - 1
    assert cx.diffs[2] == (1, 1, 1)  # norm element
    assert cx.diffs[3] == (-1, 1, 0)
    cx.check_dd_zero()


def test_sphere_complex_circle():
    cx = sphere_complex(0, 5)
    assert cx.ranks == (1, 1)
    assert cx.diffs[1] == (-1, 1, 0, 0, 0)


def test_sphere_complex_dd_zero_grid():
    for n in range(0, 3):
        for t in (1, 2, 3, 4, 6):
            sphere_complex(n, t).check_dd_zero()


def test_smith_normal_form_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == (1, 6)
    assert smith_normal_form([[0, 0], [0, 0]]) == ()
    assert smith_normal_form([[3]]) == (3,)


def test_smith_normal_form_chain_property():
    import random

    rng = random.Random(5)
    for _ in range(50):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        mat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        factors = smith_normal_form(mat)
        assert all(factors[i] != 0 for i in range(len(factors)))
        assert all(
            factors[i + 1] % factors[i] == 0 for i in range(len(factors) - 1)
        )
        # rank agrees with a fraction-free elimination
        from fractions import Fraction

        rows = [[Fraction(v) for v in row] for row in mat]
        rank = 0
        for col in range(n):
            piv = next((i for i in range(rank, m) if rows[i][col]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(m):
                if i != rank and rows[i][col]:
                    f = rows[i][col] / rows[rank][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
            rank += 1
        assert len(factors) == rank


def test_smith_normal_form_matches_determinant_divisors():
    # independent oracle: d_1 * ... * d_k equals the gcd of all k x k minors
    import random
    from itertools import combinations
    from math import gcd

    def minor_gcd(mat, k):
        m, n = len(mat), len(mat[0])
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[mat[i][j] for j in cols] for i in rows]))
        return g

    def _det(sq):
        if len(sq) == 1:
            return sq[0][0]
        total = 0
        for j, v in enumerate(sq[0]):
            if v:
                sub = [row[:j] + row[j + 1 :] for row in sq[1:]]
                total += (-1) ** j * v * _det(sub)
        return total

    rng = random.Random(13)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        mat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        factors = smith_normal_form(mat)
        prod = 1
        for k, d in enumerate(factors, start=1):
            prod *= d
            assert prod == minor_gcd(mat, k), (mat, factors)
        if len(factors) < min(m, n):
            assert minor_gcd(mat, len(factors) + 1) == 0


def test_quotient_complex_lens_space():
    q = product_quotient_complex(TupleSpec((1,), 3))
    assert q.ranks == (1, 1, 1, 1)
    assert q.boundaries[1] == {}
    assert q.boundaries[2] == {(0, 0): 3}
    assert q.boundaries[3] == {}
    assert homology(q, ZZ).groups == GradedAbGroup.of(
        {0: (1, ()), 1: (0, (3,)), 3: (1, ())}
    )


def test_quotient_complex_torus():
    q = product_quotient_complex(TupleSpec((0, 0), 2))
    assert sum(q.ranks) == 8
    assert homology(q, ZZ).groups == GradedAbGroup.of(
        {0: (1, ()), 1: (2, ()), 2: (1, ())}
    )


def test_quotient_complex_three_torus():
    q = product_quotient_complex(TupleSpec((0, 0, 0), 4))
    assert homology(q, ZZ).groups == GradedAbGroup.of(
        {0: (1, ()), 1: (3, ()), 2: (3, ()), 3: (1, ())}
    )


def test_homology_f2_betti():
    q = product_quotient_complex(TupleSpec((1, 1), 2))
    assert homology(q, GF(2)).betti() == (1, 1, 1, 2, 1, 1, 1)


def test_homology_rational():
    q = product_quotient_complex(TupleSpec((1, 1), 3))
    assert homology(q, QQ).betti() == (1, 0, 0, 2, 0, 0, 1)


def test_memory_cap():
    with pytest.raises(MemoryCapError):
        product_quotient_complex(TupleSpec((2, 2, 2), 6), cap=100)


def test_no_oracle_for_infinite_t():
    from lensprod.algebra import INFINITY

    with pytest.raises(ValueError):
        product_quotient_complex(TupleSpec((1,), INFINITY))


def test_compare_examples():
    assert compare_with_theory(TupleSpec((1,), 3), ZZ).ok
    assert compare_with_theory(TupleSpec((1, 2), 4), GF(2)).ok
    rep = compare_with_theory(TupleSpec((2, 2), 3), ZZ)
    assert rep.ok
    # torsion placement: Z_3 classes sit in even degrees 2, 4 times the
    # exterior degrees
    assert rep.degrees[2][1] == (0, (3,))


def test_connected_closed_orientable_ends():
    for spec in grid_specs(ts=(2, 3)):
        q = product_quotient_complex(spec)
        h = homology(q, ZZ).groups
        assert (h.free_rank(0), h.torsion(0)) == (1, ())
        assert (h.free_rank(spec.dim), h.torsion(spec.dim)) == (1, ())


def test_oracle_mod_p_betti_palindromic():
    for spec in grid_specs(ts=(2, 4)):
        q = product_quotient_complex(spec)
        betti = homology(q, GF(2)).betti()
        assert betti == tuple(reversed(betti))
