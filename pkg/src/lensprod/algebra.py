"""Exact arithmetic foundations: coefficient domains, truncated polynomial
arithmetic, p-adic valuations, and graded abelian-group bookkeeping.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, inf as INFINITY

__all__ = [
    "INFINITY",
    "ZZ",
    "QQ",
    "GF",
    "Coeff",
    "TupleSpec",
    "TruncPoly",
    "GradedAbGroup",
    "PoincareSeries",
    "is_prime",
    "nu_p",
    "binom_mod2",
    "binom_mod2_expand",
    "elementary_divisors",
]


def is_prime(p: int) -> bool:
    """Deterministic trial division, adequate for the sizes handled here."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def nu_p(p: int, m: int) -> int:
    """Largest e with p^e dividing m, for p prime and m >= 1."""
    if not is_prime(p):
        raise ValueError(f"nu_p requires a prime, got {p}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"nu_p requires a positive integer, got {m}")
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def prime_factors(m: int) -> tuple[int, ...]:
    """Distinct prime divisors of m >= 1, ascending."""
    if m < 1:
        raise ValueError(f"positive integer required, got {m}")
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
    return tuple(out)


def binom_mod2(m: int, k: int) -> int:
    """C(m, k) mod 2 by Lucas; 0 whenever k < 0, m < 0 or k > m."""
    if k < 0 or m < 0 or k > m:
        return 0
    return int(m & k == k)


# ---------------------------------------------------------------------------
# coefficient domains


@dataclass(frozen=True)
class Coeff:
    """Coefficient domain: the integers ("Z"), the rationals ("Q"), or a
    prime field ("Fp" with its prime)."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "Fp" and not is_prime(self.p):
            raise ValueError(f"F_p needs a prime, got {self.p}")
        if self.kind != "Fp" and self.p != 0:
            raise ValueError("p is only meaningful for prime fields")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __call__(self, x):
        """Coerce an int/Fraction into canonical form for this domain."""
        if self.kind == "Fp":
            return int(x) % self.p
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        return int(x)

    def is_unit(self, x) -> bool:
        x = self(x)
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def inv(self, x):
        x = self(x)
        if not self.is_unit(x):
            raise ZeroDivisionError(f"{x} is not invertible in {self}")
        if self.kind == "Fp":
            return pow(x, -1, self.p)
        if self.kind == "Q":
            return 1 / x
        return x

    def __str__(self):
        return f"F{self.p}" if self.kind == "Fp" else self.kind


ZZ = Coeff("Z")
QQ = Coeff("Q")


def GF(p: int) -> Coeff:
    return Coeff("Fp", p)


# ---------------------------------------------------------------------------
# the tuple (n_1 <= ... <= n_r; t) naming a space


@dataclass(frozen=True)
class TupleSpec:
    """The pair (n, t) naming the quotient of S^{2n_1+1} x ... x S^{2n_r+1}
    by the diagonal action of the t-th roots of unity (t = INFINITY for the
    full circle action)."""

    n: tuple[int, ...]
    t: object  # positive int, or INFINITY

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        object.__setattr__(self, "n", n)
        if len(n) < 1:
            raise ValueError("tuple must have length >= 1")
        if any(v < 0 for v in n):
            raise ValueError(f"entries must be non-negative, got {n}")
        if any(a > b for a, b in zip(n, n[1:])):
            raise ValueError(
                f"tuple {n} is not nondecreasing; sort it (or pass sort=True "
                "through TupleSpec.make) before building"
            )
        if self.t != INFINITY and (not isinstance(self.t, int) or self.t < 1):
            raise ValueError(f"t must be a positive integer or INFINITY, got {self.t}")

    @classmethod
    def make(cls, n, t, sort: bool = False) -> "TupleSpec":
        n = tuple(int(v) for v in n)
        if sort:
            n = tuple(sorted(n))
        return cls(n, t)

    @property
    def r(self) -> int:
        return len(self.n)

    @property
    def size_sum(self) -> int:
        return sum(self.n)

    @property
    def finite(self) -> bool:
        return self.t != INFINITY

    @property
    def delta(self) -> int:
        return 0 if self.finite else 1

    @property
    def dim(self) -> int:
        return 2 * self.size_sum + self.r - self.delta

    def __str__(self):
        t = "inf" if not self.finite else str(self.t)
        return f"CP_{self.n}({t})"


# ---------------------------------------------------------------------------
# truncated polynomials


@dataclass(frozen=True)
class TruncPoly:
    """Univariate polynomial truncated at degree <= prec over a Coeff domain.

    coeffs always has length prec + 1; arithmetic on mixed precision
    truncates to the smaller one.
    """

    coeffs: tuple
    prec: int
    dom: Coeff

    @classmethod
    def of(cls, dom: Coeff, coeffs, prec: int) -> "TruncPoly":
        if prec < 0:
            raise ValueError("precision must be >= 0")
        cs = [dom(c) for c in coeffs[: prec + 1]]
        cs += [dom(0)] * (prec + 1 - len(cs))
        return cls(tuple(cs), prec, dom)

    @classmethod
    def zero(cls, dom: Coeff, prec: int) -> "TruncPoly":
        return cls.of(dom, (), prec)

    @classmethod
    def one(cls, dom: Coeff, prec: int) -> "TruncPoly":
        return cls.of(dom, (1,), prec)

    @classmethod
    def var(cls, dom: Coeff, prec: int) -> "TruncPoly":
        return cls.of(dom, (0, 1), prec)

    def coeff(self, j: int):
        return self.coeffs[j] if 0 <= j <= self.prec else self.dom(0)

    @property
    def is_zero(self) -> bool:
        z = self.dom(0)
        return all(c == z for c in self.coeffs)

    def truncate(self, prec: int) -> "TruncPoly":
        return TruncPoly.of(self.dom, self.coeffs, min(prec, self.prec))

    def _pair(self, other: "TruncPoly") -> tuple["TruncPoly", "TruncPoly", int]:
        if not isinstance(other, TruncPoly):
            other = TruncPoly.of(self.dom, (other,), self.prec)
        if self.dom != other.dom:
            raise ValueError(f"coefficient domains differ: {self.dom} vs {other.dom}")
        prec = min(self.prec, other.prec)
        return self.truncate(prec), other.truncate(prec), prec

    def __add__(self, other):
        a, b, prec = self._pair(other)
        return TruncPoly.of(self.dom, [x + y for x, y in zip(a.coeffs, b.coeffs)], prec)

    def __sub__(self, other):
        a, b, prec = self._pair(other)
        return TruncPoly.of(self.dom, [x - y for x, y in zip(a.coeffs, b.coeffs)], prec)

    def __neg__(self):
        return TruncPoly.of(self.dom, [-c for c in self.coeffs], self.prec)

    def __mul__(self, other):
        a, b, prec = self._pair(other)
        out = [0] * (prec + 1)
        for i, x in enumerate(a.coeffs):
            if x == 0:
                continue
            for j in range(prec + 1 - i):
                y = b.coeffs[j]
                if y != 0:
                    out[i + j] += x * y
        return TruncPoly.of(self.dom, out, prec)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncPoly":
        c = self.dom(c)
        return TruncPoly.of(self.dom, [c * x for x in self.coeffs], self.prec)

    def pow(self, k: int) -> "TruncPoly":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = TruncPoly.one(self.dom, self.prec)
        for _ in range(k):
            out = out * self
        return out

    __pow__ = pow

    def compose(self, inner: "TruncPoly") -> "TruncPoly":
        """self(inner(z)); inner must have zero constant term."""
        a, b, prec = self._pair(inner)
        if b.coeff(0) != self.dom(0):
            raise ValueError("composition needs an inner series without constant term")
        out = TruncPoly.zero(self.dom, prec)
        power = TruncPoly.one(self.dom, prec)
        for c in a.coeffs:
            if c != 0:
                out = out + power.scale(c)
            power = power * b
        return out

    def __str__(self):
        z = self.dom(0)
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == z:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                zz = "z" if j == 1 else f"z^{j}"
                terms.append(zz if c == self.dom(1) else f"{c}*{zz}")
        return " + ".join(terms) if terms else "0"


def binom_mod2_expand(k: int, precision: int) -> TruncPoly:
    """(1+z)^k over F_2 truncated at the given precision, via Lucas."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    f2 = GF(2)
    return TruncPoly.of(
        f2, [binom_mod2(k, j) for j in range(precision + 1)], precision
    )


def binom_expand(k: int, precision: int, dom: Coeff = ZZ) -> TruncPoly:
    """(1+z)^k over an arbitrary domain (exact binomial coefficients)."""
    if k < 0:
        raise ValueError("exponent must be non-negative")
    return TruncPoly.of(dom, [comb(k, j) for j in range(precision + 1)], precision)


# ---------------------------------------------------------------------------
# graded abelian groups


def elementary_divisors(torsion) -> tuple[int, ...]:
    """Normalize a multiset of torsion orders to the divisibility chain
    d_1 | d_2 | ... (trivial orders <= 1 are dropped)."""
    powers: dict[int, list[int]] = {}
    for q in torsion:
        q = int(q)
        if q < 0:
            raise ValueError("torsion orders must be non-negative")
        if q <= 1:
            continue
        for p in prime_factors(q):
            powers.setdefault(p, []).append(nu_p(p, q))
    for exps in powers.values():
        exps.sort(reverse=True)
    depth = max((len(v) for v in powers.values()), default=0)
    chain = []
    for i in range(depth):
        d = 1
        for p, exps in powers.items():
            if i < len(exps):
                d *= p ** exps[i]
        chain.append(d)
    # chain[0] is the largest divisor; report in increasing order d_1 | d_2 | ...
    return tuple(reversed(chain))


@dataclass(frozen=True)
class GradedAbGroup:
    """Finitely supported map degree -> (free rank, torsion multiset).

    For field coefficients the per-degree dimension is stored in the free
    rank slot with empty torsion. Equality normalizes torsion to elementary
    divisors first, so oracle output and theory predictions compare directly.
    """

    groups: tuple[tuple[int, int, tuple[int, ...]], ...]

    @classmethod
    def of(cls, data) -> "GradedAbGroup":
        """data: mapping degree -> (free, torsion iterable)."""
        rows = []
        for d, (free, tors) in sorted(data.items()):
            tors = tuple(sorted(int(q) for q in tors if int(q) > 1))
            if free or tors:
                rows.append((int(d), int(free), tors))
        return cls(tuple(rows))

    @classmethod
    def from_betti(cls, betti) -> "GradedAbGroup":
        return cls.of({d: (b, ()) for d, b in enumerate(betti) if b})

    def as_dict(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        return {d: (f, t) for d, f, t in self.groups}

    def free_rank(self, d: int) -> int:
        return self.as_dict().get(d, (0, ()))[0]

    def torsion(self, d: int) -> tuple[int, ...]:
        return self.as_dict().get(d, (0, ()))[1]

    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _, _ in self.groups)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def betti(self) -> tuple[int, ...]:
        """Per-degree free ranks 0..max_degree (field-coefficient view)."""
        return tuple(self.free_rank(d) for d in range(self.max_degree + 1))

    def normalized(self) -> "GradedAbGroup":
        return GradedAbGroup.of(
            {d: (f, elementary_divisors(t)) for d, f, t in self.groups}
        )

    def __eq__(self, other):
        if not isinstance(other, GradedAbGroup):
            return NotImplemented
        return self.normalized().groups == other.normalized().groups

    def __hash__(self):
        return hash(self.normalized().groups)

    def __str__(self):
        if not self.groups:
            return "0"
        parts = []
        for d, f, t in self.groups:
            names = []
            if f:
                names.append("Z" if f == 1 else f"Z^{f}")
            names += [f"Z/{q}" for q in t]
            parts.append(f"{d}: " + " + ".join(names))
        return "; ".join(parts)


# ---------------------------------------------------------------------------
# Poincare series


@dataclass(frozen=True)
class PoincareSeries:
    """Polynomial in s with non-negative integer coefficients; coefficient of
    s^d is the degree-d dimension of the field-coefficient ring it summarizes."""

    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, coeffs) -> "PoincareSeries":
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if any(c < 0 for c in cs):
            raise ValueError("Poincare coefficients must be non-negative")
        return cls(tuple(cs))

    @classmethod
    def from_dict(cls, dims: dict[int, int]) -> "PoincareSeries":
        top = max(dims, default=-1)
        return cls.of([dims.get(d, 0) for d in range(top + 1)])

    def coeff(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        top = max(self.degree, other.degree)
        return PoincareSeries.of(
            [self.coeff(d) + other.coeff(d) for d in range(top + 1)]
        )

    def __mul__(self, other):
        out = [0] * (self.degree + other.degree + 1 if self.coeffs and other.coeffs else 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PoincareSeries.of(out)

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def __str__(self):
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                s = "s" if d == 1 else f"s^{d}"
                terms.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(terms) if terms else "0"
