"""Truncated polynomial ring Q[g]/(g^5) and Chern-class bookkeeping.

A cohomology class of a fourfold whose even cohomology is generated by a
single degree-two class g is five exact rational coefficients
(q0, q1, q2, q3, q4) standing for q0 + q1*g + ... + q4*g^4. The top
pairing against the fundamental class multiplies the g^4 coefficient by
the degree d = <g^4, [X]>.

A case in the elimination argument is the tuple (r, k, c1c3, euler,
geometry): total Chern class 1 + r*g + k*r^2*g^2 + (c1c3/(r*d))*g^3 +
(euler/d)*g^4. The ambient space is always P^8, restricted along an
embedding with g = m * (hyperplane class), so the pulled-back total
Chern class is (1 + m*g)^9 truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "AMBIENT_BINOMIALS",
    "GradedClass",
    "Geometry",
    "ChernCase",
    "graded",
    "top_pairing",
    "chern_from_case",
    "ambient_pullback",
    "normal_c4_polynomial",
]

# Binomial coefficients C(9, j) for j = 0..4: the truncation of (1+t)^9.
AMBIENT_BINOMIALS = (1, 9, 36, 84, 126)

_TRUNC = 5


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("float coefficients are not exact; pass int/Fraction/str")
    return Fraction(x)


@dataclass(frozen=True)
class GradedClass:
    """An element of Q[g]/(g^5), coefficients indexed by power of g."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.coeffs) != _TRUNC:
            raise ValueError("a graded class has exactly five coefficients")

    @staticmethod
    def unit() -> "GradedClass":
        return graded(1, 0, 0, 0, 0)

    def __mul__(self, other: "GradedClass") -> "GradedClass":
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * _TRUNC
        for i in range(_TRUNC):
            if a[i] == 0:
                continue
            for j in range(_TRUNC - i):
                out[i + j] += a[i] * b[j]
        return GradedClass(tuple(out))

    def __pow__(self, n: int) -> "GradedClass":
        if n < 0:
            raise ValueError("use inverse() for negative powers")
        acc = GradedClass.unit()
        for _ in range(n):
            acc = acc * self
        return acc

    def inverse(self) -> "GradedClass":
        """Multiplicative inverse; requires a unit constant term.

        Degree-by-degree back substitution: with u0*v0 = 1 fixed, each
        v_n is determined by sum_{i=0..n} u_i v_{n-i} = 0.
        """
        u = self.coeffs
        if u[0] == 0:
            raise ValueError("class with zero constant term is not invertible")
        v = [Fraction(1) / u[0]]
        for n in range(1, _TRUNC):
            acc = Fraction(0)
            for i in range(1, n + 1):
                acc += u[i] * v[n - i]
            v.append(-acc / u[0])
        return GradedClass(tuple(v))


def graded(q0, q1, q2, q3, q4) -> GradedClass:
    return GradedClass((_frac(q0), _frac(q1), _frac(q2), _frac(q3), _frac(q4)))


@dataclass(frozen=True)
class Geometry:
    """Degree data for the pairing, with the shape of the degree lattice.

    model "rank1": g^2 = e*x for a generator x, degree e^2.
    model "rank2": g^2 = a*x + b*y, degree a^2 + b^2.
    model "free":  the degree d itself is the parameter.
    """

    model: str
    degree: int
    e: int | None = None
    a: int | None = None
    b: int | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if self.model == "rank1":
            if self.e is None or self.e < 1 or self.e * self.e != self.degree:
                raise ValueError("rank1 geometry needs degree == e^2, e >= 1")
        elif self.model == "rank2":
            if (
                self.a is None
                or self.b is None
                or self.a < 0
                or self.b < 0
                or self.a * self.a + self.b * self.b != self.degree
            ):
                raise ValueError("rank2 geometry needs degree == a^2 + b^2")
        elif self.model == "free":
            if self.e is not None or self.a is not None or self.b is not None:
                raise ValueError("free geometry carries only the degree")
        else:
            raise ValueError(f"unknown lattice model {self.model!r}")

    @staticmethod
    def rank1(e: int) -> "Geometry":
        return Geometry(model="rank1", degree=e * e, e=e)

    @staticmethod
    def rank2(a: int, b: int) -> "Geometry":
        return Geometry(model="rank2", degree=a * a + b * b, a=a, b=b)

    @staticmethod
    def free(d: int) -> "Geometry":
        return Geometry(model="free", degree=d)

    @property
    def params(self) -> dict[str, int]:
        if self.model == "rank1":
            return {"e": self.e}
        if self.model == "rank2":
            return {"a": self.a, "b": self.b}
        return {"d": self.degree}

    @property
    def sort_params(self) -> tuple[int, ...]:
        if self.model == "rank1":
            return (self.e,)
        if self.model == "rank2":
            return (self.a, self.b)
        return (self.degree,)


@dataclass(frozen=True)
class ChernCase:
    """One candidate fourfold: first Chern coefficient r, second-Chern
    ratio k = c2/c1^2, the pairings <c1 c3> and <c4> = euler, and the
    degree geometry."""

    r: int
    k: Fraction
    c1c3: int
    euler: int
    geometry: Geometry

    def __post_init__(self):
        if self.r == 0:
            raise ValueError("r must be nonzero")


def top_pairing(u: GradedClass, geom: Geometry) -> Fraction:
    """<u, [X]> = (g^4 coefficient of u) * degree."""
    return u.coeffs[4] * geom.degree


def chern_from_case(case: ChernCase) -> GradedClass:
    """Total Chern class of a case.

    The g^3 coefficient is pinned by <c1 c3> = r * coeff * d and the g^4
    coefficient by <c4> = euler.
    """
    r, k, d = case.r, case.k, case.geometry.degree
    return graded(
        1,
        r,
        k * r * r,
        Fraction(case.c1c3, r * d),
        Fraction(case.euler, d),
    )


def ambient_pullback(m: int) -> GradedClass:
    """Restriction of the total Chern class of P^8, (1 + m*g)^9 truncated."""
    if m < 1:
        raise ValueError("the hyperplane multiple m must be a positive integer")
    return GradedClass(
        tuple(Fraction(AMBIENT_BINOMIALS[j] * m**j) for j in range(_TRUNC))
    )


def normal_c4_polynomial(case: ChernCase) -> tuple[Fraction, ...]:
    """<c4 of the normal bundle> as a polynomial in the multiple m.

    c(N) = (restricted ambient class) * c(X)^-1; its degree-4 part picks
    up C(9, j) * m^j from the ambient factor against the degree-(4-j)
    inverse coefficient. Returned ascending: index = power of m. The
    degree-4 leading coefficient is always 126*d.
    """
    inv = chern_from_case(case).inverse().coeffs
    d = case.geometry.degree
    return tuple(
        Fraction(AMBIENT_BINOMIALS[j]) * inv[4 - j] * d for j in range(_TRUNC)
    )
