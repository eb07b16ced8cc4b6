"""Integer-root obstructions with replayable certificates.

A candidate surface class is ruled out by showing that its embedding
polynomial has no positive integer root. The engine produces one of
three self-contained certificates for that claim, or a RootFound
witness when a root exists:

  ModularObstruction   the reduced polynomial is nonzero in Z/M for
                       every residue class, so it has no integer roots
                       at all;
  ConstantDivisorTest  every positive divisor of the constant term is
                       evaluated and none is a root (by the rational
                       root theorem this covers every candidate);
  BoundedExhaustive    every integer in [1, bound] is evaluated, with
                       bound at least the Cauchy root bound.

Certificates carry the data needed to re-check them without rerunning
the search: verify_certificate recomputes every claimed value from the
polynomial itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exact import divisors, polynomial_content
from .ring import ChernCase, normal_c4_polynomial
from .riemann_roch import pontryagin_numbers
from .search import CaseSolution, CharNumbers

__all__ = [
    "IntPoly",
    "ModularObstruction",
    "ConstantDivisorTest",
    "BoundedExhaustive",
    "RootFound",
    "CongruenceMod12",
    "AhatNonIntegral",
    "ExternalFact",
    "ExternalFactCertificate",
    "build_embedding_polynomial",
    "eliminate",
    "verify_certificate",
    "verify_certificate_detailed",
    "mod12_filter",
    "ahat_filter",
    "external_fact_filter",
]


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients ascending by degree.

    Trailing zero coefficients are stripped on construction; the zero
    polynomial is kept as a single zero coefficient. scale records the
    denominator LCM that was cleared to reach integer coefficients (1
    when the source was already integral); it does not participate in
    evaluation since scaling never moves a root.
    """

    coeffs: tuple[int, ...]
    scale: int = 1

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")

    @classmethod
    def from_desc(cls, desc, scale: int = 1) -> "IntPoly":
        return cls(tuple(reversed(tuple(desc))), scale)

    @property
    def desc_coeffs(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, m):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc

    def evaluate_mod(self, m: int, modulus: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * m + c) % modulus
        return acc


@dataclass(frozen=True)
class ModularObstruction:
    content: int
    m_power: int
    modulus: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class ConstantDivisorTest:
    content: int
    m_power: int
    divisors: tuple[int, ...]
    values: tuple[int, ...]


@dataclass(frozen=True)
class BoundedExhaustive:
    content: int
    m_power: int
    bound: int


@dataclass(frozen=True)
class RootFound:
    """Witness that elimination fails: m is a positive integer root."""

    m: int


@dataclass(frozen=True)
class CongruenceMod12:
    """<c1^2 c2> + 2 <c1^4> is not divisible by 12."""

    value: int
    residue: int


@dataclass(frozen=True)
class AhatNonIntegral:
    """A spin case whose A-hat genus is not an integer."""

    value: Fraction


@dataclass(frozen=True)
class ExternalFact:
    """A classification fact imported from the literature, keyed by r.

    kind is one of degree-in (admissible degrees form a finite set),
    degree-max (degrees are bounded), concludes (the case is a known
    variety and the run may close it out instead of eliminating it).
    """

    index: int
    r: int
    kind: str
    citation: str
    degrees: tuple[int, ...] = ()
    max_degree: int | None = None
    conclusion: str | None = None

    def __post_init__(self):
        if self.kind not in ("degree-in", "degree-max", "concludes"):
            raise ValueError(f"unknown fact kind {self.kind!r}")
        if self.kind == "degree-in" and not self.degrees:
            raise ValueError("degree-in fact needs a nonempty degree set")
        if self.kind == "degree-max" and self.max_degree is None:
            raise ValueError("degree-max fact needs a bound")
        if self.kind == "concludes" and not self.conclusion:
            raise ValueError("concludes fact needs a conclusion label")

    @property
    def constraint(self) -> str:
        if self.kind == "degree-in":
            inside = ", ".join(str(d) for d in self.degrees)
            return f"degree in {{{inside}}}"
        if self.kind == "degree-max":
            return f"degree <= {self.max_degree}"
        return f"classified as {self.conclusion}"


@dataclass(frozen=True)
class ExternalFactCertificate:
    index: int
    constraint: str
    citation: str
    outcome: str  # "eliminated" or "concluded"
    violated_by: int | None = None
    conclusion: str | None = None


def build_embedding_polynomial(case: ChernCase) -> IntPoly:
    """P(m) = scale * (d^2 m^8 - c4(N)(m)) with integer coefficients.

    The self-intersection formula evaluates the Euler characteristic of
    the normal bundle of an embedding with hyperplane multiple m as
    d^2 m^8; the bundle-decomposition route evaluates it as c4(N)(m).
    Both compute the same number, so P must vanish at the (positive
    integer) m of any actual embedding. scale is the least common
    denominator of the c4(N) coefficients (1 for every shipped case).
    """
    p = normal_c4_polynomial(case)
    d = case.geometry.degree
    rational = [-c for c in p] + [Fraction(0), Fraction(0), Fraction(0)]
    rational.append(Fraction(d * d))
    scale = lcm(*(c.denominator for c in rational))
    return IntPoly(tuple(int(c * scale) for c in rational), scale)


def _reduce(poly: IntPoly) -> tuple[int, int, IntPoly]:
    """Split off content and the power of m dividing the polynomial.

    Returns (content, m_power, reduced) with poly == content * m^m_power
    * reduced, reduced primitive with nonzero constant term. Positive
    integer roots are preserved by the reduction.
    """
    if poly.is_zero:
        raise ValueError("zero polynomial: every m is a root")
    content = polynomial_content(poly.coeffs)
    if poly.coeffs[poly.degree] < 0:
        # Roots are insensitive to an overall sign; normalise the lead
        # positive so certificates are canonical.
        content = -content
    cs = [c // content for c in poly.coeffs]
    m_power = 0
    while cs[0] == 0:
        cs.pop(0)
        m_power += 1
    return abs(content), m_power, IntPoly(tuple(cs))


def _cauchy_bound(poly: IntPoly) -> int:
    """Integer B with every root of poly of absolute value < B + 1."""
    lead = abs(poly.coeffs[-1])
    rest = [abs(c) for c in poly.coeffs[:-1]]
    if not rest:
        return 0
    biggest = max(rest)
    return 1 + -(-biggest // lead)


def eliminate(
    poly: IntPoly,
    max_modulus: int = 720,
    search_override: int | None = None,
):
    """Certify that poly has no positive integer root, or find one.

    Tries the cheapest certificate first: reduce by content and powers
    of m, scan moduli 2..max_modulus for one where no residue class
    vanishes, then fall back to the divisor test on the constant term.
    search_override forces the bounded exhaustive route instead of the
    divisor test, scanning up to max(Cauchy bound, override); it is
    meant for inputs whose constant term is unreasonable to factor.
    """
    content, m_power, reduced = _reduce(poly)
    if reduced.degree == 0:
        # A nonzero constant: no roots anywhere.
        return BoundedExhaustive(content=content, m_power=m_power, bound=0)
    for modulus in range(2, max_modulus + 1):
        residues = tuple(
            reduced.evaluate_mod(t, modulus) for t in range(modulus)
        )
        if all(residues):
            return ModularObstruction(
                content=content,
                m_power=m_power,
                modulus=modulus,
                residues=residues,
            )
    if search_override is not None:
        bound = max(_cauchy_bound(reduced), search_override)
        for m in range(1, bound + 1):
            if reduced.evaluate(m) == 0:
                return RootFound(m=m)
        return BoundedExhaustive(content=content, m_power=m_power, bound=bound)
    candidates = divisors(abs(reduced.coeffs[0]))
    values = tuple(reduced.evaluate(m) for m in candidates)
    for m, value in zip(candidates, values):
        if value == 0:
            return RootFound(m=m)
    return ConstantDivisorTest(
        content=content, m_power=m_power, divisors=candidates, values=values
    )


def _check_reduction(poly: IntPoly, content: int, m_power: int):
    """Re-divide poly by the certificate's claimed content and m power.

    The claimed content need not be the full content, only a common
    divisor; any exact reduction preserves positive integer roots.
    """
    if poly.is_zero:
        return None, "zero polynomial has every positive integer as a root"
    if content < 1:
        return None, f"content {content} is not positive"
    cs = list(poly.coeffs)
    if cs[-1] < 0:
        cs = [-c for c in cs]
    if any(c % content for c in cs):
        return None, f"content {content} does not divide all coefficients"
    cs = [c // content for c in cs]
    if m_power < 0 or m_power > len(cs) - 1:
        return None, f"m power {m_power} out of range"
    if any(cs[i] != 0 for i in range(m_power)):
        return None, f"coefficients below m^{m_power} are not all zero"
    reduced = IntPoly(tuple(cs[m_power:]))
    if reduced.coeffs[0] == 0:
        return None, "reduced polynomial still divisible by m"
    return reduced, ""


def verify_certificate_detailed(poly: IntPoly, cert) -> tuple[bool, str]:
    """Re-derive every claim a certificate makes about poly.

    Returns (True, "") when the certificate is sound, otherwise
    (False, reason). RootFound verifies as a valid witness that a root
    exists, i.e. that elimination legitimately failed.
    """
    if isinstance(cert, RootFound):
        if cert.m < 1:
            return False, f"root {cert.m} is not a positive integer"
        if poly.evaluate(cert.m) != 0:
            return False, f"claimed root {cert.m} does not vanish"
        return True, ""

    if isinstance(cert, (ModularObstruction, ConstantDivisorTest, BoundedExhaustive)):
        reduced, reason = _check_reduction(poly, cert.content, cert.m_power)
        if reduced is None:
            return False, reason
        if isinstance(cert, ModularObstruction):
            if cert.modulus < 2:
                return False, f"modulus {cert.modulus} is too small"
            if len(cert.residues) != cert.modulus:
                return (
                    False,
                    f"expected {cert.modulus} residues, got {len(cert.residues)}",
                )
            for t, claimed in enumerate(cert.residues):
                actual = reduced.evaluate_mod(t, cert.modulus)
                if actual != claimed:
                    return (
                        False,
                        f"residue at {t} mod {cert.modulus} is {actual}, "
                        f"certificate claims {claimed}",
                    )
                if claimed == 0:
                    return False, f"residue class {t} mod {cert.modulus} vanishes"
            return True, ""
        if isinstance(cert, ConstantDivisorTest):
            expected = divisors(abs(reduced.coeffs[0]))
            if cert.divisors != expected:
                return (
                    False,
                    f"divisor list {cert.divisors} does not match the "
                    f"divisors of {abs(reduced.coeffs[0])}",
                )
            if len(cert.values) != len(cert.divisors):
                return False, "one value per divisor required"
            for m, claimed in zip(cert.divisors, cert.values):
                actual = reduced.evaluate(m)
                if actual != claimed:
                    return (
                        False,
                        f"value at {m} is {actual}, certificate claims {claimed}",
                    )
                if claimed == 0:
                    return False, f"divisor {m} is a root"
            return True, ""
        # BoundedExhaustive
        if reduced.degree == 0:
            return True, ""
        needed = _cauchy_bound(reduced)
        if cert.bound < needed:
            return (
                False,
                f"bound {cert.bound} is below the root bound {needed}",
            )
        for m in range(1, cert.bound + 1):
            if reduced.evaluate(m) == 0:
                return False, f"{m} is a root inside the claimed bound"
        return True, ""

    raise TypeError(f"not a polynomial certificate: {type(cert).__name__}")


def verify_certificate(poly: IntPoly, cert) -> bool:
    ok, _ = verify_certificate_detailed(poly, cert)
    return ok


def mod12_filter(cn: CharNumbers) -> CongruenceMod12 | None:
    """Eliminate when <c1^2 c2> + 2 <c1^4> is not a multiple of 12.

    On a smooth fourfold, chi(-K) - chi(O) = (<c1^2 c2> + 2<c1^4>)/12
    by Riemann-Roch, and both Euler characteristics are integers. A
    nonzero residue mod 12 therefore rules the candidate out before
    any polynomial work.
    """
    value = cn.c1_2c2 + 2 * cn.c1_4
    residue = value % 12
    if residue == 0:
        return None
    return CongruenceMod12(value=value, residue=residue)


def ahat_filter(case: ChernCase) -> AhatNonIntegral | None:
    """Eliminate spin cases (even r) whose A-hat genus is fractional."""
    data = pontryagin_numbers(case)
    if not data.spin_applicable:
        return None
    if data.a_hat.denominator == 1:
        return None
    return AhatNonIntegral(value=data.a_hat)


def external_fact_filter(
    sol: CaseSolution, facts
) -> ExternalFactCertificate | None:
    """Apply the first literature fact whose r matches the solution."""
    for fact in facts:
        if fact.r != sol.r:
            continue
        if fact.kind == "degree-in":
            if sol.geometry.degree in fact.degrees:
                return None
            return ExternalFactCertificate(
                index=fact.index,
                constraint=fact.constraint,
                citation=fact.citation,
                outcome="eliminated",
                violated_by=sol.geometry.degree,
            )
        if fact.kind == "degree-max":
            if sol.geometry.degree <= fact.max_degree:
                return None
            return ExternalFactCertificate(
                index=fact.index,
                constraint=fact.constraint,
                citation=fact.citation,
                outcome="eliminated",
                violated_by=sol.geometry.degree,
            )
        return ExternalFactCertificate(
            index=fact.index,
            constraint=fact.constraint,
            citation=fact.citation,
            outcome="concluded",
            conclusion=fact.conclusion,
        )
    return None
