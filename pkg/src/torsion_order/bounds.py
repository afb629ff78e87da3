"""Divisibility certificates for torsion orders of complete intersections.

A complete intersection of dimension ``n`` in ``P^(n+r)`` cut out by forms of
degrees ``d_1, ..., d_r`` is described by a :class:`MultiDegreeProfile`.  For
each of three field scenarios we collect what is provably known about its
torsion order ``Tor``:

* an upper multiple, ``Tor | prod d_i!``, valid over any field once
  ``sum d_i <= n + r`` (Roitman's cone-of-lines construction);
* a lower divisor, which depends on the scenario:

  - ``generic``: the generic member over the function field of the
    parameter space, ``prod d_i!* | Tor``;
  - ``with-point``: the generic member after adjoining its generic point,
    ``prod d_i!* / prod d_i | Tor``;
  - ``very-general``: a very general member over an algebraically closed
    field of characteristic zero, ``p**m | Tor`` whenever a
    :class:`PrimePowerWitness` exists.

The actual torsion order is not computed; a certificate with divisor 2 and
multiple 6 means exactly ``2 | Tor | 6``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import arith


class HypothesisError(ValueError):
    """A bound was requested outside the range where it is proven."""


class InternalConsistencyError(RuntimeError):
    """Two proven bounds disagree, which can only mean an arithmetic bug."""


class Scenario(enum.Enum):
    GENERIC = "generic"
    GENERIC_WITH_POINT = "with-point"
    VERY_GENERAL = "very-general"


@dataclass(frozen=True)
class MultiDegreeProfile:
    """Dimension ``n`` and degrees ``(d_1, ..., d_r)`` of a complete intersection.

    An empty ``degrees`` tuple stands for ``P^n`` itself, which is what
    :func:`normalize` returns once every linear equation is dropped.
    """

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"dimension n must be a positive int, got {self.n!r}")
        for d in self.degrees:
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise ValueError(f"degrees must be positive ints, got {self.degrees!r}")

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def d_prime(self) -> int:
        return sum(self.degrees)

    @property
    def fano(self) -> bool:
        return self.d_prime <= self.n + self.r

    @property
    def is_projective_space(self) -> bool:
        return not self.degrees

    @property
    def is_normalized(self) -> bool:
        return 1 not in self.degrees

    def __str__(self) -> str:
        degs = ",".join(map(str, self.degrees)) or "-"
        return f"X^{self.n}({degs}) in P^{self.n + self.r}"


def normalize(profile: MultiDegreeProfile) -> MultiDegreeProfile:
    """Drop linear equations: a hyperplane section of ``P^(n+r)`` is ``P^(n+r-1)``."""
    return MultiDegreeProfile(profile.n, tuple(d for d in profile.degrees if d != 1))


def roitman_upper_bound(profile: MultiDegreeProfile) -> int | None:
    """``prod d_i!`` when ``d' <= n + r``, else ``None`` (bound unavailable)."""
    if not profile.fano:
        return None
    return math.prod(arith.factorial(d) for d in profile.degrees)


@dataclass(frozen=True)
class ConeProfile:
    """Complete intersection ``W_x`` of osculating lines through a general point."""

    multidegree: tuple[int, ...]
    degree: int
    codimension: int


def roitman_cone_profile(profile: MultiDegreeProfile) -> ConeProfile:
    """Multi-degree ``(d_i - 1, ..., 2, 1)`` per form, its degree and codimension.

    The codimension is returned so callers can check it is at most
    ``n + r - 1``, the dimension of the space of lines through a point.
    """
    if not profile.fano:
        raise HypothesisError(f"{profile}: cone of lines needs sum(d_i) <= n + r")
    multi: list[int] = []
    for d in profile.degrees:
        multi.extend(range(d - 1, 0, -1))
    degree = math.prod(math.factorial(d - 1) for d in profile.degrees)
    return ConeProfile(tuple(multi), degree, sum(d - 1 for d in profile.degrees))


def _require_fano(profile: MultiDegreeProfile, what: str) -> None:
    if not profile.fano:
        raise HypothesisError(
            f"{what} needs sum(d_i) <= n + r; {profile} has "
            f"{profile.d_prime} > {profile.n + profile.r}"
        )


def generic_lower_divisor(profile: MultiDegreeProfile) -> int:
    _require_fano(profile, "generic lower bound")
    return arith.lcm_factorial_product(profile.degrees)


def index_generic(profile: MultiDegreeProfile) -> int:
    """Index of the generic complete intersection: ``prod d_i``."""
    return math.prod(profile.degrees)


def generic_with_point_lower_divisor(profile: MultiDegreeProfile) -> int:
    _require_fano(profile, "lower bound with a point")
    num = generic_lower_divisor(profile)
    den = index_generic(profile)
    q, rem = divmod(num, den)
    if rem:
        raise InternalConsistencyError(f"{den} does not divide {num}")
    return q


class WitnessMethod(enum.Enum):
    # p | Tor via nonvanishing differential forms; m = 1, any parity of n.
    DIFFERENTIAL_FORMS = "differential-forms"
    # p^m | Tor via Hodge-Witt cohomology; needs p odd or n even.
    HODGE_WITT = "hodge-witt"


@dataclass(frozen=True)
class PrimePowerWitness:
    """``d_i >= p**m * a`` with ``a = ceil((n + r + 1 - d' + d_i) / (p**m + 1))``.

    ``index`` is 1-based into the profile's degrees and ``c = d_i - p**m * a``.
    """

    p: int
    m: int
    index: int
    degree: int
    a: int
    c: int
    method: WitnessMethod

    @property
    def prime_power(self) -> int:
        return self.p**self.m

    def summary(self) -> str:
        return (
            f"{self.p}^{self.m} via d_{self.index}={self.degree} "
            f"(a={self.a}, c={self.c}, {self.method.value})"
        )


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def prime_power_witness(
    profile: MultiDegreeProfile, p: int, m: int
) -> PrimePowerWitness | None:
    """Find the smallest ``i`` certifying ``p**m | Tor`` for the very general member."""
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    n, r, dp = profile.n, profile.r, profile.d_prime
    if n < 3 or not profile.fano:
        return None
    if m == 1:
        method = WitnessMethod.DIFFERENTIAL_FORMS
    elif p % 2 == 1 or n % 2 == 0:
        method = WitnessMethod.HODGE_WITT
    else:
        return None
    q = p**m
    for i, d in enumerate(profile.degrees, start=1):
        a = _ceil_div(n + r + 1 - dp + d, q + 1)
        if d >= q * a:
            return PrimePowerWitness(p, m, i, d, a, d - q * a, method)
    return None


def very_general_lower_divisor(
    profile: MultiDegreeProfile,
) -> tuple[int, list[PrimePowerWitness]]:
    """Product of the largest certified ``p**m`` over all primes, with witnesses.

    Every ``m`` with ``p**m <= max d_i`` is tried; monotonicity in ``m`` is
    not assumed.
    """
    if profile.n < 3 or not profile.fano or profile.is_projective_space:
        return 1, []
    top = max(profile.degrees)
    divisor = 1
    witnesses = []
    for p in arith.primes_upto(top):
        best = None
        m, q = 1, p
        while q <= top:
            w = prime_power_witness(profile, p, m)
            if w is not None:
                best = w
            m, q = m + 1, q * p
        if best is not None:
            divisor *= best.prime_power
            witnesses.append(best)
    return divisor, witnesses


@dataclass(frozen=True)
class Provenance:
    rule: str
    factor: int | None
    citation: str


LEVEL_NOTE = (
    "prime-power divisors from degeneration already divide the level n-2 "
    "torsion order, which in turn divides the level-0 torsion order"
)


@dataclass(frozen=True)
class TorsionCertificate:
    profile: MultiDegreeProfile
    scenario: Scenario
    known_divisor: int
    known_multiple: int | None
    provenance: tuple[Provenance, ...] = ()
    witnesses: tuple[PrimePowerWitness, ...] = ()
    level_note: str = ""
    notes: tuple[str, ...] = ()
    # The profile as given, before linear forms were dropped.
    original: MultiDegreeProfile | None = None

    @property
    def exact(self) -> bool:
        return self.known_multiple is not None and self.known_divisor == self.known_multiple


def certificate(
    profile: MultiDegreeProfile, scenario: Scenario | str
) -> TorsionCertificate:
    scenario = Scenario(scenario)
    original = profile
    profile = normalize(profile)
    prov: list[Provenance] = []
    notes: list[str] = []
    witnesses: list[PrimePowerWitness] = []

    if profile != original:
        notes.append(
            f"dropped {original.r - profile.r} linear form(s); "
            f"{original} is isomorphic to {profile}"
        )
    if profile.is_projective_space:
        notes.append("projective space: torsion order 1")

    multiple = roitman_upper_bound(profile)
    if multiple is None:
        notes.append(
            f"sum(d_i) = {profile.d_prime} > n + r = {profile.n + profile.r}: "
            "no finite bound known, torsion order may be infinite"
        )
    else:
        prov.append(Provenance(
            "roitman-upper-bound", multiple,
            "Tor divides prod d_i! over any field (cone of osculating lines)",
        ))

    divisor = 1
    if not profile.fano:
        pass
    elif scenario is Scenario.GENERIC:
        divisor = generic_lower_divisor(profile)
        prov.append(Provenance(
            "generic-lcm-factorial", divisor,
            "prod d_i!* divides Tor of the generic complete intersection",
        ))
    elif scenario is Scenario.GENERIC_WITH_POINT:
        divisor = generic_with_point_lower_divisor(profile)
        prov.append(Provenance(
            "generic-with-point", divisor,
            "prod d_i!* / prod d_i divides Tor after adjoining the generic point "
            "(index of the generic member is prod d_i)",
        ))
    else:
        divisor, witnesses = very_general_lower_divisor(profile)
        if profile.n < 3 and not profile.is_projective_space:
            notes.append("degeneration bounds need n >= 3")
        for w in witnesses:
            prov.append(Provenance(
                f"prime-power-{w.method.value}", w.prime_power,
                f"degeneration to a {w.prime_power}-cyclic cover in characteristic "
                f"{w.p}: {w.summary()}",
            ))

    if multiple is not None and multiple % divisor:
        raise InternalConsistencyError(
            f"{profile} [{scenario.value}]: divisor {divisor} does not divide "
            f"multiple {multiple}"
        )
    return TorsionCertificate(
        profile=profile,
        scenario=scenario,
        known_divisor=divisor,
        known_multiple=multiple,
        provenance=tuple(prov),
        witnesses=tuple(witnesses),
        level_note=LEVEL_NOTE if witnesses else "",
        notes=tuple(notes),
        original=original,
    )


class ConstraintKind(enum.Enum):
    DIVIDES = "divides"  # a | t
    SCALED_DIVIDES = "scaled-divides"  # a | c*t
    DIVIDED_BY = "divided-by"  # t | b


@dataclass(frozen=True)
class DivisibilityConstraint:
    """One divisibility fact about an unknown torsion order ``t``."""

    kind: ConstraintKind
    a: int = 1
    c: int = 1
    b: int = 1
    description: str = ""

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("constraint coefficients must be >= 1")

    @classmethod
    def divides(cls, a: int, description: str = "") -> DivisibilityConstraint:
        return cls(ConstraintKind.DIVIDES, a=a, description=description)

    @classmethod
    def scaled_divides(cls, a: int, c: int, description: str = "") -> DivisibilityConstraint:
        return cls(ConstraintKind.SCALED_DIVIDES, a=a, c=c, description=description)

    @classmethod
    def divided_by(cls, b: int, description: str = "") -> DivisibilityConstraint:
        return cls(ConstraintKind.DIVIDED_BY, b=b, description=description)

    def holds(self, t: int) -> bool:
        if self.kind is ConstraintKind.DIVIDES:
            return t % self.a == 0
        if self.kind is ConstraintKind.SCALED_DIVIDES:
            return (self.c * t) % self.a == 0
        return self.b % t == 0

    def __str__(self) -> str:
        if self.kind is ConstraintKind.DIVIDES:
            return f"{self.a} | t"
        if self.kind is ConstraintKind.SCALED_DIVIDES:
            return f"{self.a} | {self.c}*t"
        return f"t | {self.b}"


def solve_constraints(
    candidate_multiple: int, constraints: Iterable[DivisibilityConstraint]
) -> set[int]:
    """Divisors of ``candidate_multiple`` satisfying every constraint.

    An empty set means the constraints contradict each other.
    """
    constraints = list(constraints)
    return {
        t for t in arith.divisors(candidate_multiple)
        if all(c.holds(t) for c in constraints)
    }


def cubic_with_line_constraints(n: int = 2) -> tuple[int, list[DivisibilityConstraint]]:
    """Constraints on ``t = Tor`` of the generic cubic ``n``-fold over the field of its lines.

    The field extension has index dividing the degree of the Fano variety
    of lines against ``c_2(U)**(n-2)`` (27), so ``Tor_generic | 27 * t``; a
    degree-2 rational map from ``P^n`` gives ``t | 2``.
    """
    from .schubert import fano_lines_degree

    cubic = MultiDegreeProfile(n, (3,))
    generic = generic_lower_divisor(cubic)
    multiple = roitman_upper_bound(cubic)
    assert multiple is not None
    lines = fano_lines_degree(n)
    return multiple, [
        DivisibilityConstraint.scaled_divides(
            generic, lines, f"generic torsion {generic} divides {lines} * t"
        ),
        DivisibilityConstraint.divided_by(2, "degree-2 rational map from P^n"),
    ]


def profiles(
    n_values: Iterable[int], max_r: int, max_d: int, fano_only: bool = True
) -> list[MultiDegreeProfile]:
    """All profiles with ``1 <= r <= max_r`` and nondecreasing ``2 <= d_i <= max_d``."""
    from itertools import combinations_with_replacement

    out = []
    for n in n_values:
        for r in range(1, max_r + 1):
            for degs in combinations_with_replacement(range(2, max_d + 1), r):
                prof = MultiDegreeProfile(n, degs)
                if prof.fano or not fano_only:
                    out.append(prof)
    return out


def parse_degrees(text: str | Sequence[int]) -> tuple[int, ...]:
    if not isinstance(text, str):
        return tuple(int(x) for x in text)
    parts = [s.strip() for s in text.split(",") if s.strip()]
    if not parts:
        raise ValueError("empty degree list")
    try:
        return tuple(int(s) for s in parts)
    except ValueError:
        raise ValueError(f"bad degree list {text!r}") from None
