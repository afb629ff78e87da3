"""Blow-up schedules resolving an isolated non-degenerate singularity of a p^m-cyclic cover.

Locally the cover is ``y**(p**m) + q(x) + ... = 0`` with ``q`` a nondegenerate
quadratic form, in one of three normal forms:

* ``OddP``:    ``q = x_1^2 + ... + x_n^2``;
* ``P2EvenN``: ``q = x_1 x_2 + ... + x_{n-1} x_n``;
* ``P2OddN``:  ``q = x_1^2 + x_2 x_3 + ... + x_{n-1} x_n`` plus a ``b x_1^3`` term.

Each blow-up of the singular point divides the ``x`` coordinates by ``y`` and
lowers the exponent of ``y`` by two.  In the ``P2OddN`` case ``y^2 + x_1'^2``
becomes a square in characteristic 2, so after each group of blow-ups ``x_1``
is replaced by ``x_1^[j] = x_1^[j-1] / y^k + (root of b_j) * y`` and the
exponent is read off again.  Only this combinatorial skeleton is modelled: no
equations, no field elements (the square roots exist since the base field is
algebraically closed).

One plan describes one singular point; a cover with several is a list of
independent plans.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .arith import is_prime


class CaseTag(enum.Enum):
    ODD_P = "OddP"
    P2_EVEN_N = "P2EvenN"
    P2_ODD_N = "P2OddN"


class DivisorType(enum.Enum):
    QUADRIC_CONE = "QuadricCone"
    SMOOTH_QUADRIC = "SmoothQuadric"
    PROJECTIVE_SPACE = "ProjectiveSpace"
    # Blow-up of a quadric cone at its vertex: a P^1-bundle over a smooth quadric.
    BLOWN_UP_CONE = "BlownUpCone"


@dataclass(frozen=True)
class SingularityCase:
    p: int
    m: int
    n: int
    case_tag: CaseTag

    @classmethod
    def classify(cls, p: int, m: int, n: int) -> SingularityCase:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        if n < 2:
            raise ValueError(f"dimension must be >= 2, got {n}")
        if p != 2:
            tag = CaseTag.ODD_P
        elif n % 2 == 0:
            tag = CaseTag.P2_EVEN_N
        else:
            tag = CaseTag.P2_ODD_N
        return cls(p, m, n, tag)


@dataclass(frozen=True)
class BlowupStep:
    index: int
    # Exponent of y in the local equation at the point being blown up.
    local_exponent: int
    # Exponent of y at the (unique) singular point left afterwards; 0 or 1 once smooth.
    outgoing_exponent: int
    exceptional_type: DivisorType
    strict_transform_type: DivisorType
    # Every exceptional divisor is a hypersurface in P^n or P^(n-1) itself.
    exceptional_dim: int
    # P2OddN only: which x_1^[j] coordinate group the step belongs to (1-based).
    coordinate_group: int | None = None
    note: str = ""


@dataclass(frozen=True)
class Intersection:
    first: int
    second: int
    kind: DivisorType
    dim: int


@dataclass(frozen=True)
class ResolutionPlan:
    case: SingularityCase
    steps: tuple[BlowupStep, ...]
    intersections: tuple[Intersection, ...]
    # Multiplicity of each exceptional component in E', the restriction of div(y).
    e_prime_multiplicities: tuple[int, ...]

    def group_sizes(self) -> list[int]:
        groups = [s.coordinate_group for s in self.steps if s.coordinate_group]
        if not groups:
            return []
        return [groups.count(g) for g in range(1, max(groups) + 1)]


def blowup_count(p: int, m: int, n: int) -> int:
    case = SingularityCase.classify(p, m, n)
    if case.case_tag is CaseTag.ODD_P:
        return (p**m - 1) // 2 + 1
    if case.case_tag is CaseTag.P2_EVEN_N:
        return 2 ** (m - 1)
    return 2**m


def p2_odd_schedule(m: int) -> list[int]:
    """Group sizes ``2^(m-1) - 1, 2^(m-2), ..., 2, 1`` then the smoothing and snc steps."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return [2 ** (m - 1) - 1] + [2 ** (m - j) for j in range(2, m + 1)] + [1, 1]


def e_prime_multiplicities(case: SingularityCase, components: int) -> tuple[int, ...]:
    mult = [1] * components
    if case.p % 2 == 1 or case.n % 2 == 1:
        mult[-1] = 2
    return tuple(mult)


def _chain(count: int, n: int) -> tuple[Intersection, ...]:
    return tuple(
        Intersection(i, i + 1, DivisorType.SMOOTH_QUADRIC, n - 2)
        for i in range(1, count)
    )


def _cone_step(index: int, exponent: int, n: int, group: int | None = None) -> BlowupStep:
    return BlowupStep(
        index=index,
        local_exponent=exponent,
        outgoing_exponent=exponent - 2,
        exceptional_type=DivisorType.QUADRIC_CONE,
        strict_transform_type=DivisorType.BLOWN_UP_CONE,
        exceptional_dim=n - 1,
        coordinate_group=group,
    )


def resolution_plan(p: int, m: int, n: int) -> ResolutionPlan:
    case = SingularityCase.classify(p, m, n)
    q = p**m
    steps: list[BlowupStep] = []

    if case.case_tag is CaseTag.ODD_P:
        cones = (q - 1) // 2
        for i in range(1, cones + 1):
            steps.append(_cone_step(i, q - 2 * (i - 1), n))
        # Exponent 1: already smooth, one more blow-up makes the fibre snc.
        steps.append(BlowupStep(
            cones + 1, 1, 1, DivisorType.PROJECTIVE_SPACE,
            DivisorType.PROJECTIVE_SPACE, n - 1,
        ))

    elif case.case_tag is CaseTag.P2_EVEN_N:
        count = 2 ** (m - 1)
        for i in range(1, count):
            steps.append(_cone_step(i, q - 2 * (i - 1), n))
        # y^2 + x_1 x_2 + ...: the exceptional divisor is a smooth quadric.
        steps.append(BlowupStep(
            count, 2, 0, DivisorType.SMOOTH_QUADRIC,
            DivisorType.SMOOTH_QUADRIC, n - 1,
        ))

    else:
        schedule = p2_odd_schedule(m)
        index = 0
        # Group 1 runs on the original coordinates from y^(2^m).
        exponent = q
        for group, size in enumerate(schedule[:-2], start=1):
            if group > 1:
                # Completing the square exposes b_j * y^(2^(m-j+1) + 2).
                exponent = 2 ** (m - group + 1) + 2
            for _ in range(size):
                index += 1
                steps.append(_cone_step(index, exponent, n, group))
                exponent -= 2
        # y^3 + x_1^[m]^2 + ...: one blow-up makes it smooth.
        smoothing_group = len(schedule) - 1
        index += 1
        steps.append(BlowupStep(
            index, 3, 1, DivisorType.QUADRIC_CONE, DivisorType.BLOWN_UP_CONE,
            n - 1, smoothing_group,
            note="exceptional type inferred from the preceding cone pattern",
        ))
        index += 1
        steps.append(BlowupStep(
            index, 1, 1, DivisorType.PROJECTIVE_SPACE,
            DivisorType.PROJECTIVE_SPACE, n - 1, smoothing_group + 1,
        ))

    return ResolutionPlan(
        case=case,
        steps=tuple(steps),
        intersections=_chain(len(steps), n),
        e_prime_multiplicities=e_prime_multiplicities(case, len(steps)),
    )


def verify_plan(plan: ResolutionPlan) -> bool:
    """Recheck a plan from closed-form counts, without calling :func:`resolution_plan`."""
    try:
        return _verify(plan)
    except (AttributeError, TypeError, ValueError, IndexError):
        return False


def _verify(plan: ResolutionPlan) -> bool:
    case = plan.case
    p, m, n = case.p, case.m, case.n
    if not (is_prime(p) and m >= 1 and n >= 2):
        return False
    expected_tag = (
        CaseTag.ODD_P if p != 2
        else CaseTag.P2_EVEN_N if n % 2 == 0
        else CaseTag.P2_ODD_N
    )
    if case.case_tag is not expected_tag:
        return False

    steps = plan.steps
    s = len(steps)
    if expected_tag is CaseTag.ODD_P:
        count = (p**m - 1) // 2 + 1
    elif expected_tag is CaseTag.P2_EVEN_N:
        count = 2 ** (m - 1)
    else:
        count = 2**m
    if s != count:
        return False
    if [st.index for st in steps] != list(range(1, s + 1)):
        return False
    if any(st.exceptional_dim != n - 1 for st in steps):
        return False

    # Exponents: OddP runs p^m, p^m - 2, ..., 3, 1; P2EvenN runs 2^m, ..., 2.
    # P2OddN restarts at 2^(m-j+1) + 2 in group j, then 3 and 1.
    if expected_tag is CaseTag.P2_ODD_N:
        sizes = [2 ** (m - 1) - 1] + [2 ** (m - j) for j in range(2, m + 1)]
        if sum(sizes) != 2**m - 2:
            return False
        expected_exp, expected_group = [], []
        for j, size in enumerate(sizes, start=1):
            start = 2**m if j == 1 else 2 ** (m - j + 1) + 2
            expected_exp += [start - 2 * t for t in range(size)]
            expected_group += [j] * size
        expected_exp += [3, 1]
        expected_group += [len(sizes) + 1, len(sizes) + 2]
        if [st.coordinate_group for st in steps] != expected_group:
            return False
        # Strictly decreasing by 2 inside each coordinate group.
        for a, b in zip(steps, steps[1:]):
            if a.coordinate_group == b.coordinate_group and b.local_exponent != a.local_exponent - 2:
                return False
    else:
        expected_exp = [p**m - 2 * i for i in range(s)]
        if any(st.coordinate_group is not None for st in steps):
            return False
        if any(b.local_exponent >= a.local_exponent for a, b in zip(steps, steps[1:])):
            return False
    if [st.local_exponent for st in steps] != expected_exp:
        return False

    last = steps[-1]
    for st in steps[:-1]:
        if st.outgoing_exponent != st.local_exponent - 2:
            return False
        if (st.exceptional_type, st.strict_transform_type) != (
            DivisorType.QUADRIC_CONE, DivisorType.BLOWN_UP_CONE
        ):
            return False
    if last.outgoing_exponent not in (0, 1):
        return False
    if expected_tag is CaseTag.P2_EVEN_N:
        want_last = DivisorType.SMOOTH_QUADRIC
        if last.outgoing_exponent != last.local_exponent - 2:
            return False
    else:
        want_last = DivisorType.PROJECTIVE_SPACE
        if last.outgoing_exponent != last.local_exponent:
            return False
    if (last.exceptional_type, last.strict_transform_type) != (want_last, want_last):
        return False

    chain = [(i, i + 1) for i in range(1, s)]
    if [(x.first, x.second) for x in plan.intersections] != chain:
        return False
    if any(x.kind is not DivisorType.SMOOTH_QUADRIC or x.dim != n - 2
           for x in plan.intersections):
        return False

    mult = list(plan.e_prime_multiplicities)
    tail = 2 if (p % 2 == 1 or n % 2 == 1) else 1
    return mult == [1] * (s - 1) + [tail]
