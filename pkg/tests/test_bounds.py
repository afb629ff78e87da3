import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from torsion_order.bounds import (
    DivisibilityConstraint,
    HypothesisError,
    MultiDegreeProfile,
    Scenario,
    WitnessMethod,
    certificate,
    cubic_with_line_constraints,
    generic_lower_divisor,
    generic_with_point_lower_divisor,
    index_generic,
    normalize,
    parse_degrees,
    prime_power_witness,
    profiles,
    roitman_cone_profile,
    roitman_upper_bound,
    solve_constraints,
    very_general_lower_divisor,
)

P = MultiDegreeProfile


def inequality_holds(profile, i, q):
    """Degeneration inequality evaluated with exact rationals (independent of the ceil trick)."""
    n, r, dp = profile.n, profile.r, profile.d_prime
    d = profile.degrees[i]
    a = math.ceil(Fraction(n + r + 1 - dp + d, q + 1))
    return d >= q * a


profile_st = st.builds(
    P,
    n=st.integers(1, 12),
    degrees=st.lists(st.integers(1, 7), min_size=1, max_size=4).map(tuple),
)


def test_profile_fields():
    prof = P(3, (2, 3))
    assert (prof.r, prof.d_prime, prof.fano) == (2, 5, True)
    assert not P(2, (4,)).fano


@pytest.mark.parametrize("n, degrees", [(0, (3,)), (2, (0,)), (2, (3, -1))])
def test_profile_rejects_bad_values(n, degrees):
    with pytest.raises(ValueError):
        P(n, degrees)


def test_normalize():
    assert normalize(P(3, (1, 3))) == P(3, (3,))
    assert normalize(P(3, (3,))) == P(3, (3,))
    empty = normalize(P(2, (1, 1)))
    assert empty.is_projective_space and empty.r == 0


@given(profile_st)
def test_normalize_keeps_fano_margin(prof):
    norm = normalize(prof)
    assert norm.n + norm.r - norm.d_prime == prof.n + prof.r - prof.d_prime
    assert norm.is_normalized


@pytest.mark.parametrize("prof, expected", [(P(2, (3,)), 6), (P(3, (2, 3)), 12), (P(2, (4,)), None)])
def test_roitman_upper_bound(prof, expected):
    assert roitman_upper_bound(prof) == expected


@pytest.mark.parametrize("prof, multi, degree", [
    (P(2, (3,)), (2, 1), 2),
    (P(3, (2, 3)), (1, 2, 1), 2),
    (P(1, (2,)), (1,), 1),
])
def test_roitman_cone_profile(prof, multi, degree):
    cone = roitman_cone_profile(prof)
    assert cone.multidegree == multi
    assert cone.degree == degree
    # Bezout on the cone: its degree is the product of its multidegree.
    assert cone.degree == math.prod(multi)
    assert cone.codimension == len(multi) <= prof.n + prof.r - 1


def test_cone_profile_needs_fano():
    with pytest.raises(HypothesisError):
        roitman_cone_profile(P(2, (4,)))


@pytest.mark.parametrize("prof, expected", [(P(2, (3,)), 6), (P(7, (3,)), 6), (P(4, (4,)), 12), (P(5, (2, 2)), 4)])
def test_generic_lower_divisor(prof, expected):
    assert generic_lower_divisor(prof) == expected


def test_generic_lower_divisor_needs_fano():
    with pytest.raises(HypothesisError):
        generic_lower_divisor(P(2, (4,)))


@pytest.mark.parametrize("prof, expected", [(P(2, (3,)), 2), (P(4, (4,)), 3), (P(5, (2, 2)), 1)])
def test_generic_with_point(prof, expected):
    assert generic_with_point_lower_divisor(prof) == expected


@pytest.mark.parametrize("prof, expected", [(P(2, (3,)), 3), (P(3, (2, 2, 2)), 8), (normalize(P(3, (1,))), 1)])
def test_index_generic(prof, expected):
    assert index_generic(prof) == expected


def test_witness_threefold_quadric_cubic():
    w = prime_power_witness(P(3, (2, 3)), 2, 1)
    assert (w.index, w.a, w.c, w.method) == (1, 1, 0, WitnessMethod.DIFFERENTIAL_FORMS)


def test_witness_sextic_fivefold():
    w = prime_power_witness(P(5, (6,)), 3, 1)
    assert (w.a, w.c) == (2, 0)


def test_no_witness_cubic_threefold():
    assert prime_power_witness(P(3, (3,)), 3, 1) is None
    assert prime_power_witness(P(3, (3,)), 2, 1) is None


def test_witness_needs_n_at_least_3_and_fano():
    assert prime_power_witness(P(2, (3,)), 2, 1) is None
    assert prime_power_witness(P(3, (6,)), 2, 1) is None


def test_witness_parity_rule_for_prime_powers():
    # The 2^2 inequality holds in both cases; only even n admits the witness.
    assert inequality_holds(P(3, (4,)), 0, 4)
    assert prime_power_witness(P(3, (4,)), 2, 2) is None
    assert inequality_holds(P(4, (4, 2)), 0, 4)
    w = prime_power_witness(P(4, (4, 2)), 2, 2)
    assert w is not None and w.method is WitnessMethod.HODGE_WITT


@given(profile_st, st.sampled_from([2, 3, 5, 7]), st.integers(1, 3))
def test_witness_agrees_with_rational_inequality(prof, p, m):
    prof = normalize(prof)
    w = prime_power_witness(prof, p, m)
    parity_ok = m == 1 or p % 2 == 1 or prof.n % 2 == 0
    eligible = prof.n >= 3 and prof.fano and parity_ok
    hits = [i for i in range(prof.r) if inequality_holds(prof, i, p**m)]
    if not eligible or not hits:
        assert w is None
        return
    assert w is not None and w.index == hits[0] + 1
    d = prof.degrees[w.index - 1]
    assert d == w.degree == p**m * w.a + w.c
    assert w.c >= 0 and d >= p**m * w.a


def test_very_general_two_two_two():
    div, ws = very_general_lower_divisor(P(3, (2, 2, 2)))
    assert div == 2 and len(ws) == 1


def test_very_general_quintic_fourfold():
    div, ws = very_general_lower_divisor(P(4, (5,)))
    assert div % 5 == 0
    # 5 >= 2 * ceil(6 / 3) also gives the prime 2.
    assert div == 10
    assert {w.p for w in ws} == {2, 5}


def test_very_general_cubic_threefold():
    assert very_general_lower_divisor(P(3, (3,))) == (1, [])


def test_very_general_quadric_cubic_threefold():
    # Both d = 2 with p = 2 and d = 3 with p = 3 work here.
    div, ws = very_general_lower_divisor(P(3, (2, 3)))
    assert div == 6
    assert [(w.p, w.index) for w in ws] == [(2, 1), (3, 2)]


def test_very_general_tests_every_m():
    # n = 8, d = 9: 3^2 holds on its own and 2^2 via Hodge-Witt.
    div, ws = very_general_lower_divisor(P(8, (9,)))
    assert div == 36
    assert {(w.p, w.m) for w in ws} == {(2, 2), (3, 2)}


def test_certificate_generic_cubic():
    cert = certificate(P(2, (3,)), Scenario.GENERIC)
    assert (cert.known_divisor, cert.known_multiple, cert.exact) == (6, 6, True)
    assert {p.rule for p in cert.provenance} == {"roitman-upper-bound", "generic-lcm-factorial"}


def test_certificate_cubic_with_point():
    cert = certificate(P(2, (3,)), "with-point")
    assert (cert.known_divisor, cert.known_multiple, cert.exact) == (2, 6, False)


def test_certificate_very_general():
    cert = certificate(P(3, (2, 3)), Scenario.VERY_GENERAL)
    assert (cert.known_divisor, cert.known_multiple) == (6, 12)
    assert cert.level_note
    assert len(cert.witnesses) == 2


def test_certificate_non_fano():
    cert = certificate(P(2, (4,)), Scenario.GENERIC)
    assert cert.known_divisor == 1 and cert.known_multiple is None
    assert any("no finite bound" in note for note in cert.notes)


def test_certificate_normalizes_linear_forms():
    cert = certificate(P(3, (1, 3)), Scenario.GENERIC)
    assert cert.profile == P(3, (3,))
    assert cert.original == P(3, (1, 3))
    assert (cert.known_divisor, cert.known_multiple) == (6, 6)
    assert any("linear" in note for note in cert.notes)


def test_certificate_projective_space():
    cert = certificate(P(2, (1, 1)), Scenario.GENERIC)
    assert (cert.known_divisor, cert.known_multiple) == (1, 1)


@given(profile_st, st.sampled_from(list(Scenario)))
def test_certificate_is_consistent(prof, scenario):
    cert = certificate(prof, scenario)
    assert cert.known_divisor >= 1
    if cert.known_multiple is not None:
        assert cert.known_multiple % cert.known_divisor == 0
        assert normalize(prof).fano


@given(profile_st.filter(lambda p: p.fano))
def test_with_point_times_index_is_generic(prof):
    assert generic_with_point_lower_divisor(prof) * index_generic(prof) == generic_lower_divisor(prof)


def test_no_lower_bound_transport_between_scenarios():
    # Generic bounds do not descend to a very general member.
    assert certificate(P(3, (3,)), Scenario.GENERIC).known_divisor == 6
    assert certificate(P(3, (3,)), Scenario.VERY_GENERAL).known_divisor == 1


def test_constraint_semantics():
    assert DivisibilityConstraint.divides(3).holds(6)
    assert not DivisibilityConstraint.divides(4).holds(6)
    assert DivisibilityConstraint.scaled_divides(6, 27).holds(2)
    assert not DivisibilityConstraint.scaled_divides(6, 27).holds(1)
    assert DivisibilityConstraint.divided_by(2).holds(1)
    assert not DivisibilityConstraint.divided_by(2).holds(3)
    with pytest.raises(ValueError):
        DivisibilityConstraint.divides(0)


def test_solve_constraints_examples():
    six_27 = DivisibilityConstraint.scaled_divides(6, 27)
    assert solve_constraints(6, [six_27]) == {2, 6}
    assert solve_constraints(6, [six_27, DivisibilityConstraint.divided_by(2)]) == {2}
    assert solve_constraints(6, []) == {1, 2, 3, 6}


def test_solve_constraints_contradiction_is_empty():
    assert solve_constraints(6, [DivisibilityConstraint.divides(4)]) == set()


@given(
    st.integers(1, 5000),
    st.lists(
        st.one_of(
            st.builds(DivisibilityConstraint.divides, st.integers(1, 30)),
            st.builds(DivisibilityConstraint.scaled_divides, st.integers(1, 30), st.integers(1, 30)),
            st.builds(DivisibilityConstraint.divided_by, st.integers(1, 300)),
        ),
        max_size=4,
    ),
)
def test_solve_constraints_against_brute_force(multiple, constraints):
    expected = set()
    for t in range(1, multiple + 1):
        if multiple % t:
            continue
        ok = True
        for c in constraints:
            if c.kind.value == "divides":
                ok &= t % c.a == 0
            elif c.kind.value == "scaled-divides":
                ok &= c.c * t % c.a == 0
            else:
                ok &= c.b % t == 0
        if ok:
            expected.add(t)
    assert solve_constraints(multiple, constraints) == expected


@pytest.mark.parametrize("n", [2, 3, 5])
def test_cubic_with_line(n):
    multiple, constraints = cubic_with_line_constraints(n)
    assert multiple == 6
    assert solve_constraints(multiple, constraints) == {2}


def test_profiles_enumeration():
    profs = profiles([3], max_r=2, max_d=3)
    assert P(3, (2, 3)) in profs and P(3, (3, 3)) not in profs
    assert all(p.fano for p in profs)


def test_parse_degrees():
    assert parse_degrees("2, 3") == (2, 3)
    with pytest.raises(ValueError):
        parse_degrees("2,x")
    with pytest.raises(ValueError):
        parse_degrees("")
