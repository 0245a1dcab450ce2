from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lsfan import (
    LSPath,
    PathError,
    ShapePoset,
    demazure_character,
    demazure_dimension,
    endpoint,
    enumerate_ls_paths,
    initial_direction,
    theta_single,
    theta_single_inverse,
    validate_ls_path,
    weyl_dimension,
)

ONE = Fraction(1)


def top_coset(group, nu):
    return group.coset(group.longest, group.stabilizer_parabolic(nu))


def scaled(nu, d):
    return tuple(d * x for x in nu)


# -- validation -------------------------------------------------------------------


def test_straight_line_paths_are_valid(a2):
    nu = (1, 1)
    for sigma in a2.all_cosets(a2.stabilizer_parabolic(nu)):
        ok, cert = validate_ls_path(a2, LSPath(nu, (sigma,), (ONE,)))
        assert ok and cert == {}


def test_non_decreasing_cosets_rejected(a3):
    nu = (0, 1, 0)
    sigma = top_coset(a3, nu)
    with pytest.raises(PathError):
        validate_ls_path(
            a3, LSPath(scaled(nu, 2), (sigma, sigma), (Fraction(1, 2), ONE))
        )


def test_bad_cut_points_rejected(a2):
    nu = (1, 0)
    poset = ShapePoset(a2, nu, top_coset(a2, nu))
    hi, lo = poset.nodes[-1], poset.nodes[0]
    with pytest.raises(PathError):
        LSPath(nu, (hi, lo), (Fraction(1, 2),))  # length mismatch
    with pytest.raises(PathError):
        validate_ls_path(a2, LSPath(nu, (hi, lo), (ONE, ONE)))
    with pytest.raises(PathError):
        validate_ls_path(a2, LSPath(scaled(nu, 2), (hi, lo), (Fraction(0), ONE)))


def test_b2_half_cut_across_bond_two(b2):
    nu = (1, 0)
    poset = ShapePoset(b2, nu, top_coset(b2, nu))
    pair = next(
        (c, lower)
        for c in poset.nodes
        for lower, _, bond in poset.covers_down[c]
        if bond == 2
    )
    upper, lower = pair
    good = LSPath(nu, (upper, lower), (Fraction(1, 2), ONE))
    assert validate_ls_path(b2, good)[0]
    bad = LSPath(nu, (upper, lower), (Fraction(1, 3), ONE))
    assert not validate_ls_path(b2, bad)[0]


def test_certificate_is_a_real_chain(b2):
    nu = (1, 1)
    top = top_coset(b2, nu)
    for path in enumerate_ls_paths(b2, nu, top, 2):
        ok, cert = validate_ls_path(b2, path)
        assert ok
        for (upper, lower), chain in cert.items():
            assert chain[0] == upper and chain[-1] == lower
            for a, b in zip(chain, chain[1:]):
                assert b in {c for c, _ in b2.covers_down(a)}


# -- enumeration ---------------------------------------------------------------------


def test_trivial_poset_single_path(a2):
    nu = (1, 0)
    tau = a2.coset(a2.identity, a2.stabilizer_parabolic(nu))
    paths = enumerate_ls_paths(a2, nu, tau, 3)
    assert len(paths) == 1
    (path,) = paths
    assert path.cosets == (tau,) and path.cuts == (ONE,)


def test_a2_fundamental_counts(a2):
    assert len(enumerate_ls_paths(a2, (1, 0), top_coset(a2, (1, 0)), 1)) == 3
    assert len(enumerate_ls_paths(a2, (1, 1), top_coset(a2, (1, 1)), 1)) == 8


FIXTURES = [
    ("a2", (1, 0), 3),
    ("a2", (1, 1), 3),
    ("a2", (2, 1), 2),
    ("a3", (1, 0, 0), 3),
    ("a3", (0, 1, 0), 2),
    ("a3", (1, 1, 1), 1),
    ("b2", (1, 0), 3),
    ("b2", (0, 1), 3),
    ("b2", (1, 1), 2),
    ("c3", (1, 0, 0), 3),
    ("c3", (0, 0, 1), 2),
    ("c3", (1, 0, 1), 1),
]


@pytest.mark.parametrize("fixture_name,nu,dmax", FIXTURES)
def test_counts_match_dimensions_at_full_tau(fixture_name, nu, dmax, request):
    group = request.getfixturevalue(fixture_name)
    top = top_coset(group, nu)
    for d in range(1, dmax + 1):
        paths = enumerate_ls_paths(group, nu, top, d)
        assert len(paths) == weyl_dimension(group.datum, scaled(nu, d))
        for path in paths:
            assert validate_ls_path(group, path)[0]


def test_counts_match_demazure_dimensions_below_top(a3, b2):
    cases = [(a3, (0, 1, 0)), (a3, (1, 0, 1)), (b2, (1, 1))]
    for group, nu in cases:
        parabolic = group.stabilizer_parabolic(nu)
        for tau in group.all_cosets(parabolic):
            for d in (1, 2):
                paths = enumerate_ls_paths(group, nu, tau, d)
                assert len(paths) == demazure_dimension(group, scaled(nu, d), tau)
                assert all(
                    group.coset_leq(initial_direction(p), tau) for p in paths
                )


def test_endpoint_multiset_is_demazure_character(a2, b2):
    for group, nu in [(a2, (1, 1)), (a2, (2, 0)), (b2, (1, 0)), (b2, (1, 1))]:
        parabolic = group.stabilizer_parabolic(nu)
        for tau in group.all_cosets(parabolic):
            counts = Counter(
                endpoint(p) for p in enumerate_ls_paths(group, nu, tau, 1)
            )
            assert dict(counts) == demazure_character(group, nu, tau)


def test_endpoint_multiset_at_higher_degree(b2):
    nu = (1, 0)
    top = top_coset(b2, nu)
    for d in (2, 3):
        counts = Counter(endpoint(p) for p in enumerate_ls_paths(b2, nu, top, d))
        assert dict(counts) == demazure_character(b2, scaled(nu, d), top)


def test_endpoint_examples(a2):
    nu = (1, 1)
    sigma = top_coset(a2, nu)
    assert endpoint(LSPath(nu, (sigma,), (ONE,))) == sigma.rep.act(nu)
    ident = a2.coset(a2.identity, a2.stabilizer_parabolic(nu))
    assert endpoint(LSPath(nu, (ident,), (ONE,))) == nu
    total = (0, 0)
    for p in enumerate_ls_paths(a2, (1, 0), top_coset(a2, (1, 0)), 1):
        e = endpoint(p)
        total = (total[0] + e[0], total[1] + e[1])
    assert total == (0, 0)


# -- theta ------------------------------------------------------------------------------


def test_theta_single_unit_vector(a2):
    nu = (1, 0)
    sigma = top_coset(a2, nu)
    path = LSPath(nu, (sigma,), (ONE,))
    assert theta_single(path, 1) == {sigma: ONE}


def test_theta_round_trip_and_degree_scaling(a2, b2):
    for group, nu, d in [(a2, (1, 0), 1), (a2, (1, 1), 2), (b2, (1, 0), 2)]:
        top = top_coset(group, nu)
        for path in enumerate_ls_paths(group, nu, top, d):
            coeffs = theta_single(path, d)
            assert sum(coeffs.values()) == d
            assert theta_single_inverse(group, coeffs, nu) == path


def test_theta_inverse_rejects_junk(a2):
    nu = (1, 0)
    poset = ShapePoset(a2, nu, top_coset(a2, nu))
    chain = poset.nodes
    with pytest.raises(PathError):
        theta_single_inverse(a2, {}, nu)
    with pytest.raises(PathError):
        theta_single_inverse(a2, {chain[0]: Fraction(1, 2)}, nu)
    # incomparable support in the W/W_B quotient
    nu2 = (1, 1)
    cosets = a2.all_cosets(frozenset())
    s1 = a2.coset(a2.simple_reflection(1), frozenset())
    s2 = a2.coset(a2.simple_reflection(2), frozenset())
    with pytest.raises(PathError):
        theta_single_inverse(a2, {s1: Fraction(1, 2), s2: Fraction(1, 2)}, nu2)


@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_enumerated_paths_survive_round_trips(data, a2):
    nu = data.draw(
        st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda t: any(t))
    )
    d = data.draw(st.integers(1, 2))
    paths = sorted(
        enumerate_ls_paths(a2, nu, top_coset(a2, nu), d),
        key=lambda p: (tuple(c.rep.matrix for c in p.cosets), p.cuts),
    )
    if not paths:
        return
    path = data.draw(st.sampled_from(paths))
    assert theta_single_inverse(a2, theta_single(path, d), nu) == path
