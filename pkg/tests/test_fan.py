from fractions import Fraction
from itertools import product

import pytest

from lsfan import (
    FanError,
    Setup,
    build_dcp_inductive,
    canonical_vector,
    chain_iposet,
    decompose,
    demazure_dimension,
    enumerate_fan_degree,
    enumerate_ls_paths,
    enumerate_standard,
    fan_degree,
    hilbert_multidegrees,
    in_ls_plus,
    ls_lattice_member,
    multidegree_conjecture_check,
    one_line_to_word,
    powerset_iposet,
    tableau_endpoint,
    theta_d,
    theta_d_inverse,
    theta_single,
    weight,
)

ONE = Fraction(1)


def fs(*xs):
    return frozenset(xs)


def chain_instance(group, lambdas, tau=None):
    tau = group.longest if tau is None else tau
    setup = Setup(group, lambdas, tau, chain_iposet(len(lambdas)))
    return setup, build_dcp_inductive(setup)


# -- lattice membership -------------------------------------------------------------


def test_unit_vectors_are_members(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    for node in dcp.nodes:
        assert in_ls_plus(dcp, {node: ONE})


def test_all_bonds_one_chain_membership_is_integrality(a3):
    setup, dcp = chain_instance(a3, [(1, 0, 0), (0, 0, 1), (0, 1, 0)])
    nodes, bonds = dcp.maximal_chains()[0]
    assert set(bonds) == {1}
    integral = {n: Fraction(k % 3) for k, n in enumerate(nodes)}
    assert ls_lattice_member(integral, nodes, bonds)
    ragged = dict(integral)
    ragged[nodes[2]] = Fraction(1, 2)
    assert not ls_lattice_member(ragged, nodes, bonds)


def test_b2_bond_two_coefficient_patterns(b2):
    setup, dcp = chain_instance(b2, [(1, 0)])
    chain = next(
        (nodes, bonds) for nodes, bonds in dcp.maximal_chains() if 2 in bonds
    )
    nodes, bonds = chain
    k = bonds.index(2)
    upper, lower = nodes[k], nodes[k + 1]
    good = {upper: Fraction(1, 2), lower: Fraction(1, 2)}
    assert ls_lattice_member(good, nodes, bonds)
    bad = {upper: Fraction(1, 3), lower: Fraction(2, 3)}
    assert not ls_lattice_member(bad, nodes, bonds)


def test_membership_requires_support_on_chain(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    nodes, bonds = dcp.maximal_chains()[0]
    outside = next(n for n in dcp.nodes if n not in set(nodes))
    with pytest.raises(FanError):
        ls_lattice_member({outside: ONE}, nodes, bonds)


def test_lattice_factorizes_across_shrink_edges(b2):
    # membership on a chain holds iff it holds blockwise once the block sums
    # are integral, because bonds at index-shrinking edges are 1
    setup = Setup(b2, [(1, 0), (0, 1)], b2.longest, powerset_iposet(2))
    dcp = build_dcp_inductive(setup)
    grid = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2)]
    for nodes, bonds in dcp.maximal_chains()[:2]:
        blocks = []
        current = [0]
        for k in range(1, len(nodes)):
            if nodes[k].iset == nodes[k - 1].iset:
                current.append(k)
            else:
                blocks.append(current)
                current = [k]
        blocks.append(current)
        for trial in range(40):
            vec = {
                nodes[k]: grid[(trial + 3 * k) % len(grid)]
                for k in range(len(nodes))
            }
            whole = ls_lattice_member(vec, nodes, bonds)
            sums_integral = all(
                sum(vec[nodes[k]] for k in block).denominator == 1
                for block in blocks
            )
            blockwise = sums_integral
            if blockwise:
                for block in blocks:
                    sub_nodes = [nodes[k] for k in block]
                    sub_bonds = [bonds[k] for k in block[:-1]]
                    sub_vec = {n: vec[n] for n in sub_nodes}
                    if not ls_lattice_member(sub_vec, sub_nodes, sub_bonds):
                        blockwise = False
                        break
            assert whole == blockwise


# -- enumeration -------------------------------------------------------------------------


def test_degree_zero_is_just_zero(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    assert enumerate_fan_degree(dcp, (0, 0)) == [{}]


def test_enumeration_counts_and_membership(a2, b2):
    for group, lambdas in [
        (a2, [(1, 0), (0, 1)]),
        (a2, [(1, 1), (1, 0)]),
        (b2, [(1, 0), (0, 1)]),
    ]:
        setup, dcp = chain_instance(group, lambdas)
        for d in product(range(3), repeat=2):
            if sum(d) > 3:
                continue
            vectors = enumerate_fan_degree(dcp, d)
            mu = tuple(
                d[0] * a + d[1] * b for a, b in zip(lambdas[0], lambdas[1])
            )
            assert len(vectors) == demazure_dimension(group, mu, setup.tau)
            for vec in vectors:
                assert in_ls_plus(dcp, vec)
                assert fan_degree(setup, vec) == tuple(map(Fraction, d))


def test_pure_degree_embeds_single_shape_fan(a2):
    # LS+(d e_I) = the single-shape monoid of lambda_I, transported by rho
    setup, dcp = chain_instance(a2, [(0, 1), (1, 0)])
    group = a2
    for s, d in [(fs(1), 2), (fs(1, 2), 2)]:
        evec = setup.iposet.e_vector(s)
        dvec = tuple(d * x for x in evec)
        vectors = enumerate_fan_degree(dcp, dvec)
        lam = setup.lambda_of[s]
        paths = enumerate_ls_paths(group, lam, setup.tau, d)
        assert len(vectors) == len(paths)
        path_keys = set()
        for path in paths:
            coeffs = theta_single(path, d)
            lifted = {}
            for coset, c in coeffs.items():
                node = next(
                    n
                    for n in dcp.nodes
                    if n.iset == s and group.pi(n.theta, setup.p_of[s]) == coset
                )
                lifted[node] = c
            path_keys.add(canonical_vector(lifted))
        assert path_keys == {canonical_vector(v) for v in vectors}


def test_tau312_degree_10_matches_bounded_paths(a2):
    tau = a2.from_word(one_line_to_word((3, 1, 2)))
    setup = Setup(a2, [(0, 1), (1, 0)], tau, chain_iposet(2))
    dcp = build_dcp_inductive(setup)
    vectors = enumerate_fan_degree(dcp, (1, 0))
    paths = enumerate_ls_paths(a2, setup.lambda_of[fs(1)], setup.tau, 1)
    assert len(vectors) == len(paths) == 2


# -- decomposition ---------------------------------------------------------------------


def test_degree_one_decomposes_to_itself(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    for vec in enumerate_fan_degree(dcp, (1, 0)) + enumerate_fan_degree(dcp, (0, 1)):
        assert decompose(dcp, vec) == [vec]


def test_two_unit_vectors_decompose_in_support_order(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    nodes, _ = dcp.maximal_chains()[0]
    same_i = [n for n in nodes if n.iset == fs(1, 2)]
    p, q = same_i[0], same_i[1]
    parts = decompose(dcp, {p: ONE, q: ONE})
    assert parts == [{p: ONE}, {q: ONE}]


def test_decomposition_unique_by_brute_force(a2):
    tau = a2.from_word(one_line_to_word((3, 1, 2)))
    setup = Setup(a2, [(0, 1), (1, 0)], tau, chain_iposet(2))
    dcp = build_dcp_inductive(setup)
    degree_one = []
    for s in setup.iposet.sets:
        degree_one.extend(enumerate_fan_degree(dcp, setup.iposet.e_vector(s)))

    def orderings(vec, parts_left, acc):
        if not any(vec.values()):
            yield list(acc)
            return
        if parts_left == 0:
            return
        for part in degree_one:
            rest = dict(vec)
            ok = True
            for n, c in part.items():
                rest[n] = rest.get(n, Fraction(0)) - c
                if rest[n] < 0:
                    ok = False
                    break
            if not ok:
                continue
            if acc:
                prev_min = min(n.theta.rank + len(n.iset) for n in acc[-1])
                cur_max = max(n.theta.rank + len(n.iset) for n in part)
            yield from orderings(
                {n: c for n, c in rest.items() if c != 0}, parts_left - 1, acc + [part]
            )

    for d in [(1, 1), (2, 0), (2, 1)]:
        for vec in enumerate_fan_degree(dcp, d):
            parts = decompose(dcp, vec)
            assert sum((Counter := 0) or 1 for _ in parts) == len(parts)
            # reassemble
            total = {}
            for part in parts:
                for n, c in part.items():
                    total[n] = total.get(n, Fraction(0)) + c
            assert {n: c for n, c in total.items() if c} == {
                n: c for n, c in vec.items() if c
            }
            # support ordering between consecutive parts
            for first, second in zip(parts, parts[1:]):
                lo = min(first, key=lambda n: n.theta.rank + len(n.iset))
                hi = max(second, key=lambda n: n.theta.rank + len(n.iset))
                assert dcp.leq(hi, lo)
            # each part is a fan member of total degree one
            for part in parts:
                assert in_ls_plus(dcp, part)
                assert sum(fan_degree(setup, part)) == 1
            # uniqueness among all valid ordered decompositions
            count = 0
            for candidate in orderings(dict(vec), len(parts), []):
                good = True
                for first, second in zip(candidate, candidate[1:]):
                    lo = min(first, key=lambda n: n.theta.rank + len(n.iset))
                    hi = max(second, key=lambda n: n.theta.rank + len(n.iset))
                    if not dcp.leq(hi, lo):
                        good = False
                        break
                count += good
            assert count == 1


def test_decompose_rejects_non_members(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    node = dcp.top
    with pytest.raises(FanError):
        decompose(dcp, {node: Fraction(-1)})
    with pytest.raises(FanError):
        decompose(dcp, {node: Fraction(1, 7)})


# -- weights --------------------------------------------------------------------------


def test_weight_of_top_unit_vector(a2):
    # chain poset: the top carries the weight of underline([m])
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    assert weight(setup, {dcp.top: ONE}) == setup.tau.rep.act((0, 1))
    assert weight(setup, {}) == (0, 0)
    # power set poset: the top carries the full weight
    setup_p = Setup(a2, [(1, 0), (0, 1)], a2.longest, powerset_iposet(2))
    dcp_p = build_dcp_inductive(setup_p)
    assert weight(setup_p, {dcp_p.top: ONE}) == setup_p.tau.rep.act((1, 1))


def test_weight_matches_tableau_endpoints(b2):
    setup, dcp = chain_instance(b2, [(1, 0), (0, 1)])
    for d in [(1, 0), (1, 1), (2, 1)]:
        for t in enumerate_standard(setup, d, dcp):
            vec = theta_d(dcp, t)
            assert weight(setup, vec) == tableau_endpoint(setup, t)


# -- theta ----------------------------------------------------------------------------


def test_theta_bijection_on_mixed_instances(a2, a3, b2):
    tau3412 = a3.from_word(one_line_to_word((3, 4, 1, 2)))
    special = [fs(1), fs(2), fs(3), fs(1, 2), fs(2, 3), fs(1, 2, 3)]
    from lsfan import build_index_poset

    tau312 = a2.from_word(one_line_to_word((3, 1, 2)))
    cases = [
        Setup(a3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], tau3412,
              build_index_poset(special, 3)),
        Setup(b2, [(0, 1), (1, 0)], b2.longest, powerset_iposet(2)),
        Setup(a2, [(0, 1), (1, 0)], tau312, powerset_iposet(2)),
    ]
    for setup in cases:
        dcp = build_dcp_inductive(setup)
        degrees = [d for d in product(range(3), repeat=setup.m) if 0 < sum(d) <= 2]
        for d in degrees:
            tabs = enumerate_standard(setup, d, dcp)
            vecs = enumerate_fan_degree(dcp, d)
            assert len(tabs) == len(vecs)
            for t in tabs:
                vec = theta_d(dcp, t)
                assert theta_d_inverse(dcp, vec) == t
            assert {canonical_vector(theta_d(dcp, t)) for t in tabs} == {
                canonical_vector(v) for v in vecs
            }


def test_degenerate_weight_sequences(a2):
    # a zero weight inside the sequence, and a repeated weight
    for lambdas, degree_mu in [
        ([(1, 0), (0, 0)], lambda d: (d[0], 0)),
        ([(1, 0), (1, 0)], lambda d: (d[0] + d[1], 0)),
    ]:
        setup = Setup(a2, lambdas, a2.longest, chain_iposet(2))
        dcp = build_dcp_inductive(setup)
        for d in [(1, 0), (0, 2), (1, 1), (2, 1)]:
            tabs = enumerate_standard(setup, d, dcp)
            vecs = enumerate_fan_degree(dcp, d)
            dim = demazure_dimension(a2, degree_mu(d), setup.tau)
            assert len(tabs) == len(vecs) == dim, (lambdas, d)


def test_maximality_is_chain_independent_on_standard_posets(a3, d4):
    # for a standard index poset, a node is maximal for the upper parabolic of
    # one covering chain iff it is for every covering chain
    from lsfan import build_index_poset

    instances = [
        Setup(a3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], a3.longest,
              powerset_iposet(3)),
        Setup(
            d4,
            [(0, 0, 1, 0), (0, 0, 0, 1), (0, 1, 0, 0), (1, 0, 0, 0)],
            d4.longest,
            build_index_poset(
                [fs(1), fs(2), fs(1, 2), fs(1, 2, 3), fs(1, 2, 3, 4)], 4
            ),
        ),
    ]
    for setup in instances:
        group = setup.group
        for s in setup.iposet.sets:
            chains = setup.iposet.covering_chains_to_top(s)
            if len(chains) < 2:
                continue
            uppers = [setup.q_upper_chain(ch) for ch in chains]
            for c in group.all_cosets(setup.q):
                if not group.is_q_minimal(c.rep, setup.q_of[s]):
                    continue
                answers = {group.is_lift_maximal(c, qr) for qr in uppers}
                assert len(answers) == 1, (s, c)


def test_branching_posets_with_higher_bonds(a3, d4):
    # power set on three weights: bonds up to 3 appear on composite shapes
    setup = Setup(a3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], a3.longest,
                  powerset_iposet(3))
    dcp = build_dcp_inductive(setup)
    assert {b for _, _, _, b in dcp.edges} == {1, 2, 3}
    vecs = enumerate_fan_degree(dcp, (1, 1, 1))
    tabs = enumerate_standard(setup, (1, 1, 1), dcp)
    assert len(vecs) == len(tabs) == demazure_dimension(a3, (1, 1, 1), setup.tau)
    for t in tabs[:16]:
        assert theta_d_inverse(dcp, theta_d(dcp, t)) == t

    # branching only at the bottom: the poset used for D-type flag varieties
    from lsfan import build_index_poset

    ip = build_index_poset(
        [fs(1), fs(2), fs(1, 2), fs(1, 2, 3), fs(1, 2, 3, 4)], 4
    )
    setup4 = Setup(
        d4,
        [(0, 0, 1, 0), (0, 0, 0, 1), (0, 1, 0, 0), (1, 0, 0, 0)],
        d4.longest,
        ip,
    )
    dcp4 = build_dcp_inductive(setup4)
    for d in [(1, 0, 0, 0), (1, 1, 0, 0)]:
        mu = tuple(
            sum(d[i] * setup4.lambdas[i][j] for i in range(4)) for j in range(4)
        )
        vecs = enumerate_fan_degree(dcp4, d)
        tabs = enumerate_standard(setup4, d, dcp4)
        dim = demazure_dimension(d4, mu, setup4.tau)
        assert len(vecs) == len(tabs) == dim


# -- multidegrees -----------------------------------------------------------------------


def test_b2_quadric_degree_is_two(b2):
    # single weight omega_1: the 3-dim quadric has degree 2
    setup, dcp = chain_instance(b2, [(1, 0)])
    report = multidegree_conjecture_check(setup, dcp, 3)
    assert report["dimension"] == 3
    assert report["left"] == {(3,): 2}
    assert report["agree"]


def test_a2_flag_variety_multidegrees(a2):
    setup, dcp = chain_instance(a2, [(1, 0), (0, 1)])
    report = multidegree_conjecture_check(setup, dcp, 3)
    assert report["dimension"] == 3
    assert report["agree"]
    assert report["left"] == {(1, 2): 1, (2, 1): 1}


def test_mixed_chain_conjecture_agreement(a3):
    setup, dcp = chain_instance(a3, [(1, 0, 0), (0, 0, 1), (0, 1, 0)])
    report = multidegree_conjecture_check(setup, dcp, 6)
    assert report["agree"]
    assert all(v >= 0 for v in report["right"].values())


def test_degenerate_point_instance():
    from lsfan import make_group

    group = make_group("A", 1)
    setup = Setup(group, [(0,)], group.longest, chain_iposet(1))
    dcp = build_dcp_inductive(setup)
    assert len(dcp.nodes) == 1
    report = multidegree_conjecture_check(setup, dcp, 0)
    assert report["dimension"] == 0
    assert report["left"] == {(0,): 1}
    assert report["agree"]


def test_hilbert_fit_rejects_small_grid(a2):
    setup, _ = chain_instance(a2, [(1, 0), (0, 1)])
    with pytest.raises(FanError) as err:
        hilbert_multidegrees(setup, 2)
    assert "total degree at least 3" in str(err.value)


def test_conjecture_needs_totally_ordered_iposet(a2):
    setup = Setup(a2, [(1, 0), (0, 1)], a2.longest, powerset_iposet(2))
    dcp = build_dcp_inductive(setup)
    with pytest.raises(FanError):
        multidegree_conjecture_check(setup, dcp, 3)
