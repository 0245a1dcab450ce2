"""Index posets, the coset-pair poset, and the defining chain poset.

An instance is fixed by a sequence of dominant weights, a bounding coset tau
in W/W_Q (Q the stabilizer of the total weight) and an index poset on subsets
of [m].  The defining chain poset is built either by the rank-by-rank
inductive procedure (any tau) or directly via minimality/maximality
conditions (tau maximal); tau-standardness of the index poset is decided by
injectivity of the slice-projection map rho, with the four diagram-level
criteria available in the maximal case.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .weyl import Coset, LiftError, Parabolic, WeylElt, WeylGroup

__all__ = [
    "IndexPoset",
    "IndexPosetError",
    "build_index_poset",
    "powerset_iposet",
    "chain_iposet",
    "Setup",
    "UnderlineW",
    "DCPNode",
    "DCP",
    "build_dcp_inductive",
    "build_dcp_direct_w0",
    "rho",
    "rho_inverse",
    "rho_inverse_w0",
    "StandardnessReport",
    "is_tau_standard",
    "tau_standardness_report",
    "totally_ordered_exists",
    "max_defining_chain",
    "min_defining_chain",
    "defining_chain_extremes",
    "triangle_up",
    "triangle_down",
]


class IndexPosetError(ValueError):
    """Raised when a collection of subsets is not a valid index poset."""


class IndexPoset:
    """Non-empty subsets of [m], ordered by inclusion, graded of length m-1.

    Carries the derived data used everywhere else: covering relations, the
    underline map, and the degree vectors e_I supported on underline(I).
    """

    def __init__(self, m: int, sets):
        self.m = m
        self.sets = tuple(sorted({frozenset(s) for s in sets}, key=_set_key))
        self._set_lookup = set(self.sets)
        full = frozenset(range(1, m + 1))
        for s in self.sets:
            if not s or not s <= full:
                raise IndexPosetError(f"{set(s)} is not a non-empty subset of [{m}]")
        if full not in self._set_lookup:
            raise IndexPosetError(f"the full set [{m}] must be a member")
        self.full = full

        self.covers_down: dict[frozenset, tuple[frozenset, ...]] = {}
        for s in self.sets:
            below = [t for t in self.sets if t < s]
            covers = [
                t for t in below if not any(t < u < s for u in below)
            ]
            self.covers_down[s] = tuple(sorted(covers, key=_set_key))

        minimal = [s for s in self.sets if not self.covers_down[s]]
        for s in minimal:
            if len(s) != 1:
                raise IndexPosetError(
                    f"not graded of length {m - 1}: minimal member {set(s)} "
                    "is not a singleton"
                )
        for s in self.sets:
            for t in self.covers_down[s]:
                if len(s) != len(t) + 1:
                    raise IndexPosetError(
                        f"not graded of length {m - 1}: covering "
                        f"{set(t)} < {set(s)} skips a cardinality"
                    )

        self.underline: dict[frozenset, frozenset] = {}
        for s in self.sets:
            covers = self.covers_down[s]
            if not covers:
                self.underline[s] = s
            else:
                u = frozenset()
                for t in covers:
                    u |= s - t
                self.underline[s] = u

        for j, i in ((j, i) for j in self.sets for i in self.sets):
            if self.underline[j] <= i and not j <= i:
                raise IndexPosetError(
                    f"closure condition fails: underline({set(j)}) is contained "
                    f"in {set(i)} but {set(j)} is not"
                )

    def __contains__(self, s) -> bool:
        return frozenset(s) in self._set_lookup

    def rank(self, s: frozenset) -> int:
        return len(s) - 1

    def e_vector(self, s: frozenset) -> tuple[int, ...]:
        u = self.underline[s]
        return tuple(1 if i in u else 0 for i in range(1, self.m + 1))

    def covering_chains_to_top(self, s: frozenset):
        """All chains s = I_r < ... < I_m = [m] of covering relations."""
        if s == self.full:
            return [(s,)]
        chains = []
        for t in self.sets:
            if s in self.covers_down[t]:
                for chain in self.covering_chains_to_top(t):
                    chains.append((s,) + chain)
        return chains

    def maximal_chains(self):
        """All maximal chains, listed from the full set downwards."""
        chains = []

        def descend(s, acc):
            covers = self.covers_down[s]
            if not covers:
                chains.append(tuple(acc))
                return
            for t in covers:
                descend(t, acc + [t])

        descend(self.full, [self.full])
        return chains


def _set_key(s: frozenset):
    return (len(s), tuple(sorted(s)))


def build_index_poset(sets, m: int) -> IndexPoset:
    """Validate a collection of subsets of [m] as an index poset."""
    return IndexPoset(m, sets)


def powerset_iposet(m: int) -> IndexPoset:
    members = []
    for k in range(1, m + 1):
        members.extend(frozenset(c) for c in combinations(range(1, m + 1), k))
    return IndexPoset(m, members)


def chain_iposet(m: int) -> IndexPoset:
    return IndexPoset(m, [frozenset(range(1, k + 1)) for k in range(1, m + 1)])


# ---------------------------------------------------------------------------


class Setup:
    """One instance: group, weight sequence, bounding coset and index poset.

    Precomputes the parabolic subgroups attached to the index poset: P_i per
    weight, P_I and Q_I per member, the maximal parabolic over which tau stays
    maximal, and the upper parabolic of each covering chain.
    """

    def __init__(self, group: WeylGroup, lambdas, tau, iposet: IndexPoset):
        self.group = group
        self.lambdas = tuple(tuple(l) for l in lambdas)
        if len(self.lambdas) != iposet.m:
            raise ValueError("index poset ground size must match the weight count")
        for lam in self.lambdas:
            if any(x < 0 for x in lam):
                raise ValueError(f"weight {lam} is not dominant")
        self.iposet = iposet
        self.m = iposet.m
        self.total_weight = tuple(
            sum(l[j] for l in self.lambdas) for j in range(group.rank)
        )
        self.q: Parabolic = group.stabilizer_parabolic(self.total_weight)
        if isinstance(tau, WeylElt):
            tau = group.coset(tau, self.q)
        if tau.parabolic != self.q:
            raise ValueError("tau must live in W/W_Q for Q the total stabilizer")
        self.tau = tau

        self.p_weight = {
            i: group.stabilizer_parabolic(self.lambdas[i - 1])
            for i in range(1, self.m + 1)
        }
        self.lambda_of = {}
        self.p_of = {}
        self.q_of = {}
        for s in iposet.sets:
            lam_i = tuple(
                sum(self.lambdas[i - 1][j] for i in iposet.underline[s])
                for j in range(group.rank)
            )
            self.lambda_of[s] = lam_i
            self.p_of[s] = group.stabilizer_parabolic(lam_i)
            sum_all = tuple(
                sum(self.lambdas[i - 1][j] for i in s) for j in range(group.rank)
            )
            self.q_of[s] = group.stabilizer_parabolic(sum_all)

        # largest parabolic over Q for which tau is maximal: the right descent
        # set of the maximal-length representative of tau
        max_rep = group.max_rep(tau)
        self.q_tau: Parabolic = frozenset(
            i
            for i in group.datum.simple_indices
            if group.has_right_descent(max_rep, i)
        )
        assert self.q <= self.q_tau

    def is_w0_instance(self) -> bool:
        return self.tau == self.group.coset(self.group.longest, self.q)

    def q_upper(self, s: frozenset) -> Parabolic:
        """Q^I: intersection of Q_tau with all P_J for J >= I in the poset."""
        result = set(self.q_tau)
        for j in self.iposet.sets:
            if s <= j:
                result &= self.p_of[j]
        return frozenset(result)

    def q_upper_chain(self, chain) -> Parabolic:
        """Q^r for one covering chain from I up to [m]."""
        result = set(self.q_tau)
        for j in chain:
            result &= self.p_of[j]
        return frozenset(result)

    def tau_in(self, s: frozenset) -> Coset:
        return self.group.pi(self.tau, self.p_of[s])


# ---------------------------------------------------------------------------


class UnderlineW:
    """The poset of pairs (theta, I), theta a bounded coset of W/W_{P_I}.

    The generating relation compares the maximal lift of theta with the
    minimal lift of phi in W/W_Q; the partial order is its transitive hull,
    which in general is strictly larger (the generating relation need not be
    transitive).
    """

    def __init__(self, setup: Setup):
        self.setup = setup
        group = setup.group
        self.nodes = []
        for s in setup.iposet.sets:
            top = setup.tau_in(s)
            for c in group.all_cosets(setup.p_of[s]):
                if group.coset_leq(c, top):
                    self.nodes.append((c, s))
        self.nodes.sort(key=lambda n: (len(n[1]), _set_key(n[1]), n[0].rank, n[0].rep.matrix))
        index = {node: k for k, node in enumerate(self.nodes)}
        n = len(self.nodes)

        gen = [[False] * n for _ in range(n)]
        for a, (ca, sa) in enumerate(self.nodes):
            max_a = group.max_lift(ca, setup.q)
            for b, (cb, sb) in enumerate(self.nodes):
                if a == b or not sb <= sa:
                    continue
                min_b = group.min_lift(cb, setup.q)
                if group.coset_leq(min_b, max_a):
                    gen[a][b] = True

        hull = [row[:] for row in gen]
        for k in range(n):
            hk = hull[k]
            for i in range(n):
                if hull[i][k]:
                    hi = hull[i]
                    for j in range(n):
                        if hk[j]:
                            hi[j] = True
        self._gen = gen
        self._hull = hull
        self._index = index
        self.generating_is_transitive = gen == hull

    def generating_geq(self, a, b) -> bool:
        return a == b or self._gen[self._index[a]][self._index[b]]

    def geq(self, a, b) -> bool:
        return a == b or self._hull[self._index[a]][self._index[b]]

    def covers(self):
        """Hasse edges of the hull, as (upper, lower) pairs."""
        n = len(self.nodes)
        result = []
        for i in range(n):
            for j in range(n):
                if not self._hull[i][j]:
                    continue
                if any(self._hull[i][k] and self._hull[k][j] for k in range(n)):
                    continue
                result.append((self.nodes[i], self.nodes[j]))
        return result


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DCPNode:
    theta: Coset  # in W/W_Q, Q_I-minimal
    iset: frozenset

    def __hash__(self):
        return hash((self.theta, self.iset))


class DCP:
    """The defining chain poset: graded, with typed, bond-labelled covers."""

    def __init__(self, setup: Setup, nodes, edges):
        self.setup = setup
        self.nodes = sorted(nodes, key=_node_key)
        self.edges = sorted(edges, key=lambda e: (_node_key(e[0]), _node_key(e[1])))
        self.covers_down: dict[DCPNode, list[tuple[DCPNode, str, int]]] = {
            n: [] for n in self.nodes
        }
        self.covers_up: dict[DCPNode, list[DCPNode]] = {n: [] for n in self.nodes}
        for upper, lower, kind, bond in self.edges:
            self.covers_down[upper].append((lower, kind, bond))
            self.covers_up[lower].append(upper)
        self.top = DCPNode(setup.tau, setup.iposet.full)
        assert self.top in self.covers_down

    def rank(self, node: DCPNode) -> int:
        return node.theta.rank + len(node.iset) - 1

    def length(self) -> int:
        return self.rank(self.top)

    def bonds(self) -> dict[tuple[DCPNode, DCPNode], int]:
        return {(u, l): bond for u, l, _, bond in self.edges}

    def maximal_chains(self):
        """All maximal chains from the top, as (nodes, edge bonds) pairs."""
        chains = []

        def descend(node, acc_nodes, acc_bonds):
            downs = self.covers_down[node]
            if not downs:
                chains.append((tuple(acc_nodes), tuple(acc_bonds)))
                return
            for lower, _, bond in downs:
                descend(lower, acc_nodes + [lower], acc_bonds + [bond])

        descend(self.top, [self.top], [])
        return chains

    def node_set(self):
        return set(self.nodes)

    def edge_set(self):
        return {(u, l) for u, l, _, _ in self.edges}

    def leq(self, a: DCPNode, b: DCPNode) -> bool:
        """a <= b in the poset order (reachability through covers)."""
        if a == b:
            return True
        stack = [b]
        seen = set()
        while stack:
            x = stack.pop()
            for lower, _, _ in self.covers_down[x]:
                if lower == a:
                    return True
                if self.rank(lower) > self.rank(a) and lower not in seen:
                    seen.add(lower)
                    stack.append(lower)
        return False


def _node_key(n: DCPNode):
    return (-(n.theta.rank + len(n.iset) - 1), _set_key(n.iset), n.theta.rep.matrix)


def _same_i_bond(setup: Setup, upper: DCPNode, lower: DCPNode) -> int:
    group = setup.group
    beta_idx = group.covering_root(upper.theta, lower.theta)
    coroot = group.datum.positive_coroots[beta_idx]
    lam = setup.lambda_of[upper.iset]
    return abs(group.datum.pairing(lower.theta.rep.act(lam), coroot))


def _collect_edges(setup: Setup, nodes_by_rank):
    """All covering edges between consecutive ranks, with types and bonds."""
    group = setup.group
    edges = []
    for r in sorted(nodes_by_rank, reverse=True):
        lower_set = nodes_by_rank.get(r - 1, set())
        if not lower_set:
            continue
        for node in nodes_by_rank[r]:
            for j in setup.iposet.covers_down[node.iset]:
                cand = DCPNode(node.theta, j)
                if cand in lower_set:
                    edges.append((node, cand, "shrinkI", 1))
            p_i = setup.p_of[node.iset]
            theta_p = group.pi(node.theta, p_i)
            for phi, _ in group.covers_down(node.theta):
                cand = DCPNode(phi, node.iset)
                if cand in lower_set and group.pi(phi, p_i) != theta_p:
                    edges.append(
                        (node, cand, "sameI", _same_i_bond(setup, node, cand))
                    )
    return edges


def build_dcp_inductive(setup: Setup) -> DCP:
    """Rank-by-rank construction, valid for every bounding coset tau.

    Starting from (tau, [m]), each rank is populated by the two kinds of
    candidates: shrink the index set through a covering of the index poset
    keeping theta minimal for the smaller parabolic, or step down one
    covering relation of W/W_Q that stays visible in W/W_{P_I}.
    """
    group = setup.group
    top = DCPNode(setup.tau, setup.iposet.full)
    top_rank = setup.tau.rank + setup.m - 1
    nodes_by_rank = {top_rank: {top}}
    for r in range(top_rank, 0, -1):
        current = nodes_by_rank.get(r, set())
        below: set[DCPNode] = set()
        for node in current:
            for j in setup.iposet.covers_down[node.iset]:
                if group.is_q_minimal(node.theta.rep, setup.q_of[j]):
                    below.add(DCPNode(node.theta, j))
            p_i = setup.p_of[node.iset]
            q_i = setup.q_of[node.iset]
            theta_p = group.pi(node.theta, p_i)
            for phi, _ in group.covers_down(node.theta):
                if group.pi(phi, p_i) == theta_p:
                    continue
                if group.is_q_minimal(phi.rep, q_i):
                    below.add(DCPNode(phi, node.iset))
        if below:
            nodes_by_rank[r - 1] = below
    nodes = [n for bucket in nodes_by_rank.values() for n in bucket]
    return DCP(setup, nodes, _collect_edges(setup, nodes_by_rank))


def build_dcp_direct_w0(setup: Setup) -> DCP:
    """Direct construction for tau = w0 W_Q.

    A pair (theta, I) is a node iff theta is Q_I-minimal and, for some chain
    of covering relations from I to [m], theta is maximal with respect to the
    intersection of the corresponding shape parabolics.
    """
    group = setup.group
    if not setup.is_w0_instance():
        raise ValueError("direct construction requires tau = w0 W_Q")
    nodes = []
    for s in setup.iposet.sets:
        q_i = setup.q_of[s]
        uppers = [setup.q_upper_chain(chain) for chain in
                  setup.iposet.covering_chains_to_top(s)]
        for c in group.all_cosets(setup.q):
            if not group.is_q_minimal(c.rep, q_i):
                continue
            if any(group.is_lift_maximal(c, qr) for qr in uppers):
                nodes.append(DCPNode(c, s))
    nodes_by_rank: dict[int, set] = {}
    for n in nodes:
        nodes_by_rank.setdefault(n.theta.rank + len(n.iset) - 1, set()).add(n)
    return DCP(setup, nodes, _collect_edges(setup, nodes_by_rank))


# -- rho and tau-standardness -------------------------------------------------


def rho(setup: Setup, node: DCPNode):
    """Slice projection (theta, I) -> (pi_{P_I}(theta), I)."""
    return (setup.group.pi(node.theta, setup.p_of[node.iset]), node.iset)


def rho_map(dcp: DCP):
    images: dict = {}
    for node in dcp.nodes:
        images.setdefault(rho(dcp.setup, node), []).append(node)
    return images


def rho_inverse(dcp: DCP, theta, iset):
    """Preimage of (theta, I) under rho; requires rho to be injective."""
    images = rho_map(dcp)
    collisions = {k: v for k, v in images.items() if len(v) > 1}
    if collisions:
        pair = next(iter(collisions.values()))
        raise ValueError(
            f"rho is not injective; the index poset is not standard for tau "
            f"(collision at {pair[0]} / {pair[1]})"
        )
    return images[(theta, frozenset(iset))][0]


def rho_inverse_w0(setup: Setup, theta: Coset, iset):
    """Closed-form inverse min_Q(max_{Q_I}(theta)) for the maximal tau."""
    iset = frozenset(iset)
    group = setup.group
    lifted = group.max_lift(theta, setup.q_of[iset])
    return DCPNode(group.min_lift(lifted, setup.q), iset)


@dataclass
class StandardnessReport:
    standard: bool
    collisions: list
    criteria: dict | None  # (I, chain) -> {'i','ii','iii','iv'} for w0 instances
    criteria_agree: bool | None


def tau_standardness_report(setup: Setup, dcp: DCP | None = None) -> StandardnessReport:
    """Decide whether the index poset is standard for tau.

    The decision is injectivity of rho on the defining chain poset.  For
    tau = w0 W_Q the four criterion values are also evaluated per member and
    covering chain, and their mutual agreement is recorded.
    """
    group = setup.group
    if dcp is None:
        dcp = build_dcp_inductive(setup)
    images = rho_map(dcp)
    collisions = sorted(
        (v for v in images.values() if len(v) > 1),
        key=lambda pair: _node_key(pair[0]),
    )
    standard = not collisions

    criteria = None
    agree = None
    if setup.is_w0_instance():
        criteria = {}
        preimage_count: dict = {}
        for node in dcp.nodes:
            preimage_count[rho(setup, node)] = (
                preimage_count.get(rho(setup, node), 0) + 1
            )
        for s in setup.iposet.sets:
            p_i = setup.p_of[s]
            q_i = setup.q_of[s]
            id_coset = group.coset(group.identity, p_i)
            crit_i = preimage_count.get((id_coset, s), 0) == 1
            for chain in setup.iposet.covering_chains_to_top(s):
                q_r = setup.q_upper_chain(chain)
                crit_ii = _criterion_min_max(group, setup, p_i, q_i, q_r)
                crit_iii = _criterion_subgroup(group, setup, p_i, q_i, q_r)
                crit_iv = _criterion_dynkin(group.datum, p_i, q_i, q_r)
                criteria[(s, chain)] = {
                    "i": crit_i,
                    "ii": crit_ii,
                    "iii": crit_iii,
                    "iv": crit_iv,
                }
        agree = all(len(set(v.values())) == 1 for v in criteria.values())
        assert agree, f"criteria disagree: {criteria}"
        assert standard == all(v["i"] for v in criteria.values())
    return StandardnessReport(standard, collisions, criteria, agree)


def is_tau_standard(setup: Setup, dcp: DCP | None = None) -> bool:
    return tau_standardness_report(setup, dcp).standard


def _criterion_min_max(group, setup, p_i, q_i, q_r) -> bool:
    id_pi = group.coset(group.identity, p_i)
    left = group.min_lift(group.max_lift(id_pi, q_i), setup.q)
    right = group.max_lift(group.min_lift(id_pi, q_r), setup.q)
    return left == right


def _criterion_subgroup(group, setup, p_i, q_i, q_r) -> bool:
    members_qr = set(group.parabolic_elements(q_r))
    for w in group.parabolic_elements(p_i):
        if not group.is_q_minimal(w, q_i):
            continue
        if w not in members_qr or not group.is_q_minimal(w, setup.q):
            return False
    return True


def _criterion_dynkin(datum, p_i, q_i, q_r) -> bool:
    if (q_i | q_r) != p_i:
        return False
    for a in q_i - q_r:
        for b in q_r - q_i:
            path = datum.dynkin_path(a, b)
            if all(v in p_i for v in path):
                return False
    return True


def totally_ordered_exists(datum, lambdas):
    """Whether a totally ordered standard index poset exists for weights
    k_i * omega_{j_i} with pairwise distinct fundamental weights.

    True iff one simple path of the Dynkin diagram passes through all the
    selected vertices; returns (flag, ordering or None) where the ordering
    lists the weight positions along such a path.
    """
    selected = []
    for lam in lambdas:
        support = [j + 1 for j, x in enumerate(lam) if x > 0]
        if len(support) != 1:
            raise ValueError(
                f"weight {tuple(lam)} is not a multiple of a fundamental weight"
            )
        selected.append(support[0])
    if len(set(selected)) != len(selected):
        raise ValueError("fundamental weights must be pairwise distinct")
    if len(selected) == 1:
        return True, (1,)
    best = None
    for a, b in combinations(selected, 2):
        path = datum.dynkin_path(a, b)
        if best is None or len(path) > len(best):
            best = path
    if not set(selected) <= set(best):
        return False, None
    position = {v: k for k, v in enumerate(best)}
    order = tuple(
        i + 1 for i, _ in sorted(enumerate(selected), key=lambda t: position[t[1]])
    )
    return True, order


# -- defining chains ------------------------------------------------------------


def max_defining_chain(setup: Setup, wchain):
    """Unique maximal defining chain of a weakly decreasing chain of pairs
    (theta in W/W_{P_I}, I), listed from the top; None if none exists."""
    group = setup.group
    lifts = []
    current = setup.tau
    for theta, iset in wchain:
        try:
            current = group.deodhar_max_lift(current, theta)
        except LiftError:
            return None
        lifts.append(current)
    return lifts


def min_defining_chain(setup: Setup, wchain):
    """Unique minimal defining chain, or None; wchain is listed from the top."""
    group = setup.group
    lifts = []
    current = None
    for theta, iset in reversed(wchain):
        if current is None:
            current = group.min_lift(theta, setup.q)
        else:
            try:
                current = group.deodhar_min_lift(current, theta)
            except LiftError:
                return None
        lifts.append(current)
    lifts.reverse()
    if not group.coset_leq(lifts[0], setup.tau):
        return None
    return lifts


def defining_chain_extremes(setup: Setup, wchain):
    """(maximal, minimal) defining chains of a standard chain; raises if the
    chain admits no defining chain."""
    upper = max_defining_chain(setup, wchain)
    if upper is None:
        raise LiftError("the chain admits no defining chain")
    lower = min_defining_chain(setup, wchain)
    assert lower is not None
    return upper, lower


def triangle_up(setup: Setup, lifts, isets):
    """Push a defining chain up: max_Q of its projection to each Q^k."""
    group = setup.group
    out = []
    for k, lift in enumerate(lifts):
        qk = frozenset(setup.q_tau) & frozenset.intersection(
            *[setup.p_of[s] for s in isets[: k + 1]]
        )
        out.append(group.max_lift(group.pi(lift, qk), setup.q))
    return out


def triangle_down(setup: Setup, lifts, isets):
    """Push a defining chain down: min_Q of its projection to each Q_k."""
    group = setup.group
    out = []
    for k, lift in enumerate(lifts):
        qk = frozenset.intersection(*[setup.p_of[s] for s in isets[k:]])
        out.append(group.min_lift(group.pi(lift, qk), setup.q))
    return out
