"""Root data for the simple Dynkin types, in Bourbaki numbering.

All lattice elements are integer tuples.  Weights live in the fundamental
weight basis (omega-coordinates), roots are kept both in simple-root
coordinates and omega-coordinates, coroots in simple-coroot coordinates.
The pairing of a weight with a coroot is then a plain dot product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

__all__ = ["RootDatum", "RootDatumError", "build_root_datum", "weyl_group_order"]

SIMPLE_TYPES = ("A", "B", "C", "D", "E", "F", "G")


class RootDatumError(ValueError):
    """Raised for (type, rank) pairs that do not name a simple root system."""


def _check_type_rank(dynkin_type: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if dynkin_type not in ok or not ok[dynkin_type]:
        raise RootDatumError(f"no simple root system of type {dynkin_type}_{rank}")


def weyl_group_order(dynkin_type: str, rank: int) -> int:
    """Order of the Weyl group of the given simple type."""
    _check_type_rank(dynkin_type, rank)
    n = rank
    if dynkin_type == "A":
        return math.factorial(n + 1)
    if dynkin_type in ("B", "C"):
        return 2**n * math.factorial(n)
    if dynkin_type == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if dynkin_type == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[n]
    if dynkin_type == "F":
        return 1152
    return 12  # G2


def _dynkin_edges(dynkin_type: str, rank: int) -> set[frozenset[int]]:
    """Edge set of the Dynkin diagram on 1-based Bourbaki indices."""
    n = rank
    if dynkin_type in ("A", "B", "C", "F", "G"):
        return {frozenset((i, i + 1)) for i in range(1, n)}
    if dynkin_type == "D":
        edges = {frozenset((i, i + 1)) for i in range(1, n - 1)}
        edges.add(frozenset((n - 2, n)))
        return edges
    # E types: chain 1-3-4-5-6(-7)(-8) with 2 attached to 4
    edges = {frozenset((1, 3)), frozenset((3, 4)), frozenset((2, 4))}
    for i in range(4, n):
        edges.add(frozenset((i, i + 1)))
    return edges


def _cartan_matrix(dynkin_type: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entries a[i][j] = <alpha_j, alpha_i^vee> (0-based)."""
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for edge in _dynkin_edges(dynkin_type, n):
        i, j = sorted(edge)
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    if dynkin_type == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        a[n - 1][n - 2] = -2
    elif dynkin_type == "C":
        # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        a[n - 2][n - 1] = -2
    elif dynkin_type == "F":
        # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        a[2][1] = -2
    elif dynkin_type == "G":
        # alpha_1 short, alpha_2 long
        a[0][1] = -3
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class RootDatum:
    """Cartan matrix, positive roots/coroots and Dynkin adjacency of one simple type.

    cartan[i][j] = <alpha_j, alpha_i^vee>, so column j holds the
    omega-coordinates of the simple root alpha_j.
    """

    dynkin_type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]      # simple-root coordinates
    positive_coroots: tuple[tuple[int, ...], ...]    # simple-coroot coordinates
    adjacency: frozenset[frozenset[int]]             # 1-based vertex pairs

    @property
    def simple_indices(self) -> range:
        """1-based Bourbaki indices of the simple roots."""
        return range(1, self.rank + 1)

    def root_omega_coords(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """Omega-coordinates of a root given in simple-root coordinates."""
        return tuple(
            sum(self.cartan[i][j] * root[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def pairing(self, weight: tuple[int, ...], coroot: tuple[int, ...]) -> int:
        """<weight, coroot> for a weight in omega-coordinates."""
        return sum(w * c for w, c in zip(weight, coroot))

    def coroot_of_positive_root(self, index: int) -> tuple[int, ...]:
        return self.positive_coroots[index]

    def fundamental_weight(self, i: int) -> tuple[int, ...]:
        """Omega-coordinates of omega_i (1-based i)."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    def dynkin_path(self, i: int, j: int) -> tuple[int, ...]:
        """The unique simple path from vertex i to vertex j in the diagram."""
        if i == j:
            return (i,)
        neighbours: dict[int, list[int]] = {v: [] for v in self.simple_indices}
        for edge in self.adjacency:
            u, v = tuple(edge)
            neighbours[u].append(v)
            neighbours[v].append(u)
        stack = [(i, (i,))]
        seen = {i}
        while stack:
            v, path = stack.pop()
            for w in neighbours[v]:
                if w == j:
                    return path + (w,)
                if w not in seen:
                    seen.add(w)
                    stack.append((w, path + (w,)))
        raise ValueError(f"no path between {i} and {j}")  # diagram is connected


def _generate_root_coroot_pairs(cartan, rank):
    """All positive (root, coroot) pairs, closed under simple reflections.

    Reflections act on root coordinates via the Cartan matrix and on coroot
    coordinates via its transpose; the assignment beta -> beta^vee is
    equivariant, so generating pairs keeps them matched.
    """
    simple_pairs = [
        (
            tuple(1 if j == i else 0 for j in range(rank)),
            tuple(1 if j == i else 0 for j in range(rank)),
        )
        for i in range(rank)
    ]

    def reflect(i, pair):
        root, coroot = pair
        m = sum(cartan[i][j] * root[j] for j in range(rank))
        mv = sum(cartan[j][i] * coroot[j] for j in range(rank))
        new_root = tuple(r - (m if j == i else 0) for j, r in enumerate(root))
        new_coroot = tuple(c - (mv if j == i else 0) for j, c in enumerate(coroot))
        return new_root, new_coroot

    positive = {}
    frontier = dict(zip((p[0] for p in simple_pairs), simple_pairs))
    while frontier:
        positive.update(frontier)
        new_frontier = {}
        for pair in frontier.values():
            for i in range(rank):
                root, coroot = reflect(i, pair)
                if all(x >= 0 for x in root) and root not in positive:
                    new_frontier[root] = (root, coroot)
        frontier = new_frontier
    ordered = sorted(positive)
    return (
        tuple(ordered),
        tuple(positive[r][1] for r in ordered),
    )


def build_root_datum(dynkin_type: str, rank: int) -> RootDatum:
    """Construct the root datum of a simple type, Bourbaki numbering.

    Raises RootDatumError for invalid (type, rank) pairs.
    """
    _check_type_rank(dynkin_type, rank)
    cartan = _cartan_matrix(dynkin_type, rank)
    roots, coroots = _generate_root_coroot_pairs(cartan, rank)
    adjacency = frozenset(_dynkin_edges(dynkin_type, rank))
    datum = RootDatum(dynkin_type, rank, cartan, roots, coroots, adjacency)
    _validate(datum)
    return datum


def _validate(datum: RootDatum) -> None:
    n = datum.rank
    for i in range(n):
        assert datum.cartan[i][i] == 2
        for j in range(n):
            if i != j:
                assert datum.cartan[i][j] <= 0
    for edge in combinations(range(n), 2):
        i, j = edge
        has_edge = frozenset((i + 1, j + 1)) in datum.adjacency
        assert has_edge == (datum.cartan[i][j] != 0)
    # <beta, beta^vee> = 2 ties the two coordinate systems together
    for root, coroot in zip(datum.positive_roots, datum.positive_coroots):
        assert datum.pairing(datum.root_omega_coords(root), coroot) == 2
