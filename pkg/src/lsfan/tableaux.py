"""LS-tableaux of type (lambda-sequence, index poset), and the type A
correspondence with Young-tableaux.

A tableau is a sequence of LS-paths whose shapes follow a weakly decreasing
chain in the index poset.  Standardness means the flattened coset sequence
lifts to a weakly decreasing chain in W/W_Q bounded by tau; the lift is
computed greedily through unique maximal Deodhar lifts, so the certificate
returned on success is the maximal defining chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dcp import DCP, Setup, build_dcp_inductive, is_tau_standard
from .lspath import LSPath, enumerate_ls_paths, endpoint
from .weyl import Coset, LiftError, WeylGroup, one_line_to_word, word_to_one_line

__all__ = [
    "LSTableau",
    "TableauError",
    "ShapeError",
    "make_tableau",
    "free_tableau",
    "degree",
    "tableau_endpoint",
    "shape_for_degree",
    "flatten",
    "max_defining_chain_of",
    "min_defining_chain_of",
    "is_standard",
    "is_weakly_standard",
    "enumerate_standard",
    "YoungTableau",
    "is_semistandard",
    "young_setup",
    "yt_from_ls",
    "ls_from_yt",
    "enumerate_ssyt",
]


class TableauError(ValueError):
    pass


class ShapeError(ValueError):
    """No weakly decreasing shape sequence realizes the requested degree."""


@dataclass(frozen=True)
class LSTableau:
    """Sequence of LS-paths.  `shapes` records the weakly decreasing chain in
    the index poset when the tableau is typed by one; free tableaux (arbitrary
    shape sequences, as in the standardness examples) carry shapes=None."""

    columns: tuple[LSPath, ...]
    shapes: tuple[frozenset, ...] | None = None


def make_tableau(setup: Setup, columns, shapes) -> LSTableau:
    """Validate column shapes against the index poset and build the tableau."""
    columns = tuple(columns)
    shapes = tuple(frozenset(s) for s in shapes)
    if len(columns) != len(shapes):
        raise TableauError("need one shape per column")
    for a, b in zip(shapes, shapes[1:]):
        if not b <= a:
            raise TableauError("shape sequence must be weakly decreasing")
    for path, s in zip(columns, shapes):
        if s not in setup.iposet:
            raise TableauError(f"{set(s)} is not a member of the index poset")
        if path.shape != setup.lambda_of[s]:
            raise TableauError(
                f"column of shape {path.shape} does not match the weight of {set(s)}"
            )
    return LSTableau(columns, shapes)


def free_tableau(columns) -> LSTableau:
    """Tableau with an arbitrary shape sequence, untyped by an index poset."""
    return LSTableau(tuple(columns), None)


def degree(setup: Setup, tableau: LSTableau) -> tuple[int, ...]:
    if tableau.shapes is None:
        raise TableauError("degree needs a tableau typed by the index poset")
    total = [0] * setup.m
    for s in tableau.shapes:
        for j, x in enumerate(setup.iposet.e_vector(s)):
            total[j] += x
    return tuple(total)


def tableau_endpoint(setup: Setup, tableau: LSTableau) -> tuple[int, ...]:
    """End point of the concatenation of all columns."""
    total = (0,) * setup.group.rank
    for path in tableau.columns:
        e = endpoint(path)
        total = tuple(a + b for a, b in zip(total, e))
    return total


def shape_for_degree(setup: Setup, d) -> tuple[frozenset, ...]:
    """The weakly decreasing shape sequence of total degree d.

    Follows the top-down recursion: take the largest admissible member with
    maximal multiplicity, then solve the remaining degree below it.  Raises
    ShapeError when no sequence exists.
    """
    d = tuple(d)
    if len(d) != setup.m or any(x < 0 for x in d):
        raise ShapeError(f"{d} is not a degree vector of length {setup.m}")
    iposet = setup.iposet

    def rec(rest, upper):
        if all(x == 0 for x in rest):
            return ()
        support = {i + 1 for i, x in enumerate(rest) if x > 0}
        candidates = [
            s
            for s in iposet.sets
            if (upper is None or s <= upper)
            and support <= s
            and all(rest[i - 1] >= 1 for i in iposet.underline[s])
        ]
        candidates.sort(key=lambda s: (len(s), tuple(sorted(s))), reverse=True)
        for s in candidates:
            e = iposet.e_vector(s)
            t_max = min(rest[i - 1] for i in iposet.underline[s])
            for t in range(t_max, 0, -1):
                sub = rec(tuple(x - t * y for x, y in zip(rest, e)), s)
                if sub is not None:
                    return (s,) * t + sub
        return None

    result = rec(d, None)
    if result is None:
        raise ShapeError(f"no weakly decreasing shape sequence has degree {d}")
    return result


def flatten(tableau: LSTableau):
    """Flattened (coset, tag) sequence with consecutive duplicates erased.

    The tag is the index-poset member for typed tableaux and the column shape
    for free ones; either way a duplicate means the same coset is continued
    into the next column of the same shape.
    """
    tags = tableau.shapes
    if tags is None:
        tags = tuple(p.shape for p in tableau.columns)
    out = []
    for path, tag in zip(tableau.columns, tags):
        for c in path.cosets:
            if not out or out[-1] != (c, tag):
                out.append((c, tag))
    return out


def max_defining_chain_of(setup: Setup, tableau: LSTableau):
    """Unique maximal defining chain (one W/W_Q coset per flattened entry),
    or None when the tableau is not standard."""
    group = setup.group
    lifts = []
    current = setup.tau
    for coset, _ in flatten(tableau):
        try:
            current = group.deodhar_max_lift(current, coset)
        except LiftError:
            return None
        lifts.append(current)
    return lifts


def min_defining_chain_of(setup: Setup, tableau: LSTableau):
    """Unique minimal defining chain, or None when the tableau is not standard."""
    group = setup.group
    lifts = []
    current = None
    for coset, _ in reversed(flatten(tableau)):
        try:
            if current is None:
                current = group.min_lift(coset, setup.q)
            else:
                current = group.deodhar_min_lift(current, coset)
        except LiftError:
            return None
        lifts.append(current)
    lifts.reverse()
    if lifts and not group.coset_leq(lifts[0], setup.tau):
        return None
    return lifts


def is_standard(setup: Setup, tableau: LSTableau):
    """(True, maximal defining chain) or (False, None).

    The defining chain lists one coset of W/W_Q per flattened entry, weakly
    decreasing and bounded by tau; it is found greedily through unique maximal
    Deodhar lifts, starting from tau.
    """
    lifts = max_defining_chain_of(setup, tableau)
    if lifts is None:
        return False, None
    return True, lifts


def is_weakly_standard(setup: Setup, tableau: LSTableau) -> bool:
    """True iff every pair of consecutive columns is standard on its own."""
    if len(tableau.columns) <= 1:
        return is_standard(setup, tableau)[0]
    for k in range(len(tableau.columns) - 1):
        pair = free_tableau(tableau.columns[k : k + 2])
        if not is_standard(setup, pair)[0]:
            return False
    return True


def enumerate_standard(setup: Setup, d, dcp: DCP | None = None):
    """All standard tableaux of degree d, in canonical order.

    Requires the index poset to be standard for tau, so that standardness is
    decided column by column while extending the maximal defining chain.
    """
    if dcp is None:
        dcp = build_dcp_inductive(setup)
    if not is_tau_standard(setup, dcp):
        raise TableauError("the index poset is not standard for tau")
    shapes = shape_for_degree(setup, d)
    if not shapes:
        return [LSTableau((), ())]
    group = setup.group

    candidates: dict[frozenset, list[LSPath]] = {}
    for s in set(shapes):
        paths = enumerate_ls_paths(group, setup.lambda_of[s], setup.tau, 1)
        candidates[s] = sorted(
            paths, key=lambda p: ([c.rep.matrix for c in p.cosets], p.cuts)
        )

    results = []

    def extend(k, current_lift, acc):
        if k == len(shapes):
            results.append(LSTableau(tuple(acc), shapes))
            return
        s = shapes[k]
        for path in candidates[s]:
            lift = current_lift
            feasible = True
            for coset in path.cosets:
                try:
                    lift = group.deodhar_max_lift(lift, coset)
                except LiftError:
                    feasible = False
                    break
            if feasible:
                extend(k + 1, lift, acc + [path])

    extend(0, setup.tau, [])
    return results


# -- type A Young-tableaux ----------------------------------------------------


@dataclass(frozen=True)
class YoungTableau:
    """Columns listed left to right, entries strictly increasing downwards."""

    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for col in self.columns:
            if any(a >= b for a, b in zip(col, col[1:])):
                raise TableauError("column entries must strictly increase")
        lengths = [len(c) for c in self.columns]
        if any(a < b for a, b in zip(lengths, lengths[1:])):
            raise TableauError("column lengths must weakly decrease left to right")


def is_semistandard(yt: YoungTableau) -> bool:
    """Rows weakly increase left to right (columns strictly increase by construction)."""
    if not yt.columns:
        return True
    for r in range(len(yt.columns[0])):
        row = [col[r] for col in yt.columns if len(col) > r]
        if any(a > b for a, b in zip(row, row[1:])):
            return False
    return True


def young_setup(group: WeylGroup, column_lengths) -> Setup:
    """The chain-index instance matching Young-tableaux with the given
    distinct column lengths (type A only)."""
    if group.datum.dynkin_type != "A":
        raise TableauError("Young-tableau correspondence requires type A")
    ks = sorted(set(column_lengths))
    n = group.rank
    if any(not 1 <= k <= n for k in ks):
        raise TableauError(f"column lengths must lie in [1, {n}]")
    from .dcp import chain_iposet

    lambdas = [group.datum.fundamental_weight(k) for k in reversed(ks)]
    return Setup(group, lambdas, group.longest, chain_iposet(len(ks)))


def _column_of_coset(group: WeylGroup, coset: Coset, length: int) -> tuple[int, ...]:
    n = group.rank + 1
    line = word_to_one_line(group.reduced_word(coset.rep), n)
    return tuple(sorted(line[:length]))


def _coset_of_column(group: WeylGroup, column) -> Coset:
    n = group.rank + 1
    rest = [x for x in range(1, n + 1) if x not in set(column)]
    line = tuple(column) + tuple(rest)
    w = group.from_word(one_line_to_word(line))
    k = len(column)
    parabolic = frozenset(i for i in range(1, n) if i != k)
    return group.coset(w, parabolic)


def yt_from_ls(setup: Setup, tableau: LSTableau) -> YoungTableau:
    """Type A: read the straight-line columns as subsets; column order reverses."""
    if setup.group.datum.dynkin_type != "A":
        raise TableauError("Young-tableau correspondence requires type A")
    columns = []
    for path, s in zip(tableau.columns, tableau.shapes):
        if len(path.cosets) != 1:
            raise TableauError("columns must be straight-line paths")
        lam = setup.lambda_of[s]
        support = [j + 1 for j, x in enumerate(lam) if x]
        if len(support) != 1 or lam[support[0] - 1] != 1:
            raise TableauError("column shapes must be fundamental weights")
        columns.append(_column_of_coset(setup.group, path.cosets[0], support[0]))
    return YoungTableau(tuple(reversed(columns)))


def ls_from_yt(setup: Setup, yt: YoungTableau) -> LSTableau:
    """Inverse of yt_from_ls for the chain-index instance of young_setup."""
    if setup.group.datum.dynkin_type != "A":
        raise TableauError("Young-tableau correspondence requires type A")
    shape_by_length = {}
    for s in setup.iposet.sets:
        lam = setup.lambda_of[s]
        support = [j + 1 for j, x in enumerate(lam) if x]
        if len(support) == 1 and lam[support[0] - 1] == 1:
            shape_by_length[support[0]] = s
    columns = []
    shapes = []
    for col in reversed(yt.columns):
        if len(col) not in shape_by_length:
            raise TableauError(f"no shape for a column of length {len(col)}")
        s = shape_by_length[len(col)]
        coset = _coset_of_column(setup.group, col)
        columns.append(LSPath(setup.lambda_of[s], (coset,), (Fraction(1),)))
        shapes.append(s)
    return make_tableau(setup, columns, shapes)


def enumerate_ssyt(n: int, column_lengths):
    """All semistandard Young-tableaux with the given column lengths
    (weakly decreasing) and entries in [n], by direct backtracking."""
    lengths = tuple(column_lengths)
    if any(a < b for a, b in zip(lengths, lengths[1:])):
        raise TableauError("column lengths must weakly decrease")
    results = []
    ncols = len(lengths)
    if ncols == 0:
        return [YoungTableau(())]
    cols = [[0] * l for l in lengths]

    def fill(c, r):
        if c == ncols:
            results.append(YoungTableau(tuple(tuple(col) for col in cols)))
            return
        if r == lengths[c]:
            fill(c + 1, 0)
            return
        lo = 1
        if r > 0:
            lo = max(lo, cols[c][r - 1] + 1)
        if c > 0 and len(cols[c - 1]) > r:
            lo = max(lo, cols[c - 1][r])
        for v in range(lo, n + 1):
            cols[c][r] = v
            fill(c, r + 1)

    fill(0, 0)
    return results
