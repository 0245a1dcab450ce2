"""JSON and DOT serialization.

Group elements are serialized as reduced words (1-based simple reflection
indices); rationals as "num/den" strings.  Node ordering is canonical (rank,
then index set, then matrix) so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .dcp import DCP, DCPNode, UnderlineW
from .lspath import LSPath
from .tableaux import LSTableau
from .weyl import Coset, WeylGroup

__all__ = [
    "word_of",
    "coset_to_json",
    "coset_from_json",
    "path_to_json",
    "path_from_json",
    "tableau_to_json",
    "dcp_to_json",
    "dcp_node_ids",
    "fan_vector_to_json",
    "underline_w_to_json",
    "dcp_to_dot",
    "underline_w_to_dot",
    "dumps",
]


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def word_of(group: WeylGroup, w) -> list[int]:
    return list(group.reduced_word(w))


def coset_to_json(group: WeylGroup, c: Coset) -> dict:
    return {
        "word": word_of(group, c.rep),
        "parabolic": sorted(c.parabolic),
    }


def coset_from_json(group: WeylGroup, data: dict) -> Coset:
    w = group.from_word(data["word"])
    return group.coset(w, frozenset(data["parabolic"]))


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _frac_parse(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)


def path_to_json(group: WeylGroup, path: LSPath) -> dict:
    return {
        "shape": list(path.shape),
        "cosets": [word_of(group, c.rep) for c in path.cosets],
        "cuts": [_frac_str(c) for c in path.cuts],
    }


def path_from_json(group: WeylGroup, data: dict) -> LSPath:
    shape = tuple(data["shape"])
    parabolic = group.stabilizer_parabolic(shape)
    cosets = tuple(
        group.coset(group.from_word(word), parabolic) for word in data["cosets"]
    )
    cuts = tuple(_frac_parse(s) for s in data["cuts"])
    return LSPath(shape, cosets, cuts)


def tableau_to_json(group: WeylGroup, tableau: LSTableau) -> dict:
    data = {"columns": [path_to_json(group, p) for p in tableau.columns]}
    if tableau.shapes is not None:
        data["shapes"] = [sorted(s) for s in tableau.shapes]
    return data


def dcp_node_ids(dcp: DCP) -> dict[DCPNode, int]:
    ordered = sorted(
        dcp.nodes,
        key=lambda n: (
            dcp.rank(n),
            tuple(sorted(n.iset)),
            n.theta.rep.matrix,
        ),
    )
    return {n: i for i, n in enumerate(ordered)}


def dcp_to_json(dcp: DCP) -> dict:
    group = dcp.setup.group
    ids = dcp_node_ids(dcp)
    nodes = [
        {
            "id": ids[n],
            "theta": word_of(group, n.theta.rep),
            "I": sorted(n.iset),
            "rank": dcp.rank(n),
        }
        for n in sorted(ids, key=ids.get)
    ]
    edges = [
        {
            "from": ids[u],
            "to": ids[l],
            "type": kind,
            "bond": bond,
        }
        for u, l, kind, bond in dcp.edges
    ]
    edges.sort(key=lambda e: (e["from"], e["to"]))
    return {
        "nodes": nodes,
        "edges": edges,
        "length": dcp.length(),
        "all_bonds_one": all(e["bond"] == 1 for e in edges),
    }


def fan_vector_to_json(dcp: DCP, vec) -> list[dict]:
    ids = dcp_node_ids(dcp)
    items = [
        {"node_id": ids[n], "coeff": _frac_str(c)} for n, c in vec.items() if c != 0
    ]
    items.sort(key=lambda d: d["node_id"])
    return items


def underline_w_to_json(uw: UnderlineW) -> dict:
    group = uw.setup.group
    nodes = [
        {
            "id": k,
            "theta": word_of(group, c.rep),
            "I": sorted(s),
        }
        for k, (c, s) in enumerate(uw.nodes)
    ]
    index = {node: k for k, node in enumerate(uw.nodes)}
    edges = sorted(
        (index[u], index[l]) for u, l in uw.covers()
    )
    return {
        "nodes": nodes,
        "cover_edges": [{"from": a, "to": b} for a, b in edges],
        "generating_relation_transitive": uw.generating_is_transitive,
    }


def _dot_escape(s: str) -> str:
    return s.replace('"', '\\"')


def dcp_to_dot(dcp: DCP) -> str:
    group = dcp.setup.group
    ids = dcp_node_ids(dcp)
    lines = ["digraph dcp {"]
    for n in sorted(ids, key=ids.get):
        word = "".join(map(str, group.reduced_word(n.theta.rep))) or "e"
        label = f"{word}|{{{','.join(map(str, sorted(n.iset)))}}}"
        lines.append(f'  n{ids[n]} [label="{_dot_escape(label)}"];')
    for u, l, kind, bond in dcp.edges:
        attrs = f'label="{bond}"' if bond != 1 else ""
        style = ' style=dashed' if kind == "shrinkI" else ""
        attr_str = f" [{attrs}{style}]" if attrs or style else ""
        lines.append(f"  n{ids[u]} -> n{ids[l]}{attr_str};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def underline_w_to_dot(uw: UnderlineW) -> str:
    group = uw.setup.group
    index = {node: k for k, node in enumerate(uw.nodes)}
    lines = ["digraph underline_w {"]
    for k, (c, s) in enumerate(uw.nodes):
        word = "".join(map(str, group.reduced_word(c.rep))) or "e"
        label = f"{word}|{{{','.join(map(str, sorted(s)))}}}"
        lines.append(f'  n{k} [label="{_dot_escape(label)}"];')
    for u, l in sorted(uw.covers(), key=lambda e: (index[e[0]], index[e[1]])):
        lines.append(f"  n{index[u]} -> n{index[l]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
