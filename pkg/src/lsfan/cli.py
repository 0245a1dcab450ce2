"""Batch command line: build posets, check standardness, enumerate, verify.

One binary with subcommands; jobs come from flags or a JSON job file, results
go to --out (or stdout) as JSON, or as DOT for the poset commands.  Exit
codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import io as lsio
from .dcp import (
    DCP,
    Setup,
    build_dcp_direct_w0,
    build_dcp_inductive,
    build_index_poset,
    chain_iposet,
    powerset_iposet,
    tau_standardness_report,
    UnderlineW,
)
from .demazure import demazure_character, demazure_dimension
from .fan import (
    canonical_vector,
    enumerate_fan_degree,
    multidegree_conjecture_check,
    theta_d,
    theta_d_inverse,
)
from .rootdata import build_root_datum
from .tableaux import enumerate_standard, tableau_endpoint
from .weyl import WeylGroup


def _parse_vector(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _parse_vectors(text: str) -> list[tuple[int, ...]]:
    return [_parse_vector(part) for part in text.split(";") if part]


def _parse_sets(text: str) -> list[frozenset[int]]:
    return [frozenset(int(x) for x in part.split(",")) for part in text.split(";") if part]


def _load_job(args) -> dict:
    job = {}
    if getattr(args, "job", None):
        with open(args.job) as fh:
            job = json.load(fh)
    for key in (
        "type",
        "rank",
        "lambdas",
        "tau",
        "iposet",
        "degree",
        "max_total_degree",
        "size_guard",
    ):
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            job[key] = value
    return job


def _setup_from_job(job: dict) -> Setup:
    for key in ("type", "rank", "lambdas", "tau", "iposet"):
        if key not in job:
            raise ValueError(f"job is missing '{key}'")
    datum = build_root_datum(job["type"], int(job["rank"]))
    group = WeylGroup(datum, int(job.get("size_guard", 1152)))
    lambdas = job["lambdas"]
    if isinstance(lambdas, str):
        lambdas = _parse_vectors(lambdas)
    lambdas = [tuple(l) for l in lambdas]
    m = len(lambdas)
    iposet = job["iposet"]
    if iposet == "chain":
        iposet = chain_iposet(m)
    elif iposet == "powerset":
        iposet = powerset_iposet(m)
    else:
        sets = _parse_sets(iposet) if isinstance(iposet, str) else [
            frozenset(s) for s in iposet
        ]
        iposet = build_index_poset(sets, m)
    tau = job["tau"]
    total = tuple(sum(l[j] for l in lambdas) for j in range(group.rank))
    q = group.stabilizer_parabolic(total)
    if tau == "w0":
        tau_coset = group.coset(group.longest, q)
    else:
        word = _parse_vector(tau) if isinstance(tau, str) else tuple(tau)
        tau_coset = group.coset(group.from_word(word), q)
    return Setup(group, lambdas, tau_coset, iposet)


def _degrees_from_job(job: dict, m: int) -> list[tuple[int, ...]]:
    degrees = []
    if "degree" in job and job["degree"] is not None:
        raw = job["degree"]
        if isinstance(raw, str):
            degrees.extend(_parse_vectors(raw))
        elif raw and isinstance(raw[0], (list, tuple)):
            degrees.extend(tuple(d) for d in raw)
        else:
            degrees.append(tuple(raw))
    if "max_total_degree" in job and job["max_total_degree"] is not None and not degrees:
        bound = int(job["max_total_degree"])
        stack = [()]
        for _ in range(m):
            stack = [p + (k,) for p in stack for k in range(bound + 1)]
        degrees = [d for d in stack if 0 < sum(d) <= bound]
        degrees.sort()
    for d in degrees:
        if len(d) != m or any(x < 0 for x in d):
            raise ValueError(f"degree {d} does not match the weight count {m}")
    return degrees


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_dcp(args) -> int:
    job = _load_job(args)
    setup = _setup_from_job(job)
    dcp = build_dcp_inductive(setup)
    if setup.is_w0_instance():
        direct = build_dcp_direct_w0(setup)
        assert direct.node_set() == dcp.node_set()
        assert direct.edge_set() == dcp.edge_set()
    data = lsio.dcp_to_json(dcp)
    if args.format == "dot":
        _emit(args, lsio.dcp_to_dot(dcp))
    else:
        _emit(args, lsio.dumps(data))
    bonds = "all bonds 1" if data["all_bonds_one"] else "bonds > 1 present"
    print(
        f"dcp: {len(data['nodes'])} nodes, {len(data['edges'])} edges, {bonds}",
        file=sys.stderr,
    )
    return 0


def cmd_underline_w(args) -> int:
    job = _load_job(args)
    setup = _setup_from_job(job)
    uw = UnderlineW(setup)
    if args.format == "dot":
        _emit(args, lsio.underline_w_to_dot(uw))
    else:
        _emit(args, lsio.dumps(lsio.underline_w_to_json(uw)))
    return 0


def cmd_check(args) -> int:
    job = _load_job(args)
    setup = _setup_from_job(job)
    report = tau_standardness_report(setup)
    group = setup.group
    data = {
        "tau_standard": report.standard,
        "collisions": [
            [
                {
                    "theta": lsio.word_of(group, n.theta.rep),
                    "I": sorted(n.iset),
                }
                for n in pair
            ]
            for pair in report.collisions
        ],
    }
    if report.criteria is not None:
        data["criteria"] = [
            {
                "I": sorted(s),
                "chain": [sorted(t) for t in chain],
                **values,
            }
            for (s, chain), values in sorted(
                report.criteria.items(),
                key=lambda kv: (len(kv[0][0]), sorted(kv[0][0]), kv[0][1]),
            )
        ]
        data["criteria_agree"] = report.criteria_agree
    _emit(args, lsio.dumps(data))
    verdict = "tau-standard" if report.standard else "NOT tau-standard"
    print(f"check: index poset is {verdict}", file=sys.stderr)
    return 0


def cmd_enumerate(args) -> int:
    job = _load_job(args)
    setup = _setup_from_job(job)
    degrees = _degrees_from_job(job, setup.m)
    if len(degrees) != 1:
        raise ValueError("enumerate needs exactly one --degree")
    dcp = build_dcp_inductive(setup)
    tableaux = enumerate_standard(setup, degrees[0], dcp)
    group = setup.group
    data = {
        "degree": list(degrees[0]),
        "count": len(tableaux),
        "tableaux": [lsio.tableau_to_json(group, t) for t in tableaux],
        "fan_vectors": [
            lsio.fan_vector_to_json(dcp, theta_d(dcp, t)) for t in tableaux
        ],
    }
    _emit(args, lsio.dumps(data))
    return 0


def _verify_checks(setup: Setup, degrees, conjecture_bound=None):
    group = setup.group
    dcp = build_dcp_inductive(setup)
    checks = []
    for d in degrees:
        mu = tuple(
            sum(d[i] * setup.lambdas[i][j] for i in range(setup.m))
            for j in range(group.rank)
        )
        dim = demazure_dimension(group, mu, setup.tau)
        tableaux = enumerate_standard(setup, d, dcp)
        vectors = enumerate_fan_degree(dcp, d)
        checks.append(
            {
                "check": "counting",
                "degree": list(d),
                "pass": len(tableaux) == dim == len(vectors),
                "detail": {
                    "tableaux": len(tableaux),
                    "fan_vectors": len(vectors),
                    "demazure_dimension": dim,
                },
            }
        )
        char = demazure_character(group, mu, setup.tau)
        endpoints = Counter(tableau_endpoint(setup, t) for t in tableaux)
        checks.append(
            {
                "check": "character",
                "degree": list(d),
                "pass": dict(endpoints) == char,
                "detail": {"weights": len(char)},
            }
        )
        round_trip = all(
            theta_d_inverse(dcp, theta_d(dcp, t)) == t for t in tableaux
        )
        image = {canonical_vector(theta_d(dcp, t)) for t in tableaux}
        onto = image == {canonical_vector(v) for v in vectors}
        checks.append(
            {
                "check": "theta_bijection",
                "degree": list(d),
                "pass": round_trip and onto,
                "detail": {"round_trip": round_trip, "onto": onto},
            }
        )
    if conjecture_bound is not None:
        report = multidegree_conjecture_check(setup, dcp, conjecture_bound)
        checks.append(
            {
                "check": "multidegree_conjecture",
                "degree": None,
                "pass": report["agree"],
                "detail": {
                    "left": {",".join(map(str, k)): v for k, v in report["left"].items()},
                    "right": {",".join(map(str, k)): v for k, v in report["right"].items()},
                },
            }
        )
    return checks


def cmd_verify(args) -> int:
    job = _load_job(args)
    setup = _setup_from_job(job)
    degrees = _degrees_from_job(job, setup.m)
    if not degrees:
        data = {"ok": True, "checks": [], "warning": "empty degree grid"}
        _emit(args, lsio.dumps(data))
        print("verify: vacuous pass (empty degree grid)", file=sys.stderr)
        return 0
    bound = int(args.conjecture) if getattr(args, "conjecture", None) else None
    checks = _verify_checks(setup, degrees, bound)
    identity_failures = [
        c for c in checks if not c["pass"] and c["check"] != "multidegree_conjecture"
    ]
    ok = not identity_failures
    data = {"ok": ok, "checks": checks}
    _emit(args, lsio.dumps(data))
    if identity_failures:
        first = identity_failures[0]
        print(
            f"verify: FAILED {first['check']} at degree {first['degree']}: "
            f"{first['detail']}",
            file=sys.stderr,
        )
        return 1
    print(f"verify: all {len(checks)} checks passed", file=sys.stderr)
    return 0


def cmd_conjecture(args) -> int:
    job = _load_job(args)
    setup = _setup_from_job(job)
    dcp = build_dcp_inductive(setup)
    bound = job.get("max_total_degree")
    bound = setup.tau.rank if bound is None else int(bound)
    report = multidegree_conjecture_check(setup, dcp, bound)
    data = {
        "dimension": report["dimension"],
        "left": {",".join(map(str, k)): v for k, v in report["left"].items()},
        "right": {",".join(map(str, k)): v for k, v in report["right"].items()},
        "agree": report["agree"],
        "mismatches": [",".join(map(str, k)) for k in report["mismatches"]],
    }
    _emit(args, lsio.dumps(data))
    verdict = "agree" if report["agree"] else "DISAGREE"
    print(f"conjecture: chain-bond sums and Hilbert multidegrees {verdict}",
          file=sys.stderr)
    return 0


def _add_common(sub):
    sub.add_argument("--job", help="JSON job file; flags override its entries")
    sub.add_argument("--type", help="Dynkin type A..G")
    sub.add_argument("--rank", type=int)
    sub.add_argument(
        "--lambda",
        dest="lambdas",
        help="weights in omega-coordinates, e.g. '1,0,0;0,0,1;0,1,0'",
    )
    sub.add_argument("--tau", help="reduced word '2,1' or 'w0'")
    sub.add_argument("--iposet", help="'chain', 'powerset', or sets '1;1,2;1,2,3'")
    sub.add_argument("--size-guard", dest="size_guard", type=int)
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--format", choices=["json", "dot"], default="json")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lsfan",
        description="defining chain posets, LS-tableaux and the LS-fan of monoids",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("dcp", help="build the defining chain poset")
    _add_common(sub)
    sub.set_defaults(func=cmd_dcp)

    sub = commands.add_parser("underline-w", help="build the coset-pair poset")
    _add_common(sub)
    sub.set_defaults(func=cmd_underline_w)

    sub = commands.add_parser("check", help="tau-standardness of the index poset")
    _add_common(sub)
    sub.set_defaults(func=cmd_check)

    sub = commands.add_parser("enumerate", help="standard tableaux of one degree")
    _add_common(sub)
    sub.add_argument("--degree", help="degree vector 'd1,...,dm'")
    sub.set_defaults(func=cmd_enumerate)

    sub = commands.add_parser("verify", help="counting/character/theta identity suite")
    _add_common(sub)
    sub.add_argument("--degree", help="degree grid 'd1,...,dm[;...]'")
    sub.add_argument(
        "--max-total-degree",
        dest="max_total_degree",
        type=int,
        help="use all degrees of total degree up to this bound",
    )
    sub.add_argument(
        "--conjecture",
        help="also run the multidegree comparison with this fit bound",
    )
    sub.set_defaults(func=cmd_verify)

    sub = commands.add_parser("conjecture", help="multidegree conjecture report")
    _add_common(sub)
    sub.add_argument(
        "--max-total-degree",
        dest="max_total_degree",
        type=int,
        help="bound for the exact Hilbert fit (default: dim X_tau)",
    )
    sub.set_defaults(func=cmd_conjecture)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
