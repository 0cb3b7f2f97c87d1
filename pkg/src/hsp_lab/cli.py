"""Command-line driver exposing every experiment in the suite.

Each subcommand is a pure function of its configuration and the 64-bit
seed: the report written to stdout or --out depends on nothing else, so
rerunning a command reproduces its output byte for byte. Wall-clock time
goes to stderr only, keeping the report deterministic. Reports carry a
stable field order (command, config, seed, results, table); floats are
canonicalized to 15 significant digits and exact rationals are rendered
as num/den strings. Exit status is 0 on success, 1 on a runtime failure,
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from hsp_lab.abelian_solver import (
    discrete_log,
    dlog_oracle,
    multiplicative_order,
    shor_factor,
    shor_oracle,
    simon_oracle,
    simon_solve,
    solve_abelian,
)
from hsp_lab.acceptance import criterion_ids, dihedral_equivalences, run_criterion
from hsp_lab.dihedral_lab import (
    dcp_blackbox,
    dihedral_subgroup,
    eh_solve,
    elimination_profile,
    kuperberg,
    parity_superposition_experiment,
    psi_from_dcp,
    window_overlap_experiment,
)
from hsp_lab.group_core import (
    CyclicGroup,
    DihedralGroup,
    Group,
    Subgroup,
    parse_group,
    subgroup_closure,
)
from hsp_lab.reductions import (
    decide_rigid_iso,
    gapcvp_build,
    gapcvp_json,
    graph_from_edge_text,
    reduction_verify,
    sat_from_text,
    sat_kernel,
    sat_oracle,
)
from hsp_lab.rep_theory import (
    balanced_dihedral_basis,
    change_dihedral_basis,
    irrep_table_for,
)
from hsp_lab.sampling import (
    HidingOracle,
    joint_fs_distribution,
    oracle_from_subgroup,
    solve_normal_hsp,
    strong_fs_distribution,
    weak_fs_distribution,
)

SEED_BOUND = 1 << 64


@dataclass(frozen=True)
class ExperimentConfig:
    """One run's full input: command, specs, counts, seed, output routing."""

    command: str
    seed: int
    format: str
    group: str | None = None
    oracle: str | None = None
    trials: int | None = None
    out: str | None = None
    options: tuple[tuple[str, object], ...] = ()

    def echo(self) -> dict:
        """The config as a dict with a fixed key order for serialization."""
        return {
            "command": self.command,
            "group": self.group,
            "oracle": self.oracle,
            "trials": self.trials,
            "seed": self.seed,
            "out": self.out,
            "format": self.format,
            "options": dict(sorted(self.options)),
        }


# ---------------------------------------------------------------------------
# canonical serialization


def _float_str(x: float) -> str:
    return f"{float(x):.15g}"


def _key_str(key) -> str:
    if isinstance(key, tuple):
        return ":".join(_key_str(part) for part in key)
    if isinstance(key, Fraction):
        return f"{key.numerator}/{key.denominator}"
    if isinstance(key, bool):
        return "true" if key else "false"
    if isinstance(key, float):
        return _float_str(key)
    return str(key)


def _jsonable(value):
    """Rewrite a result tree into plain JSON types with canonical numbers."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(_float_str(value))
    if isinstance(value, dict):
        return {_key_str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def _cell(value) -> str:
    """One CSV cell, canonicalized the same way as the JSON emitter."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (float, np.floating)):
        return _float_str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, tuple):
        return _key_str(value)
    return str(value)


def build_report(config: ExperimentConfig, results: dict, columns, rows) -> dict:
    return {
        "command": config.command,
        "config": config.echo(),
        "seed": config.seed,
        "results": results,
        "table": {"columns": list(columns), "rows": [list(r) for r in rows]},
    }


def emit(report: dict, fmt: str) -> str:
    """Serialize a report: full JSON document, or the table alone as CSV."""
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        table = report["table"]
        writer.writerow(table["columns"])
        for row in table["rows"]:
            writer.writerow([_cell(x) for x in row])
        return buffer.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def _deliver(args, config: ExperimentConfig, results: dict, columns, rows) -> int:
    payload = emit(build_report(config, results, columns, rows), args.format)
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return 0


# ---------------------------------------------------------------------------
# element and oracle literals


def parse_element_literal(text: str) -> list:
    """Parse a subgroup literal such as "[(1,1)]" or "[2, 3]".

    The literal is a Python-style list of elements in natural coordinates;
    a bare element (one int or one tuple) is accepted as a singleton.
    """
    try:
        value = ast.literal_eval(text.strip())
    except (SyntaxError, ValueError):
        raise ValueError(f"cannot parse element literal {text!r}") from None
    if isinstance(value, (int, tuple)):
        value = [value]
    if not isinstance(value, list):
        raise ValueError(f"element literal must be a list, got {text!r}")
    return value


def encode_element(group: Group, coords) -> int:
    """Index of an element given in natural coordinates."""
    if isinstance(coords, list):
        coords = tuple(coords)
    try:
        return group.check_index(group.encode(coords))
    except TypeError:
        if isinstance(coords, tuple) and len(coords) == 1:
            return group.check_index(group.encode(coords[0]))
        raise ValueError(
            f"element {coords!r} does not fit {group.describe()}"
        ) from None


def subgroup_from_literal(group: Group, text: str) -> Subgroup:
    gens = [encode_element(group, c) for c in parse_element_literal(text)]
    return subgroup_closure(group, gens)


def _oracle_params(rest: str, wanted: tuple[str, ...], spec: str) -> dict[str, int]:
    params: dict[str, int] = {}
    for item in rest.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in wanted:
            raise ValueError(
                f"oracle spec {spec!r} expects parameters {', '.join(wanted)}"
            )
        params[name] = int(value)
    missing = [name for name in wanted if name not in params]
    if missing:
        raise ValueError(f"oracle spec {spec!r} is missing {', '.join(missing)}")
    return params


def build_oracle(spec: str) -> HidingOracle:
    """Parse an oracle spec.

    Forms: subgroup:<group>:<elements> for the canonical coset-label
    oracle, simon:n=...,s=..., shor:a=...,n0=..., and dlog:p=...,g=...,x=...
    """
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "subgroup":
        group_spec, sep, literal = rest.rpartition(":")
        if not sep:
            raise ValueError(
                f"oracle spec {spec!r} needs subgroup:<group>:<elements>"
            )
        group = parse_group(group_spec)
        return oracle_from_subgroup(group, subgroup_from_literal(group, literal))
    if kind == "simon":
        params = _oracle_params(rest, ("n", "s"), spec)
        return simon_oracle(params["n"], params["s"])
    if kind == "shor":
        params = _oracle_params(rest, ("a", "n0"), spec)
        a, n0 = params["a"], params["n0"]
        modulus = multiplicative_order(a, n0) << (n0 - 1).bit_length()
        return shor_oracle(a, n0, modulus)
    if kind == "dlog":
        params = _oracle_params(rest, ("p", "g", "x"), spec)
        return dlog_oracle(params["p"], params["g"], params["x"])
    raise ValueError(f"unknown oracle kind {kind!r} in {spec!r}")


def _decoded(group: Group, elements) -> list:
    return [group.decode(g) for g in elements]


def _distribution_rows(dist) -> list[list]:
    return [[_key_str(key), p] for key, p in sorted(dist.items())]


def _subgroup_results(group: Group, sub: Subgroup, oracle: HidingOracle) -> dict:
    results = {
        "group": group.describe(),
        "order": sub.order,
        "index": group.order // sub.order,
        "generators": _decoded(group, sub.generators),
        "elements": _decoded(group, sub.elements),
        "hidden_known": oracle.hidden is not None,
    }
    if oracle.hidden is not None:
        results["matches_hidden"] = sub.elements == oracle.hidden.elements
    return results


# ---------------------------------------------------------------------------
# subcommands


def _cmd_fs(args, rng) -> int:
    group = parse_group(args.group)
    sub = subgroup_from_literal(group, args.subgroup)
    table = irrep_table_for(group)
    if args.basis == "balanced":
        if not isinstance(group, DihedralGroup):
            raise ValueError("the balanced basis applies to dihedral groups only")
        table = change_dihedral_basis(table, balanced_dihedral_basis(group.n))
    law = {
        "weak": weak_fs_distribution,
        "strong": strong_fs_distribution,
        "joint": joint_fs_distribution,
    }[args.mode](group, table, sub)
    config = _config(args, group=args.group)
    results = {
        "group": group.describe(),
        "subgroup_order": sub.order,
        "subgroup_elements": _decoded(group, sub.elements),
        "mode": args.mode,
        "basis": args.basis,
        "outcomes": len(law),
        "total_probability": sum(p for _, p in law.items()),
    }
    return _deliver(args, config, results, ["outcome", "probability"], _distribution_rows(law))


def _cmd_solve_abelian(args, rng) -> int:
    oracle = build_oracle(args.oracle)
    group = oracle.group
    sub = solve_abelian(group, oracle, rng, trials=args.trials, method=args.method)
    config = _config(args, oracle=args.oracle, trials=args.trials, method=args.method)
    results = _subgroup_results(group, sub, oracle)
    rows = [[_key_str(group.decode(g))] for g in sub.elements]
    return _deliver(args, config, results, ["element"], rows)


def _cmd_simon(args, rng) -> int:
    oracle = simon_oracle(args.n, args.s)
    rows = []
    recovered = []
    for run in range(args.trials):
        s_hat = simon_solve(oracle, rng)
        recovered.append(s_hat)
        rows.append([run, s_hat, s_hat == args.s])
    config = _config(args, trials=args.trials, n=args.n, s=args.s)
    results = {
        "n": args.n,
        "s": args.s,
        "runs": args.trials,
        "recovered": recovered,
        "all_correct": all(s == args.s for s in recovered),
    }
    return _deliver(args, config, results, ["run", "s_hat", "correct"], rows)


def _cmd_shor(args, rng) -> int:
    rows = []
    factors = []
    for run in range(args.trials):
        factor = shor_factor(args.n0, rng, attempts=args.attempts, statevector=args.statevector)
        factors.append(factor)
        rows.append([run, factor, args.n0 // factor])
    config = _config(
        args,
        trials=args.trials,
        n0=args.n0,
        attempts=args.attempts,
        statevector=args.statevector,
    )
    results = {
        "n0": args.n0,
        "runs": args.trials,
        "factors": factors,
        "all_nontrivial": all(
            1 < f < args.n0 and args.n0 % f == 0 for f in factors
        ),
    }
    return _deliver(args, config, results, ["run", "factor", "cofactor"], rows)


def _cmd_dlog(args, rng) -> int:
    y = discrete_log(args.p, args.g, args.x, rng)
    config = _config(args, p=args.p, g=args.g, x=args.x)
    results = {
        "p": args.p,
        "g": args.g,
        "x": args.x,
        "y": y,
        "verified": pow(args.g, y, args.p) == args.x % args.p,
    }
    return _deliver(args, config, results, ["p", "g", "x", "y"], [[args.p, args.g, args.x, y]])


def _cmd_normal_hsp(args, rng) -> int:
    oracle = build_oracle(args.oracle)
    group = oracle.group
    if args.group is not None and parse_group(args.group).describe() != group.describe():
        raise ValueError(
            f"--group {args.group!r} does not match the oracle domain {group.describe()}"
        )
    table = irrep_table_for(group)
    sub = solve_normal_hsp(group, table, oracle, c=args.c, rng=rng)
    config = _config(args, group=args.group, oracle=args.oracle, c=args.c)
    results = _subgroup_results(group, sub, oracle)
    rows = [[_key_str(group.decode(g))] for g in sub.elements]
    return _deliver(args, config, results, ["element"], rows)


def _cmd_eh_solve(args, rng) -> int:
    n = args.N
    sub = dihedral_subgroup(n, n, args.d).subgroup
    oracle = oracle_from_subgroup(DihedralGroup(n), sub)
    result = eh_solve(n, oracle, rng, m=args.m, multiplier=args.multiplier)
    config = _config(args, N=n, d=args.d, m=args.m, multiplier=args.multiplier)
    results = {
        "N": n,
        "d": args.d,
        "d_hat": result.d,
        "samples": result.m,
        "tie": result.tie,
        "shortcut": result.shortcut,
        "correct": result.d == args.d,
    }
    rows = [[n, args.d, result.d, result.m, result.d == args.d]]
    return _deliver(args, config, results, ["N", "d", "d_hat", "samples", "correct"], rows)


def _cmd_kuperberg(args, rng) -> int:
    modulus = 1 << args.n
    d = args.d if args.d is not None else rng.randrange(modulus)
    sub = dihedral_subgroup(modulus, modulus, d).subgroup
    oracle = oracle_from_subgroup(DihedralGroup(modulus), sub)
    result = kuperberg(
        args.n,
        oracle,
        rng,
        budget=args.budget,
        batch=args.batch,
        votes=args.votes,
        failure_p=args.failure_p,
    )
    config = _config(
        args,
        n=args.n,
        d=args.d,
        budget=args.budget,
        batch=args.batch,
        votes=args.votes,
        failure_p=args.failure_p,
    )
    results = {
        "n": args.n,
        "modulus": modulus,
        "d": d,
        "d_hat": result.d,
        "bits": list(result.bits),
        "queries": result.queries,
        "classical_queries": result.classical_queries,
        "complete": result.complete,
        "attempts": result.attempts,
        "correct": result.d == d,
    }
    rows = [
        [i, level.bits, level.drawn, level.votes, level.parity, level.leftover]
        for i, level in enumerate(result.levels)
    ]
    columns = ["level", "bits", "drawn", "votes", "parity", "leftover"]
    return _deliver(args, config, results, columns, rows)


def _cmd_dcp(args, rng) -> int:
    modulus = 1 << args.n
    rows = []
    corrupted = 0
    for trial in range(args.trials):
        state = dcp_blackbox(modulus, args.d, rng, failure_p=args.failure_p)
        psi = psi_from_dcp(state, rng)
        corrupted += state.corrupted
        rows.append([trial, state.x, state.corrupted, state.bit, psi.k, psi.junk])
    config = _config(
        args, trials=args.trials, n=args.n, d=args.d, failure_p=args.failure_p
    )
    results = {
        "n": args.n,
        "modulus": modulus,
        "d": args.d,
        "draws": args.trials,
        "corrupted": corrupted,
    }
    columns = ["trial", "x", "corrupted", "bit", "k", "junk"]
    return _deliver(args, config, results, columns, rows)


def _cmd_appendix_b(args, rng) -> int:
    checks = dihedral_equivalences(
        max_pipeline=args.max_pipeline,
        max_circuit=args.max_circuit,
        max_collapse=args.max_collapse,
        max_blind=args.max_blind,
    )
    config = _config(
        args,
        max_pipeline=args.max_pipeline,
        max_circuit=args.max_circuit,
        max_collapse=args.max_collapse,
        max_blind=args.max_blind,
    )
    results = {
        "pipeline_gap": checks["pipeline_gap"],
        "circuit_gap": checks["circuit_gap"],
        "collapse_exact": checks["collapse_exact"],
        "blind_exact": checks["blind_exact"],
        "pass": checks["pipeline_gap"] < 1e-9
        and checks["circuit_gap"] < 1e-12
        and checks["collapse_exact"]
        and checks["blind_exact"],
    }
    rows = [[name, checks[name]] for name in sorted(checks)]
    return _deliver(args, config, results, ["check", "value"], rows)


def _cmd_appendix_g(args, rng) -> int:
    if args.experiment == "parity":
        if args.d is None:
            raise ValueError("parity needs --d")
        exp = parity_superposition_experiment(args.n, args.d, args.trials, rng)
        config = _config(
            args, trials=args.trials, experiment="parity", n=args.n, d=args.d
        )
        results = {
            "experiment": "parity",
            "n": exp.n,
            "modulus": 1 << exp.n,
            "d": exp.d,
            "exact": exp.exact,
            "gram": exp.gram,
            "trials": exp.trials,
            "hits": exp.hits,
            "empirical": exp.empirical,
        }
        columns = ["n", "d", "exact", "gram", "empirical"]
        rows = [[exp.n, exp.d, exp.exact, exp.gram, exp.empirical]]
        return _deliver(args, config, results, columns, rows)
    if args.m is None or args.d is None:
        raise ValueError("window needs --m and --d")
    exp = window_overlap_experiment(args.m, args.d, args.a, rng, trials=args.trials, p=args.p)
    config = _config(
        args,
        trials=args.trials,
        experiment="window",
        m=args.m,
        d=args.d,
        a=args.a,
        p=args.p,
    )
    results = {
        "experiment": "window",
        "m": exp.m,
        "n": exp.n,
        "nprime": exp.nprime,
        "a": exp.a,
        "d": exp.d,
        "overlap": exp.l,
        "exact": exp.exact,
        "gram": exp.gram,
        "samples": exp.samples,
        "hits": exp.hits,
        "empirical": exp.empirical,
        "tolerance": exp.tolerance,
        "l_estimate": exp.l_estimate,
        "blind_interval": list(exp.blind_interval),
        "decision": exp.decision,
    }
    columns = ["m", "a", "d", "overlap", "exact", "l_estimate", "decision"]
    rows = [[exp.m, exp.a, exp.d, exp.l, exp.exact, exp.l_estimate, exp.decision]]
    return _deliver(args, config, results, columns, rows)


def _cmd_eliminations(args, rng) -> int:
    profile = elimination_profile(args.n)
    config = _config(args, n=args.n)
    results = {
        "n": profile.n,
        "modulus": 1 << profile.n,
        "one_dim": profile.one_dim,
        "expected_total": profile.expected_total,
        "enumerated_total": profile.enumerated_total(),
        "agree": profile.expected_total == profile.enumerated_total(),
    }
    rows = [[k, profile.per_k[k]] for k in sorted(profile.per_k)]
    return _deliver(args, config, results, ["k", "eliminated"], rows)


def _cmd_reduce_3sat(args, rng) -> int:
    inst = sat_from_text(Path(args.infile).read_text(encoding="utf-8"))
    kernel = sat_kernel(inst, method=args.method, rng=rng)
    lattice = gapcvp_build(inst, kernel)
    fmap = sat_oracle(inst)
    config = _config(args, infile=args.infile, method=args.method, verify=args.verify)
    results = {
        "variables": inst.n,
        "clauses": inst.clause_count,
        "modulus": fmap.modulus,
        "coefficients": list(fmap.coefficients),
        "target": fmap.target,
        "kernel_rows": len(kernel.basis),
        "dimension": lattice.dimension,
        "bound": lattice.bound,
        "gapcvp": json.loads(gapcvp_json(lattice)),
    }
    if args.verify:
        report = reduction_verify(inst, lattice)
        results["verify"] = {
            "sat": report.sat,
            "cvp": report.cvp,
            "agree": report.agree,
            "sat_assignment": list(report.sat_assignment)
            if report.sat_assignment is not None
            else None,
            "cvp_coefficients": list(report.cvp_coefficients)
            if report.cvp_coefficients is not None
            else None,
        }
    columns = ["row"] + [f"x{j}" for j in range(lattice.dimension)]
    rows = [
        [i] + [entry for entry in column]
        for i, column in enumerate(lattice.basis)
    ]
    return _deliver(args, config, results, columns, rows)


def _cmd_graph_iso(args, rng) -> int:
    g1 = graph_from_edge_text(Path(args.g1).read_text(encoding="utf-8"))
    g2 = graph_from_edge_text(Path(args.g2).read_text(encoding="utf-8"))
    decision = decide_rigid_iso(g1, g2, solver=args.solver)
    config = _config(args, g1=args.g1, g2=args.g2, solver=args.solver)
    results = {
        "vertices": [g1.n, g2.n],
        "edges": [len(g1.edges), len(g2.edges)],
        "solver": args.solver,
        "isomorphic": decision.isomorphic,
        "witness": list(decision.witness) if decision.witness is not None else None,
    }
    rows = (
        [[v, image] for v, image in enumerate(decision.witness)]
        if decision.witness is not None
        else []
    )
    return _deliver(args, config, results, ["vertex", "image"], rows)


def _cmd_accept(args, rng) -> int:
    ids = (args.id,) if args.id is not None else criterion_ids()
    outcomes = [run_criterion(cid) for cid in ids]
    for outcome in outcomes:
        print(outcome.line)
        print(f"criterion {outcome.cid} took {outcome.elapsed:.2f}s", file=sys.stderr)
    failed = [outcome.cid for outcome in outcomes if not outcome.passed]
    if args.out:
        config = _config(args, id=args.id)
        results = {
            "criteria": len(outcomes),
            "passed": len(outcomes) - len(failed),
            "failed": failed,
        }
        rows = [
            [o.cid, "PASS" if o.passed else "FAIL", o.detail] for o in outcomes
        ]
        payload = emit(
            build_report(config, results, ["criterion", "status", "detail"], rows),
            args.format,
        )
        Path(args.out).write_text(payload, encoding="utf-8")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser assembly


def _config(args, group=None, oracle=None, trials=None, **options) -> ExperimentConfig:
    return ExperimentConfig(
        command=args.command,
        seed=args.seed,
        format=args.format,
        group=group,
        oracle=oracle,
        trials=trials,
        out=args.out,
        options=tuple(sorted(options.items())),
    )


def _seed64(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value < SEED_BOUND:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=_seed64, default=0, help="64-bit seed for all randomness (default 0)"
    )
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="report format; csv emits the result table only",
    )
    parser = argparse.ArgumentParser(
        prog="hsp-lab",
        description="Exact simulator and solver suite for hidden subgroups of finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser(
        "fs",
        parents=[common],
        help="exact weak, strong, or joint sampling law of a subgroup",
    )
    p.add_argument("--group", required=True, help="group spec, e.g. dihedral:4")
    p.add_argument(
        "--subgroup",
        required=True,
        help='generators in natural coordinates, e.g. "[(1,1)]"',
    )
    p.add_argument("--mode", choices=("weak", "strong", "joint"), default="weak")
    p.add_argument(
        "--basis",
        choices=("identity", "balanced"),
        default="identity",
        help="two-dimensional basis for dihedral tables",
    )
    p.set_defaults(handler=_cmd_fs)

    p = sub.add_parser(
        "solve-abelian",
        parents=[common],
        help="recover a hidden subgroup of an abelian group from an oracle spec",
    )
    p.add_argument("--oracle", required=True, help="oracle spec, e.g. subgroup:cyclic:12:[3]")
    p.add_argument("--trials", type=int, default=None, help="character samples per batch")
    p.add_argument("--method", choices=("snf", "exhaustive"), default="snf")
    p.set_defaults(handler=_cmd_solve_abelian)

    p = sub.add_parser(
        "simon",
        parents=[common],
        help="recover the hidden xor mask over Z_2^n",
    )
    p.add_argument("--n", type=int, required=True, help="number of bits")
    p.add_argument("--s", type=int, required=True, help="hidden mask, 1 to 2^n - 1")
    p.add_argument("--trials", type=int, default=1, help="independent runs")
    p.set_defaults(handler=_cmd_simon)

    p = sub.add_parser(
        "shor",
        parents=[common],
        help="factor an odd composite through period finding",
    )
    p.add_argument("--n0", type=int, required=True, help="odd composite to factor")
    p.add_argument("--attempts", type=int, default=20, help="base choices before giving up")
    p.add_argument(
        "--statevector",
        action="store_true",
        help="use the power-of-two register simulation",
    )
    p.add_argument("--trials", type=int, default=1, help="independent runs")
    p.set_defaults(handler=_cmd_shor)

    p = sub.add_parser(
        "dlog",
        parents=[common],
        help="discrete logarithm modulo a prime via the two-register oracle",
    )
    p.add_argument("--p", type=int, required=True, help="prime modulus")
    p.add_argument("--g", type=int, required=True, help="generator of the units")
    p.add_argument("--x", type=int, required=True, help="target value")
    p.set_defaults(handler=_cmd_dlog)

    p = sub.add_parser(
        "normal-hsp",
        parents=[common],
        help="recover a normal hidden subgroup by intersecting irrep kernels",
    )
    p.add_argument("--oracle", required=True, help="oracle spec")
    p.add_argument("--group", default=None, help="optional cross-check of the oracle domain")
    p.add_argument("--c", type=float, default=4.0, help="sampling-round multiplier")
    p.set_defaults(handler=_cmd_normal_hsp)

    p = sub.add_parser(
        "eh-solve",
        parents=[common],
        help="recover a dihedral reflection slope by likelihood over circuit samples",
    )
    p.add_argument("--N", type=int, required=True, help="dihedral order parameter")
    p.add_argument("--d", type=int, required=True, help="hidden slope")
    p.add_argument("--m", type=int, default=None, help="sample count override")
    p.add_argument("--multiplier", type=int, default=16, help="samples per log2 N")
    p.set_defaults(handler=_cmd_eh_solve)

    p = sub.add_parser(
        "kuperberg",
        parents=[common],
        help="sieve phase states to read the slope bits of D_{2^n}",
    )
    p.add_argument("--n", type=int, required=True, help="slope bit length")
    p.add_argument("--d", type=int, default=None, help="hidden slope (default random)")
    p.add_argument("--budget", type=int, default=10**7, help="oracle query budget")
    p.add_argument("--batch", type=int, default=None, help="pool size override")
    p.add_argument("--votes", type=int, default=8, help="parity votes per bit")
    p.add_argument(
        "--failure-p",
        type=float,
        default=None,
        help="corruption exponent for noisy draws",
    )
    p.set_defaults(handler=_cmd_kuperberg)

    p = sub.add_parser(
        "dcp",
        parents=[common],
        help="draw coset pairs over Z_{2^n} and report the measured phase labels",
    )
    p.add_argument("--n", type=int, required=True, help="slope bit length")
    p.add_argument("--d", type=int, required=True, help="slope, 0 to 2^n - 1")
    p.add_argument(
        "--failure-p",
        type=float,
        default=None,
        help="corruption exponent for noisy draws",
    )
    p.add_argument("--trials", type=int, default=8, help="number of draws")
    p.set_defaults(handler=_cmd_dcp)

    p = sub.add_parser(
        "appendix-b",
        parents=[common],
        help="equivalence checks between analytic laws, pipelines, and circuits",
    )
    p.add_argument("--max-pipeline", type=int, default=16)
    p.add_argument("--max-circuit", type=int, default=32)
    p.add_argument("--max-collapse", type=int, default=24)
    p.add_argument("--max-blind", type=int, default=31)
    p.set_defaults(handler=_cmd_appendix_b)

    p = sub.add_parser(
        "appendix-g",
        parents=[common],
        help="swap-test experiments: slope parity and window overlap",
    )
    p.add_argument("--experiment", choices=("parity", "window"), required=True)
    p.add_argument("--n", type=int, default=4, help="parity: bits of the modulus")
    p.add_argument("--d", type=int, default=None, help="slope")
    p.add_argument("--m", type=int, default=None, help="window: quarter length")
    p.add_argument("--a", type=int, default=0, help="window: shift")
    p.add_argument("--p", type=int, default=1, help="window: margin exponent")
    p.add_argument("--trials", type=int, default=1000, help="swap-test samples")
    p.set_defaults(handler=_cmd_appendix_g)

    p = sub.add_parser(
        "eliminations",
        parents=[common],
        help="exact per-outcome elimination counts for modulus 2^n",
    )
    p.add_argument("--n", type=int, required=True, help="bits, at least 2")
    p.set_defaults(handler=_cmd_eliminations)

    p = sub.add_parser(
        "reduce-3sat",
        parents=[common],
        help="compile a 3-SAT instance to a closest-vector instance",
    )
    p.add_argument("--in", dest="infile", required=True, help="clause file, one clause per line")
    p.add_argument("--method", choices=("snf", "hsp"), default="snf", help="kernel computation")
    p.add_argument(
        "--verify",
        action="store_true",
        help="brute-force both sides and record whether they agree",
    )
    p.set_defaults(handler=_cmd_reduce_3sat)

    p = sub.add_parser(
        "graph-iso",
        parents=[common],
        help="decide isomorphism of two rigid connected graphs",
    )
    p.add_argument("--g1", required=True, help="edge-list file for the first graph")
    p.add_argument("--g2", required=True, help="edge-list file for the second graph")
    p.add_argument("--solver", choices=("exhaustive", "external"), default="exhaustive")
    p.set_defaults(handler=_cmd_graph_iso)

    p = sub.add_parser(
        "accept",
        parents=[common],
        help="run the acceptance criteria and print one verdict line each",
    )
    p.add_argument(
        "id",
        nargs="?",
        type=int,
        default=None,
        help="criterion number; all twelve when omitted",
    )
    p.set_defaults(handler=_cmd_accept)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    try:
        code = args.handler(args, rng)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wall-clock {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
