"""Batch command-line surface: every verification and search as a seeded,
reproducible command emitting JSON or RFC-4180 CSV.

Exit codes: 0 success, 2 a computed quantity contradicts the closed formula
it must equal (the serious outcome; expected vs actual is printed), 3 an
enumeration was refused because it exceeds the budget (flag --budget or env
ISOTROPICA_BUDGET), 1 usage or input errors.

Determinism: identical arguments produce byte-identical output. Every output
embeds {command, config, artifact_version, seed}; JSON keys are sorted, CSV
rows carry trailing meta columns. Files are written atomically (temp file
plus rename).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from . import __version__
from .algebras import Class2Algebra, heisenberg, max_abelian
from .bounds import bound_table, quadratic_witness_params, sandwich_check
from .errors import BudgetExceededError, FormulaViolationError
from .exactfield import GF, QQ, scalar_to_json
from .forms import FormTuple, incidence_degree_report, vanishing_space_dim
from .grassmann import (
    coordinate_flag,
    enumerate_grassmannian,
    grassmann_relations_residual,
    pluecker_of,
    random_subspace,
    random_subspace_pair,
    schubert_degree_report,
    subspace_from_rows,
    subspace_of_pluecker,
)
from .search import (
    SearchOutcome,
    exhaustive_isotropic,
    greedy_isotropic,
    hunt_isotropic_free_tuple,
    randomized_isotropic,
)

import random


class _Parser(argparse.ArgumentParser):
    "argparse exits 2 on usage errors; that code is reserved, remap to 1."

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _q_list(text: str) -> list:
    return [int(x) for x in text.split(",") if x.strip()]


def _int_list(text: str) -> list:
    return [int(x) for x in text.split(",") if x.strip()]


def _config_of(args) -> dict:
    skip = {"handler", "output", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and not k.startswith("_")}


def _emit(output: str | None, text: str) -> None:
    if output:
        directory = os.path.dirname(os.path.abspath(output)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".isotropica-tmp-")
        try:
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            os.replace(tmp, output)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)


def _json_doc(args, result) -> str:
    doc = {
        "command": args.command,
        "config": _config_of(args),
        "artifact_version": __version__,
        "seed": getattr(args, "seed", 0),
        "result": result,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _csv_doc(args, header: list, rows: list) -> str:
    # seed is embedded via the config column (and as a data column where the
    # row schema calls for one), keeping header names unique
    meta = [
        ("command", args.command),
        ("artifact_version", __version__),
        ("config", json.dumps(_config_of(args), sort_keys=True)),
    ]
    sio = io.StringIO()
    w = csv.writer(sio)
    w.writerow(header + [m[0] for m in meta])
    for row in rows:
        w.writerow(list(row) + [m[1] for m in meta])
    return sio.getvalue()


# ---------------------------------------------------------------------------
# handlers


def _cmd_bound_table(args):
    rows = bound_table(args.s_max)
    for r in rows:
        sandwich_check(r.s)
    if args.format == "json":
        result = [
            {
                "s": r.s,
                "l": r.l_value,
                "upper6": r.upper6,
                "lower7": r.lower7,
                "lower8": scalar_to_json(r.lower8),
                "regime": r.regime,
                "g_equals_l": "equal",
            }
            for r in rows
        ]
        return _json_doc(args, result)
    header = ["s", "l", "upper6", "lower7", "lower8_num", "lower8_den", "regime", "g_equals_l"]
    data = [
        [r.s, r.l_value, r.upper6, r.lower7, r.lower8.numerator, r.lower8.denominator, r.regime, "equal"]
        for r in rows
    ]
    return _csv_doc(args, header, data)


def _cmd_heisenberg(args):
    alg = heisenberg(args.m, GF(args.q))
    report = max_abelian(alg, budget=args.budget)
    return _json_doc(args, {"algebra": alg.to_json(), "report": report.to_json()})


def _cmd_max_abelian(args):
    with open(args.algebra) as fh:
        alg = Class2Algebra.from_json(json.load(fh))
    report = max_abelian(alg, budget=args.budget)
    return _json_doc(args, report.to_json())


def _outcome_json(out: SearchOutcome) -> dict:
    return {
        "found": out.found,
        "witness": out.witness.to_json() if out.witness else None,
        "k_target": out.k_target,
        "method": out.method,
        "trials": out.trials,
        "seed": out.seed,
    }


def _cmd_find_isotropic(args):
    with open(args.forms) as fh:
        phi = FormTuple.from_json(json.load(fh))
    if args.method == "greedy":
        u = greedy_isotropic(phi)
        found = u.dim >= args.k
        witness = None
        if found:
            witness = subspace_from_rows(phi.field, phi.n, u.basis.entries[: args.k])
        out = SearchOutcome(found, witness, args.k, "greedy", 1, args.seed)
    elif args.method == "exhaustive":
        out = exhaustive_isotropic(phi, args.k, budget=args.budget)
    else:
        out = randomized_isotropic(phi, args.k, args.trials, args.seed)
    return _json_doc(args, _outcome_json(out))


def _cmd_hunt_lower(args):
    params = quadratic_witness_params(args.s)
    res = hunt_isotropic_free_tuple(
        params.n, params.t, params.k, args.q, args.trials, args.seed, budget=args.budget
    )
    header = ["n", "t", "k", "q", "seed", "trials", "found_tuple_json", "success_rate"]
    row = [
        res.n,
        res.t,
        res.k,
        res.q,
        res.seed,
        res.trials_run,
        json.dumps(res.tuple.to_json(), sort_keys=True) if res.tuple else "",
        scalar_to_json(res.success_rate),
    ]
    return _csv_doc(args, header, [row])


def _cmd_verify_pluecker(args):
    field = GF(args.q)
    total = 0
    roundtrip_failures = 0
    relation_failures = 0
    for u in enumerate_grassmannian(args.n, args.k, field, budget=args.budget):
        total += 1
        point = pluecker_of(u)
        if any(x != 0 for x in grassmann_relations_residual(point)):
            relation_failures += 1
            continue
        if subspace_of_pluecker(point) != u:
            roundtrip_failures += 1
    if roundtrip_failures or relation_failures:
        raise FormulaViolationError(
            f"wedge-coordinate suite on G({args.k},{args.n}) over GF({args.q})",
            "0 failures",
            f"{relation_failures} relation failures, {roundtrip_failures} round-trip failures",
        )
    return _json_doc(
        args,
        {
            "total": total,
            "roundtrip_failures": roundtrip_failures,
            "relation_failures": relation_failures,
        },
    )


def _cmd_verify_dims(args):
    reports = []
    for field_name, field in (("Q", QQ), ("GF(%d)" % args.q, GF(args.q))):
        rng = random.Random(f"verify-dims:{field_name}:{args.seed}")
        dims = []
        for _ in range(args.samples):
            if args.s is None:
                u = random_subspace(field, args.n, args.k, rng)
                dims.append(vanishing_space_dim([u], args.n, args.t))
            else:
                u, v = random_subspace_pair(field, args.n, args.k, args.s, rng)
                dims.append(vanishing_space_dim([u, v], args.n, args.t))
        reports.append({"field": field_name, "samples": args.samples, "dims": sorted(set(dims))})
    return _json_doc(args, {"mode": "pair" if args.s is not None else "single", "reports": reports})


def _cmd_count_incidence(args):
    rep = incidence_degree_report(args.n, args.k, args.t, args.q_list, budget=args.budget)
    header = ["n", "k", "t", "q", "count", "predicted_dim", "fitted_degree"]
    rows = [
        [r.n, r.k, r.t, r.q, r.count, r.predicted_dim, rep["fitted_degree"]]
        for r in rep["rows"]
    ]
    return _csv_doc(args, header, rows)


def _cmd_schubert(args):
    if len(args.flag_dims) != args.k:
        raise ValueError("--flag-dims must list exactly k dimensions")
    base_q = args.q_list[0] if args.q_list else 2
    flag = coordinate_flag(GF(base_q), args.n, args.flag_dims)
    rep = schubert_degree_report(flag, q_list=args.q_list, budget=args.budget)
    if rep["counted_degree"] != rep["formula_dim"]:
        raise FormulaViolationError(
            f"schubert dimension, dims={args.flag_dims} in G({args.k},{args.n})",
            rep["formula_dim"],
            rep["counted_degree"],
        )
    result = dict(rep)
    result["counts"] = {str(q): c for q, c in rep["counts"].items()}
    return _json_doc(args, result)


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    p = _Parser(prog="isotropica", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=True, seed=True, fmt=None):
        sp.add_argument("--output", help="write here (atomic); default stdout")
        if budget:
            sp.add_argument("--budget", type=int, default=None, help="enumeration budget override")
        if seed:
            sp.add_argument("--seed", type=int, default=0)
        if fmt:
            sp.add_argument("--format", choices=["json", "csv"], default=fmt)

    sp = sub.add_parser("bound-table", help="exact bound values with their envelopes, one row per s")
    sp.add_argument("--s-max", type=int, required=True)
    common(sp, budget=False, fmt="csv")
    sp.set_defaults(handler=_cmd_bound_table)

    sp = sub.add_parser("heisenberg", help="Heisenberg algebra plus certified maximal-abelian report")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    common(sp)
    sp.set_defaults(handler=_cmd_heisenberg)

    sp = sub.add_parser("max-abelian", help="maximal-abelian report for an algebra JSON file")
    sp.add_argument("--algebra", required=True)
    common(sp)
    sp.set_defaults(handler=_cmd_max_abelian)

    sp = sub.add_parser("find-isotropic", help="search a forms JSON file for a k-dim isotropic subspace")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--method", choices=["greedy", "exhaustive", "random"], default="greedy")
    sp.add_argument("--trials", type=int, default=32)
    common(sp)
    sp.set_defaults(handler=_cmd_find_isotropic)

    sp = sub.add_parser("hunt-lower", help="hunt a tuple with no k-dim isotropic subspace at the lower-bound parameters for s")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    common(sp)
    sp.set_defaults(handler=_cmd_hunt_lower)

    sp = sub.add_parser("verify-pluecker", help="round-trip and quadratic relations over all of G(k,n)(GF(q))")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    common(sp)
    sp.set_defaults(handler=_cmd_verify_pluecker)

    sp = sub.add_parser("verify-dims", help="vanishing-space dimension identities on random subspaces over Q and GF(q)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--s", type=int, default=None, help="two-subspace mode with this intersection dimension")
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--samples", type=int, default=20)
    common(sp, budget=False)
    sp.set_defaults(handler=_cmd_verify_dims)

    sp = sub.add_parser("count-incidence", help="incidence counts and fitted degree against the predicted dimension")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--q-list", type=_q_list, default=[2, 3, 5])
    common(sp)
    sp.set_defaults(handler=_cmd_count_incidence)

    sp = sub.add_parser("schubert", help="flag-condition point-count degree against the dimension formula")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--flag-dims", type=_int_list, required=True)
    sp.add_argument("--q-list", type=_q_list, default=[2, 3])
    common(sp)
    sp.set_defaults(handler=_cmd_schubert)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except BudgetExceededError as e:
        print(f"budget refusal: {e}", file=sys.stderr)
        return 3
    except FormulaViolationError as e:
        print(
            f"FORMULA MISMATCH in {e.context}: expected {e.expected}, actual {e.actual}",
            file=sys.stderr,
        )
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    _emit(args.output, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
