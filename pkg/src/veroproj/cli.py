"""Command-line front end.

Every subcommand takes a family spec (or a group spec for surveys),
computes with exact integers only, and prints either a human-readable
text block or, with --json, a single JSON document.  Exit codes: 0 when
every expectation held, 1 when a scenario reported a mismatch, 2 on
usage or spec-parse errors, 3 when a resource guard tripped.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import GuardExceeded, SpecParseError
from .families import FamilySpec, koszul_label, parse_family, run_scenario, scenario_names
from .fibers import (
    DEFAULT_GUARD,
    h_polynomial,
    hilbert_values,
    is_2_normal,
    minimal_generator_table,
)
from .groebner import (
    buchberger,
    lift_omega,
    lift_order,
    parse_order,
    search_quadratic_order,
    toric_generators,
)
from .groups import block_group, h_vector_group, invariants_of_degree, parse_group
from .monomials import MonomialSet
from .survey import (
    SurveyOptions,
    conjecture1_check,
    conjecture2_check,
    survey_groups,
)

__all__ = ["main"]


def _omega_text(omega: MonomialSet, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{omega.n} {omega.d}")
    lines.extend(" ".join(str(e) for e in m) for m in omega)
    return "\n".join(lines) + "\n"


def _build(args) -> tuple[FamilySpec, MonomialSet]:
    spec = parse_family(args.family)
    return spec, spec.build(args.guard)


def _emit(args, text: str, payload: dict) -> None:
    out = json.dumps(payload, indent=2, sort_keys=False) + "\n" if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _cmd_omega(args) -> int:
    spec, omega = _build(args)
    payload = {
        "family": spec.spec_string(),
        "n": omega.n,
        "d": omega.d,
        "size": len(omega),
        "members": [list(m) for m in omega],
    }
    _emit(args, _omega_text(omega, comment=spec.spec_string()), payload)
    return 0


def _cmd_mingens(args) -> int:
    spec, omega = _build(args)
    table = minimal_generator_table(omega, k_max=args.max_degree, guard=args.guard)
    answer = table.quadraticity()
    payload = {"family": spec.spec_string(), **table.to_json_dict()}
    payload["quadratic"] = {
        "status": answer.status,
        "witness_degree": answer.witness_degree,
        "verified_up_to": answer.verified_up_to,
    }
    lines = [f"family {spec.spec_string()}"]
    lines.extend(
        f"degree {k}: {c} minimal generators" for k, c in sorted(table.degrees.items())
    )
    if not table.degrees:
        lines.append("no minimal generators up to the bound")
    lines.append(f"completeness: {table.bound} bound, verified up to degree {table.verified_up_to}")
    lines.append(f"quadratic: {answer.status}")
    _emit(args, "\n".join(lines) + "\n", payload)
    return 0


def _cmd_hilbert(args) -> int:
    spec, omega = _build(args)
    k_max = args.max_degree if args.max_degree is not None else 3
    values = hilbert_values(omega, k_max, guard=args.guard)
    payload = {"family": spec.spec_string(), "values": {str(k): v for k, v in enumerate(values)}}
    lines = [f"HF({k}) = {v}" for k, v in enumerate(values)]
    _emit(args, "\n".join(lines) + "\n", payload)
    return 0


def _cmd_normal2(args) -> int:
    spec, omega = _build(args)
    ok, witness = is_2_normal(omega, guard=args.guard)
    payload = {
        "family": spec.spec_string(),
        "two_normal": ok,
        "witness": None if witness is None else list(witness),
    }
    text = "2-normal\n" if ok else f"not 2-normal: {witness} has no two-factor product\n"
    _emit(args, text, payload)
    return 0


def _cmd_hvec(args) -> int:
    spec, omega = _build(args)
    if spec.kind == "group" and spec.t == 1:
        hv = h_vector_group(spec.group, guard=args.guard)
        payload = {
            "family": spec.spec_string(),
            "route": "group-slice",
            "h": list(hv.h),
            "regularity": hv.regularity,
        }
        text = f"h-vector {tuple(hv.h)} (regularity {hv.regularity})\n"
    else:
        h = h_polynomial(omega, k_max=args.max_degree, guard=args.guard)
        payload = {"family": spec.spec_string(), "route": "series", "h": list(h)}
        text = f"h-vector {tuple(h)}\n"
    _emit(args, text, payload)
    return 0


def _cmd_gb(args) -> int:
    spec, omega = _build(args)
    gens = toric_generators(omega, k_max=args.max_degree, guard=args.guard)
    order = parse_order(args.order, omega)
    gb = buchberger(gens, order)
    payload = {"family": spec.spec_string(), **gb.to_json_dict(), "size": len(gb.elements)}
    text = (
        f"order {order.spec_string()}\n"
        f"reduced basis: {len(gb.elements)} binomials, max degree {gb.max_degree}"
        f"{' (quadratic)' if gb.is_quadratic else ''}\n"
    )
    _emit(args, text, payload)
    return 0


def _cmd_gb_search(args) -> int:
    spec, omega = _build(args)
    result = search_quadratic_order(
        omega, budget=args.budget, seed=args.seed, k_max=args.max_degree, guard=args.guard
    )
    payload = {
        "family": spec.spec_string(),
        "status": result.status,
        "order": result.order.spec_string() if result.order is not None else None,
        "tried": result.tried,
        "budget": result.budget,
        "seed": result.seed,
        "impossible": result.impossible,
        "warning": result.warning,
    }
    if result.found:
        text = f"found: {result.order.spec_string()} (candidate {result.tried} of {result.budget})\n"
    elif result.impossible:
        text = f"impossible: {result.warning}\n"
    else:
        text = f"not found within budget {result.budget} (seed {result.seed}, tried {result.tried})\n"
    if result.warning and result.found:
        text += f"note: {result.warning}\n"
    _emit(args, text, payload)
    return 0


def _cmd_lift(args) -> int:
    spec, omega = _build(args)
    try:
        sizes = tuple(int(s) for s in args.sizes.split(","))
    except ValueError:
        raise SpecParseError("sizes", args.sizes, args.sizes, "sizes are comma-separated integers")
    lifted = lift_omega(omega, sizes, guard=args.guard)
    payload: dict = {
        "family": spec.spec_string(),
        "sizes": list(sizes),
        "n": lifted.n,
        "d": lifted.d,
        "size": len(lifted),
        "members": [list(m) for m in lifted],
    }
    comment = f"lift of {spec.spec_string()} with sizes {','.join(str(s) for s in sizes)}"
    text = _omega_text(lifted, comment=comment)
    if args.order is not None:
        if spec.kind != "group":
            raise SpecParseError(
                "family", args.family, args.family,
                "running a lifted Groebner basis needs a group family "
                "(the lifted generators are certified through the block group)",
            )
        base_order = parse_order(args.order, omega)
        lifted_order = lift_order(base_order, omega, lifted, sizes)
        block = invariants_of_degree(block_group(spec.group, sizes), spec.t, guard=args.guard)
        gens = toric_generators(block, guard=args.guard)
        gb = buchberger(gens, lifted_order)
        payload["order"] = lifted_order.spec_string()
        payload["max_degree"] = gb.max_degree
        payload["basis_size"] = len(gb.elements)
        text += (
            f"# order {lifted_order.spec_string()}: "
            f"{len(gb.elements)} binomials, max degree {gb.max_degree}\n"
        )
    _emit(args, text, payload)
    return 0


def _cmd_scenario(args) -> int:
    report = run_scenario(args.name, seed=args.seed, budget=args.budget, guard=args.guard)
    lines = [f"scenario {report['name']}"]
    for step in report["steps"]:
        mark = "ok  " if step["match"] else "FAIL"
        lines.append(f"  {mark} {step['op']} {json.dumps(step['inputs'], sort_keys=True)}")
        if not step["match"]:
            lines.append(f"       expected {json.dumps(step['expected'], sort_keys=True)}")
            lines.append(f"       actual   {json.dumps(step['actual'], sort_keys=True)}")
    lines.append(f"overall: {report['overall']}")
    _emit(args, "\n".join(lines) + "\n", report)
    return 0 if report["overall"] == "pass" else 1


def _cmd_survey(args) -> int:
    if args.conjecture1:
        report = conjecture1_check(parse_group(args.conjecture1), guard=args.guard)
        lines = [f"group {report['group']}: {report['status']}"]
        for t in report["triples"]:
            lines.append(
                f"  triple {tuple(t['vars'])} -> quadratic {t['quadratic']}"
                f" (gcd product {t['gcd_product']})"
            )
        lines.append(
            f"  parent quadratic: {report['parent']['quadratic']}"
            f" (degrees {report['parent']['generator_degrees']})"
        )
        _emit(args, "\n".join(lines) + "\n", report)
        return 0
    if args.conjecture2:
        report = conjecture2_check(
            parse_group(args.conjecture2), budget=args.budget, seed=args.seed, guard=args.guard
        )
        search = report["gq_search"]
        text = (
            f"group {report['group']}: quadratic {report['quadratic']['value']}, "
            f"search {search['status']}"
            + (f" ({search['order']})" if search.get("order") else "")
            + "\n"
        )
        _emit(args, text, report)
        return 0
    if args.d_max is None:
        raise SpecParseError("survey", "survey", "--d-max", "a survey needs --d-max (or a conjecture flag)")
    d_values = range(args.d_min, args.d_max + 1)
    options = SurveyOptions(
        seed=args.seed,
        budget=args.budget,
        guard=args.guard,
        search=not args.no_search,
        workers=args.workers,
        jsonl_path=args.jsonl,
        csv_path=args.csv,
    )
    rows = survey_groups(args.n, d_values, options)
    payload = {"rows": [row.to_json_dict() for row in rows]}
    lines = []
    for row in rows:
        search = row.gq_search
        lines.append(
            f"{row.spec}: quadratic {row.quadratic.value}, koszul {row.koszul.value}, "
            f"search {search['status']}"
            + (f" ({search['order']})" if search.get("order") else "")
            + (f", guard: {row.guard_error}" if row.guard_error else "")
        )
    _emit(args, "\n".join(lines) + "\n", payload)
    return 0


def _cmd_label(args) -> int:
    spec = parse_family(args.family)
    verdict = koszul_label(spec, guard=args.guard)
    payload = {"family": spec.spec_string(), **verdict.to_json_dict()}
    if verdict.status == "unknown":
        text = f"{spec.spec_string()}: no applicable rule\n"
    else:
        text = (
            f"{spec.spec_string()}: {verdict.property} ({verdict.status}"
            + (f", {verdict.citation}" if verdict.citation else "")
            + ")\n"
        )
    _emit(args, text, payload)
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized search stages")
    common.add_argument("--budget", type=int, default=200, help="candidate budget for order searches")
    common.add_argument(
        "--max-degree", type=int, default=None, metavar="K",
        help="explicit degree horizon (user completeness bound / series cutoff)",
    )
    common.add_argument(
        "--guard", type=int, default=DEFAULT_GUARD, metavar="N",
        help="abort any enumeration larger than this many objects",
    )
    common.add_argument("--out", metavar="PATH", default=None, help="write output to a file")

    parser = argparse.ArgumentParser(
        prog="veroproj",
        description="Toric ideals of monomial projections of Veronese varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("omega", _cmd_omega, "build a family and emit its monomial set")
    p.add_argument("family", help="family spec, e.g. 'pinched(3,5,2)' or 'group(C(4;0,1,2,3))'")

    p = add("mingens", _cmd_mingens, "minimal generator table of the toric ideal")
    p.add_argument("family")

    p = add("hilbert", _cmd_hilbert, "Hilbert function values HF(0..K)")
    p.add_argument("family")

    p = add("normal2", _cmd_normal2, "2-normality check with witness")
    p.add_argument("family")

    p = add("hvec", _cmd_hvec, "h-vector (group slice count or series route)")
    p.add_argument("family")

    p = add("gb", _cmd_gb, "reduced Groebner basis under a given order")
    p.add_argument("family")
    p.add_argument("--order", default="degrevlex", help="order spec, e.g. 'rc(6,2,3)' or 'lex : w2 > w0 > w1'")

    p = add("gb-search", _cmd_gb_search, "search for a quadratic Groebner basis")
    p.add_argument("family")

    p = add("lift", _cmd_lift, "lift a family through a variable split")
    p.add_argument("family")
    p.add_argument("--sizes", required=True, help="comma-separated block sizes, e.g. 2,1,1")
    p.add_argument("--order", default=None, help="base order to lift; runs the lifted basis for group families")

    p = add("label", _cmd_label, "theorem-backed Koszul/quadraticity label for a family")
    p.add_argument("family")

    p = add("scenario", _cmd_scenario, "run a named reproduction scenario")
    p.add_argument("name", help="scenario name; see error listing for choices")

    p = add("survey", _cmd_survey, "survey canonical cyclic groups, or scan one conjecture")
    p.add_argument("--n", type=int, default=2, help="number of variables minus one (default 2)")
    p.add_argument("--d-min", type=int, default=2, help="smallest group order (default 2)")
    p.add_argument("--d-max", type=int, default=None, help="largest group order")
    p.add_argument("--no-search", action="store_true", help="skip the quadratic-order search phase")
    p.add_argument("--workers", type=int, default=4, help="worker pool size")
    p.add_argument("--jsonl", default=None, metavar="PATH", help="append-only row store (enables resuming)")
    p.add_argument("--csv", default=None, metavar="PATH", help="write a CSV digest of the row store")
    p.add_argument("--conjecture1", default=None, metavar="GROUP", help="triple-restriction check for one cyclic group")
    p.add_argument("--conjecture2", default=None, metavar="GROUP", help="quadraticity vs order-search check for one group")

    return parser


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GuardExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
