"""Batch surveys over cyclic group parameters and conjecture scanners.

A survey row records, for one diagonal group, the computed generator
table, the quadraticity and Koszulness verdicts with their provenance,
and the outcome of a quadratic-order search.  Rows are persisted as
append-only line-delimited JSON keyed by the group spec, so an
interrupted survey resumes without recomputing, and a CSV digest is
regenerated after every run.  The two conjecture checkers compare
independently computed routes and flag mismatches as counterexample
candidates with full witness data, never as bare refutations.
"""
from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path

from .errors import GuardExceeded
from .families import FamilySpec, koszul_label
from .fibers import DEFAULT_GUARD, minimal_generator_table
from .groebner import search_quadratic_order
from .groups import (
    DiagonalGroup,
    cyclic_group,
    invariants_of_degree,
    surface_quadraticity,
    triple_projections,
)

__all__ = [
    "SurveyOptions",
    "SurveyRow",
    "TriState",
    "build_survey_row",
    "canonical_surface_weights",
    "canonical_weight_vectors",
    "canonicalize_weights",
    "conjecture1_check",
    "conjecture2_check",
    "survey_groups",
]


# ---------------------------------------------------------------------------
# weight canonicalization


def canonical_weight_vectors(n: int, d: int) -> list[tuple[int, ...]]:
    """All canonical cyclic weight vectors for order d on n+1 variables.

    Canonical means: the lexicographically least among the sorted shifts
    of the vector (shifting every weight by a constant fixes all the
    invariant slices, sorting permutes variables), nontrivial, and with
    gcd(d, weights) = 1 so the presented order is the effective one.
    Exactly one vector per equivalence class survives, which is what
    keeps survey rows unique and resumable.
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], lo: int) -> None:
        if len(prefix) == n + 1:
            if any(prefix) and not canonicalize_weights(d, prefix)["changed"]:
                out.append(prefix)
            return
        for w in range(lo, d):
            rec(prefix + (w,), w)

    rec((0,), 0)
    return out


def canonical_surface_weights(d: int) -> list[tuple[int, int]]:
    """Canonical (a1, a2) pairs for cyclic surface groups of order d."""
    return [(v[1], v[2]) for v in canonical_weight_vectors(2, d)]


def canonicalize_weights(d: int, weights: tuple[int, ...]) -> dict:
    """Audit record mapping a raw cyclic presentation to canonical form.

    Shifting every weight by a constant and permuting variables leave
    the invariant slices untouched, so the canonical form is the
    lexicographically least sorted shift; a common divisor with d is
    then divided out because the presented order exceeds the effective
    one (the reduced group is the same subgroup).
    """
    weights = tuple(w % d for w in weights)
    best = None
    for c in set(weights):
        shifted = tuple(sorted((w - c) % d for w in weights))
        if best is None or shifted < best:
            best = shifted
    g = d
    for w in best:
        g = math.gcd(g, w)
    reduced_d = d // g
    reduced = tuple(w // g for w in best)
    spec = f"C({reduced_d};{','.join(str(w) for w in reduced)})"
    return {
        "raw": {"d": d, "weights": list(weights)},
        "shifted_sorted": list(best),
        "gcd": g,
        "canonical": {"d": reduced_d, "weights": list(reduced)},
        "spec": spec,
        "changed": g > 1 or best != weights,
    }


def canonical_group(group: DiagonalGroup) -> tuple[DiagonalGroup, dict | None]:
    """The canonical presentation of a cyclic group, plus the audit record.

    Noncyclic presentations pass through unchanged (no canonicalization
    is defined for them); a cyclic one already in canonical form returns
    a None record.
    """
    if not group.is_cyclic_presentation:
        return group, None
    f = group.factors[0]
    record = canonicalize_weights(f.order, f.weights)
    if not record["changed"]:
        return group, None
    canon = record["canonical"]
    return cyclic_group(canon["d"], tuple(canon["weights"])), record


# ---------------------------------------------------------------------------
# rows


@dataclass(frozen=True)
class TriState:
    """A yes/no/unknown answer plus where it came from."""

    value: str
    provenance: str

    def __post_init__(self) -> None:
        if self.value not in ("yes", "no", "unknown"):
            raise ValueError(f"tri-state value must be yes/no/unknown, got {self.value!r}")

    def to_json_dict(self) -> dict:
        return {"value": self.value, "provenance": self.provenance}


SEARCH_STATUSES = ("found", "not-found-within", "not-attempted", "impossible-non-quadratic")


@dataclass
class SurveyRow:
    """One group's worth of survey evidence."""

    spec: str
    n: int
    d: int
    quadratic: TriState
    koszul: TriState
    gq_search: dict
    generator_degrees: dict[int, int]
    timings_ms: dict[str, int] = field(default_factory=dict)
    canonicalization: dict | None = None
    guard_error: str | None = None

    def __post_init__(self) -> None:
        status = self.gq_search.get("status")
        if status not in SEARCH_STATUSES:
            raise ValueError(f"unknown search status {status!r}")
        if self.quadratic.value == "no" and status != "impossible-non-quadratic":
            raise ValueError(
                "a non-quadratic row must mark its search impossible, got "
                f"{status!r} for {self.spec}"
            )

    def to_json_dict(self) -> dict:
        out = {
            "spec": self.spec,
            "n": self.n,
            "d": self.d,
            "quadratic": self.quadratic.to_json_dict(),
            "koszul": self.koszul.to_json_dict(),
            "gq_search": self.gq_search,
            "generator_degrees": {str(k): v for k, v in sorted(self.generator_degrees.items())},
            "timings_ms": self.timings_ms,
        }
        if self.canonicalization is not None:
            out["canonicalization"] = self.canonicalization
        if self.guard_error is not None:
            out["guard_error"] = self.guard_error
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "SurveyRow":
        return cls(
            spec=data["spec"],
            n=data["n"],
            d=data["d"],
            quadratic=TriState(**data["quadratic"]),
            koszul=TriState(**data["koszul"]),
            gq_search=data["gq_search"],
            generator_degrees={int(k): v for k, v in data["generator_degrees"].items()},
            timings_ms=data.get("timings_ms", {}),
            canonicalization=data.get("canonicalization"),
            guard_error=data.get("guard_error"),
        )


def _koszul_tristate(group: DiagonalGroup, t: int, guard: int) -> TriState:
    verdict = koszul_label(FamilySpec("group", group=group, t=t), guard=guard)
    if verdict.status == "unknown":
        return TriState("unknown", "no-rule")
    cite = f"theorem:{verdict.citation}"
    if verdict.property in ("GQuadratic", "Koszul"):
        return TriState("yes", cite)
    if verdict.property == "NotKoszul":
        return TriState("no", cite)
    if verdict.property == "NotQuadratic":
        return TriState("no", f"{cite} (not even quadratic)")
    # Quadratic alone does not settle Koszulness
    return TriState("unknown", f"{cite} gives quadraticity only")


def _ms() -> int:
    return time.perf_counter_ns() // 1_000_000


@dataclass(frozen=True)
class SurveyOptions:
    seed: int = 0
    budget: int = 200
    guard: int = DEFAULT_GUARD
    search: bool = True
    workers: int = 4
    jsonl_path: str | Path | None = None
    csv_path: str | Path | None = None


def build_survey_row(group: DiagonalGroup, options: SurveyOptions = SurveyOptions()) -> SurveyRow:
    """Compute one survey row (canonicalizing a cyclic presentation first)."""
    group, record = canonical_group(group)
    spec = group.spec_string()
    timings: dict[str, int] = {}
    koszul = _koszul_tristate(group, 1, options.guard)
    not_attempted = {
        "status": "not-attempted",
        "order": None,
        "tried": 0,
        "budget": options.budget,
        "seed": options.seed,
    }
    try:
        t0 = _ms()
        b1 = invariants_of_degree(group, 1, guard=options.guard)
        timings["invariants_ms"] = _ms() - t0
        t0 = _ms()
        table = minimal_generator_table(b1, bound="group", guard=options.guard)
        timings["table_ms"] = _ms() - t0
    except GuardExceeded as exc:
        return SurveyRow(
            spec=spec,
            n=group.n,
            d=group.order,
            quadratic=TriState("unknown", "guard"),
            koszul=koszul,
            gq_search=not_attempted,
            generator_degrees={},
            timings_ms=timings,
            canonicalization=record,
            guard_error=str(exc),
        )
    answer = table.quadraticity()
    quadratic = TriState(
        answer.status if answer.status in ("yes", "no") else "unknown",
        f"computation:fiber-components-up-to-{answer.verified_up_to}",
    )
    if quadratic.value == "no":
        search = {
            "status": "impossible-non-quadratic",
            "order": None,
            "tried": 0,
            "budget": options.budget,
            "seed": options.seed,
        }
    elif options.search:
        t0 = _ms()
        result = search_quadratic_order(
            b1, budget=options.budget, seed=options.seed, guard=options.guard, table=table
        )
        timings["search_ms"] = _ms() - t0
        search = {
            "status": result.status,
            "order": result.order.spec_string() if result.order is not None else None,
            "tried": result.tried,
            "budget": result.budget,
            "seed": result.seed,
        }
    else:
        search = dict(not_attempted)
    return SurveyRow(
        spec=spec,
        n=group.n,
        d=group.order,
        quadratic=quadratic,
        koszul=koszul,
        gq_search=search,
        generator_degrees=dict(table.degrees),
        timings_ms=timings,
        canonicalization=record,
    )


# ---------------------------------------------------------------------------
# conjecture scanners


def conjecture1_check(group: DiagonalGroup, guard: int = DEFAULT_GUARD) -> dict:
    """Quadraticity of a cyclic group versus all its triple restrictions.

    The conjecture under test: for n >= 3, the projection algebra is
    quadratic exactly when every restriction to three of the variables
    satisfies the surface criterion.  A mismatch between the two routes
    is reported as a counterexample candidate carrying both sides'
    witnesses; agreement is reported as consistent.
    """
    if not group.is_cyclic_presentation:
        raise ValueError("the triple-restriction conjecture concerns cyclic groups")
    if group.n < 3:
        raise ValueError(f"need at least 4 variables, got {group.n + 1}")
    b1 = invariants_of_degree(group, 1, guard=guard)
    table = minimal_generator_table(b1, bound="group", guard=guard)
    parent_quadratic = table.quadraticity().status == "yes"
    triples = []
    all_pass = True
    for vars_, restricted in triple_projections(group):
        crit = surface_quadraticity(restricted)
        all_pass = all_pass and crit.quadratic
        triples.append({
            "vars": list(vars_),
            "spec": restricted.spec_string(),
            "normal_form": [crit.d, list(crit.normal_form)],
            "gcd_product": crit.gcd_product,
            "degenerate": crit.degenerate,
            "quadratic": crit.quadratic,
        })
    consistent = parent_quadratic == all_pass
    out = {
        "group": group.spec_string(),
        "status": "consistent" if consistent else "counterexample-candidate",
        "parent": {
            "quadratic": parent_quadratic,
            "generator_degrees": dict(table.degrees),
            "verified_up_to": table.verified_up_to,
        },
        "triples": triples,
    }
    if not consistent:
        if parent_quadratic:
            failing = [t for t in triples if not t["quadratic"]]
            out["witness"] = {
                "side": "triples",
                "detail": "parent table is quadratic but these restrictions fail the criterion",
                "failing_triples": failing,
            }
        else:
            beyond = {k: c for k, c in table.degrees.items() if k > 2}
            out["witness"] = {
                "side": "parent",
                "detail": "all restrictions pass the criterion but the parent has higher generators",
                "generator_degrees_above_2": beyond,
            }
    return out


def conjecture2_check(
    group: DiagonalGroup,
    budget: int = 200,
    seed: int = 0,
    guard: int = DEFAULT_GUARD,
) -> dict:
    """Quadraticity versus quadratic-Groebner-basis search for one group.

    The "only if" direction is a theorem (basis degrees dominate minimal
    generator degrees), so non-quadratic groups are marked impossible
    without burning the budget.  For quadratic groups the search outcome
    is recorded with its budget and seed; a not-found is data about the
    search, never a negative certificate.
    """
    options = SurveyOptions(seed=seed, budget=budget, guard=guard, search=True)
    row = build_survey_row(group, options)
    return {
        "group": row.spec,
        "quadratic": row.quadratic.to_json_dict(),
        "generator_degrees": dict(row.generator_degrees),
        "gq_search": row.gq_search,
        "guard_error": row.guard_error,
    }


# ---------------------------------------------------------------------------
# batch surveys


def _row_sort_key(row: SurveyRow) -> tuple:
    return (row.n, row.d, row.spec)


def _load_jsonl(path: Path) -> dict[str, SurveyRow]:
    rows: dict[str, SurveyRow] = {}
    if not path.exists():
        return rows
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = SurveyRow.from_json_dict(json.loads(line))
            rows[row.spec] = row
    return rows


def _write_csv(path: Path, rows: list[SurveyRow]) -> None:
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "spec", "n", "d",
            "quadratic", "quadratic_provenance",
            "koszul", "koszul_provenance",
            "gq_status", "gq_order",
            "generator_degrees", "guard_error",
        ])
        for row in rows:
            degrees = ";".join(f"{k}:{v}" for k, v in sorted(row.generator_degrees.items()))
            writer.writerow([
                row.spec, row.n, row.d,
                row.quadratic.value, row.quadratic.provenance,
                row.koszul.value, row.koszul.provenance,
                row.gq_search.get("status"), row.gq_search.get("order") or "",
                degrees, row.guard_error or "",
            ])


def survey_groups(
    n: int,
    d_values,
    options: SurveyOptions = SurveyOptions(),
) -> list[SurveyRow]:
    """Survey every canonical cyclic group of the given orders.

    Work items are independent rows run on a bounded thread pool; the
    returned list is sorted canonically regardless of scheduling.  With
    a jsonl_path, rows already present in the file are reused (resuming
    is keyed by group spec) and new rows are appended as they finish; a
    csv_path gets a digest of every row in the store, rewritten at the
    end of each run.
    """
    specs: dict[str, DiagonalGroup] = {}
    for d in d_values:
        for weights in canonical_weight_vectors(n, d):
            g = cyclic_group(d, weights)
            specs[g.spec_string()] = g

    jsonl_path = Path(options.jsonl_path) if options.jsonl_path is not None else None
    existing = _load_jsonl(jsonl_path) if jsonl_path is not None else {}
    rows: dict[str, SurveyRow] = {
        spec: row for spec, row in existing.items() if spec in specs
    }

    todo = [g for spec, g in specs.items() if spec not in rows]
    if todo:
        workers = max(1, min(options.workers, len(todo)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(build_survey_row, g, options): g for g in todo}
            for future in as_completed(futures):
                row = future.result()
                rows[row.spec] = row
                if jsonl_path is not None:
                    with jsonl_path.open("a", encoding="utf-8") as fh:
                        fh.write(json.dumps(row.to_json_dict(), sort_keys=True) + "\n")
                    existing[row.spec] = row

    if options.csv_path is not None:
        digest_rows = sorted(
            (existing | rows).values() if jsonl_path is not None else rows.values(),
            key=_row_sort_key,
        )
        _write_csv(Path(options.csv_path), digest_rows)

    return sorted(rows.values(), key=_row_sort_key)
