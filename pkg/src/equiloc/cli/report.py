"""Running a problem's queries and rendering the report."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from ..eqcoh import (
    EquivariantPointRing,
    ProjectiveModelRing,
    bott_pushforward,
    concentration_check,
    euler_class,
    fixed_components,
    in_EC,
    interpolation_sum,
    presentation_pushforward,
)
from ..errors import EquilocError, InputError, ResourceError
from ..fixedloc import (
    admissible_fields,
    coaction_fixed_ideal,
    concentration_section,
    fixed_locus_ideal,
    fixed_points_oracle,
    vanishing_set,
    zero_locus,
)
from ..lattice import Representation, SubgroupPresentation
from ..polyalg import groebner_budget
from ..smith import SteenrodModule, smith_fixed_cohomology
from .problem import ProblemFile, Query

SCHEMA = "equiloc-report/1"
DEFAULT_WINDOW = ((0, 4), (0, 2))


@dataclass
class Options:
    groebner_budget: int | None = None
    truncation: int | None = None
    window: tuple | None = None
    seed: int = 0


def exit_code(err: BaseException) -> int:
    if isinstance(err, InputError):
        return 1
    if isinstance(err, ResourceError):
        return 2
    return 3


def _oracle(name, passed, **detail):
    out = {"name": name, "passed": bool(passed)}
    out.update(detail)
    return out


def _fixedlocus(problem: ProblemFile, q: Query, opts: Options):
    X = problem.scheme()
    C = problem.subgroup_presentation()
    I = fixed_locus_ideal(X, C)
    gb = I.groebner_basis()
    result = {
        "empty": I.is_unit(),
        "generators": [str(f) for f in gb],
    }
    oracles = []
    degree = q.get("degree", 2)
    J = coaction_fixed_ideal(X, C, max_degree=degree)
    oracles.append(_oracle("coaction-window", J.equals(I), degree=degree))
    fields = list(q.get("fields", ())) or admissible_fields(X, C)
    for f in fields:
        expected = fixed_points_oracle(X, C, f)
        got = vanishing_set(I, f)
        oracles.append(_oracle("finite-field", expected == got, q=f, points=len(got)))
    if I.is_unit():
        text = ["empty fixed locus (unit ideal)"]
    else:
        text = ["fixed locus ideal: <" + ", ".join(result["generators"]) + ">"]
    return result, oracles, text


def _section(problem: ProblemFile, q: Query, opts: Options):
    X = problem.scheme()
    C = problem.subgroup_presentation()
    V, s = concentration_section(X, C, minimize=q.get("minimize", False))
    target = fixed_locus_ideal(X, C)
    cuts = zero_locus(s).equals(target)
    moved = all(not C.apply(chi).is_zero() for chi in V)
    invariant = s.is_invariant()
    result = {
        "V": [str(chi) for chi in V],
        "s": [str(f) for f in s.components],
        "verified": cuts and moved and invariant,
    }
    oracles = [
        _oracle("zero-locus-equals-fixed-locus", cuts),
        _oracle("V-has-no-C-fixed-part", moved),
        _oracle("section-is-invariant", invariant),
    ]
    text = [
        "V = {" + ", ".join(result["V"]) + "}",
        "s = (" + ", ".join(result["s"]) + ")",
        f"verified: {str(result['verified']).lower()}",
    ]
    return result, oracles, text


def _point_ring(problem: ProblemFile) -> EquivariantPointRing:
    field = None if problem.torsion else problem.field
    return EquivariantPointRing(problem.lattice, field=field)


def _euler(problem: ProblemFile, q: Query, opts: Options):
    R = _point_ring(problem)
    chars = problem.characters(q.get("characters"))
    e = euler_class(Representation(problem.lattice, tuple(chars)), R)
    C = problem.subgroup_presentation()
    member = in_EC([R.euler(chi) for chi in chars], C)
    result = {"class": str(e), "in_E_C": member.ok}
    text = [f"e(V) = {e}", f"in E_C: {str(member.ok).lower()}"]
    return result, [], text


def _model(problem: ProblemFile, q: Query) -> ProjectiveModelRing:
    R = _point_ring(problem)
    return ProjectiveModelRing(R, problem.characters(q.get("weights")))


def _bott(problem: ProblemFile, q: Query, opts: Options):
    P = _model(problem, q)
    C = problem.subgroup_presentation()
    k = q.get("power", P.n - 1)
    if k < 0:
        raise InputError("power must be non-negative")
    x = P.zeta(k)
    bott = bott_pushforward(x, C)
    pres = presentation_pushforward(x)
    total = interpolation_sum(P, C)
    result = {"power": k, "bott": str(bott.simplify()), "presentation": str(pres)}
    oracles = [
        _oracle("bott-equals-presentation", bott == pres),
        _oracle("interpolation-sum-is-one", total == 1),
    ]
    text = [f"pushforward of z^{k}: {result['bott']}", f"presentation: {result['presentation']}"]
    return result, oracles, text


def _concentration(problem: ProblemFile, q: Query, opts: Options):
    P = _model(problem, q)
    C = problem.subgroup_presentation()
    rep = concentration_check(P, C)
    F = P.base.field
    result = {
        "determinant": str(rep.determinant),
        "factors": [str(chi) for chi in rep.factors],
        "unit": F.format(rep.unit) if hasattr(F, "format") else str(rep.unit),
        "components": len(rep.components),
        "ok": rep.ok,
    }
    oracles = [_oracle("determinant-is-unit-times-E_C", rep.ok)]
    text = [
        f"determinant: {result['determinant']}",
        "factors: " + (" ".join(f"e({c})" for c in result["factors"]) or "none"),
        f"unit: {result['unit']}",
    ]
    return result, oracles, text


def _smith(problem: ProblemFile, q: Query, opts: Options):
    R = _point_ring(problem)
    weights = q.get("weights")
    if weights:
        module = SteenrodModule(ProjectiveModelRing(R, problem.characters(weights)))
    else:
        module = SteenrodModule(R)
    window = q.get("window") or opts.window or DEFAULT_WINDOW
    (a0, a1), (b0, b1) = window
    fc = smith_fixed_cohomology(module, window, depth=q.get("depth", 1), truncation=opts.truncation)
    ranks = {f"{a},{b}": r for (a, b), r in sorted(fc.ranks.items()) if r}
    result = {
        "window": [list(window[0]), list(window[1])],
        "ranks": ranks,
        "total_rank": fc.total_rank,
    }
    oracles = []
    if module.model is not None:
        comps = fixed_components(module.model, SubgroupPresentation.whole(problem.lattice))
        # a fixed P^(m-1) contributes one class in each bidegree (2k, k), k < m
        expected = sum(
            1 for c in comps for k in range(len(c.members)) if a0 <= 2 * k <= a1 and b0 <= k <= b1
        )
        oracles.append(_oracle("rank-matches-fixed-components", fc.total_rank == expected, expected=expected))
    # spot-check the Cartan formula on random classes of the window
    rng = random.Random(opts.seed)
    N = opts.truncation or 6
    pool = [x for a in range(a0, a1 + 1) for b in range(b0, b1 + 1) for x in module.basis(a, b)]
    ok = True
    for _ in range(4 if pool else 0):
        x, y = rng.choice(pool), rng.choice(pool)
        ok &= module.total_power(x * y, N) == module.total_power(x, N) * module.total_power(y, N)
    oracles.append(_oracle("cartan-spot-check", ok, seed=opts.seed, truncation=N))
    text = ["ranks: " + (", ".join(f"({k}): {v}" for k, v in ranks.items()) or "none"), f"total rank: {fc.total_rank}"]
    return result, oracles, text


HANDLERS = {
    "fixedlocus": _fixedlocus,
    "section": _section,
    "euler": _euler,
    "bott": _bott,
    "concentration": _concentration,
    "smith": _smith,
}


def run(problem: ProblemFile, opts: Options | None = None) -> tuple[dict, int]:
    """Run every query in order; returns the report and the process exit code."""
    opts = opts or Options()
    sections = []
    code = 0
    for i, q in enumerate(problem.queries, 1):
        entry = {"index": i, "kind": q.kind, "line": q.line}
        try:
            if opts.groebner_budget is not None:
                with groebner_budget(opts.groebner_budget):
                    result, oracles, text = HANDLERS[q.kind](problem, q, opts)
            else:
                result, oracles, text = HANDLERS[q.kind](problem, q, opts)
            entry.update(status="ok", result=result, oracles=oracles, text=text)
            if not all(o["passed"] for o in oracles):
                entry["status"] = "oracle-mismatch"
                code = code or 3
        except EquilocError as err:
            c = exit_code(err)
            entry.update(status="error", error={"type": type(err).__name__, "message": str(err), "exit_code": c})
            code = code or c
        except Exception as err:  # a bug, reported rather than crashing the whole run
            entry.update(status="error", error={"type": type(err).__name__, "message": str(err), "exit_code": 3})
            code = code or 3
        sections.append(entry)
    report = {
        "schema": SCHEMA,
        "group": str(problem.lattice),
        "field": "QQ" if not problem.characteristic else f"GF({problem.characteristic})",
        "options": {
            "groebner_budget": opts.groebner_budget,
            "truncation": opts.truncation,
            "window": None if opts.window is None else [list(opts.window[0]), list(opts.window[1])],
            "seed": opts.seed,
        },
        "queries": sections,
    }
    return report, code


def render_json(report: dict) -> str:
    out = {k: v for k, v in report.items()}
    out["queries"] = [{k: v for k, v in q.items() if k != "text"} for q in report["queries"]]
    return json.dumps(out, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines = [f"group D({report['group']}) over {report['field']}"]
    for q in report["queries"]:
        lines.append(f"[{q['index']}] {q['kind']} (line {q['line']})")
        if q["status"] == "error":
            e = q["error"]
            lines.append(f"  error: {e['type']}: {e['message']}")
            continue
        lines.extend("  " + t for t in q["text"])
        for o in q["oracles"]:
            extra = ", ".join(f"{k}={v}" for k, v in o.items() if k not in ("name", "passed"))
            mark = "pass" if o["passed"] else "FAIL"
            lines.append(f"  check {o['name']}{' (' + extra + ')' if extra else ''}: {mark}")
    return "\n".join(lines) + "\n"
