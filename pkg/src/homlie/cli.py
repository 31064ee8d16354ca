"""Command-line interface: construct or load algebras, run analyses, emit
reports.

The JSON report is the source of truth and is byte-deterministic for a
fixed request and seed; the human-readable rendering is derived from it.
Timings are deliberately kept out of the payload and written to a sibling
``<out>.timings.json`` file.  Exit code 0 means every requested task
completed ("witness not found" is a completed task, not a failure).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Dict, List, Optional, Tuple

from . import __version__
from .bilinear import f_space, r_matrix_check
from .fields import Field
from .homspaces import centroid_basis, hom_lie_basis, is_hom_lie
from .jordan import (anticommutator_closure, element_facts,
                     harvest_idempotents, harvest_square_zero,
                     trace_form_radical, twisted_closure)
from .liealg import (LieAlgebra, abelian, current, direct_sum, heisenberg,
                     sl2, validate, witt_mod_p, zassenhaus)
from .matrix import Matrix
from .suits import diamond_search, heart_search

TASK_ORDER = ["validate", "homlie", "centroid", "jordan", "twisted",
              "suits", "fspace", "rmatrix"]


# ---------------------------------------------------------------------------
# algebra construction
# ---------------------------------------------------------------------------

class ExprError(ValueError):
    pass


def _tokenize(text: str) -> List[str]:
    out = []
    cur = ""
    for ch in text:
        if ch in "(),":
            if cur:
                out.append(cur)
                cur = ""
            out.append(ch)
        elif ch.isspace():
            if cur:
                out.append(cur)
                cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    return out


def _parse_expr(tokens: List[str], pos: int) -> Tuple[dict, int]:
    if pos >= len(tokens):
        raise ExprError("unexpected end of algebra expression")
    name = tokens[pos]
    if not name.replace("_", "").isalnum():
        raise ExprError(f"bad constructor name {name!r}")
    pos += 1
    args: List = []
    if pos < len(tokens) and tokens[pos] == "(":
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ExprError("unbalanced parentheses in algebra expression")
            if tokens[pos] == ")":
                pos += 1
                break
            node, pos = _parse_expr(tokens, pos)
            args.append(node)
            if pos < len(tokens) and tokens[pos] == ",":
                pos += 1
    return {"name": name, "args": args}, pos


def parse_algebra_expr(text: str) -> dict:
    tokens = _tokenize(text)
    node, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        raise ExprError(f"trailing tokens in algebra expression {text!r}")
    return node


def _as_int(node: dict, what: str) -> int:
    if node["args"]:
        raise ExprError(f"{what} must be an integer")
    try:
        return int(node["name"])
    except ValueError:
        raise ExprError(f"{what} must be an integer, got {node['name']!r}") from None


def build_algebra(node: dict, field: Optional[Field]) -> LieAlgebra:
    """Construct an algebra from a parsed expression; `field` supplies the
    scalars for field-generic constructors."""
    name, args = node["name"], node["args"]
    need = lambda k: ExprError(f"{name} expects {k} argument(s)")
    if name == "abelian":
        if len(args) != 1:
            raise need(1)
        return abelian(field or Field.rationals(), _as_int(args[0], "dimension"))
    if name == "sl2":
        if args:
            raise need(0)
        return sl2(field or Field.rationals())
    if name == "heisenberg":
        if args:
            raise need(0)
        return heisenberg(field or Field.rationals())
    if name == "witt_mod_p":
        if len(args) != 1:
            raise need(1)
        p = _as_int(args[0], "p")
        if field is not None and field != Field.prime(p):
            raise ExprError(f"witt_mod_p({p}) fixes the field GF({p})")
        return witt_mod_p(p)
    if name == "zassenhaus":
        if len(args) != 2:
            raise need(2)
        p = _as_int(args[0], "p")
        if field is not None and field != Field.prime(p):
            raise ExprError(f"zassenhaus fixes the field GF({p})")
        return zassenhaus(p, _as_int(args[1], "n"))
    if name == "current":
        if len(args) != 2:
            raise need(2)
        return current(build_algebra(args[0], field), _as_int(args[1], "order"))
    if name == "direct_sum":
        if len(args) != 2:
            raise need(2)
        return direct_sum(build_algebra(args[0], field), build_algebra(args[1], field))
    raise ExprError(f"unknown constructor {name!r}")


def _expr_with_params(name: str, params: Dict[str, str]) -> str:
    """Fold --params key=value pairs into an expression string."""
    if not params:
        return name
    if name == "abelian":
        return f"abelian({params['n']})"
    if name == "witt_mod_p":
        return f"witt_mod_p({params['p']})"
    if name == "zassenhaus":
        return f"zassenhaus({params['p']},{params['n']})"
    if name == "current":
        return f"current({params['base']},{params['m']})"
    if name == "direct_sum":
        return f"direct_sum({params['a']},{params['b']})"
    raise ExprError(f"constructor {name!r} takes no --params")


def resolve_algebra(request: dict) -> LieAlgebra:
    if request.get("input"):
        with open(request["input"], "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return LieAlgebra.from_json(doc)
    text = _expr_with_params(request["algebra"], request.get("params") or {})
    field = Field.parse(request["field"]) if request.get("field") else None
    return build_algebra(parse_algebra_expr(text), field)


# ---------------------------------------------------------------------------
# tasks
# ---------------------------------------------------------------------------

def _load_matrix(path: str, field: Field) -> Matrix:
    with open(path, "r", encoding="utf-8") as fh:
        return Matrix.from_json(field, json.load(fh))


def run_request(request: dict) -> Tuple[dict, dict]:
    """Execute the requested tasks in dependency order.

    Returns (report, timings).  Per-task failures are recorded in the report
    and do not stop later tasks; report["status"] is "ok" only when
    everything completed.
    """
    report = {"tool": {"name": "homlie", "version": __version__},
              "request": {k: request[k] for k in sorted(request) if request[k] is not None},
              "tasks": {}}
    timings: Dict[str, float] = {}
    seed = int(request.get("seed") or 0)
    budget = int(request.get("budget") or 48)
    tasks = [t for t in TASK_ORDER if t in request["tasks"]]
    unknown = set(request["tasks"]) - set(TASK_ORDER)
    if unknown:
        raise ExprError(f"unknown tasks: {sorted(unknown)}")

    alg = resolve_algebra(request)
    report["algebra"] = {"label": alg.label, "dim": alg.dim,
                         "field": alg.field.to_json()}
    failed = False
    space = None

    def homlie_space():
        nonlocal space
        if space is None:
            space = hom_lie_basis(alg)
        return space

    for task in tasks:
        t0 = time.perf_counter()
        try:
            if task == "validate":
                report["tasks"]["validate"] = validate(alg).to_json(alg.field)
            elif task == "homlie":
                s = homlie_space()
                report["tasks"]["homlie"] = s.to_json()
            elif task == "centroid":
                c = centroid_basis(alg)
                doc = c.to_json()
                s = homlie_space()
                doc["contained_in_homlie"] = all(s.contains(m) for m in c.basis)
                report["tasks"]["centroid"] = doc
            elif task == "jordan":
                s = homlie_space()
                rep = anticommutator_closure(alg, s)
                doc = rep.to_json(alg.field)
                idems = harvest_idempotents(alg, s, budget=budget, seed=seed)
                doc["idempotents"] = [
                    {"matrix": e.to_json(), "facts": facts.to_json(alg.field)}
                    for e, facts in idems]
                sq = harvest_square_zero(alg, s, budget=budget, seed=seed)
                doc["square_zero"] = [
                    {"matrix": m.to_json(),
                     "facts": element_facts(s, m).to_json(alg.field)} for m in sq]
                doc["trace_radical"] = trace_form_radical(s).to_json(alg.field)
                report["tasks"]["jordan"] = doc
            elif task == "twisted":
                if not request.get("alpha"):
                    raise ExprError("twisted requires --alpha <matrix.json>")
                alpha = _load_matrix(request["alpha"], alg.field)
                rep = twisted_closure(alg, homlie_space(), alpha,
                                      mode=request.get("mode") or "auto")
                report["tasks"]["twisted"] = rep.to_json(alg.field)
            elif task == "suits":
                dw = diamond_search(alg, budget=budget, seed=seed)
                hw = heart_search(alg, budget=budget, seed=seed)
                report["tasks"]["suits"] = {
                    "diamond": dw.to_json() if dw else None,
                    "heart": hw.to_json() if hw else None}
            elif task == "fspace":
                sym = request.get("symmetry") or "any"
                basis = f_space(alg, sym)
                report["tasks"]["fspace"] = {
                    "symmetry": sym, "dimension": len(basis),
                    "basis": [b.to_json() for b in basis]}
            elif task == "rmatrix":
                if not request.get("phi"):
                    raise ExprError("rmatrix requires --phi <matrix.json>")
                phi = _load_matrix(request["phi"], alg.field)
                doc = r_matrix_check(alg, phi).to_json()
                doc["phi_is_hom_lie"] = is_hom_lie(alg, phi)
                report["tasks"][task] = doc
        except (ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
            report["tasks"][task] = {"error": str(exc)}
            failed = True
        timings[task] = time.perf_counter() - t0

    report["status"] = "partial" if failed else "ok"
    return report, timings


def evidence_table(requests: List[dict]) -> dict:
    """One row per algebra: dimensions, closure verdict, witness outcomes.

    Row failures (caps, bad parameters) are isolated; other rows complete.
    """
    rows = []
    for req in requests:
        label = req.get("algebra") or req.get("input") or "?"
        try:
            alg = resolve_algebra(req)
            seed = int(req.get("seed") or 0)
            budget = int(req.get("budget") or 48)
            space = hom_lie_basis(alg)
            closed = anticommutator_closure(alg, space).closed
            dw = diamond_search(alg, budget=budget, seed=seed)
            hw = heart_search(alg, budget=budget, seed=seed)
            rows.append({"algebra": alg.label, "dim": alg.dim,
                         "homlie_dim": space.dim, "closed": closed,
                         "diamond": dw is not None, "heart": hw is not None})
        except (ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
            rows.append({"algebra": label, "error": f"skipped: {exc}"})
    return {"tool": {"name": "homlie", "version": __version__}, "rows": rows}


# ---------------------------------------------------------------------------
# rendering and entry point
# ---------------------------------------------------------------------------

def render_report(report: dict) -> str:
    lines = []
    alg = report.get("algebra", {})
    lines.append(f"algebra: {alg.get('label')}  (dim {alg.get('dim')})")
    for task, doc in report.get("tasks", {}).items():
        if "error" in doc:
            lines.append(f"  {task}: ERROR {doc['error']}")
            continue
        if task == "validate":
            lines.append(f"  validate: {'ok' if doc['ok'] else 'violation at ' + str(doc['triple'])}")
        elif task in ("homlie", "centroid"):
            extra = ""
            if task == "centroid":
                extra = f", contained in hom-lie span: {doc['contained_in_homlie']}"
            lines.append(f"  {task}: dimension {doc['dimension']}{extra}")
        elif task == "jordan":
            verdict = "closed" if doc["closed"] else f"not closed at pair {doc['witness_pair']}"
            lines.append(f"  jordan: {verdict}; idempotents {len(doc['idempotents'])}, "
                         f"square-zero {len(doc['square_zero'])}, "
                         f"trace radical dim {doc['trace_radical']['dimension']} "
                         f"({doc['trace_radical']['status']})")
        elif task == "twisted":
            lines.append(f"  twisted: closed={doc['closed']} mode={doc['mode']} "
                         f"alpha_is_hom_lie={doc['alpha_is_hom_lie']}")
        elif task == "suits":
            d = "found" if doc["diamond"] else "none"
            h = "found" if doc["heart"] else "none"
            lines.append(f"  suits: diamond {d}, heart {h}")
        elif task == "fspace":
            lines.append(f"  fspace[{doc['symmetry']}]: dimension {doc['dimension']}")
        elif task == "rmatrix":
            lines.append(f"  rmatrix: is_r_matrix={doc['is_r_matrix']} "
                         f"classical={doc['classical_ybe']} modified={doc['modified_cybe']}")
    lines.append(f"status: {report.get('status')}")
    return "\n".join(lines)


def render_table(doc: dict) -> str:
    header = f"{'algebra':34} {'dim':>4} {'homlie':>7} {'closed':>7} {'diamond':>8} {'heart':>6}"
    lines = [header, "-" * len(header)]
    for row in doc["rows"]:
        if "error" in row:
            lines.append(f"{row['algebra']:34} {row['error']}")
        else:
            lines.append(f"{row['algebra']:34} {row['dim']:>4} {row['homlie_dim']:>7} "
                         f"{str(row['closed']):>7} {str(row['diamond']):>8} {str(row['heart']):>6}")
    return "\n".join(lines)


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(doc: dict, out: Optional[str], timings: Optional[dict], human: str) -> None:
    payload = _dump(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        if timings is not None:
            with open(out + ".timings.json", "w", encoding="utf-8") as fh:
                fh.write(_dump({k: round(v, 6) for k, v in timings.items()}))
        print(human)
    else:
        sys.stdout.write(payload)
        print(human, file=sys.stderr)


def _parse_params(items: Optional[List[str]]) -> Dict[str, str]:
    params = {}
    for item in items or []:
        if "=" not in item:
            raise ExprError(f"--params entries look like key=value, got {item!r}")
        key, val = item.split("=", 1)
        params[key.strip()] = val.strip()
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homlie",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"homlie {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="constructor expression, e.g. sl2 or zassenhaus(5,2)")
    common.add_argument("--params", action="append", metavar="K=V",
                        help="constructor parameters (repeatable)")
    common.add_argument("--field", help="ground field: Q or GF:p (default Q)")
    common.add_argument("--input", help="algebra JSON file instead of a constructor")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized steps")
    common.add_argument("--budget", type=int, default=48, help="harvest candidate budget")
    common.add_argument("--out", help="write the JSON report here (timings to a sibling file)")
    sub = parser.add_subparsers(dest="command", required=True)
    for task in ("validate", "homlie", "centroid", "jordan", "suits"):
        sub.add_parser(task, parents=[common])
    tw = sub.add_parser("twisted", parents=[common])
    tw.add_argument("--alpha", required=True, help="twisting map, matrix JSON file")
    tw.add_argument("--mode", choices=["auto", "general", "automorphism"], default="auto")
    fs = sub.add_parser("fspace", parents=[common])
    fs.add_argument("--symmetry", choices=["any", "skew", "sym"], default="any")
    rm = sub.add_parser("rmatrix", parents=[common])
    rm.add_argument("--phi", required=True, help="candidate map, matrix JSON file")
    tb = sub.add_parser("table", parents=[common])
    tb.add_argument("--batch", required=True, help="JSON list of requests")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            with open(args.batch, "r", encoding="utf-8") as fh:
                requests = json.load(fh)
            doc = evidence_table(requests)
            _emit(doc, args.out, None, render_table(doc))
            return 1 if any("error" in r for r in doc["rows"]) else 0
        request = {"algebra": args.algebra, "params": _parse_params(args.params),
                   "field": args.field, "input": args.input,
                   "tasks": [args.command], "seed": args.seed, "budget": args.budget,
                   "alpha": getattr(args, "alpha", None),
                   "mode": getattr(args, "mode", None),
                   "symmetry": getattr(args, "symmetry", None),
                   "phi": getattr(args, "phi", None)}
        if not request["algebra"] and not request["input"]:
            parser.error("one of --algebra or --input is required")
        report, timings = run_request(request)
        _emit(report, args.out, timings, render_report(report))
        return 0 if report["status"] == "ok" else 1
    except (ExprError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"homlie: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
