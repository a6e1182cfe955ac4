"""Command-line front end: ``groupeq COMMAND FILE [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Sequence

from .complexes import covering_complex, criterion_check, homology, standard_complex
from .cosets import DEFAULT_MAX_COSETS, CosetEnumerationIncomplete, enumerate_low_index, \
    subgroup_presentation, todd_coxeter
from .equations import dependency, exponent_matrix, relator_matrix
from .groups import CLOSURE_CAP, GroupAxiomError, Presentation
from .mixedwords import conjugate_into_factor, content
from .parsing import Document, ParseError, parse, parse_file
from .solver import DEFAULT_SEARCH_CAP, solve_over
from .theorems import NoQuotientSolution, check_bhs, check_freiheitssatz, check_gr, check_main, \
    check_nitsche_thom, orbit_system
from .zlinalg import rows_independent

SCHEMA_VERSION = 1
# node budget per top-level branch for the cover search inside analyze
ANALYZE_BUDGET = 20_000
COMMANDS = ("analyze", "subgroups", "homology", "solve", "rewrite")
NOT_REPRODUCED = ("existence conclusions are reported from verified or asserted hypotheses; "
                  "solutions are only exhibited when the solver finds one")


class UsageError(Exception):
    pass


def corpus_documents() -> list[tuple[str, str]]:
    """The curated input files shipped with the package, sorted by name."""
    root = resources.files("groupeq") / "documents"
    return sorted((p.name, p.read_text(encoding="utf-8")) for p in root.iterdir()
                  if p.name.endswith(".geq"))


def _finite_factor(doc: Document) -> str | None:
    used = doc.system.constant_factors()
    if len(used) == 1 and doc.spec.factor(used[0]).is_finite:
        return used[0]
    if not used:
        finite = [f.name for f in doc.spec.factors if f.is_finite]
        if len(finite) == 1:
            return finite[0]
    return None


def _content_presentation(doc: Document, group: str | None) -> Presentation:
    if group is None:
        return Presentation(doc.spec.variables, tuple(doc.system.contents()))
    decl = doc.group(group)
    if decl.kind != "presented":
        raise UsageError(f"--group {group}: not a presented group")
    return decl.group


def analyze(doc: Document, args) -> dict:
    sys_ = doc.system
    em = exponent_matrix(sys_)
    dep = dependency(sys_)
    eqs = []
    for i, w in enumerate(doc.equations):
        where = conjugate_into_factor(w)
        eqs.append({"index": i, "word": str(w), "content": str(content(w)),
                    "conjugate_into": where})
    reports = []
    asr = doc.assertion_flags()
    factor = _finite_factor(doc)
    nfac = len(doc.spec.factors)
    has_vars = len(doc.spec.variables) > 0
    if has_vars and factor is not None and len(sys_.constant_factors()) <= 1:
        reports.append(check_gr(sys_, factor).to_dict())
    if has_vars and len(sys_.constant_factors()) <= 1:
        budget = args.budget if args.budget is not None else ANALYZE_BUDGET
        reports.append(check_nitsche_thom(sys_, asr, args.max_index, budget).to_dict())
    if has_vars and factor is not None:
        for sub in doc.subgroups:
            if sub.group != factor:
                continue
            for i, w in enumerate(doc.equations):
                if any(c.factor != factor for c in w.constants()):
                    continue
                try:
                    r = check_main(w, sub.elements, asr, factor, sub.name).to_dict()
                except GroupAxiomError as exc:
                    r = {"theorem": "Main theorem", "error": str(exc)}
                r.update(equation=i, subgroup=sub.name)
                reports.append(r)
    if not has_vars and nfac == 2:
        for i, w in enumerate(doc.equations):
            reports.append({**check_bhs(w, asr).to_dict(), "equation": i})
    if not has_vars and nfac == 3:
        for i, w in enumerate(doc.equations):
            reports.append({**check_freiheitssatz(w, asr).to_dict(), "equation": i})
    return {
        "variables": doc.spec.variables.names,
        "exponent_matrix": em.matrix.tolist(),
        "nonsingular": dep is None,
        "dependency": dep,
        "equations": eqs,
        "reports": reports,
        "note": NOT_REPRODUCED,
    }


def _low_index(doc: Document, args):
    pres = _content_presentation(doc, args.group)
    search = enumerate_low_index(pres, args.max_index, args.budget)
    return pres, search


def subgroups(doc: Document, args) -> dict:
    pres, search = _low_index(doc, args)
    try:
        order = todd_coxeter(pres, (), args.max_cosets).index
    except CosetEnumerationIncomplete:
        order = None
    out = []
    for k, t in enumerate(search.tables):
        sp = subgroup_presentation(pres, t)
        out.append({
            "id": k,
            "index": t.index,
            "coset_table": [list(r) for r in t.action],
            "transversal": [str(r) for r in sp.transversal.reps],
            "generators": sp.alphabet.names,
            "relators": [str(r) for r in sp.relators],
            "nonsingular": rows_independent(relator_matrix(sp.relators, sp.alphabet)),
        })
    return {"presentation": str(pres), "group_order": order, "max_index": args.max_index,
            "complete": search.complete, "exhausted_branches": search.exhausted,
            "subgroups": out}


def _homology_dict(h) -> dict:
    return {"b0": h.b0, "h1": h.h1(), "h1_torsion": list(h.h1_torsion), "b1": h.b1, "b2": h.b2}


def homology_cmd(doc: Document, args) -> dict:
    pres, search = _low_index(doc, args)
    if not 0 <= args.index_table < len(search.tables):
        raise UsageError(f"--index-table {args.index_table}: only {len(search.tables)} subgroups "
                         f"of index <= {args.max_index}")
    t = search.tables[args.index_table]
    base = standard_complex(pres)
    cover = covering_complex(pres, t)
    crit = criterion_check(pres, t)
    return {
        "presentation": str(pres),
        "id": args.index_table,
        "index": t.index,
        "base": {"sizes": list(base.sizes), "euler": base.euler_characteristic,
                 **_homology_dict(homology(base))},
        "cover": {"sizes": list(cover.sizes), "euler": cover.euler_characteristic,
                  **_homology_dict(homology(cover))},
        "criterion": {"h2_trivial": crit.h2_trivial,
                      "schreier_nonsingular": crit.schreier_nonsingular, "agree": crit.agree},
    }


def solve(doc: Document, args) -> dict:
    factor = _finite_factor(doc)
    if doc.system.constant_factors() and factor is None:
        raise UsageError("solve needs the constants to come from one finite group")
    reg = doc.registered(factor) if factor else []
    rep = solve_over(doc.system, budget=args.budget, cap=args.order_cap,
                     search_cap=args.search_cap, registered=reg)
    sol = None
    if rep.solution is not None:
        emb = rep.solution.where
        sol = {"overgroup": emb.name, "order": emb.target.order,
               "embedding": list(emb.map),
               "assignment": dict(rep.solution.assignment),
               "labels": rep.solution.describe()}
    return {
        "solution": sol,
        "inconclusive": rep.inconclusive,
        "budget_exhausted": rep.budget_exhausted,
        "attempts": [{"overgroup": n, "order": o, "outcome": r} for n, o, r in rep.attempts],
        "note": "an inconclusive search never means the system is unsolvable",
    }


def rewrite_cmd(doc: Document, args) -> dict:
    if args.normal is None:
        raise UsageError("rewrite needs --normal NAME (a declared subgroup)")
    try:
        sub = doc.subgroup(args.normal)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    out = []
    for i, w in enumerate(doc.equations):
        try:
            orb = orbit_system(w, sub.elements, sub.group)
        except (NoQuotientSolution, ValueError) as exc:
            out.append({"equation": i, "error": str(exc)})
            continue
        em = exponent_matrix(orb.system)
        out.append({
            "equation": i,
            "quotient_order": orb.quotient.order,
            "lift": orb.lift,
            "substitution": {x: doc.spec.factor(sub.group).format(v)
                             for x, v in orb.substitution.items()},
            "rewritten": str(orb.rewritten),
            "variables": [g.name for g in em.col_labels],
            "system": [str(e) for e in orb.system],
            "exponent_matrix": em.matrix.tolist(),
            "nonsingular": dependency(orb.system) is None,
        })
    return {"normal": args.normal, "group": sub.group, "equations": out}


HANDLERS = {"analyze": analyze, "subgroups": subgroups, "homology": homology_cmd,
            "solve": solve, "rewrite": rewrite_cmd}


def run(command: str, doc: Document, args) -> dict:
    if command not in HANDLERS:
        raise UsageError(f"unknown command {command!r}")
    return HANDLERS[command](doc, args)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    return str(v)


def _report_text(r: dict, pad: str) -> list[str]:
    head = r["theorem"]
    if "equation" in r:
        head += f" (equation {r['equation']}" + (f", subgroup {r['subgroup']})" if "subgroup" in r
                                                 else ")")
    lines = [pad + head]
    if "error" in r:
        return lines + [f"{pad}  error: {r['error']}"]
    for c in r["checks"]:
        w = f"  {_scalar(c['witness'])}" if c["witness"] is not None else ""
        lines.append(f"{pad}  [{c['status']:>8}] {c['name']}{w}")
    lines.append(f"{pad}  conclusion: {r['conclusion'] or '(withheld)'}")
    lines += [f"{pad}  note: {n}" for n in r["notes"]]
    lines += [f"{pad}  {k}: {_scalar(v)}" for k, v in r.get("details", {}).items()]
    return lines


def _text(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if k == "reports":
            lines.append(f"{pad}reports:")
            for r in v:
                lines += _report_text(r, pad + "  ")
        elif isinstance(v, dict) and v and all(not isinstance(x, (dict, list)) or
                                               isinstance(x, list) for x in v.values()):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and all(isinstance(x, dict) and not any(
                isinstance(y, (dict, list)) for y in x.values()) for x in v):
            lines.append(f"{pad}{k}:")
            lines += [pad + "  " + "  ".join(f"{a}={_scalar(b)}" for a, b in x.items()) for x in v]
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{pad}{k}:")
            for x in v:
                lines.append(_text(x, indent + 1))
                lines.append("")
        else:
            lines.append(f"{pad}{k}: {_scalar(v)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="groupeq",
                                description="Equations over groups: hypothesis checks, "
                                            "subgroup presentations, covers, solution search.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", nargs="?", help="input document (omit with --seed-corpus)")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p.add_argument("--max-index", type=int, default=6)
    p.add_argument("--budget", type=int, default=None,
                   help="low-index search nodes per top-level branch (analyze defaults to "
                        f"{ANALYZE_BUDGET}, others unbounded); for solve, the number of "
                        "catalogue members to try")
    p.add_argument("--index-table", type=int, default=0)
    p.add_argument("--normal", default=None)
    p.add_argument("--group", default=None, help="use a declared presented group")
    p.add_argument("--order-cap", type=int, default=CLOSURE_CAP)
    p.add_argument("--search-cap", type=int, default=DEFAULT_SEARCH_CAP)
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed-corpus", action="store_true",
                   help="run the command on every bundled corpus document")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed_corpus == (args.file is not None):
        print("groupeq: give exactly one of FILE or --seed-corpus", file=sys.stderr)
        return 2
    if args.max_index < 1:
        print("groupeq: --max-index must be positive", file=sys.stderr)
        return 2
    try:
        if args.seed_corpus:
            docs = [(name, parse(text)) for name, text in corpus_documents()]
        else:
            docs = [(args.file, parse_file(args.file))]
        results = []
        for name, doc in docs:
            try:
                results.append({"file": name, "result": run(args.command, doc, args)})
            except UsageError as exc:
                if not args.seed_corpus:
                    raise
                # a corpus document the command does not apply to
                results.append({"file": name, "skipped": str(exc)})
    except (ParseError, UsageError, OSError, GroupAxiomError) as exc:
        print(f"groupeq: {exc}", file=sys.stderr)
        return 1
    report = {"schema": SCHEMA_VERSION, "command": args.command, "documents": results}
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        print()
    else:
        for item in results:
            print(f"== {item['file']} ({args.command})")
            print(_text(item["result"]) if "result" in item else f"skipped: {item['skipped']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
