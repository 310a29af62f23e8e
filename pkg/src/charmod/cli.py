"""Command-line driver: parse documents, dispatch commands, emit reports.

Commands::

    charmod gb DOC.cmr
    charmod res DOC.cmr [--module NAME] [--max-steps N]
    charmod invariants DOC.cmr [--module NAME]
    charmod tmod DOC.cmr --module NAME
    charmod emod DOC.cmr --module NAME
    charmod canonical DOC.cmr
    charmod check SUITE DOC.cmr [--module NAME]
    charmod corpus PROFILE --seed S --count N
    charmod hunt-counterexample --seed S --count N

Check suites: ``thm8``, ``gorenstein``, ``type_formula``,
``type_formula_depth``, ``cor_id``, ``cor_artinian``, ``faithful``,
``battery``.  Module-level suites run on ``--module`` when given, else on
R, k and every module block of the document (members whose hypotheses are
not met are reported as not_applicable).

Exit codes: 0 success/verified, 1 refuted, 2 input error, 3 inconclusive.

JSON reports are deterministic for fixed (command, document, seed, flags)
except for ``timing_ms`` fields.  The corpus command fans instances out to
a process pool (capped by the ``CHARMOD_THREADS`` environment variable)
and merges reports in instance order.
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import characteristic, corpus, invariants
from .cmr import CmrError, InputDocument, load, parse
from .homology import hilbert_function_basis
from .resolution import resolve

_EXIT = {"verified": 0, "ok": 0, "refuted": 1, "inconclusive": 3}

_CHECK_SUITES = ("thm8", "gorenstein", "type_formula", "type_formula_depth",
                 "cor_id", "cor_artinian", "faithful", "battery")

_MODULE_CHECKERS = {
    "type_formula": characteristic.check_type_formula,
    "type_formula_depth": characteristic.check_type_formula_depth,
    "cor_id": characteristic.check_cor_id,
    "cor_artinian": characteristic.check_cor_artinian,
    "faithful": characteristic.check_faithful,
}


class InputError(Exception):
    pass


def _read_document(path: str) -> Tuple[str, InputDocument]:
    if path == "-":
        return "stdin", parse(sys.stdin.read())
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {path}")
    return p.stem, load(p)


def _require_module(args) -> str:
    if not args.module:
        raise InputError("missing module name (use --module NAME)")
    return args.module


def _get_module(doc: InputDocument, name: str):
    try:
        return doc.module(name)
    except KeyError as exc:
        raise InputError(str(exc)) from None


def _module_pool(doc: InputDocument):
    R = doc.quotient()
    pool = [("R", invariants.ring_module_of(R)),
            ("k", invariants.residue_field_of(R))]
    pool.extend((name, doc.module(name)) for name in doc.module_names())
    return pool


# ---------------------------------------------------------------------------
# command implementations (each returns a report dict; "verdict" drives the
# exit code and defaults to "ok")


def _cmd_gb(doc: InputDocument, args) -> Dict[str, object]:
    R = doc.quotient()
    gb = R.ideal_gb_polys()
    return {"gb": [str(g) for g in gb], "count": len(gb)}


def _cmd_res(doc: InputDocument, args) -> Dict[str, object]:
    R = doc.quotient()
    if args.module:
        M = _get_module(doc, args.module)
        steps = args.max_steps or (doc.ring().n + 1)
        res = resolve(M, max_steps=steps)
        over = "R"
    else:
        M = invariants.ring_module_of(R)
        res = invariants.q_resolution(M)
        over = "Q"
    return {"module": args.module, "over": over,
            "length": res.length, "complete": res.complete,
            "betti": res.betti().rows()}


def _cmd_invariants(doc: InputDocument, args) -> Dict[str, object]:
    R = doc.quotient()
    if args.module:
        rep = invariants.module_report(_get_module(doc, args.module))
        rep["module"] = args.module
        return rep
    return invariants.ring_report(R)


def _hf_window(M, bound: int) -> Dict[str, object]:
    lo = min(M.gens.twists, default=0)
    return {"hf_from": lo,
            "hilbert_function": hilbert_function_basis(M, lo, lo + bound)}


def _cmd_tmod(doc: InputDocument, args) -> Dict[str, object]:
    M = _get_module(doc, _require_module(args))
    T = characteristic.char_module(M)
    rep = invariants.module_report(T)
    rep["module"] = args.module
    rep.update(_hf_window(T, args.degree_bound))
    return rep


def _cmd_emod(doc: InputDocument, args) -> Dict[str, object]:
    M = _get_module(doc, _require_module(args))
    E = characteristic.cochar_module(M)
    rep = invariants.module_report(E)
    rep["module"] = args.module
    rep.update(_hf_window(E, args.degree_bound))
    return rep


def _cmd_canonical(doc: InputDocument, args) -> Dict[str, object]:
    R = doc.quotient()
    data = characteristic.quasi_canonical(R)
    rep = invariants.module_report(data.E)
    rep["s"] = data.s
    rep["routes_agree"] = bool(data.provenance["agree"])
    rep["is_free"] = (data.E.rels.source.rank == 0 and data.E.gens.rank > 0)
    return rep


def _aggregate(verdicts: List[str]) -> str:
    real = [v for v in verdicts if v in ("verified", "refuted", "inconclusive")]
    if not real:
        return "inconclusive"
    if "refuted" in real:
        return "refuted"
    if "inconclusive" in real:
        return "inconclusive"
    return "verified"


def _cmd_check(doc: InputDocument, args) -> Dict[str, object]:
    suite = args.suite
    R = doc.quotient()
    reports: List[Dict[str, object]] = []

    if suite == "thm8":
        extra = [(n, doc.module(n)) for n in doc.module_names()]
        rep = characteristic.check_thm8(R, extra_modules=extra)
        reports.append({"module": None, "checker": rep.checker,
                        "verdict": rep.verdict, "witness": rep.witnesses,
                        "notes": rep.notes})
    elif suite == "gorenstein":
        rep = characteristic.check_gorenstein(R)
        reports.append({"module": None, "checker": rep.checker,
                        "verdict": rep.verdict, "witness": rep.witnesses,
                        "notes": rep.notes})
    elif suite == "battery":
        bat = corpus.corpus_battery(doc, instance_id=args.instance_id,
                                    degree_bound=args.degree_bound,
                                    seed=args.seed)
        return {"suite": suite, "verdict": bat["verdict"],
                "reports": [bat]}
    elif suite in _MODULE_CHECKERS:
        checker = _MODULE_CHECKERS[suite]
        if args.module:
            M = _get_module(doc, args.module)
            try:
                rep = checker(R, M)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            reports.append({"module": args.module, "checker": rep.checker,
                            "verdict": rep.verdict, "witness": rep.witnesses,
                            "notes": rep.notes})
        else:
            for name, M in _module_pool(doc):
                try:
                    rep = checker(R, M)
                except ValueError as exc:
                    reports.append({"module": name, "checker": suite,
                                    "verdict": "not_applicable",
                                    "witness": {}, "notes": [str(exc)]})
                    continue
                reports.append({"module": name, "checker": rep.checker,
                                "verdict": rep.verdict,
                                "witness": rep.witnesses, "notes": rep.notes})
    else:
        raise InputError(f"unknown check suite {suite!r}; "
                         f"expected one of {', '.join(_CHECK_SUITES)}")

    return {"suite": suite,
            "verdict": _aggregate([r["verdict"] for r in reports]),
            "reports": reports}


def _battery_worker(job: Tuple[str, int, int, int, bool]):
    profile, seed, index, degree_bound, split = job
    doc = corpus._instance(profile, seed, index)
    t0 = time.perf_counter()
    rep = corpus.corpus_battery(doc, corpus.instance_id(profile, seed, index),
                                degree_bound=degree_bound, seed=seed,
                                split=split)
    rep["timing_ms"] = int((time.perf_counter() - t0) * 1000)
    return index, rep


def _worker_count(count: int) -> int:
    env = os.environ.get("CHARMOD_THREADS", "").strip()
    if env:
        workers = max(1, int(env))
    else:
        workers = os.cpu_count() or 1
    return max(1, min(workers, count))


def _cmd_corpus(args) -> Dict[str, object]:
    if args.profile not in corpus.PROFILES:
        raise InputError(f"unknown profile {args.profile!r}; "
                         f"expected one of {corpus.PROFILES}")
    count = args.count
    jobs = [(args.profile, args.seed, i, args.degree_bound, True)
            for i in range(count)]
    results: Dict[int, Dict[str, object]] = {}
    workers = _worker_count(count)
    if workers == 1:
        for job in jobs:
            idx, rep = _battery_worker(job)
            results[idx] = rep
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for idx, rep in pool.map(_battery_worker, jobs):
                results[idx] = rep
    reports = [results[i] for i in range(count)]
    verdicts = [r["verdict"] for r in reports]
    summary = {"verified": verdicts.count("verified"),
               "refuted": verdicts.count("refuted"),
               "non_cm": sum(1 for r in reports if not r["is_cm"])}
    return {"profile": args.profile, "seed": args.seed, "count": count,
            "summary": summary,
            "verdict": _aggregate(verdicts), "reports": reports}


def _cmd_hunt(args) -> Dict[str, object]:
    out = corpus.hunt_counterexample(args.seed, args.count,
                                     degree_bound=args.degree_bound)
    out["verdict"] = "ok"
    return out


# ---------------------------------------------------------------------------
# rendering


def _pretty(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        return "\n".join(f"{pad}- {_flat(v)}" if _is_flat(v) or not v
                         else f"{pad}-\n{_pretty(v, indent + 1)}"
                         for v in value)
    return f"{pad}{_flat(value)}"


def _is_flat(v) -> bool:
    if isinstance(v, dict):
        return False
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return True


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return json.dumps(v)
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _emit(report: Dict[str, object], as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print(_pretty(report))


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, metavar="S",
                        help="seed for corpus generation and probes")
    common.add_argument("--count", type=int, default=20, metavar="N",
                        help="number of corpus instances")
    common.add_argument("--max-steps", type=int, default=None, metavar="N",
                        help="truncation depth for resolutions over R")
    common.add_argument("--degree-bound", type=int, default=8, metavar="N",
                        help="width of Hilbert-function windows")
    common.add_argument("--module", default=None, metavar="NAME",
                        help="module name (R, k, or a document block)")

    ap = argparse.ArgumentParser(
        prog="charmod",
        description="Characteristic and cocharacteristic modules of graded "
                    "quotient rings over finite prime fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, help_text in (
            ("gb", "reduced Groebner basis of the defining ideal"),
            ("res", "minimal free resolution (of R over Q, or of --module over R)"),
            ("invariants", "dimension, depth, type and friends"),
            ("tmod", "characteristic module of --module"),
            ("emod", "cocharacteristic module of --module"),
            ("canonical", "quasi-canonical module of the ring")):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("document", help=".cmr file (or - for stdin)")

    sp = sub.add_parser("check", parents=[common],
                        help="run a theorem checker suite on a document")
    sp.add_argument("suite", help=f"one of: {', '.join(_CHECK_SUITES)}")
    sp.add_argument("document", help=".cmr file (or - for stdin)")

    sp = sub.add_parser("corpus", parents=[common],
                        help="run the property battery over random instances")
    sp.add_argument("profile", help=f"one of: {', '.join(corpus.PROFILES)}")

    sub.add_parser("hunt-counterexample", parents=[common],
                   help="scan for M with M isomorphic to T_M, dim M = dim R, "
                        "over non-Gorenstein rings")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.command == "corpus":
            report = _cmd_corpus(args)
            report = {"command": "corpus", "id": f"{args.profile}-{args.seed}",
                      **report}
        elif args.command == "hunt-counterexample":
            report = {"command": "hunt-counterexample",
                      "id": f"hunt-{args.seed}", **_cmd_hunt(args)}
        else:
            doc_id, doc = _read_document(args.document)
            args.instance_id = doc_id
            body = {
                "gb": _cmd_gb,
                "res": _cmd_res,
                "invariants": _cmd_invariants,
                "tmod": _cmd_tmod,
                "emod": _cmd_emod,
                "canonical": _cmd_canonical,
                "check": _cmd_check,
            }[args.command](doc, args)
            report = {"command": args.command, "id": doc_id, **body}
    except (InputError, CmrError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report["timing_ms"] = int((time.perf_counter() - t0) * 1000)
    _emit(report, args.json)
    return _EXIT.get(str(report.get("verdict", "ok")), 0)


if __name__ == "__main__":
    raise SystemExit(main())
