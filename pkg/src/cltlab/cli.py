"""Command-line front end: ``cltlab <command> ...``.

Every command builds a report ``{tool_version, command, inputs, results,
disagreements, timing_ms}``.  ``--json`` prints it; otherwise a plain table is
shown.  Exit status: 0 when everything agrees, 1 on a prediction/observation
disagreement, 2 on invalid input or an exceeded bound.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import constructors as C
from . import verify as V
from .constructors import SpecSyntaxError
from .group import GroupError, TooLarge
from .morphisms import is_isomorphic
from .subgroups import clt_report, lattice_cached

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID = 0, 1, 2
_NOT_INPUTS = {"json", "timing", "jobs", "cache_dir", "func", "command"}


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in headers]] + [["-" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _yn(b) -> str:
    return "-" if b is None else ("yes" if b else "no")


# --- commands: each returns (results, disagreements, human text) ------------------


def cmd_check(args):
    G = C.build(args.spec)
    if args.cache_dir or args.lattice:
        rep = clt_report(G, "lattice", lattice_cached(G, args.cache_dir))
    else:
        rep = clt_report(G)
    d = rep.to_dict(args.timing)
    syl = ", ".join(f"n_{s.prime}={s.n_r}{' (normal)' if s.normal else ''}" for s in rep.sylow)
    text = "\n".join(
        [
            f"group    {rep.spec_tag}",
            f"order    {rep.order}",
            f"CLT      {_yn(rep.is_clt)}",
            f"missing  {rep.missing_orders or '-'}",
            f"sylow    {syl}",
            f"mode     {rep.mode}",
        ]
    )
    return d, [], text


def _verdict_rows(verdicts):
    rows = []
    for v in verdicts:
        wit = ", ".join(w["spec_tag"] for w in v.witnesses if "clt_report" in w and not w["clt_report"].is_clt)
        rows.append(
            [
                v.p,
                v.q,
                v.order,
                _yn(v.predicted_exists),
                _yn(v.observed_exists),
                "exhaustive" if v.exhaustive else "witness",
                _yn(v.agreement),
                "!" if v.p_divides_q_minus_1 else "",
                wit or "-",
            ]
        )
    return _table(["p", "q", "order", "predicted", "observed", "mode", "agree", "p|q-1", "non-CLT"], rows)


def cmd_predict(args):
    v = V.predict(args.p, args.q)
    reasons = ", ".join(k for k, on in v.reasons.items() if on) or "none"
    text = f"p={v.p} q={v.q} order={v.order}: predicted_exists={_yn(v.predicted_exists)} ({reasons})"
    if v.p_divides_q_minus_1:
        text += "\nnote: p also divides q-1"
    return v.to_dict(), [], text


def cmd_verify(args):
    v = V.verify_pair(args.p, args.q, args.exhaustive)
    return v.to_dict(args.timing), V.verdict_disagreements(v), _verdict_rows([v])


def cmd_scan(args):
    rows = V.scan(args.max_p, args.max_q, args.exhaustive, args.jobs)
    dis = [d for r in rows for d in V.verdict_disagreements(r.verdict)]
    return [r.to_dict(args.timing) for r in rows], dis, _verdict_rows([r.verdict for r in rows]) if rows else "(no pairs)"


def cmd_aut(args):
    rep = V.verify_aut_formulas(args.q)
    dis = [dict(r, kind="aut_formula") for r in rep["formulas"] if r["match"] is False]
    rows = [[r["group"], r["count"], r["formula"], _yn(r["match"]), r["method"]] for r in rep["formulas"]]
    cyc = rep["cyclic"]
    rows.append([cyc["group"], cyc["count"], cyc["expected"], _yn(cyc["count"] == cyc["expected"]), "enumeration"])
    return rep, dis, _table(["group", "count", "formula", "match", "method"], rows)


def cmd_catalog(args):
    groups = C.order24_catalog(verify=True)
    ref = C.sl2_3()
    res, rows = [], []
    for G in groups:
        rep = clt_report(G)
        entry = {
            "spec_tag": G.spec_tag,
            "abelian": G.is_abelian,
            "is_clt": rep.is_clt,
            "missing_orders": rep.missing_orders,
            "is_sl23": is_isomorphic(G, ref),
        }
        res.append(entry)
        rows.append([G.spec_tag, _yn(G.is_abelian), _yn(rep.is_clt), rep.missing_orders or "-"])
    non_clt = [e for e in res if not e["is_clt"]]
    dis = []
    if len(res) != 15 or len(non_clt) != 1 or not non_clt[0]["is_sl23"]:
        dis.append({"kind": "catalog", "types": len(res), "non_clt": [e["spec_tag"] for e in non_clt]})
    summary = {"types": len(res), "abelian": sum(e["abelian"] for e in res), "non_clt": len(non_clt)}
    text = _table(["group", "abelian", "CLT", "missing"], rows)
    text += f"\n{summary['types']} types, {summary['abelian']} abelian, {summary['non_clt']} non-CLT"
    return {"groups": res, "summary": summary}, dis, text


def cmd_corollary(args):
    rep = V.verify_corollary(args.id, args.max_p, args.max_q)
    dis = [dict(r, kind="corollary", corollary=args.id) for r in rep["rows"] if r.get("ok") is False]
    rows = [
        [r["p"], r["q"], r.get("expected", "-"), r.get("observed", "-"), _yn(r.get("ok")), ", ".join(r.get("non_clt", [])) or "-"]
        for r in rep["rows"]
    ]
    return rep, dis, _table(["p", "q", "expected", "observed", "ok", "non-CLT"], rows)


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")

    ap = argparse.ArgumentParser(prog="cltlab", description="Converse-of-Lagrange checks for groups of order pq^3.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="CLT report for one group spec")
    p.add_argument("spec")
    p.add_argument("--lattice", action="store_true", help="force the full subgroup lattice")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("predict", parents=[common], help="evaluate the divisibility predicate")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", parents=[common], help="prediction against construction for one pair")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="verify every prime pair within bounds")
    p.add_argument("--max-p", type=int, default=31)
    p.add_argument("--max-q", type=int, default=5)
    p.add_argument("--exhaustive", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("aut", parents=[common], help="automorphism counts against the closed forms")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("catalog", parents=[common], help="named catalogues")
    p.add_argument("which", choices=["order24"])
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("corollary", parents=[common], help="check one corollary over a range")
    p.add_argument("id", choices=list(V.COROLLARIES))
    p.add_argument("--max-p", type=int, default=13)
    p.add_argument("--max-q", type=int, default=5)
    p.set_defaults(func=cmd_corollary)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in _NOT_INPUTS}
    t0 = time.perf_counter()
    try:
        results, disagreements, text = args.func(args)
    except (ValueError, GroupError, SpecSyntaxError) as exc:
        kind = "bound exceeded" if isinstance(exc, TooLarge) else "invalid input"
        print(f"cltlab: {kind}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    elapsed = (time.perf_counter() - t0) * 1000
    report = {
        "tool_version": V.TOOL_VERSION,
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "disagreements": disagreements,
        "timing_ms": round(elapsed, 3) if args.timing else None,
    }
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(text)
        if disagreements:
            print(f"\n{len(disagreements)} disagreement(s)")
    return EXIT_DISAGREE if disagreements else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
