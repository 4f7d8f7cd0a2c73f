"""Command-line front end: ``python3 -m tanglekit <command> ...``.

Exit status is 0 on success, 1 for domain and usage errors, and 2 when one
of the library's identity checks fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import brunner as br
from . import corpus as co
from . import dehn
from . import diagram as dg
from . import invariants as inv
from . import montesinos as mo
from . import quasialt as qa
from . import tangle as tg

EXIT_OK, EXIT_DOMAIN, EXIT_IDENTITY = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(message)


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write_json(path, data):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _diagram_from(args):
    if getattr(args, "diagram", None):
        return dg.PlanarDiagram.from_json(_load_json(args.diagram))
    if getattr(args, "expr", None):
        return dg.synthesize(tg.parse_expr(args.expr))
    raise UsageError("give --expr or --diagram")


# --------------------------------------------------------------------------
# Commands


def cmd_eval(args):
    expr = tg.parse_expr(args.expr)
    d = dg.synthesize(expr)
    f = tg.fraction_of(expr)
    data = {
        "expr": tg.to_text(expr),
        "closed": d.is_closed,
        "crossings": d.crossing_count,
        "alternating": d.is_alternating(),
        "fraction": None if f is tg.NotRational else str(f),
    }
    if d.is_closed:
        data["components"] = d.components()
        data["determinant"] = inv.determinant(d)
    else:
        data["type"] = dg.classify_type(d)
        pair = inv.det_pair(d)
        data["N"], data["D"] = pair.N, pair.D
    if args.out:
        _write_json(args.out, d.to_json())
        data["diagram"] = args.out
    _emit(args, data, "\n".join(f"{k}: {v}" for k, v in data.items()))


def cmd_det(args):
    d = _diagram_from(args)
    if not d.is_closed:
        d = dg.closure(d, args.closure)
    det = inv.determinant(d)
    matrix = inv.goeritz(d).tolist() if d.crossings and not d.is_split() else []
    _emit(args, {"det": det, "goeritz": matrix, "crossings": d.crossing_count}, str(det))


def cmd_qa_certify(args):
    if args.p is not None:
        cert = qa.certify_family(tg.parse_expr(args.expr), args.p, args.q)
    else:
        cert = qa.certify_alternating_base(_diagram_from(args))
    problems = qa.check_certificate(cert)
    if problems:
        raise inv.IdentityViolation("emitted certificate failed its own check", violations=problems)
    data = qa.to_json(cert)
    if args.out:
        _write_json(args.out, data)
    det = cert.det if isinstance(cert, qa.QALeaf) else cert.det[0]
    _emit(args, data, f"certificate valid, det {det}" + (f", written to {args.out}" if args.out else ""))


def cmd_qa_check(args):
    cert = qa.from_json(_load_json(args.cert))
    problems = qa.check_certificate(cert)
    _emit(args, {"valid": not problems, "violations": problems},
          "Valid" if not problems else "\n".join(problems))
    return EXIT_OK if not problems else EXIT_DOMAIN


def cmd_montesinos_reduce(args):
    m = mo.MontesinosForm(args.e, mo.parse_tails(args.tails))
    r = mo.reduced_form(m)
    data = {"input": m.to_json(), "reduced": r.to_json(), "determinant": inv.link_det(m.expr())}
    _emit(args, data, f"{m} -> {r}  (det {data['determinant']})")


def cmd_family_report(args):
    t = tg.parse_expr(args.expr)
    # "tau(T)" names the encircled tangle; the report is indexed by T itself
    if isinstance(t, tg.Encircle):
        t = t.arg
    which = dehn.RECIPROCAL if args.reciprocal else dehn.DIRECT
    report = dehn.family_report(t, args.p, args.q, which=which)
    data = report.to_json(inline_certificate=not args.no_certificate)
    lines = [
        f"tangle {report.tangle}, slope {report.slope} ({report.which})",
        f"branch link {report.branch_link}",
        f"determinant {report.determinant}, crossings {report.crossings}",
    ]
    for name in ("l_space", "non_left_orderable", "hyperbolic_branch_link", "non_seifert"):
        v = getattr(report, name)
        lines.append(f"{name}: {v.status}" + (f" ({'; '.join(v.reasons)})" if v.reasons else ""))
    _emit(args, data, "\n".join(lines))


def cmd_brunner_emit(args):
    d = _diagram_from(args)
    if not d.is_closed:
        d = dg.closure(d, args.closure)
    pres = br.brunner_presentation(d)
    order = br.abelianization_order(pres)
    det = inv.determinant(d)
    if order != det:
        raise inv.IdentityViolation("abelianization differs from the determinant", order=order, det=det)
    if args.format == "json":
        print(json.dumps(pres.to_json(), indent=2, sort_keys=True))
    elif args.format == "gap-like":
        print(pres.to_gap())
    else:
        print(pres.to_text())


def cmd_brunner_coarse(args):
    pres = br.coarse_family_presentation(tg.parse_expr(args.expr), args.p, args.q)
    _emit(args, pres.to_json(), pres.to_text())


def cmd_brunner_verify_chain(args):
    pres, steps = br.chain_from_json(_load_json(args.chain))
    result = br.rewrite_verify(pres, steps)
    if result:
        _emit(args, {"valid": True, "steps": len(steps)}, f"Valid ({len(steps)} steps)")
        return EXIT_OK
    data = {"valid": False, "index": result.index, "reason": result.reason, "subword": result.subword}
    _emit(args, data, f"step {result.index}: {result.reason} [{result.subword}]")
    return EXIT_DOMAIN


def _check_item(text):
    r = inv.verify_encirclement_identity(tg.parse_expr(text))
    return {"tangle": text, "N": r.N_T, "D": r.D_T, "tau": r.N_tau}


def cmd_corpus(args):
    cfg = co.CorpusSpec(args.max, tau=args.tau, seed=args.seed, allow_large=args.allow_large)
    items = [tg.to_text(e) for e in co.corpus(cfg)]
    if not args.check:
        _emit(args, items, "\n".join(items))
        return
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_check_item, items, chunksize=8))
    else:
        rows = [_check_item(t) for t in items]
    _emit(args, rows, "\n".join(f"{r['tangle']}: N={r['N']} D={r['D']} tau={r['tau']}" for r in rows))


# --------------------------------------------------------------------------
# Parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="enumeration seed")

    parser = _Parser(prog="tanglekit", description="Exact tangle calculus.", parents=[common])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add(sub, "eval", cmd_eval, "describe a tangle or link expression")
    p.add_argument("expr")
    p.add_argument("--out", help="write the synthesized diagram as JSON")

    p = add(sub, "det", cmd_det, "link determinant")
    p.add_argument("--expr")
    p.add_argument("--diagram")
    p.add_argument("--closure", choices=("N", "D"), default="N")

    qa_p = sub.add_parser("qa", help="quasi-alternating certificates")
    qa_sub = qa_p.add_subparsers(dest="qa_command", parser_class=_Parser)
    p = add(qa_sub, "certify", cmd_qa_certify, "emit a certificate")
    p.add_argument("--expr")
    p.add_argument("--diagram")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out")
    p = add(qa_sub, "check", cmd_qa_check, "re-verify a certificate file")
    p.add_argument("cert")

    mo_p = sub.add_parser("montesinos", help="Montesinos forms")
    mo_sub = mo_p.add_subparsers(dest="mo_command", parser_class=_Parser)
    p = add(mo_sub, "reduce", cmd_montesinos_reduce, "reduced form")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--tails", required=True, help="comma separated rationals, e.g. '-2,2,3/2'")

    fam_p = sub.add_parser("family", help="filling families of an encirclement")
    fam_sub = fam_p.add_subparsers(dest="family_command", parser_class=_Parser)
    p = add(fam_sub, "report", cmd_family_report, "verdicts for one member")
    p.add_argument("--expr", required=True, help="T, or tau(T)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--reciprocal", action="store_true")
    p.add_argument("--no-certificate", action="store_true", help="omit the inline certificate")

    br_p = sub.add_parser("brunner", help="double branched cover presentations")
    br_sub = br_p.add_subparsers(dest="brunner_command", parser_class=_Parser)
    p = add(br_sub, "emit", cmd_brunner_emit, "presentation of a link diagram")
    p.add_argument("--expr")
    p.add_argument("--diagram")
    p.add_argument("--closure", choices=("N", "D"), default="N")
    p.add_argument("--format", choices=("text", "json", "gap-like"), default="text")
    p = add(br_sub, "coarse", cmd_brunner_coarse, "coarse family presentation")
    p.add_argument("--expr", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = add(br_sub, "verify-chain", cmd_brunner_verify_chain, "check a rewriting chain file")
    p.add_argument("chain")

    p = add(sub, "corpus", cmd_corpus, "enumerate alternating type-2 tangles")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--tau", action="store_true", help="include encirclements")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--check", action="store_true", help="verify the encirclement identity per item")
    p.add_argument("--jobs", type=int, default=1)
    return parser


_VALUE_FLAGS = ("--expr", "--tails", "--diagram", "--out")


def _attach_values(argv):
    """Glue ``--tails -2,2`` into ``--tails=-2,2`` so leading minus signs are not read as flags."""
    out, k = [], 0
    while k < len(argv):
        a = argv[k]
        if a in _VALUE_FLAGS and k + 1 < len(argv):
            out.append(f"{a}={argv[k + 1]}")
            k += 2
        else:
            out.append(a)
            k += 1
    return out


def run(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_attach_values(argv))
        args.json = getattr(args, "json", False)
        args.seed = getattr(args, "seed", None)
        if not hasattr(args, "func"):
            parser.print_help(sys.stderr)
            return EXIT_DOMAIN
        if args.func is cmd_qa_certify and (args.p is None) != (args.q is None):
            raise UsageError("--p and --q go together")
        status = args.func(args)
        return EXIT_OK if status is None else status
    except inv.IdentityViolation as err:
        print(f"identity violation: {err}", file=sys.stderr)
        return EXIT_IDENTITY
    except (ValueError, KeyError, OSError, ZeroDivisionError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN


def main():
    sys.exit(run())


__all__ = ["run", "main", "build_parser"]
