"""Command-line front end.

Exit codes: 0 pass, 1 hard failure, 2 usage or input error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .charmult import UnsupportedWeightError, freudenthal_mults
from .gko import PositivityViolation, central_charge, l0_scalar, predict_series, wahl_positivity
from .rootdata import (
    InvalidTypeError,
    RootError,
    build_cartan,
    classify_root,
    exceptional_roots,
    f_set,
    parse_root,
    rho_beta,
)
from .tensor import WindowError, tensor_mults, tensor_mults_oracle
from .verify import (
    PRV_WITNESSES,
    Status,
    VerificationReport,
    classify_wahl_case,
    delta_series_report,
    hom_dim_prediction,
    rho_beta_dominance_check,
    verify_homdim,
    verify_lemma_root_scan,
    verify_positivity,
    verify_prv,
    verify_prv_witness,
    verify_exceptional_table,
    verify_theorem_main,
)
from .weights import enumerate_wahl_triples, fmt_q, is_wahl_triple, parse_weight, parse_word

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep the message on stderr
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--type", "-t", dest="type_label", required=True, help='affine type, e.g. "A1~" or "G2^(1)"')
    p.add_argument("--format", "-f", choices=("text", "json", "tsv"), default="text")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    p.add_argument("--parallelism", "-j", type=_positive, default=1)
    p.add_argument("--timing", action="store_true", help="include wall-clock times in reports")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="rootcomponents", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(group, name, helptext):
        return group.add_parser(name, parents=[common], help=helptext)

    roots = sub.add_parser("roots", help="root combinatorics").add_subparsers(dest="action", required=True)
    p = add(roots, "classify", "real / imaginary / not a root")
    p.add_argument("root", help='e.g. "a0+3*a1+a2", "d-a1", or the vector "0,3" (gamma; k)')
    for name, h in (("fset", "F_beta"), ("rhobeta", "rho_beta")):
        p = add(roots, name, h)
        p.add_argument("root")
    add(roots, "exceptional", "exceptional (gamma, j) rows")
    p = add(roots, "lemma-root-scan", "double-descent exclusion scan")
    p.add_argument("--k-max", type=_nonneg, default=5)

    p = sub.add_parser("mult", parents=[common], help="Freudenthal multiplicity table")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--depth", "-D", type=_nonneg, required=True)

    p = sub.add_parser("tensor", parents=[common], help="tensor product multiplicities")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--depth", "-D", type=_nonneg, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--oracle", action="store_true", help="use the character-product method")
    g.add_argument("--both", action="store_true", help="run both methods and cross-check")
    p.add_argument("--max-table-depth", type=_nonneg, default=None)

    gko = sub.add_parser("gko", help="coset Virasoro scalars").add_subparsers(dest="action", required=True)
    p = add(gko, "charge", "central charge")
    p.add_argument("-l", type=_positive, required=True)
    p.add_argument("-m", type=_positive, required=True)
    for name, h in (("l0", "L_0 scalar"), ("predict", "delta-series prediction")):
        p = add(gko, name, h)
        p.add_argument("--lambda", dest="lam", required=True)
        p.add_argument("--mu", required=True)
        p.add_argument("--nu", required=True)
    p = add(gko, "positivity", "L_0 scalar on a real-root Wahl component")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--beta", required=True)

    wahl = sub.add_parser("wahl", help="Wahl triples").add_subparsers(dest="action", required=True)
    p = add(wahl, "list", "enumerate Wahl triples")
    _grid_args(p)
    p = add(wahl, "check", "test one triple and report its proof route")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--beta", required=True)

    ver = sub.add_parser("verify", help="theorem harnesses").add_subparsers(dest="action", required=True)
    p = add(ver, "theorem1", "root components exist for every Wahl triple")
    _grid_args(p)
    p.add_argument("--depth", "-D", type=_nonneg, default=None, help="default: max-k + 2")
    p.add_argument("--max-table-depth", type=_nonneg, default=None)
    add(ver, "table1", "regenerate the exceptional rows")
    p = add(ver, "prv", "PRV component check")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--v", default="e", help='Weyl word, e.g. "s1s0" or "1,0"')
    p.add_argument("--w", default="e")
    p.add_argument("--witness", help='replay a printed witness by name, or "all" for this type')
    p.add_argument("--depth", "-D", type=_nonneg, default=2)
    p = add(ver, "delta-series", "delta-series predictions against computed multiplicities")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--depth", "-D", type=_nonneg, required=True)
    p = add(ver, "homdim", "Hom-space dimension formula")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--theta")
    p.add_argument("--S", dest="S", default="", help='comma-separated indices, e.g. "0,2"')
    p.add_argument("--max-k", type=_nonneg, default=2, help="grid mode: roots up to this delta-degree")
    p = add(ver, "positivity", "L_0 positivity over a grid")
    _grid_args(p)
    p = add(ver, "rho-beta-dominance", "2 rho_beta - beta dominance")
    p.add_argument("--max-k", type=_nonneg, default=3)
    return top


def _grid_args(p) -> None:
    p.add_argument("--max-level", type=_nonneg, required=True)
    p.add_argument("--max-k", type=_nonneg, required=True)
    p.add_argument("--coord-bound", type=_nonneg, required=True)


# ---------------------------------------------------------------------------
# output


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _tsv(header: list[str], rows: list[list]) -> str:
    return "\n".join("\t".join(str(x) for x in r) for r in [header] + rows) + "\n"


class _Out:
    def __init__(self, args):
        self.args = args
        self.fmt = args.format

    def emit(self, text: str) -> None:
        if self.args.output:
            with open(self.args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def report(self, rep: VerificationReport | list[VerificationReport]) -> int:
        reps = rep if isinstance(rep, list) else [rep]
        t = self.args.timing
        if self.fmt == "json":
            body = [r.to_json(timing=t) for r in reps]
            self.emit(_dump_json(body if isinstance(rep, list) else body[0]))
        elif self.fmt == "tsv":
            rows = [[r.claim, r.type_label, r.status.value, r.instances_checked, len(r.failures), len(r.inconclusive)]
                    for r in reps]
            self.emit(_tsv(["claim", "type", "status", "instances", "failures", "inconclusive"], rows))
        else:
            self.emit("\n".join(r.to_text(timing=t) for r in reps) + "\n")
        statuses = {r.status for r in reps}
        if Status.FAIL in statuses:
            return EXIT_FAIL
        if Status.INCONCLUSIVE in statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_PASS

    def value(self, key: str, value, extra: dict | None = None) -> int:
        """A single scalar or small record."""
        rec = {key: value, **(extra or {})}
        if self.fmt == "json":
            self.emit(_dump_json(rec))
        elif self.fmt == "tsv":
            self.emit(_tsv(list(rec), [[_flat(v) for v in rec.values()]]))
        else:
            self.emit(_flat(value) + "\n" + "".join(f"{k}: {_flat(v)}\n" for k, v in (extra or {}).items()))
        return EXIT_PASS


def _flat(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(_flat(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


# ---------------------------------------------------------------------------
# commands


def _root_arg(cd, text: str):
    """A root literal, or a comma-separated vector ``gamma_1..gamma_l,k``."""
    parts = [x.strip() for x in text.split(",")]
    if len(parts) > 1 and all(x.lstrip("-").isdigit() for x in parts):
        from .rootdata import _as_root

        return _as_root(cd, [int(x) for x in parts])
    return parse_root(cd, text)


def _cmd_roots(args, cd, out: _Out) -> int:
    a = args.action
    if a == "classify":
        beta = _root_arg(cd, args.root)
        cls = classify_root(cd, beta)
        return out.value("class", cls.value, {"root": beta.to_str(), "multiplicity": beta.multiplicity(cd),
                                              "positive": beta.is_positive(cd)})
    if a == "fset":
        return out.value("F_beta", sorted(f_set(cd, parse_root(cd, args.root))))
    if a == "rhobeta":
        w = rho_beta(cd, parse_root(cd, args.root))
        return out.value("rho_beta", w.to_str(cd), {"weight": w.to_json()})
    if a == "exceptional":
        rows = exceptional_roots(cd)
        from .rootdata import Root

        if out.fmt == "json":
            out.emit(_dump_json([{"gamma": list(g), "gamma_str": Root(g, 0).to_str(), "j": j} for g, j in rows]))
        elif out.fmt == "tsv":
            out.emit(_tsv(["gamma", "j"], [[Root(g, 0).to_str(), j] for g, j in rows]))
        else:
            out.emit("".join(f"{Root(g, 0).to_str()}\ta{j}\n" for g, j in rows) or "(none)\n")
        return EXIT_PASS
    if a == "lemma-root-scan":
        return out.report(verify_lemma_root_scan(cd, args.k_max))
    raise UsageError(a)


def _cmd_mult(args, cd, out: _Out) -> int:
    lam = parse_weight(cd, args.lam)
    table = freudenthal_mults(cd, lam, args.depth)
    if out.fmt == "json":
        out.emit(_dump_json(table.to_json(cd)))
    elif out.fmt == "tsv":
        out.emit(table.to_tsv(cd))
    else:
        out.emit("".join(f"{w.to_str(cd)}\t{m}\n" for w, m in table.items(cd)))
    return EXIT_PASS


def _cmd_tensor(args, cd, out: _Out) -> int:
    lam, mu = parse_weight(cd, args.lam), parse_weight(cd, args.mu)
    if args.oracle:
        rep = tensor_mults_oracle(cd, lam, mu, args.depth)
    else:
        rep = tensor_mults(cd, lam, mu, args.depth, max_table_depth=args.max_table_depth,
                           parallelism=args.parallelism)
    code = EXIT_PASS
    if args.both:
        orc = tensor_mults_oracle(cd, lam, mu, args.depth)
        agree = rep.same_entries(orc)
        diffs = [nu.to_str(cd) for nu in rep.entries if rep.entries[nu] != orc.entries.get(nu)]
        from dataclasses import replace

        rep = replace(rep, cross_check={"method": orc.method, "agree": agree, "mismatches": diffs})
        code = EXIT_PASS if agree else EXIT_FAIL
    if out.fmt == "json":
        out.emit(_dump_json(rep.to_json(cd)))
    elif out.fmt == "tsv":
        out.emit(rep.to_tsv(cd))
    else:
        lines = [f"V({lam.to_str(cd)}) x V({mu.to_str(cd)}), depth {rep.depth}, method {rep.method}"]
        lines += [f"{nu.to_str(cd)}\t{m}" for nu, m in rep.entries.items()]
        if rep.cross_check is not None:
            lines.append("cross-check vs {method}: {verdict}".format(
                method=rep.cross_check["method"], verdict="agree" if rep.cross_check["agree"] else "DISAGREE"))
        out.emit("\n".join(lines) + "\n")
    return code


def _cmd_gko(args, cd, out: _Out) -> int:
    a = args.action
    if a == "charge":
        return out.value("central_charge", fmt_q(central_charge(cd, args.l, args.m)))
    if a in ("l0", "predict"):
        lam, mu, nu = (parse_weight(cd, x) for x in (args.lam, args.mu, args.nu))
        if a == "l0":
            return out.value("l0_scalar", fmt_q(l0_scalar(cd, lam, mu, nu)))
        pred = predict_series(cd, lam, mu, nu)
        return out.value("kind", pred.kind.value, {"l0_scalar": fmt_q(pred.l0_scalar),
                                                   "central_charge": fmt_q(pred.central_charge)})
    if a == "positivity":
        lam, mu = parse_weight(cd, args.lam), parse_weight(cd, args.mu)
        beta = parse_root(cd, args.beta)
        try:
            s = wahl_positivity(cd, lam, mu, beta)
        except PositivityViolation as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAIL
        return out.value("l0_scalar", fmt_q(s))
    raise UsageError(a)


def _cmd_wahl(args, cd, out: _Out) -> int:
    if args.action == "list":
        triples = enumerate_wahl_triples(cd, args.max_level, args.max_k, args.coord_bound)
        rows = [(lam.to_str(cd), mu.to_str(cd), beta.to_str()) for lam, mu, beta in triples]
        if out.fmt == "json":
            out.emit(_dump_json([{"lambda": r[0], "mu": r[1], "beta": r[2]} for r in rows]))
        elif out.fmt == "tsv":
            out.emit(_tsv(["lambda", "mu", "beta"], [list(r) for r in rows]))
        else:
            out.emit("".join(f"{a}\t{b}\t{c}\n" for a, b, c in rows) + f"{len(rows)} triples\n")
        return EXIT_PASS
    lam, mu = parse_weight(cd, args.lam), parse_weight(cd, args.mu)
    beta = parse_root(cd, args.beta)
    chk = is_wahl_triple(cd, lam, mu, beta)
    extra = {"reason": chk.reason}
    if chk:
        extra["case"] = str(classify_wahl_case(cd, lam, mu, beta))
    return out.value("wahl", chk.ok, extra)


def _cmd_verify(args, cd, out: _Out) -> int:
    a = args.action
    if a == "theorem1":
        return out.report(verify_theorem_main(cd, args.max_level, args.max_k, args.coord_bound, args.depth,
                                              parallelism=args.parallelism,
                                              max_table_depth=args.max_table_depth))
    if a == "table1":
        return out.report(verify_exceptional_table(cd))
    if a == "prv":
        if args.witness:
            ws = [w for w in PRV_WITNESSES if build_cartan(w.type_label).label == cd.label]
            if args.witness != "all":
                ws = [w for w in ws if w.name == args.witness]
            if not ws:
                raise UsageError(f"no witness {args.witness!r} for {cd.label}; known: "
                                 + ", ".join(w.name for w in PRV_WITNESSES))
            return out.report([verify_prv_witness(w, args.depth) for w in ws])
        if not (args.lam and args.mu):
            raise UsageError("verify prv needs --lambda and --mu (or --witness)")
        lam, mu = parse_weight(cd, args.lam), parse_weight(cd, args.mu)
        return out.report(verify_prv(cd, lam, mu, parse_word(args.v), parse_word(args.w), args.depth))
    if a == "delta-series":
        lam, mu = parse_weight(cd, args.lam), parse_weight(cd, args.mu)
        return out.report(delta_series_report(cd, lam, mu, args.depth))
    if a == "homdim":
        if args.theta or args.lam or args.mu:
            if not (args.theta and args.lam and args.mu):
                raise UsageError("single-instance homdim needs --lambda, --mu and --theta")
            S = [int(x) for x in args.S.split(",") if x.strip()]
            lam, mu, theta = (parse_weight(cd, x) for x in (args.lam, args.mu, args.theta))
            return out.value("dimension", hom_dim_prediction(cd, lam, mu, theta, S))
        return out.report(verify_homdim(cd, args.max_k))
    if a == "positivity":
        return out.report(verify_positivity(cd, args.max_level, args.max_k, args.coord_bound))
    if a == "rho-beta-dominance":
        return out.report(rho_beta_dominance_check(cd, args.max_k))
    raise UsageError(a)


_COMMANDS = {
    "roots": _cmd_roots,
    "mult": _cmd_mult,
    "tensor": _cmd_tensor,
    "gko": _cmd_gko,
    "wahl": _cmd_wahl,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        cd = build_cartan(args.type_label)
        return _COMMANDS[args.command](args, cd, _Out(args))
    except WindowError as e:
        print(f"window insufficient: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except InvalidTypeError as e:
        print(f"unknown or invalid type: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, UnsupportedWeightError, RootError, ValueError, IndexError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as e:
        print(f"internal consistency failure: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
