"""Command-line interface: ``python -m symblob <command> ...``."""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import blocks as B
from .diagrams import DiagramError
from .exact import ConfigError, RootSpec
from .params import DN, BLabel, ParameterError, WeightParams, all_labels, dn_labels

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument plumbing


def _frac(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def _signs(s):
    """``+,-`` / ``+-`` / ``1,-1`` -> (1, -1)."""
    toks = s.split(",") if "," in s else list(s)
    if len(toks) != 2:
        raise argparse.ArgumentTypeError(f"expected two signs, got {s!r}")
    out = []
    for t in toks:
        t = t.strip()
        if t in ("+", "+1", "1"):
            out.append(1)
        elif t in ("-", "-1"):
            out.append(-1)
        else:
            raise argparse.ArgumentTypeError(f"bad sign {t!r}")
    return tuple(out)


def params_from(args):
    if args.ell is not None and args.q0 is not None:
        raise UsageError("--ell and --q0 are mutually exclusive")
    if args.ell is not None:
        spec = RootSpec("root", ell=args.ell)
    elif args.q0 is not None:
        spec = RootSpec.point(args.q0)
    else:
        spec = RootSpec.generic()
    return WeightParams(args.w1, args.w2, theta=args.theta, spec=spec, scheme=args.scheme)


def label_from(args):
    if args.m is None:
        return BLabel(args.n)
    if args.eps is None:
        raise UsageError("--m needs --eps")
    return DN(args.n, args.m, *args.eps)


def _emit(text, args):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_basis(args):
    from .cellmod import build
    from .diagrams import enumerate_basis, serialize
    ds = enumerate_basis(args.n, guard=args.guard or 8)
    if args.format == "json":
        _emit(json.dumps({"n": args.n, "count": len(ds), "diagrams": [serialize(d) for d in ds]}, indent=1) + "\n", args)
        return EXIT_OK
    lines = [f"|B^x_{args.n}| = {len(ds)}"]
    lines += [serialize(d) for d in ds]
    dims = [build(l).dim for l in all_labels(args.n)]
    total = sum(d * d for d in dims)
    lines.append(f"sum of squared cell dimensions = {total} ({'ok' if total == len(ds) else 'MISMATCH'})")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if total == len(ds) else EXIT_FAIL


def cmd_mult(args):
    from .diagrams import BlobAlgebra, parse
    from .params import scheme_convert
    p = params_from(args)
    f = p.field()
    alg = BlobAlgebra(args.n, scheme_convert(p, args.scheme, args.n).embed(f), f)
    prod = alg.one()
    for text in args.diagram:
        prod = prod * alg.diagram(parse(args.n, text))
    _emit(repr(prod) + "\n", args)
    return EXIT_OK


def cmd_gram(args):
    from .cellmod import build
    from .gram import closed_form_det, closed_form_ratio, gram_det, gram_matrix, gram_det_Wb, inner_exps
    from .reference import format_monomial
    p = params_from(args)
    label = label_from(args)
    out = []
    status = EXIT_OK
    if args.basis == "diagram":
        mod = build(label)
        rows = [[format_monomial(inner_exps(mod, i, j)) for j in range(mod.dim)] for i in range(mod.dim)]
        width = max(len(x) for r in rows for x in r)
        out.append(f"Gram matrix of {label} (diagram basis, dim {mod.dim}):")
        out += ["  " + "  ".join(x.rjust(width) for x in r) for r in rows]
    else:
        G = gram_matrix(label, p, basis="path")
        out.append(f"path-basis eigenvalues of {label}:")
        out += [f"  {G.entries[i][i]}" for i in range(len(G.entries))]
    if args.det:
        if args.det == "closed-form":
            if isinstance(label, BLabel):
                out.append(f"Gamma (non-unit part) = {gram_det_Wb(label.n)}")
            else:
                out.append(f"Gamma = {closed_form_det(label)}")
                fit = closed_form_ratio(label, p)
                if fit is None:
                    out.append("direct / closed-form is NOT a +-dL^a dR^b monomial")
                    status = EXIT_FAIL
                else:
                    out.append(f"direct / closed-form = {fit[0]:+d} * dL^{fit[1][0]} dR^{fit[1][1]}")
        else:
            out.append(f"det ({args.det}) = {gram_det(label, p, method=args.det)}")
    _emit("\n".join(out) + "\n", args)
    return status


def cmd_central(args):
    from .central import Central, acts_as_scalar, alpha
    p = params_from(args)
    if p.spec.mode == "generic":
        p = p.with_(spec=RootSpec.point(Fraction(7, 3)))
    c = Central(args.n, p, guard=args.guard or 6)
    z = c.z()
    ok = all((z * g - g * z).is_zero() for g in c.alg.generators())
    lines = [f"Z_{args.n} central: {ok}"]
    labels = [label_from(args)] if args.m is not None else dn_labels(args.n)
    for L in labels:
        a = alpha(L, p, c.field).value
        s = acts_as_scalar(z, L, a)
        ok = ok and s
        lines.append(f"  {L}: alpha = {a}  acts as alpha*I: {s}")
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if ok else EXIT_FAIL


def _partition(args, p):
    return B.classify_bnx(args.n, p) if p.theta is not None else B.classify(args.n, p)


def _render_partition(bp, args):
    if args.format == "json":
        return json.dumps(bp.to_json(), indent=1) + "\n"
    if args.format == "svg":
        return B.plot_weights(bp.n, bp.params, bp)
    lines = [f"n={bp.n} regime={bp.regime} classes={len(bp.classes)}"]
    for c in bp.classes:
        lines.append("  {" + ", ".join(str(l) for l in c) + "}")
    return "\n".join(lines) + "\n"


def cmd_blocks(args):
    p = params_from(args)
    bp = _partition(args, p)
    status = EXIT_OK
    text = _render_partition(bp, args)
    if args.compare_oracle:
        from .oracle import linkage_blocks
        t = time.time()
        ob = linkage_blocks(args.n, p, guard=args.guard or 6)
        agree = ob.canonical() == bp.canonical()
        text += f"oracle agreement: {agree} ({time.time() - t:.1f}s)\n"
        if not agree:
            text += "oracle classes:\n" + "".join("  {" + ", ".join(map(str, c)) + "}\n" for c in ob.classes)
            status = EXIT_FAIL
    _emit(text, args)
    return status


def cmd_oracle(args):
    from .oracle import linkage_blocks
    p = params_from(args)
    bp = linkage_blocks(args.n, p, guard=args.guard or 6)
    bp.regime = "oracle"
    _emit(_render_partition(bp, args), args)
    return EXIT_OK


def cmd_plot(args):
    p = params_from(args)
    bp = _partition(args, p)
    _emit(B.plot_weights(args.n, p, bp), args)
    return EXIT_OK


# -- verification suites


def _verify_gram(args):
    from .cellmod import build
    from .gram import gram_det, inner_exps
    from .reference import GRAM_52MM, parse_monomial
    from .exact import box
    p = WeightParams(Fraction(1, 3), Fraction(2, 5))
    L = DN(5, 2, -1, -1)
    mod = build(L)
    ok = [[inner_exps(mod, i, j) for j in range(6)] for i in range(6)] == \
        [[parse_monomial(s) for s in r] for r in GRAM_52MM]
    D = p.D
    w1, w2 = p.w1, p.w2
    want = (box(w1, 0, D) ** 6 * box(w2, 0, D) ** 6 * box(w1, 1, D) ** -8 * box(w2, 1, D) ** -8
            * box(w1, -1, D) * box(w2, -1, D) * box(w1 + w2, 3, D))
    det_ok = gram_det(L, p) == want
    return [("Gram matrix of W^(5,2)_-- matches reference", ok), ("determinant matches", det_ok)]


def _verify_central(args):
    from .central import Central, acts_as_scalar, alpha
    p = WeightParams(Fraction(1, 3), Fraction(2, 5), spec=RootSpec.point(Fraction(7, 3)))
    out = []
    for n in range(1, (args.n or 3) + 1):
        c = Central(n, p)
        z = c.z()
        out.append((f"n={n} Z central", all((z * g - g * z).is_zero() for g in c.alg.generators())))
        out.append((f"n={n} Z scalar on cells",
                    all(acts_as_scalar(z, L, alpha(L, p, c.field).value) for L in dn_labels(n))))
    return out


def _verify_confluence(args):
    import random
    from .diagrams import enumerate_basis, stack, straighten_exps
    n = args.n or 3
    ds = enumerate_basis(n)
    rng = random.Random(0)
    bad = 0
    for _ in range(50):
        pd = stack(*(rng.choice(ds) for _ in range(3)))
        res = {straighten_exps(pd, random.Random(s)) for s in range(5)}
        bad += len(res) != 1
    return [(f"straightening confluent on 50 stacks, n={n}", bad == 0)]


def _verify_figures(args):
    from .reference import FIGURE_PARTITIONS, as_triples, expected_triples, figure_params
    out = []
    for name in FIGURE_PARTITIONS:
        n, p = figure_params(name)
        out.append((f"figure partition {name}", as_triples(B.classify(n, p)) == expected_triples(name)))
    return out


_SUITES = {"gram": _verify_gram, "central": _verify_central,
           "confluence": _verify_confluence, "figures": _verify_figures}


def cmd_verify(args):
    if args.suite not in _SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(_SUITES)}")
    results = _SUITES[args.suite](args)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--eps", type=_signs, help="boundary signs, e.g. --eps=-,+")
    common.add_argument("--w1", type=_frac, default=Fraction(1, 3))
    common.add_argument("--w2", type=_frac, default=Fraction(2, 5))
    common.add_argument("--theta", type=_frac)
    common.add_argument("--ell", type=int, help="q a primitive 2*ell-th root of unity")
    common.add_argument("--q0", type=_frac, help="rational value of x, where q = x^D")
    common.add_argument("--scheme", default="DN", choices=["DN", "GMP1", "GMP2"])
    common.add_argument("--format", default="text", choices=["text", "json", "svg"])
    common.add_argument("--out")
    common.add_argument("--guard", type=int)

    ap = argparse.ArgumentParser(prog="symblob", description="Symplectic blob algebra toolkit")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common]).set_defaults(fn=cmd_basis)
    s = sub.add_parser("mult", parents=[common])
    s.add_argument("diagram", nargs="+", help='diagrams such as "1-3:L 2-4"')
    s.set_defaults(fn=cmd_mult)
    s = sub.add_parser("gram", parents=[common])
    s.add_argument("--basis", default="diagram", choices=["diagram", "path"])
    s.add_argument("--det", choices=["direct", "path", "closed-form"])
    s.set_defaults(fn=cmd_gram)
    sub.add_parser("central", parents=[common]).set_defaults(fn=cmd_central)
    s = sub.add_parser("blocks", parents=[common])
    s.add_argument("--compare-oracle", action="store_true")
    s.set_defaults(fn=cmd_blocks)
    sub.add_parser("oracle", parents=[common]).set_defaults(fn=cmd_oracle)
    sub.add_parser("plot", parents=[common]).set_defaults(fn=cmd_plot)
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("suite")
    s.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    needs_n = args.command not in ("verify",)
    if needs_n and (args.n is None or args.n < 1):
        print("error: --n must be a positive integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except B.UnsupportedRegime as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ParameterError, ConfigError, DiagramError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
