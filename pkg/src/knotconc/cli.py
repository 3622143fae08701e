"""
knotconc command line.

Exit codes: 0 computed, 2 input or precondition error, 3 indeterminate verdict.
"""

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra.laurent import LaurentPolynomial
from .algebra.squares import is_prime
from .knotfile import load_knot, validate
from .knots import (Character, LinkedAbelianGroup, branched_cover_homology, integer_form,
                    linking_form, presentation_homology)
from .lens import (independence_certificate, infinite_order_certificate, lens_signature,
                   sigma_min)
from .obstruction import (fox_milnor_test, metabolizer_search, order_two_report,
                          orthogonal_square)
from .twisted import serialize_poly, twisted_alexander

EXIT_OK, EXIT_INPUT, EXIT_INDETERMINATE = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(ValueError):
    pass


def _poly_text(p):
    return p.to_str(prime_basis=True)


def _group_json(G):
    return G.to_json()


# -- subcommands -------------------------------------------------------------


def cmd_alex(args):
    rec = load_knot(args.knotfile)
    canon = rec.validate()
    ints = integer_form(canon)
    ints_det = abs(ints(-1))
    out = {"knot": rec.name,
           "routes": {k: str(integer_form(v)) for k, v in rec.alexander_polynomials().items()},
           "alexander": str(ints), "alexander_data": serialize_poly(ints),
           "determinant": str(ints_det)}
    lines = ["%s: Delta(t) = %s" % (rec.name, ints), "|Delta(-1)| = %s" % ints_det]
    return out, lines, False


def _parse_character(text, orders, d):
    vals = [int(v) for v in str(text).replace(",", " ").split()]
    if len(vals) == 1 and len(orders) > 1:
        vals = vals + [0] * (len(orders) - 1)
    return Character(d, tuple(vals), tuple(orders))


def cmd_twisted(args):
    rec = load_knot(args.knotfile)
    p = rec.group_presentation()
    G, _, _ = presentation_homology(p, args.cover)
    if args.character is None or args.modulus == 1:
        chi = Character(args.modulus, (0,) * G.rank, G.orders)
    else:
        chi = _parse_character(args.character, G.orders, args.modulus)
    P = twisted_alexander(p, args.cover, chi, column=args.column)
    s = P.t_minus_one_power()
    residual = P.strip_t_minus_one(s)
    out = {"knot": rec.name, "n": args.cover, "d": P.d, "cover_homology": list(G.orders),
           "character": chi.to_json(), "deleted_column": P.deleted_column,
           "polynomial": _poly_text(P.value), "polynomial_data": serialize_poly(P.value),
           "t_minus_one_power": s, "residual": _poly_text(residual),
           "residual_data": serialize_poly(residual)}
    lines = ["%s, %d-fold cover, H_1 = %s, character %s mod %d"
             % (rec.name, args.cover, " + ".join("Z/%d" % o for o in G.orders) or "0",
                list(chi.values), chi.d),
             "Delta_chi = (t - 1)^%d * [%s]" % (s, _poly_text(residual))]
    if residual.span() == 2 and P.d > 2 and is_prime(P.d):
        c = residual.coeff(residual.min_exp() + 1)
        out["middle_coefficient"] = [str(x) for x in c.prime_basis_coeffs()]
        lines.append("c = %s" % c.to_str(prime_basis=True))
    return out, lines, False


def cmd_cover_homology(args):
    rec = load_knot(args.knotfile)
    G = branched_cover_homology(rec, args.n, route=args.route)
    out = {"knot": rec.name, "n": args.n, "group": _group_json(G), "order": G.order()}
    desc = " + ".join("Z/%d" % o for o in G.orders) or "0"
    lines = ["H_1 of the %d-fold branched cover of %s: %s" % (args.n, rec.name, desc)]
    if G.linking is not None:
        lines.append("linking matrix: %s" % [[str(x) for x in r] for r in G.linking])
    return out, lines, False


def _double_cover_form(rec):
    G0, _, _ = presentation_homology(rec.group_presentation(), 2)
    if rec.seifert is not None:
        return linking_form(rec.seifert), "seifert"
    if G0.rank > 1:
        raise ValueError("non-cyclic H_1 without a Seifert matrix: linking form unknown")
    if G0.rank == 0:
        return LinkedAbelianGroup(()), "trivial"
    N = G0.orders[0]
    return LinkedAbelianGroup((N,), ((Fraction(1, N),),)), "presentation (form fixed up to a unit)"


def cmd_metabolizers(args):
    rec = load_knot(args.knotfile)
    G, source = _double_cover_form(rec)
    H = G if args.single else orthogonal_square(G)
    mets, reason = metabolizer_search(H, method=args.method)
    out = {"knot": rec.name, "connected_sum": not args.single, "group": H.to_json(),
           "linking_source": source, "metabolizers": [m.to_json() for m in mets],
           "reason": reason}
    lines = ["%s%s: %s" % (rec.name, "" if args.single else " # " + rec.name,
                           " + ".join("Z/%d" % o for o in H.orders) or "0")]
    lines += ["  <%s>" % ", ".join(str(tuple(g)) for g in m.generators) for m in mets]
    if not mets:
        lines.append("  no metabolizers: %s" % reason)
    return out, lines, False


def cmd_order2(args):
    rec = load_knot(args.knotfile)
    report = order_two_report(rec, all_characters=args.all_characters)
    out = report.to_json()
    validate(out, "obstruction_report")
    lines = ["%s: %s (%s)" % (rec.name, report.verdict, report.reason)]
    for m in report.metabolizers:
        lines.append("  metabolizer <%s>: %s" % (", ".join(str(tuple(g)) for g in m.metabolizer.generators),
                                               m.verdict))
        for c in m.characters:
            lines.append("    h = %s, d = %d: %s" % (tuple(c.h), c.d, c.test.verdict))
    return out, lines, report.indeterminate


def cmd_lens(args):
    if args.lens_command == "sigma":
        v = lens_signature(args.k, args.r)
        out = v.to_json()
        out["minimum"] = str(sigma_min(v.m))
        return out, ["sigma(T_%d, chi^(2*%d)) = %s" % (v.k, v.r, v.value)], False
    if args.lens_command == "infinite-order":
        cert = infinite_order_certificate(args.k, args.n, override=args.override)
        out = cert.to_json()
        validate(out, "order_certificate")
        lines = ["%s: %s" % (s, v) for s, v in cert.chain]
        lines.append("verdict: %s" % cert.verdict)
        return out, lines, False
    if args.lens_command == "independence":
        pairs = []
        for item in args.pairs.split(","):
            k, _, n = item.partition(":")
            if not n:
                raise ValueError("pairs are written k:n, got %r" % item)
            pairs.append((int(k), int(n)))
        cert = independence_certificate(pairs)
        out = cert.to_json()
        validate(out, "independence_certificate")
        lines = ["pairs %s: %s via %s" % (list(cert.pairs), cert.verdict, cert.step)]
        if cert.reduced_bound is not None:
            lines.append("bound for m1 = %d: %s" % (cert.m1, cert.reduced_bound))
        return out, lines, False
    raise UsageError("lens needs a subcommand: sigma, infinite-order, independence")


def parse_poly(text):
    coeffs = [Fraction(c) for c in text.replace(",", " ").split()]
    if not coeffs or not any(coeffs):
        raise ValueError("polynomial must have a nonzero coefficient")
    return LaurentPolynomial.from_coeffs(coeffs)


def cmd_fox_milnor(args):
    delta = parse_poly(args.poly)
    res = fox_milnor_test(delta)
    out = res.to_json()
    out["input"] = str(delta)
    lines = ["%s: %s" % (delta, res.verdict)]
    if res.witness is not None:
        lines.append("f(t) = %s" % res.witness)
    if res.reason:
        lines.append(res.reason)
    return out, lines, res.verdict == "indeterminate"


COMMANDS = {"alex": cmd_alex, "twisted": cmd_twisted, "cover-homology": cmd_cover_homology,
            "metabolizers": cmd_metabolizers, "order2": cmd_order2, "lens": cmd_lens,
            "fox-milnor": cmd_fox_milnor}


def build_parser():
    ap = _Parser(prog="knotconc", description="Exact concordance computations for knots.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--version", action="version", version="knotconc " + __version__)
    sub = ap.add_subparsers(dest="command")

    s = sub.add_parser("alex", help="Alexander polynomial")
    s.add_argument("knotfile")

    s = sub.add_parser("twisted", help="twisted Alexander polynomial")
    s.add_argument("knotfile")
    s.add_argument("--cover", type=int, default=2)
    s.add_argument("--modulus", type=int, default=1)
    s.add_argument("--character", default=None,
                   help="values on the invariant-factor generators, e.g. 1 or 1,0")
    s.add_argument("--column", type=int, default=None)

    s = sub.add_parser("cover-homology", help="homology of a branched cyclic cover")
    s.add_argument("knotfile")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--route", choices=("seifert", "presentation"), default=None)

    s = sub.add_parser("metabolizers", help="metabolizers of the double branched cover of K # K")
    s.add_argument("knotfile")
    s.add_argument("--single", action="store_true", help="use K instead of K # K")
    s.add_argument("--method", choices=("auto", "fast", "generic", "brute"), default="auto")

    s = sub.add_parser("order2", help="is K # K obstructed from being slice?")
    s.add_argument("knotfile")
    s.add_argument("--all-characters", action="store_true")

    s = sub.add_parser("lens", help="lens-space signatures of twist knots")
    lsub = s.add_subparsers(dest="lens_command")
    l1 = lsub.add_parser("sigma")
    l1.add_argument("--k", type=int, required=True)
    l1.add_argument("--r", type=int, required=True)
    l2 = lsub.add_parser("infinite-order")
    l2.add_argument("--k", type=int, required=True)
    l2.add_argument("--n", type=int, required=True)
    l2.add_argument("--override", action="store_true", help="skip the k >= 3, 4k+1 prime checks")
    l3 = lsub.add_parser("independence")
    l3.add_argument("--pairs", required=True, help="k:n,k:n,...")

    s = sub.add_parser("fox-milnor", help="Fox-Milnor factorization test over Q")
    s.add_argument("--poly", required=True, help="coefficients from t^0 upwards, e.g. '2,-5,2'")
    return ap


def _inputs_hash(argv, args):
    h = hashlib.sha256()
    h.update(json.dumps(list(argv)).encode())
    path = getattr(args, "knotfile", None)
    if path and Path(path).is_file():
        h.update(Path(path).read_bytes())
    return h.hexdigest()


def run(argv=None, stdout=None):
    """Run the CLI; returns ``(exit_code, envelope)`` and prints the report."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    fmt = "json" if "--format=json" in argv or _flag_value(argv, "--format") == "json" else "text"
    start = time.perf_counter()
    envelope = {"tool": "knotconc", "version": __version__, "command": argv}
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.command is None:
            raise UsageError("missing subcommand (one of %s)" % ", ".join(COMMANDS))
        envelope["inputs_hash"] = _inputs_hash(argv, args)
        result, lines, indeterminate = COMMANDS[args.command](args)
        envelope["result"] = result
        code = EXIT_INDETERMINATE if indeterminate else EXIT_OK
    except (UsageError, FileNotFoundError, ValueError, ArithmeticError, KeyError) as e:
        kind = type(e).__name__
        msg = str(e) if not isinstance(e, KeyError) else str(e.args[0] if e.args else e)
        envelope["error"] = {"type": kind, "message": msg}
        lines = ["error: %s" % msg]
        code = EXIT_INPUT
    envelope["exit_code"] = code
    envelope["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if fmt == "json":
        stdout.write(json.dumps(envelope, indent=1, sort_keys=True) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return code, envelope


def _flag_value(argv, flag):
    if flag in argv:
        i = argv.index(flag)
        if i + 1 < len(argv):
            return argv[i + 1]
    return None


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
