"""Command-line front end.

Exit codes: 0 success, 1 the two signatures are isomorphic, 2 usage error,
3 a search or scan hit its capacity, 4 a certificate failed verification or a
search that theory guarantees came back empty."""

import argparse
import json
import sys

from .abelianization import PreconditionError, abelianize
from .distinguisher import (IsomorphicInputs, NotFuchsian, distinguish, from_json,
                            render_text, to_json, verify_certificate)
from .finite_groups import CapacityError, enumerate_epimorphisms, group_from_descriptor
from .scrape_matrices import matrix_check
from .scrapes import (Factor, InternalContradiction, closure, find_distinguishing_scrape,
                      scrape)
from .signatures import SignatureParseError, euler_char, format_signature, parse_signature
from .smooth_reps import (DEFAULT_SCAN_CAP, BoundExceeded, InconsistentInput, InfeasibleSystem,
                          find_q, kernel_signature, macbeath_admits)

EXIT_OK, EXIT_ISOMORPHIC, EXIT_USAGE, EXIT_CAPACITY, EXIT_UNVERIFIED = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def parse_int_list(text):
    if text.strip() in ("", "-"):
        return ()
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError("expected comma separated integers, got %r" % text)
    if any(v < 1 for v in vals):
        raise UsageError("entries must be positive: %r" % text)
    return vals


def parse_multiset(text):
    """Either a bare list `2,3,7` or a signature whose cones are taken."""
    if text.lstrip().startswith("("):
        return tuple(parse_signature(text).cones)
    return parse_int_list(text)


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


# --- subcommands ----------------------------------------------------------------

def cmd_abelianize(args):
    s = parse_signature(args.signature)
    ab = abelianize(s)
    data = {"signature": format_signature(s), "free_rank": ab.free_rank,
            "torsion_chain": list(ab.torsion_chain), "torsion": list(ab.torsion())}
    _emit(args, data, "%s: rank %d, torsion chain %s, group %s"
          % (format_signature(s), ab.free_rank, list(ab.torsion_chain), ab))
    return EXIT_OK


def cmd_scrape(args):
    m = parse_multiset(args.multiset)
    f = scrape(m, args.s)
    data = {"multiset": list(m), "s": args.s, "scrape": list(f.values), "chi": str(f.chi())}
    _emit(args, data, "scrape at s=%d: %s (chi %s)" % (args.s, list(f.values), f.chi()))
    return EXIT_OK


def cmd_closure(args):
    vals, parent = parse_int_list(args.factor), parse_multiset(args.parent)
    try:
        f = closure(Factor(parent, vals))
    except ValueError as e:
        raise UsageError(str(e))
    data = {"factor": list(vals), "parent": list(parent), "closure": list(f.values),
            "chi": str(f.chi())}
    _emit(args, data, "closure: %s (chi %s)" % (list(f.values), f.chi()))
    return EXIT_OK


def cmd_find_scrape(args):
    m, n = parse_multiset(args.m), parse_multiset(args.n)
    s = find_distinguishing_scrape(m, n)
    _emit(args, {"m": list(m), "n": list(n), "s": s}, "distinguishing scrape: s=%d" % s)
    return EXIT_OK


def cmd_matrix_check(args):
    if args.M < 1:
        raise UsageError("M must be positive")
    r = matrix_check(args.M)
    data = {"M": r.modulus, "tau": r.tau, "rank_E": r.rank_E, "rank_X": r.rank_X,
            "rank_F": r.rank_F, "rank_F_patched": r.rank_F_patched,
            "pivotless_Y": list(r.pivotless_Y), "x_routes_agree": r.x_routes_agree,
            "y_routes_agree": r.y_routes_agree, "ok": r.ok()}
    text = ("M=%d tau=%d rank(E)=%d rank(X)=%d rank(F)=%d rank(F')=%d pivotless(Y)=%s "
            "X routes agree=%s Y routes agree=%s ok=%s"
            % (r.modulus, r.tau, r.rank_E, r.rank_X, r.rank_F, r.rank_F_patched,
               list(r.pivotless_Y), r.x_routes_agree, r.y_routes_agree, r.ok()))
    _emit(args, data, text)
    return EXIT_OK


def cmd_epis(args):
    s = parse_signature(args.signature)
    try:
        G = group_from_descriptor(args.group)
    except ValueError as e:
        raise UsageError(str(e))
    profile = parse_int_list(args.profile) if args.profile else None
    if profile is not None and len(profile) != s.k:
        raise UsageError("profile needs %d entries" % s.k)
    if args.count_only:
        n = enumerate_epimorphisms(s, G, profile, count_only=True)
        _emit(args, {"signature": format_signature(s), "group": args.group, "count": n},
              "%d epimorphisms" % n)
        return EXIT_OK
    homs = enumerate_epimorphisms(s, G, profile)
    shown = homs[:args.limit]
    data = {"signature": format_signature(s), "group": args.group, "count": len(homs),
            "shown": [list(h.images()) for h in shown]}
    lines = ["%d epimorphisms" % len(homs)] + [" ".join(map(str, h.images())) for h in shown]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_macbeath(args):
    m = parse_multiset(args.m)
    try:
        ok = macbeath_admits(m, args.q)
    except ValueError as e:
        raise UsageError(str(e))
    _emit(args, {"m": list(m), "q": args.q, "admits": ok}, "admits" if ok else "does not admit")
    return EXIT_OK


def cmd_find_q(args):
    m = parse_multiset(args.m)
    x = scrape(m, args.scrape).values if args.scrape else m
    q = find_q(x, m, args.max_prime_scan)
    _emit(args, {"m": list(m), "x": list(x), "q": q}, "q = %d (x = %s)" % (q, list(x)))
    return EXIT_OK


def cmd_kernel(args):
    s = parse_signature(args.signature)
    orders = parse_int_list(args.orders)
    par = parse_int_list(args.parabolic) if args.parabolic else None
    try:
        k = kernel_signature(s, args.order, par, orders)
    except InconsistentInput as e:
        raise UsageError(str(e))
    b1 = 2 * k.genus + max(k.punctures - 1, 0)
    data = {"signature": format_signature(s), "order": args.order, "kernel": format_signature(k),
            "genus": k.genus, "punctures": k.punctures, "b1": b1, "chi": str(euler_char(k))}
    _emit(args, data, "kernel %s, b1 = %d" % (format_signature(k), b1))
    return EXIT_OK


def cmd_distinguish(args):
    left, right = parse_signature(args.left), parse_signature(args.right)
    try:
        cert = distinguish(left, right, args.max_prime_scan)
    except IsomorphicInputs as e:
        print(str(e), file=sys.stderr)
        return EXIT_ISOMORPHIC
    except NotFuchsian as e:
        raise UsageError(str(e))
    code = EXIT_OK
    if args.verify:
        rep = verify_certificate(cert, left, right)
        cert = cert.with_verification(rep)
        if not rep.ok:
            code = EXIT_UNVERIFIED
    print(to_json(cert) if args.json else render_text(cert))
    return code


def cmd_verify(args):
    try:
        with open(args.certificate) as fh:
            cert = from_json(fh.read())
    except (OSError, ValueError, KeyError) as e:
        raise UsageError("cannot read certificate: %s" % e)
    rep = verify_certificate(cert, cert.left, cert.right)
    if args.json:
        print(json.dumps({"ok": rep.ok, "checks": [c.__dict__ for c in rep.checks]}, indent=2))
    else:
        print(rep)
    return EXIT_OK if rep.ok else EXIT_UNVERIFIED


# --- parser -----------------------------------------------------------------------

def _global_flags(suppress):
    # the copy attached to subcommands must not reset flags given before them
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--json", action="store_true",
                   default=argparse.SUPPRESS if suppress else False,
                   help="machine readable output")
    g.add_argument("--max-prime-scan", type=int, metavar="N",
                   default=argparse.SUPPRESS if suppress else DEFAULT_SCAN_CAP,
                   help="largest prime power tried by searches (default %d)" % DEFAULT_SCAN_CAP)
    return g


def build_parser():
    p = argparse.ArgumentParser(prog="fuchsian-quotients", parents=[_global_flags(False)],
                                description="Finite quotients distinguishing Fuchsian groups.")
    sub = p.add_subparsers(dest="command", required=True)
    common = _global_flags(True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("abelianize", cmd_abelianize, "rank and torsion chain")
    sp.add_argument("signature")
    sp = add("scrape", cmd_scrape, "the scrape m_s")
    sp.add_argument("multiset")
    sp.add_argument("--s", type=int, required=True)
    sp = add("closure", cmd_closure, "closure of a factor")
    sp.add_argument("factor")
    sp.add_argument("--parent", required=True)
    sp = add("find-scrape", cmd_find_scrape, "smallest distinguishing scrape")
    sp.add_argument("m")
    sp.add_argument("n")
    sp = add("matrix-check", cmd_matrix_check, "ranks and pivots of the scrape matrices")
    sp.add_argument("M", type=int)
    sp = add("epis", cmd_epis, "epimorphisms onto a small group")
    sp.add_argument("signature")
    sp.add_argument("group", help="trivial | cyclic:n | dihedral:2n | a4 | psl2:q")
    sp.add_argument("--profile")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--limit", type=int, default=20)
    sp = add("macbeath", cmd_macbeath, "Macbeath's criterion for PSL(2,q)")
    sp.add_argument("m")
    sp.add_argument("q", type=int)
    sp = add("find-q", cmd_find_q, "prime power for a maximally smooth PSL(2,q) map")
    sp.add_argument("m")
    sp.add_argument("--scrape", type=int)
    sp = add("kernel", cmd_kernel, "kernel signature by Riemann-Hurwitz")
    sp.add_argument("signature")
    sp.add_argument("order", type=int)
    sp.add_argument("orders", help="elliptic image orders c1,...,ck")
    sp.add_argument("--parabolic", help="parabolic image orders d1,...,dp")
    sp = add("distinguish", cmd_distinguish, "certificate of a distinguishing finite quotient")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--verify", action="store_true")
    sp = add("verify", cmd_verify, "re-check a JSON certificate")
    sp.add_argument("certificate")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SignatureParseError, UsageError, PreconditionError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (BoundExceeded, CapacityError) as e:
        print("capacity: %s" % e, file=sys.stderr)
        return EXIT_CAPACITY
    except (InternalContradiction, InfeasibleSystem) as e:
        print("internal: %s" % e, file=sys.stderr)
        return EXIT_UNVERIFIED
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
