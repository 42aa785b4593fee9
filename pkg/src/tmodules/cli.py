"""Command-line interface.

Exit codes: 0 success, 1 invalid input (schema or t-module axioms),
2 precision not certified, 3 method or stabilization failure,
4 the verification identity does not hold.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import GF, LaurentSeries, Poly, PrecisionError
from .analytic import (HeadBoundError, InsufficientCoefficientsError, StabilizationError,
                       TwistedCoordinatesError, class_module, lattice_index, regulator,
                       unit_module)
from .fixtures import FIXTURE_DIR
from .shtuka import (InadmissibleError, ShtukaUnitError, build_pencil, ext_groups,
                     units_via_shtuka)
from .tmodule import (SchemaError, TModule, UncertifiedPrecisionError, ValidationError,
                      euler_factor, l_value, make_carlitz_power, zeta_sum)

EXIT_OK, EXIT_INPUT, EXIT_UNCERTIFIED, EXIT_METHOD, EXIT_MISMATCH = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------------ helpers

def load_module(source: str) -> TModule:
    """Load a module description from a path or a bundled fixture name."""
    p = Path(source)
    if not p.exists():
        alt = FIXTURE_DIR / (source if source.endswith(".json") else source + ".json")
        if alt.exists():
            p = alt
        else:
            raise CliError(EXIT_INPUT, f"no such module file: {source}")
    try:
        return TModule.load(p)
    except (SchemaError, ValidationError) as exc:
        raise CliError(EXIT_INPUT, f"invalid module: {exc}") from exc


def series_report(s: LaurentSeries, N=None):
    """Coefficients of t^0, t^-1, ..., t^-(N-1) plus the raw Laurent data."""
    out = s.to_dict()
    if N is not None:
        out["coefficients_mod_t^-N"] = [int(a) for a in s.coeffs_between(0, min(N, s.prec))]
    out["text"] = s.to_str(terms=16)
    return out


def poly_report(p: Poly):
    return {"coefficients": [int(a) for a in p.c], "text": p.to_str("t")}


def _emit(args, data, text_lines):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


# ------------------------------------------------------------------ commands

def cmd_zeta(args):
    F = GF.get(args.q)
    if args.method == "sum":
        z = zeta_sum(args.q, args.n, args.prec, F)
        flags = {"certified": True, "method": "power-sum"}
    else:
        res = l_value(make_carlitz_power(args.q, args.n, F), args.prec, args.max_deg,
                      strict=False)
        z = res.series
        flags = dict(res.flags(), method="euler-product")
    data = {"q": args.q, "n": args.n, "precision": args.prec,
            "zeta": series_report(z, args.prec), "flags": flags}
    _emit(args, data, [f"zeta(F_{args.q}[t], {args.n}) = {z.to_str(terms=args.prec)}",
                       f"certified: {flags['certified']}"])
    return EXIT_OK if flags["certified"] else EXIT_UNCERTIFIED


def cmd_lvalue(args):
    E = load_module(args.module)
    res = l_value(E, args.prec, args.max_deg, strict=False)
    data = {"module": E.descriptor(), "precision": args.prec,
            "lvalue": series_report(res.series, args.prec), "flags": res.flags(),
            "violations": res.violations[:10]}
    _emit(args, data, [f"L(E/R) = {res.series.to_str(terms=args.prec)}",
                       f"certified: {res.certified} (degree bound {res.max_deg}, "
                       f"{res.primes_used} primes)"])
    return EXIT_OK if res.certified else EXIT_UNCERTIFIED


def cmd_euler_factor(args):
    E = load_module(args.module)
    try:
        pi = Poly(E.field, [int(c) for c in args.prime.split(",")])
    except ValueError as exc:
        raise CliError(EXIT_INPUT, f"bad --prime: {exc}") from exc
    try:
        rep = euler_factor(E, pi, args.prec)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    data = rep.to_dict()
    data["module"] = E.descriptor()
    _emit(args, data, [f"prime {pi.to_str('z')}: |Lie| = {rep.numerator.to_str('t')}, "
                       f"|E| = {rep.denominator.to_str('t')}",
                       f"factor = {rep.factor.to_str(terms=args.prec)}"])
    return EXIT_OK


def _lattice_report(L):
    return [[series_report(a.with_var("z")) for a in v] for v in L.basis]


def cmd_units(args):
    E = load_module(args.module)
    out = {"module": E.descriptor(), "method": args.method, "precision": args.prec}
    lines = []
    lats = {}
    if args.method in ("analytic", "both"):
        U = unit_module(E, prec=args.prec)
        lats["analytic"] = U
        out["analytic"] = {"basis": _lattice_report(U), "head_bound": U.head_bound,
                           "ball_constants": U.constants.to_dict(), "checks": U.checks,
                           "index": series_report(regulator(U), args.prec)}
        lines.append(f"analytic: [Lie(E)(R) : U] = {regulator(U).to_str(terms=args.prec)}")
    if args.method in ("shtuka", "both"):
        S = units_via_shtuka(E, prec=args.prec)
        lats["shtuka"] = S
        out["shtuka"] = {"basis": _lattice_report(S), "d": S.pencil.d, "checks": S.checks,
                         "index": series_report(regulator(S), args.prec)}
        lines.append(f"shtuka:   [Lie(E)(R) : U] = {regulator(S).to_str(terms=args.prec)}")
    if len(lats) == 2:
        mi = lattice_index(lats["analytic"], lats["shtuka"])
        agree = mi.equals(LaurentSeries.one(E.field, mi.var), min(mi.prec, args.prec))
        out["agreement"] = bool(agree)
        lines.append(f"mutual index = 1: {agree}")
    _emit(args, out, lines)
    return EXIT_OK if out.get("agreement", True) else EXIT_MISMATCH


def cmd_class_module(args):
    E = load_module(args.module)
    out = {"module": E.descriptor(), "method": args.method}
    lines = []
    orders = {}
    if args.method in ("analytic", "both"):
        H = class_module(E, window=args.window)
        orders["analytic"] = H.order()
        out["analytic"] = H.to_dict()
        lines.append(f"analytic: |H| = {H.order().to_str('t')}")
    if args.method in ("shtuka", "both"):
        R = ext_groups(build_pencil(E))
        orders["shtuka"] = R.ext2_order
        out["shtuka"] = {"d": R.pencil.d,
                         "invariant_factors": [poly_report(f) for f in R.ext2_factors],
                         "order": poly_report(R.ext2_order), "ext1_rank": R.ext1_rank}
        lines.append(f"shtuka:   |H| = {R.ext2_order.to_str('t')} "
                     f"(invariant factors {[f.to_str('t') for f in R.ext2_factors]})")
    if len(orders) == 2:
        out["agreement"] = orders["analytic"] == orders["shtuka"]
        lines.append(f"agreement: {out['agreement']}")
    _emit(args, out, lines)
    return EXIT_OK if out.get("agreement", True) else EXIT_MISMATCH


class VerificationReport:
    """L(E/R) against [Lie(E)(R) : U] * |H| modulo t^-N."""

    def __init__(self, E, N, L, index, H, H_analytic, flags, provenance):
        self.E = E
        self.N = N
        self.L = L
        self.index = index
        self.H = H
        self.H_analytic = H_analytic
        self.flags = flags
        self.provenance = provenance
        prod = index * LaurentSeries.from_poly(H, index.var)
        self.product = prod
        self.match = bool(prod.truncate(N).equals(L.with_var(index.var).truncate(N), N))

    def to_dict(self):
        return {
            "module": self.E.descriptor(),
            "precision": self.N,
            "lvalue": series_report(self.L, self.N),
            "lattice_index": series_report(self.index, self.N),
            "class_module_order": poly_report(self.H),
            "class_module_order_analytic": (poly_report(self.H_analytic)
                                            if self.H_analytic is not None else None),
            "product": series_report(self.product, self.N),
            "match": self.match,
            "provenance": self.provenance,
            "flags": self.flags,
        }


def verify_module(E: TModule, N=10, max_deg=None):
    Lres = l_value(E, N, max_deg, strict=False)
    flags = dict(Lres.flags())
    R = ext_groups(build_pencil(E))
    H = R.ext2_order
    flags["ext2_torsion"] = R.ext2_torsion
    provenance = {"lvalue": "euler-product", "class_module_order": "shtuka"}
    try:
        Ha = class_module(E).order()
        flags["class_module_stabilized"] = True
        flags["class_module_methods_agree"] = Ha == H
    except StabilizationError:
        Ha = None
        flags["class_module_stabilized"] = False
    U = unit_module(E, prec=N + H.degree + 2)
    flags["exp_tail_certified"] = bool(U.constants.tail_certified)
    flags["unit_exp_integral"] = bool(U.checks.get("exp_integral"))
    provenance["lattice_index"] = "analytic"
    if E.e == 1:
        S = units_via_shtuka(E, prec=N + H.degree + 2)
        mi = lattice_index(U, S)
        flags["unit_methods_agree"] = bool(
            mi.equals(LaurentSeries.one(E.field, mi.var), min(mi.prec, N)))
        provenance["lattice_index"] = "analytic+shtuka"
    return VerificationReport(E, N, Lres.series, regulator(U), H, Ha, flags, provenance)


def cmd_verify(args):
    E = load_module(args.module)
    rep = verify_module(E, args.prec, args.max_deg)
    _emit(args, rep.to_dict(), [
        f"L(E/R)            = {rep.L.to_str(terms=args.prec)}",
        f"[Lie(E)(R) : U]   = {rep.index.to_str(terms=args.prec)}",
        f"|H(E/R)|          = {rep.H.to_str('t')}",
        f"match mod t^-{args.prec}: {rep.match}",
        f"L certified: {rep.flags['certified']}"])
    return EXIT_OK if rep.match else EXIT_MISMATCH


# ------------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="tmodules", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, module=True):
        if module:
            sp.add_argument("--module", required=True,
                            help="module description (JSON path or bundled fixture name)")
        sp.add_argument("--prec", type=int, default=10, help="precision N (coefficients)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    s = sub.add_parser("zeta", help="Carlitz zeta value zeta(F_q[t], n)")
    common(s, module=False)
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--max-deg", type=int, default=None)
    s.add_argument("--method", choices=["sum", "euler"], default="sum")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("lvalue", help="special L-value by Euler product")
    common(s)
    s.add_argument("--max-deg", type=int, default=None)
    s.set_defaults(func=cmd_lvalue)

    s = sub.add_parser("euler-factor", help="local factor at one prime")
    common(s)
    s.add_argument("--prime", required=True,
                   help="monic irreducible pi(z), coefficients lowest first, e.g. 1,1,1")
    s.set_defaults(func=cmd_euler_factor)

    s = sub.add_parser("units", help="unit module exp^-1(E(R))")
    common(s)
    s.add_argument("--method", choices=["analytic", "shtuka", "both"], default="both")
    s.set_defaults(func=cmd_units)

    s = sub.add_parser("class-module", help="class module H(E/R)")
    common(s)
    s.add_argument("--method", choices=["analytic", "shtuka", "both"], default="both")
    s.add_argument("--window", type=int, default=None, help="stabilization window")
    s.set_defaults(func=cmd_class_module)

    s = sub.add_parser("verify", help="check L = [Lie(E)(R) : U] * |H| mod t^-N")
    common(s)
    s.add_argument("--max-deg", type=int, default=None)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "prec", 1) < 1:
        print("error: --prec must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (SchemaError, ValidationError, InadmissibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UncertifiedPrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except StabilizationError as exc:
        print(f"error: {exc} (try --method shtuka)", file=sys.stderr)
        return EXIT_METHOD
    except (ShtukaUnitError, HeadBoundError, TwistedCoordinatesError,
            InsufficientCoefficientsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_METHOD
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED


if __name__ == "__main__":
    raise SystemExit(main())


__all__ = ["main", "build_parser", "VerificationReport", "verify_module", "load_module"]
