"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 a size or
search cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chang
from .algebra import FiniteMvAlgebra, check_axioms, max_elements, with_names
from .derivations import DEFAULT_MAX_SEARCH, chain_count, enumerate_derivations, enumerate_operators
from .errors import MvError, NotMvAlgebraError, ResourceLimitError
from .expr import build
from .lattice import (
    chain_der_isomorphism,
    chi_filter_check,
    chi_poset,
    der_lattice_coincidences,
    derivation_poset,
    export_hasse,
    family_isomorphism,
    ider_poset,
    pder_poset,
)
from .structure import all_algebras_of_size, boolean_center, decompose, ideals, lattice_ideals
from .verify import run_suite

FILTERS = {
    "principal": lambda r: r.is_principal,
    "isotone": lambda r: r.is_isotone,
    "ider": lambda r: r.in_ider,
    "chi": lambda r: r.is_chi,
    "idempotent": lambda r: r.is_idempotent,
}


class UsageError(Exception):
    pass


def _emit(obj):
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def load_algebra(args):
    if getattr(args, "input", None):
        try:
            with open(args.input, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
        if not isinstance(data, dict) or not {"n", "oplus", "neg"} <= data.keys():
            raise UsageError("input JSON needs keys n, oplus, neg")
        cap = max_elements(args.max_elements)
        if isinstance(data["n"], int) and data["n"] > cap:
            raise ResourceLimitError(f"algebra has {data['n']} elements, cap is {cap}")
        A = FiniteMvAlgebra.from_dict(data)
    elif getattr(args, "expr", None):
        A = build(args.expr, max_size=args.max_elements)
    else:
        raise UsageError("give an algebra expression or --input FILE")
    if getattr(args, "labels", None):
        A = with_names(A, [s.strip() for s in args.labels.split(",")])
    return A


def _require_mv(A):
    report = check_axioms(A)
    if not report.passed:
        ax, w = report.violations[0]
        raise NotMvAlgebraError(f"{ax} fails at {w}")


# -- commands ----------------------------------------------------------------------

def cmd_check(args):
    A = load_algebra(args)
    report = check_axioms(A, first_only=False)
    out = {"n": A.n, "axioms": report.to_dict()}
    if report.passed:
        out["boolean_center"] = boolean_center(A).names()
        out["ideals"] = len(ideals(A))
        out["lattice_ideals"] = len(lattice_ideals(A))
    if args.format == "json":
        _emit(out)
    else:
        print(f"elements: {A.n}")
        if report.passed:
            print("axioms: MV1-MV6 hold")
            print(f"boolean center: {{{', '.join(out['boolean_center'])}}}")
            print(f"ideals: {out['ideals']}")
            print(f"lattice ideals: {out['lattice_ideals']}")
        else:
            print(f"axioms: {len(report.violations)} violations")
            for ax, w in report.violations[:20]:
                print(f"  {ax} at {tuple(A.names[x] for x in w)}")
    return 0 if report.passed else 1


def cmd_derivations(args):
    A = load_algebra(args)
    _require_mv(A)
    records = enumerate_derivations(A, args.max_search)
    if args.filter:
        records = [r for r in records if FILTERS[args.filter](r)]
    if args.format == "json":
        _emit([r.to_dict() for r in records])
        return 0
    width = max(len(s) for s in A.names)
    rows = [["", *A.names, "flags"]]
    for k, r in enumerate(records, 1):
        flags = [name for name, pred in FILTERS.items() if pred(r)]
        rows.append([f"d{k}", *(A.names[v] for v in r.images), ",".join(flags) or "-"])
    lw = max(len(row[0]) for row in rows)
    for row in rows:
        cells = " ".join(s.rjust(width) for s in row[1:-1])
        print(f"{row[0].ljust(lw)}  {cells}  {row[-1]}".rstrip())
    return 0


def cmd_count(args):
    A = load_algebra(args)
    _require_mv(A)
    k = len(enumerate_operators(A, args.max_search))
    print(k)
    if A.is_chain():
        expected = chain_count(A.n)
        print(f"closed form (n-1)(n+2)/2 = {expected}")
        return 0 if k == expected else 1
    return 0


def cmd_hasse(args):
    A = load_algebra(args)
    _require_mv(A)
    if args.family == "der":
        P = derivation_poset(A, max_search=args.max_search)
    else:
        P = {"pder": pder_poset, "chi": chi_poset, "ider": ider_poset}[args.family](A)
    sys.stdout.write(export_hasse(P, args.format))
    return 0


def cmd_iso(args):
    A = load_algebra(args)
    _require_mv(A)
    D = derivation_poset(A, max_search=args.max_search)
    results = []
    if A.is_chain():
        _, _, f = chain_der_isomorphism(A.n, D)
        results.append(("Der(L_n) ~ A(L_n)", f is not None))
    for fam, label in (("pder", "PDer(A) ~ L(A)"), ("ider", "IDer(A) ~ B(A)"),
                       ("chi", "chi(A) ~ L(A)")):
        results.append((label, family_isomorphism(A, fam)[2] is not None))
    results.append(("Der(A) is a lattice", D.is_lattice))
    if D.is_lattice:
        results.append(("chi(A) is a filter of Der(A)", chi_filter_check(A, D)))
    for label, ok in results:
        print(f"{'ok  ' if ok else 'FAIL'} {label}")
    return 0 if all(ok for _, ok in results) else 1


def cmd_decompose(args):
    A = load_algebra(args)
    _require_mv(A)
    _emit(decompose(A).to_dict())
    return 0


def _shape(A):
    chains = decompose(A).chains
    return " x ".join(f"L{k}" for k in chains)


def cmd_classify_sizes(args):
    if args.max < 2:
        raise UsageError("--max must be at least 2")
    rows, ok = [], True
    for m in range(2, args.max + 1):
        for A in all_algebras_of_size(m, args.max_elements):
            k = len(enumerate_operators(A, args.max_search))
            floor = 13 if m >= 5 else 7 if m >= 4 else 5 if m >= 3 else 0
            exact = {2: 2, 3: 5, 4: 9}
            good = k >= floor
            if m in exact:
                good = good and k == exact[m]
            elif k in exact.values():
                good = False
            ok = ok and good
            rows.append({"size": m, "algebra": _shape(A), "derivations": k, "ok": good})
    if args.format == "json":
        _emit({"classes": rows, "ok": ok})
    else:
        for r in rows:
            print(f"{r['size']:>3}  {r['algebra']:<16} {r['derivations']:>6}  {'ok' if r['ok'] else 'FAIL'}")
    return 0 if ok else 1


def cmd_chang(args):
    op = chang.remark_derivation if args.op == "remark" else chang.principal_cstar
    if args.window < 1:
        raise UsageError("--window must be at least 1")
    _emit(chang.verify_window(op, args.window).to_dict())
    return 0


def cmd_verify(args):
    A = load_algebra(args)
    results = run_suite(A, max_search=args.max_search)
    if args.format == "json":
        _emit([r.to_dict() for r in results])
    else:
        for r in results:
            print(f"{r.status.upper():<5} {r.name}")
            for w in r.witnesses:
                print(f"      {w}")
            if r.violations > len(r.witnesses):
                print(f"      ... {r.violations - len(r.witnesses)} more")
    return 0 if all(r.passed for r in results) else 1


def cmd_der_iso(args):
    """Look for non-isomorphic algebras with isomorphic derivation lattices."""
    pool = []
    for m in range(2, args.max + 1):
        pool.extend(all_algebras_of_size(m, args.max_elements))
    found = der_lattice_coincidences(pool, args.max_search)
    out = {"algebras": [_shape(A) for A in pool],
           "coincidences": [{"first": _shape(pool[i]), "second": _shape(pool[j]), "status": s}
                            for i, j, s in found]}
    _emit(out)
    return 0


# -- parser ----------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--max-elements", type=int, default=argparse.SUPPRESS,
                        help="carrier size cap (default 4096 or $MVDER_MAX_ELEMENTS)")
    common.add_argument("--max-search", type=int, default=argparse.SUPPRESS,
                        help=f"enumeration cap on visited assignments (default {DEFAULT_MAX_SEARCH})")

    p = argparse.ArgumentParser(prog="mvder", parents=[common], allow_abbrev=False,
                                description="Derivations on finite MV-algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def algebra_cmd(name, fn, help, formats=None):
        s = sub.add_parser(name, parents=[common], allow_abbrev=False, help=help)
        s.add_argument("expr", nargs="?", help='algebra expression, e.g. "L2 x L3"')
        s.add_argument("--input", help="JSON file with n, oplus, neg and optional names")
        s.add_argument("--labels", help="comma-separated element names to display")
        if formats:
            s.add_argument("--format", choices=formats, default=formats[0])
        s.set_defaults(func=fn)
        return s

    algebra_cmd("check", cmd_check, "axioms, Boolean center, ideal counts", ["text", "json"])
    s = algebra_cmd("derivations", cmd_derivations, "list classified derivations", ["table", "json"])
    s.add_argument("--filter", choices=sorted(FILTERS))
    algebra_cmd("count", cmd_count, "number of derivations")
    s = algebra_cmd("hasse", cmd_hasse, "Hasse diagram of a family of derivations", ["dot", "layers"])
    s.add_argument("--family", choices=["der", "pder", "chi", "ider"], default="der")
    algebra_cmd("iso", cmd_iso, "lattice isomorphism and filter checks")
    algebra_cmd("verify", cmd_verify, "run the full property suite", ["text", "json"])

    s = sub.add_parser("decompose", parents=[common], allow_abbrev=False, help="chain decomposition of raw tables")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("classify-sizes", parents=[common], allow_abbrev=False,
                       help="derivation counts over all algebras up to a size")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_classify_sizes)

    s = sub.add_parser("chang", parents=[common], allow_abbrev=False, help="window check on Chang's chain")
    s.add_argument("--window", type=int, required=True)
    s.add_argument("--op", choices=["remark", "principal"], default="remark")
    s.set_defaults(func=cmd_chang)

    s = sub.add_parser("der-iso", parents=[common], allow_abbrev=False,
                       help="search for non-isomorphic algebras with isomorphic Der lattices")
    s.add_argument("--max", type=int, required=True)
    s.set_defaults(func=cmd_der_iso)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.max_elements = getattr(args, "max_elements", None)
    args.max_search = getattr(args, "max_search", DEFAULT_MAX_SEARCH)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"mvder: {exc}", file=sys.stderr)
        return 3
    except NotMvAlgebraError as exc:
        print(f"mvder: not an MV-algebra: {exc}", file=sys.stderr)
        return 1
    except (UsageError, MvError, ValueError) as exc:
        print(f"mvder: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
