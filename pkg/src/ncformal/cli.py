"""Command-line entry point: ``ncformal <subcommand> ...``.

Output is JSON (a top-level ``"schema"`` field versions it) or a plain text
rendering.  Exit codes: 0 success, 1 parse error, 2 contract violation,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import acceptance
from .algebra import dual_numbers, matrix_algebra, rationals, truncated_polynomials, upper_triangular
from .errors import ContractError, ResourceError
from .hallbasis import HallBasis
from .ncpoly import CommPoly, LocalizedElement, parse_comm, parse_nc
from .pbw import (BracketMonomial, FormalSection, OperatorTable, PBWElement, extract_C_operator,
                  formal_section_mul, pbw_normalize, truncated_mul)
from .quiver import (Quiver, QuiverRep, check_localization_point, enumerate_dimvectors,
                     euler_form, euler_form_extended, extend_quiver, localized_point, perturb_last_entry,
                     random_rep)
from .repscheme import Presentation, decompose_rep_quiver, random_invertible, relation_ideal
from .rootalg import (abelianized_root_equals_rep_ring, effective_generators, lower, raise_, random_matrix_map,
                      random_root_map, root_presentation)
from .strata import enumerate_substrata, fiber_setting_report, is_nonempty, stratum_dimension

SCHEMA = "ncformal/1"


@dataclass(frozen=True)
class Config:
    command: str
    format: str = "json"
    seed: int = 0
    max_weight: int = 10
    max_degree: int = 10
    max_n: int = 6

    def __post_init__(self):
        if min(self.max_weight, self.max_degree, self.max_n) < 1:
            raise ContractError("resource caps must be positive")

    def cap(self, name: str, value: int) -> None:
        limit = getattr(self, name)
        if value > limit:
            raise ResourceError(f"{name.replace('_', '-')} cap {limit} exceeded by {value}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseError(message)


class _ParseError(Exception):
    pass


# --- input helpers ---------------------------------------------------------------

def _load_json(arg: str):
    """Accept a path to a JSON file or an inline JSON document."""
    try:
        if os.path.exists(arg):
            with open(arg) as fh:
                return json.load(fh)
        return json.loads(arg)
    except json.JSONDecodeError as exc:
        raise _ParseError(f"not valid JSON: {exc}") from None


def _quiver(args) -> Quiver:
    src = args.quiver if args.quiver is not None else args.quiver_inline
    if src is None:
        raise _ParseError("a quiver is required (--quiver FILE or --quiver-inline JSON)")
    return Quiver.from_json(_load_json(src))


def _poly_nc(text: str, d: int):
    try:
        return parse_nc(text, d)
    except ContractError as exc:
        raise _ParseError(str(exc)) from None


def _poly_comm(text: str, d: int):
    try:
        return parse_comm(text, d)
    except ContractError as exc:
        raise _ParseError(str(exc)) from None


def _monomial(basis: HallBasis, text: str) -> BracketMonomial:
    entries = _load_json(text)
    if not isinstance(entries, list) or not all(isinstance(i, int) for i in entries):
        raise _ParseError(f"monomial must be a JSON list of basis indices, got {text!r}")
    return BracketMonomial.of(basis, entries)


def pbw_to_json(e: PBWElement) -> dict:
    return {"d": e.d, "terms": [{"lambda": list(m.entries), "ord": m.ord, "coefficient": repr(f)}
                                for m, f in e.items()]}


def pbw_from_json(data: dict, basis: HallBasis) -> PBWElement:
    try:
        terms = {}
        for t in data["terms"]:
            terms[BracketMonomial.of(basis, t["lambda"])] = _poly_comm(t["coefficient"], basis.d)
    except (KeyError, TypeError) as exc:
        raise _ParseError(f"malformed PBW JSON: {exc}") from None
    return PBWElement(basis, terms)


def _pbw_arg(text: str, basis: HallBasis) -> PBWElement:
    """A polynomial string is normalized; a JSON object is read as a PBW element."""
    stripped = text.strip()
    if stripped.startswith("{") or (os.path.exists(text) and text.endswith(".json")):
        return pbw_from_json(_load_json(text), basis)
    return pbw_normalize(_poly_nc(text, basis.d), basis)


def section_to_json(s: FormalSection) -> dict:
    return {"d": s.basis.d, "center": repr(s.center), "K": s.K,
            "terms": [{"lambda": list(m.entries), "numerator": repr(f.numerator),
                       "denom_power": f.denom_power} for m, f in s.items()]}


def _section_arg(text: str, basis: HallBasis, center: CommPoly, K: int) -> FormalSection:
    stripped = text.strip()
    if stripped.startswith("{") or (os.path.exists(text) and text.endswith(".json")):
        data = _load_json(text)
        try:
            terms = {BracketMonomial.of(basis, t["lambda"]):
                     LocalizedElement(_poly_comm(t["numerator"], basis.d), int(t.get("denom_power", 0)), center)
                     for t in data["terms"]}
        except (KeyError, TypeError) as exc:
            raise _ParseError(f"malformed section JSON: {exc}") from None
        return FormalSection(basis, center, K, terms)
    return FormalSection.from_pbw(pbw_normalize(_poly_nc(text, basis.d), basis, max_ord=K - 1), center, K)


def _basis_for(cfg: Config, d: int, weight: int) -> HallBasis:
    cfg.cap("max_weight", weight)
    return HallBasis(d, max(weight, 1))


# --- subcommands --------------------------------------------------------------------

def cmd_hall_basis(args, cfg):
    B = _basis_for(cfg, args.d, args.weight)
    return {"d": args.d, "max_weight": args.weight,
            "layer_sizes": [len(B.layer(k)) for k in range(1, args.weight + 1)],
            "elements": [{"index": e.index, "weight": e.weight, "ord": e.ord, "sexpr": B.sexpr(e.index)}
                         for e in B.elements]}


def cmd_pbw_normalize(args, cfg):
    p = _poly_nc(args.poly, args.d)
    cfg.cap("max_degree", p.degree())
    B = _basis_for(cfg, args.d, max(p.degree(), 1))
    e = pbw_normalize(p, B)
    return {"input": repr(p), **pbw_to_json(e), "basis": {str(i): B.sexpr(i) for m in e.terms for i in m.entries}}


def cmd_trunc_mul(args, cfg):
    B0 = _basis_for(cfg, args.d, args.registry_weight)
    a, b = _pbw_arg(args.a, B0), _pbw_arg(args.b, B0)
    cfg.cap("max_weight", a.degree() + b.degree())
    B = B0 if a.degree() + b.degree() <= B0.max_weight else HallBasis(args.d, a.degree() + b.degree())
    if B is not B0:
        a, b = pbw_from_json(pbw_to_json(a), B), pbw_from_json(pbw_to_json(b), B)
    return {"K": args.K, **pbw_to_json(truncated_mul(a, b, args.K))}


def cmd_extract_op(args, cfg):
    B = _basis_for(cfg, args.d, args.registry_weight)
    lam, mu, nu = (_monomial(B, t) for t in (args.lam, args.mu, args.nu))
    cfg.cap("max_degree", args.bound)
    op = extract_C_operator(B, lam, mu, nu, args.bound, require_stable=False)
    return {"lambda": list(lam.entries), "mu": list(mu.entries), "nu": list(nu.entries),
            "bound": args.bound, "stabilized": op.stabilized, "operator": op.describe(),
            "terms": [{"coefficient": repr(c), "alpha": list(a), "beta": list(b)} for c, a, b in op.terms]}


def cmd_section_mul(args, cfg):
    B = _basis_for(cfg, args.d, max(args.K + 1, 2))
    center = _poly_comm(args.center, args.d)
    table = OperatorTable(B)
    a = _section_arg(args.a, B, center, args.K)
    b = _section_arg(args.b, B, center, args.K)
    return section_to_json(formal_section_mul(a, b, table))


def cmd_euler(args, cfg):
    Q = _quiver(args)
    cfg.cap("max_n", args.n)
    out = {"quiver": Q.to_json(), "euler_form": [list(r) for r in euler_form(Q).matrix],
           "extended_n": args.n, "extended_euler_form": [list(r) for r in euler_form_extended(Q, args.n).matrix]}
    if args.alpha is not None and args.beta is not None:
        a, b = _load_json(args.alpha), _load_json(args.beta)
        out["value"] = euler_form_extended(Q, args.n)(a, b) if len(a) == Q.k + 1 else euler_form(Q)(a, b)
    return out


def cmd_extend(args, cfg):
    Q = _quiver(args)
    cfg.cap("max_n", args.n)
    ext = extend_quiver(Q, args.n, localized=args.localized)
    return {"base": Q.to_json(), "n": args.n, "localized": args.localized, "quiver": ext.quiver.to_json()}


def cmd_dimvectors(args, cfg):
    cfg.cap("max_n", args.n)
    vecs = enumerate_dimvectors(args.k, args.n)
    return {"k": args.k, "n": args.n, "count": len(vecs), "dimvectors": [list(v) for v in vecs]}


def cmd_check_localization(args, cfg):
    Q = _quiver(args)
    cfg.cap("max_n", args.n)
    ext = extend_quiver(Q, args.n, localized=True)
    data = ext.localization_data()
    out = {"quiver": ext.quiver.to_json(), "n": args.n,
           "relations": [{"label": l, "lhs": repr(lhs), "rhs": repr(rhs)} for l, lhs, rhs in data.relations]}
    if args.rep is not None:
        rep = QuiverRep.from_json(ext.quiver, _load_json(args.rep))
        out["satisfied"] = check_localization_point(data, rep)
        return out
    rng = random.Random(cfg.seed)
    alpha = rng.choice(enumerate_dimvectors(Q.k, args.n))
    base = random_rep(Q, alpha, rng).maps
    pt = localized_point(ext, alpha, random_invertible(args.n, rng), base)
    bad = perturb_last_entry(pt)
    out["samples"] = {"alpha": list(alpha), "valid_point": pt.to_json(),
                      "valid_satisfied": check_localization_point(data, pt),
                      "perturbed_satisfied": check_localization_point(data, bad)}
    return out


def cmd_rep_ideal(args, cfg):
    P = Presentation.from_json(_load_json(args.presentation))
    cfg.cap("max_n", args.n)
    return {"presentation": P.to_json(), **relation_ideal(P, args.n).to_json()}


def _root_pres(args, cfg):
    if args.free is not None:
        d, n = args.free
        cfg.cap("max_n", n)
        return root_presentation("free", n, d=d)
    if args.n is None:
        raise _ParseError("--n is required with a quiver")
    cfg.cap("max_n", args.n)
    return root_presentation("path", args.n, quiver=_quiver(args))


def cmd_root(args, cfg):
    pres = _root_pres(args, cfg)
    out = pres.to_json()
    if pres.kind == "path":
        out["effective_generators"] = effective_generators(pres)
    return out


_ALGEBRAS = {"M2": lambda: matrix_algebra(2), "Qt3": lambda: truncated_polynomials(3),
             "T2": lambda: upper_triangular(2), "Q": rationals, "dual": dual_numbers}


def cmd_root_roundtrip(args, cfg):
    pres = _root_pres(args, cfg)
    rng = random.Random(cfg.seed)
    rows = []
    for name in args.algebras:
        if name not in _ALGEBRAS:
            raise _ParseError(f"unknown algebra {name!r}; choose from {sorted(_ALGEBRAS)}")
        B = _ALGEBRAS[name]()
        fails = 0
        for _ in range(args.samples):
            phi = random_matrix_map(pres, B, rng)
            psi = random_root_map(pres, B, rng)
            fails += raise_(lower(phi)) != phi
            fails += lower(raise_(psi)) != psi
        rows.append({"algebra": B.name, "samples": args.samples, "failures": fails})
    report = abelianized_root_equals_rep_ring(pres, rng, min(args.samples, 10), (rationals(), dual_numbers()))
    return {"kind": pres.kind, "n": pres.n, "roundtrip": rows, "abelianization": report,
            "passed": all(r["failures"] == 0 for r in rows) and report["passed"]}


def cmd_strata(args, cfg):
    Q = _quiver(args)
    cfg.cap("max_n", args.n)
    cfg.cap("max_degree", args.m)
    subs = enumerate_substrata(args.m, args.n, Q)
    if args.local_quiver is not None and not 0 <= args.local_quiver < len(subs):
        raise ContractError(f"--local-quiver index {args.local_quiver} outside 0..{len(subs) - 1}")
    rows = []
    for idx, t in enumerate(subs):
        row = {"index": idx, **t.to_json(), "dimension": stratum_dimension(t, args.n, Q),
               "nonempty": is_nonempty(t, args.n, Q)}
        if args.local_quiver is None or args.local_quiver == idx:
            try:
                row["setting"] = fiber_setting_report(t, args.n, Q)
            except ContractError as exc:
                row["setting"] = None
                row["setting_error"] = str(exc)
        rows.append(row)
    return {"quiver": Q.to_json(), "n": args.n, "m": args.m, "count": len(subs),
            "rep_n_components": decompose_rep_quiver(Q, args.n), "substrata": rows}


def cmd_selftest(args, cfg):
    only = set(args.only) if args.only else None
    rows = acceptance.run_all(only)
    return {"results": [{"criterion": n, "title": t, "passed": ok, "detail": d} for n, t, ok, d in rows],
            "passed": all(ok for *_, ok, _ in rows)}


# --- argument parsing ----------------------------------------------------------------

def _add_quiver(p):
    p.add_argument("--quiver", help="path to quiver JSON")
    p.add_argument("--quiver-inline", help="quiver JSON given inline")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncformal", description="Exact noncommutative formal-structure toolkit",
                     allow_abbrev=False)
    parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--max-weight", dest="cap_weight", type=int, default=10)
    parser.add_argument("--max-degree", dest="cap_degree", type=int, default=10)
    parser.add_argument("--max-n", dest="cap_n", type=int, default=6)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, **kw):
        p = sub.add_parser(name, allow_abbrev=False, **kw)
        p.set_defaults(func=fn)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="sub_format", choices=["json", "text"])
        return p

    p = add("hall-basis", cmd_hall_basis)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)

    p = add("pbw-normalize", cmd_pbw_normalize)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("poly")

    p = add("trunc-mul", cmd_trunc_mul)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--registry-weight", dest="registry_weight", type=int, default=6)
    p.add_argument("a", help="polynomial text or PBW JSON")
    p.add_argument("b", help="polynomial text or PBW JSON")

    p = add("extract-op", cmd_extract_op)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="[]")
    p.add_argument("--mu", default="[]")
    p.add_argument("--nu", default="[]")
    p.add_argument("--bound", type=int, default=5)
    p.add_argument("--registry-weight", dest="registry_weight", type=int, default=4)

    p = add("section-mul", cmd_section_mul)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--center", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("a", help="polynomial text or section JSON")
    p.add_argument("b", help="polynomial text or section JSON")

    p = add("euler", cmd_euler)
    _add_quiver(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha")
    p.add_argument("--beta")

    p = add("extend", cmd_extend)
    _add_quiver(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--localized", action="store_true")

    p = add("dimvectors", cmd_dimvectors)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("check-localization", cmd_check_localization)
    _add_quiver(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rep", help="representation JSON of the localized extended quiver")

    p = add("rep-ideal", cmd_rep_ideal)
    p.add_argument("--presentation", required=True)
    p.add_argument("--n", type=int, required=True)

    for name, fn in (("root", cmd_root), ("root-roundtrip", cmd_root_roundtrip)):
        p = add(name, fn)
        p.add_argument("--free", nargs=2, type=int, metavar=("D", "N"))
        _add_quiver(p)
        p.add_argument("--n", type=int)
        if name == "root-roundtrip":
            p.add_argument("--samples", type=int, default=20)
            p.add_argument("--algebras", nargs="+", default=["M2", "Qt3", "T2"])

    p = add("strata", cmd_strata)
    _add_quiver(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--local-quiver", type=int)

    p = add("selftest", cmd_selftest)
    p.add_argument("--only", type=int, nargs="+")
    return parser


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def _selftest_table(result: dict) -> str:
    lines = [f"{'#':>3}  {'result':6}  criterion"]
    for r in result["results"]:
        lines.append(f"{r['criterion']:>3}  {'PASS' if r['passed'] else 'FAIL':6}  {r['title']}: {r['detail']}")
    lines.append("ALL PASSED" if result["passed"] else "SOME CRITERIA FAILED")
    return "\n".join(lines)


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        fmt = args.sub_format or args.format
        cfg = Config(args.command, fmt, args.seed, args.cap_weight, args.cap_degree, args.cap_n)
        result = args.func(args, cfg)
    except _ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ContractError as exc:
        print(f"contract violation ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource cap exceeded ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3
    if args.command == "selftest" and fmt == "text":
        print(_selftest_table(result))
    elif fmt == "text":
        print("\n".join(_render_text(result)))
    else:
        print(json.dumps({"schema": SCHEMA, "command": args.command, **result}, indent=2))
    if args.command == "selftest" and not result["passed"]:
        return 4
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
