"""Command-line interface: ``potts <group> <command> [options]``.

Every command prints one JSON document.  Exit status is 0 on success, 1 on a
domain error (reported as ``{"error": {"code", "message"}}``) and 2 on
malformed input.  Field elements are printed as little-endian coefficient
arrays over the prime field.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import moduli, pgl2, picard, wild_norm
from .cyclotomic import fibre_mod_p
from .errors import PottsError
from .field_tower import SIZE_CAP, Field, FieldElem, parse_field_spec
from .poly_ring import (
    SPLITTING_CAP,
    Dyadic,
    cyclotomic_phi,
    half_trace_chi,
    half_trace_psi,
    reduce_mod_p,
)
from .potts_curve import (
    TAME,
    WILD,
    PottsModel,
    aut_order_oracle,
    check_witness,
    classify_aut,
    is_isomorphic,
    j_invariant,
    validate,
)

DEFAULT_SEED = 0


class UsageError(Exception):
    """Malformed command-line input (exit status 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _coeff_json(c):
    if isinstance(c, Dyadic):
        return [c.num, c.exp]
    if isinstance(c, FieldElem):
        return c.coeffs()
    return c


def _poly_json(f) -> list:
    return [_coeff_json(c) for c in f.coeffs]


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc.msg}") from None


def _elem(F: Field, text: str) -> FieldElem:
    value = _load_json(text, "field element")
    if isinstance(value, bool) or not isinstance(value, (int, list)):
        raise UsageError(f"field element must be an integer or coefficient list, got {text!r}")
    if isinstance(value, list) and not all(isinstance(v, int) for v in value):
        raise UsageError(f"coefficient list must hold integers, got {text!r}")
    return F(value)


def _matrix(F: Field, text: str) -> pgl2.ProjMap:
    rows = _load_json(text, "matrix")
    if not (isinstance(rows, list) and len(rows) == 2
            and all(isinstance(r, list) and len(r) == 2 for r in rows)):
        raise UsageError("matrix must be [[a, b], [c, d]]")
    try:
        return pgl2.ProjMap.from_rows(F, [[F(x) for x in r] for r in rows])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, PottsError):
            raise
        raise UsageError(f"bad matrix: {exc}") from None


def _field(args) -> Field:
    if args.field is None:
        raise UsageError("--field is required")
    try:
        return parse_field_spec(args.field, SIZE_CAP)
    except ValueError as exc:
        if isinstance(exc, PottsError):
            raise
        raise UsageError(f"bad field spec {args.field!r}") from None


# -- pgl2 ---------------------------------------------------------------------


def cmd_pgl2_order(args) -> dict:
    F = _field(args)
    return {"order": pgl2.element_order(_matrix(F, args.matrix))}


def cmd_pgl2_classify(args) -> dict:
    F = _field(args)
    gens = _load_json(args.generators, "generators")
    if not isinstance(gens, list) or not gens:
        raise UsageError("generators must be a non-empty list of matrices")
    maps = [_matrix(F, json.dumps(g)) for g in gens]
    G = pgl2.subgroup_closure(maps, args.cap_closure)
    return pgl2.classify_subgroup(G).to_json()


def cmd_pgl2_survey(args) -> dict:
    F = _field(args)
    s = pgl2.survey_order_p(F)
    return {
        "q": F.q,
        "p": F.p,
        "order_p_elements": s.count,
        "expected": F.q * F.q - 1,
        "all_in_psl2": s.all_in_psl2,
        "fixed_points": len(s.fixed_points),
    }


# -- poly ---------------------------------------------------------------------


def cmd_poly_phi(args) -> dict:
    return {"n": args.n, "coeffs": _poly_json(cyclotomic_phi(args.n))}


def cmd_poly_psi(args) -> dict:
    return {"n": args.n, "coeffs": _poly_json(half_trace_psi(args.n))}


def cmd_poly_chi(args) -> dict:
    return {"n": args.n, "coeffs": _poly_json(half_trace_chi(args.n))}


def cmd_poly_reduce(args) -> dict:
    chi = reduce_mod_p(half_trace_chi(args.n), args.p)
    return {
        "n": args.n,
        "p": args.p,
        "coeffs": [c.v for c in chi.coeffs],
        "fibre": fibre_mod_p(args.n, args.p).to_json(),
    }


# -- curve --------------------------------------------------------------------


def _model(args, F: Field, A: str, B: str) -> PottsModel:
    if args.variant == WILD:
        return PottsModel.wild(F, _elem(F, A), _elem(F, B))
    if args.N is None:
        raise UsageError("--N is required for tame models")
    return PottsModel.tame(F, args.N, _elem(F, A), _elem(F, B))


def cmd_curve_info(args) -> dict:
    F = _field(args)
    m = _model(args, F, args.A, args.B)
    bd = validate(m, args.cap_splitting)
    out = m.to_json()
    out["j"] = j_invariant(m).coeffs()
    out["genus"] = bd.genus
    out["branch_field"] = bd.field.name
    out["branch_points"] = len(bd.points)
    out["aut"] = classify_aut(m).to_json()
    return out


def cmd_curve_iso(args) -> dict:
    F = _field(args)
    m1 = _model(args, F, args.A1, args.B1)
    m2 = _model(args, F, args.A2, args.B2)
    res = is_isomorphic(m1, m2, args.cap_extension)
    out = res.to_json()
    out["witness_checked"] = check_witness(m1, m2, res) if res.witness is not None else None
    return out


def cmd_curve_aut(args) -> dict:
    F = _field(args)
    m = _model(args, F, args.A, args.B)
    cls = classify_aut(m)
    out = {"class": cls.name, "order": cls.order, "equivariant_order": cls.equivariant_order}
    if args.oracle:
        orc = aut_order_oracle(m, args.cap_splitting, args.field_cap)
        out["oracle_order"] = orc.aut_order
        out["oracle_equivariant_order"] = orc.equivariant_order
        out["reduced_group"] = orc.G_class.name
    return out


# -- wildnorm -----------------------------------------------------------------


def _context_json(ctx: wild_norm.NormContext) -> dict:
    return {
        "p": ctx.p,
        "field": ctx.field.name,
        "t": ctx.t.coeffs(),
        "psi": ctx.psi.coeffs(),
        "U": ctx.U.coeffs(),
        "A": ctx.A.coeffs(),
        "B": ctx.B.coeffs(),
    }


def cmd_wildnorm_resultant(args) -> dict:
    F = _field(args)
    rng = random.Random(args.seed)
    failures = 0
    example = None
    for _ in range(args.trials):
        ctx = wild_norm.random_context(F, args.p, rng)
        sides = wild_norm.resultant_sides(ctx)
        if example is None:
            example = dict(_context_json(ctx), lhs=sides.lhs.coeffs(), rhs=sides.rhs.coeffs())
        if not sides.holds:
            failures += 1
    return {"trials": args.trials, "failures": failures, "example_context": example}


def cmd_wildnorm_j(args) -> dict:
    F = _field(args)
    ctx = wild_norm.NormContext(args.p, F, _elem(F, args.t), _elem(F, args.psi),
                                _elem(F, args.U), _elem(F, args.A), _elem(F, args.B))
    out = _context_json(ctx)
    out["delta"] = wild_norm.delta(ctx).coeffs()
    out["omega"] = wild_norm.omega_and_p_identity(ctx).coeffs()
    out["j"] = wild_norm.wild_j(ctx).coeffs()
    return out


# -- picard -------------------------------------------------------------------


def cmd_picard_characters(args) -> dict:
    F = _field(args) if args.field is not None else None
    rep = picard.hodge_characters(args.N, F)
    out = rep.to_json()
    sub = picard.subgroup_generated(rep.characters[:2], args.N)
    out["generated_order"] = sub.order
    out["descriptor"] = picard.picard_descriptor("tame", args.N, rep.field.p).to_json()
    return out


def cmd_picard_wild(args) -> dict:
    out = picard.picard_descriptor("wild", args.p).to_json()
    out["mu_2"] = picard.mu_n_structure(args.p, n=2, samples=args.trials, seed=args.seed).to_json()
    out["mu_p"] = picard.mu_n_structure(args.p, n=args.p, samples=args.trials, seed=args.seed).to_json()
    return out


# -- moduli -------------------------------------------------------------------


def cmd_moduli_census(args):
    F = _field(args)
    if args.variant == WILD:
        rep = moduli.census_wild(F, args.cap_extension)
    else:
        if args.N is None:
            raise UsageError("--N is required for the tame census")
        rep = moduli.census_tame(args.N, F, args.cap_extension)
    if args.csv:
        return rep.to_csv()
    return rep.to_json()


def cmd_moduli_cusps(args) -> dict:
    inf, zero = moduli.cusp_combinatorics(args.N)
    out = {"N": args.N, "cusps": [inf.to_json(), zero.to_json()]}
    if args.field is not None:
        out["degeneration"] = moduli.degeneration_check(args.N, _field(args), args.cap_splitting).to_json()
    return out


def cmd_moduli_ring(args) -> dict:
    return fibre_mod_p(args.N, args.p).to_json()


# -- selftest -----------------------------------------------------------------


def cmd_selftest(args):
    from .acceptance import run_acceptance, summary

    results = run_acceptance()
    doc = summary(results)
    return doc, (1 if doc["unexpected"] else 0)


# -- parser -------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    c = _Parser(add_help=False)
    c.add_argument("--field", help="field spec: q or p^s")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--cap-splitting", type=int, default=SPLITTING_CAP)
    c.add_argument("--cap-closure", type=int, default=pgl2.CLOSURE_CAP)
    c.add_argument("--cap-extension", type=int, default=moduli.WITNESS_DEGREE_CAP)
    c.add_argument("--field-cap", type=int, default=10**7)
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="csv", action="store_false")
    fmt.add_argument("--csv", dest="csv", action="store_true")
    c.set_defaults(csv=False)
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="potts", description="Potts curves over finite fields")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, func, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("pgl2").add_subparsers(dest="command", required=True, parser_class=_Parser)
    leaf(g, "order", cmd_pgl2_order).add_argument("--matrix", required=True)
    leaf(g, "classify", cmd_pgl2_classify).add_argument("--generators", required=True)
    leaf(g, "survey", cmd_pgl2_survey)

    g = groups.add_parser("poly").add_subparsers(dest="command", required=True, parser_class=_Parser)
    leaf(g, "phi", cmd_poly_phi).add_argument("--n", type=int, required=True)
    leaf(g, "psi", cmd_poly_psi).add_argument("--n", type=int, required=True)
    leaf(g, "chi", cmd_poly_chi).add_argument("--n", type=int, required=True)
    p = leaf(g, "reduce", cmd_poly_reduce)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    g = groups.add_parser("curve").add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, func in (("info", cmd_curve_info), ("aut", cmd_curve_aut)):
        p = leaf(g, name, func)
        p.add_argument("--variant", choices=[TAME, WILD], default=TAME)
        p.add_argument("--N", type=int)
        p.add_argument("--A", required=True)
        p.add_argument("--B", required=True)
        if name == "aut":
            p.add_argument("--oracle", action="store_true")
    p = leaf(g, "iso", cmd_curve_iso)
    p.add_argument("--variant", choices=[TAME, WILD], default=TAME)
    p.add_argument("--N", type=int)
    for k in ("--A1", "--B1", "--A2", "--B2"):
        p.add_argument(k, required=True)

    g = groups.add_parser("wildnorm").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = leaf(g, "verify-resultant", cmd_wildnorm_resultant)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p = leaf(g, "j", cmd_wildnorm_j)
    p.add_argument("--p", type=int, required=True)
    for k in ("--t", "--psi", "--U", "--A", "--B"):
        p.add_argument(k, required=True)

    g = groups.add_parser("picard").add_subparsers(dest="command", required=True, parser_class=_Parser)
    leaf(g, "characters", cmd_picard_characters).add_argument("--N", type=int, required=True)
    p = leaf(g, "wild", cmd_picard_wild)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=500)

    g = groups.add_parser("moduli").add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = leaf(g, "census", cmd_moduli_census)
    p.add_argument("--variant", choices=[TAME, WILD], default=TAME)
    p.add_argument("--N", type=int)
    leaf(g, "cusps", cmd_moduli_cusps).add_argument("--N", type=int, required=True)
    p = leaf(g, "ring", cmd_moduli_ring)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = groups.add_parser("selftest", parents=[common])
    p.set_defaults(func=cmd_selftest)
    return parser


def _dump(doc) -> str:
    if isinstance(doc, str):
        return doc
    return json.dumps(doc, indent=2) + "\n"


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute a command and return (exit status, output text)."""
    try:
        args = build_parser().parse_args(list(argv))
        result = args.func(args)
    except UsageError as exc:
        return 2, _dump({"error": {"code": "UsageError", "message": str(exc)}})
    except PottsError as exc:
        return 1, _dump({"error": {"code": exc.code, "message": str(exc)}})
    code = 0
    if isinstance(result, tuple):
        result, code = result
    return code, _dump(result)


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if list(argv) in (["-h"], ["--help"]) or not argv:
        build_parser().print_help()
        return 0 if argv else 2
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
