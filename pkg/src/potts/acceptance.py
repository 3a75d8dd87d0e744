"""Acceptance battery: one exact check per criterion, each reporting PASS/FAIL.

A check flagged ``known_deviation`` is expected to fail; it records a literal
target that the computed oracle contradicts.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Callable

from . import pgl2, wild_norm
from .cyclotomic import fibre_mod_p
from .errors import SingularConfiguration
from .field_tower import divisors, make_field
from .moduli import census_tame, census_wild, cusp_combinatorics, degeneration_check
from .picard import (
    hodge_characters,
    mu_n_structure,
    random_unit,
    subgroup_generated,
)
from .poly_ring import (
    ZZ,
    Poly,
    cyclotomic_phi,
    half_trace_chi,
    half_trace_psi,
    poly_gcd,
    is_squarefree,
    reduce_mod_p,
)
from .potts_curve import PottsModel, aut_order_oracle, classify_aut, j_invariant

WILD_FIELD_CAP = 10**7
RESULTANT_PAIRS = ((3, 7), (3, 31), (5, 11), (7, 29))
ACCEPTANCE_SEED = 20240601


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str = ""
    known_deviation: bool = False
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @property
    def unexpected(self) -> bool:
        return self.passed == self.known_deviation

    def line(self) -> str:
        tag = " (known deviation)" if self.known_deviation else ""
        return f"{self.status} [{self.key}] {self.title}{tag}: {self.detail}"

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "status": self.status,
            "known_deviation": self.known_deviation,
            "detail": self.detail,
        }


@dataclass
class _Collector:
    results: list[CriterionResult] = dc_field(default_factory=list)

    def add(self, key: str, title: str, passed: bool, detail: str = "", known_deviation: bool = False):
        self.results.append(CriterionResult(key, title, bool(passed), detail, known_deviation))


# -- 1, 2: PGL_2 orders ------------------------------------------------------


def _fields():
    return [make_field(3), make_field(5), make_field(7), make_field(3, 2)]


def check_orders(out: _Collector) -> None:
    bad = []
    total = 0
    for F in _fields():
        q, p = F.q, F.p
        for A in pgl2.all_elements(F):
            if A.is_identity():
                continue
            total += 1
            n = pgl2.order_by_powering(A)
            if pgl2.order_by_criterion(A) != n:
                bad.append((q, A.key, "criterion"))
            if (q - 1) % n and (q + 1) % n and n != p:
                bad.append((q, A.key, "divisibility"))
    out.add("1", "order criterion equals powering, orders divide q-1, q+1 or p",
            not bad, f"{total} elements, {len(bad)} mismatches")


def check_survey(out: _Collector) -> None:
    ok = True
    parts = []
    for F in _fields():
        q, p = F.q, F.p
        order_p = [A for A in pgl2.all_elements(F)
                   if not A.is_identity() and pgl2.order_by_powering(A) == p]
        traces = all(A.trace * A.trace == 4 * A.det for A in order_p)
        fixed = set()
        for A in order_p:
            for P in pgl2.projective_line(F):
                if pgl2.point_key(A(P)) == pgl2.point_key(P):
                    fixed.add(pgl2.point_key(P))
        line = {pgl2.point_key(P) for P in pgl2.projective_line(F)}
        survey = pgl2.survey_order_p(F)
        good = (len(order_p) == q * q - 1 == survey.count and traces
                and fixed == line and len(fixed) == q + 1)
        ok = ok and good
        parts.append(f"q={q}: {len(order_p)}")
    out.add("2", "order-p elements number q^2-1, are parabolic, fix exactly P^1(F_q)",
            ok, ", ".join(parts))


# -- 3, 4: cyclotomic identities -----------------------------------------------


def check_cyclotomic(out: _Collector) -> None:
    ok = True
    X = Poly.x(ZZ)
    for n in range(1, 46, 2):
        prod = Poly([1], ZZ)
        for d in divisors(n):
            prod = prod * cyclotomic_phi(d)
        if prod != X**n - 1:
            ok = False
    for n in range(3, 46, 2):
        psi = half_trace_psi(n)
        d = cyclotomic_phi(n).degree // 2
        # t^d psi(t + 1/t) = sum_k c_k t^(d-k) (t^2 + 1)^k
        lhs = Poly([], ZZ)
        for k, c in enumerate(psi.coeffs):
            lhs = lhs + X ** (d - k) * (X * X + 1) ** k * c
        if lhs != cyclotomic_phi(n):
            ok = False
    u = Poly.x(ZZ)
    small = (half_trace_psi(3) == u + 1
             and half_trace_psi(5) == u * u + u - 1
             and half_trace_psi(7) == u**3 + u * u - 2 * u - 1)
    out.add("3", "prod Phi_d = X^n - 1 and Phi_n(t) = t^(phi/2) psi_n(t + 1/t), odd n <= 45",
            ok and small, f"psi_3, psi_5, psi_7 explicit: {small}")


TAME_GCD_TRIPLES = ((3, 5, 7), (5, 7, 11), (3, 7, 13), (7, 9, 17), (9, 15, 19))


def check_reduction(out: _Collector) -> None:
    ok = True
    for p in (3, 5, 7, 11, 13):
        F = make_field(p)
        chi = reduce_mod_p(half_trace_chi(p), p)
        if chi != Poly([-1, 1], F) ** ((p - 1) // 2):
            ok = False
        if fibre_mod_p(p, p).multiplicity != (p - 1) // 2:
            ok = False
    coprime = True
    for N, M, p in TAME_GCD_TRIPLES:
        a = reduce_mod_p(half_trace_chi(N), p)
        b = reduce_mod_p(half_trace_chi(M), p)
        if poly_gcd(a, b).degree != 0 or not is_squarefree(a) or not is_squarefree(b):
            coprime = False
    out.add("4", "chi_p = (v-1)^((p-1)/2) mod p; tame chi_N, chi_N' coprime and separable",
            ok and coprime, f"wild fibres {ok}, tame pairs {coprime}")


# -- 5: automorphism groups ----------------------------------------------------


def _agree(model: PottsModel, field_cap: int = 1 << 20) -> tuple[bool, int, int]:
    cls = classify_aut(model)
    orc = aut_order_oracle(model, field_cap=field_cap)
    same = cls.order == orc.aut_order and cls.equivariant_order == orc.equivariant_order
    return same, cls.order, cls.equivariant_order


def _all_models(F, variant: str, N: int = 3) -> list[PottsModel]:
    out = []
    for A in F.elements():
        for B in F.elements():
            if A * A == 4 * B:
                continue
            if variant == "tame":
                if not B:
                    continue
                out.append(PottsModel.tame(F, N, A, B))
            else:
                out.append(PottsModel.wild(F, A, B))
    return out


def check_automorphisms(out: _Collector) -> None:
    F7 = make_field(7)
    quarter, special = -F7(4).inverse(), -F7(54).inverse()
    ok_a = True
    counts: dict[int, int] = {}
    for m in _all_models(F7, "tame"):
        same, order, eq = _agree(m)
        j = j_invariant(m)
        want = (48, 6) if j == special else (24, 12) if j == quarter else (12, 6)
        ok_a = ok_a and same and (order, eq) == want
        counts[order] = counts.get(order, 0) + 1
    out.add("5a", "tame N=3 over F_7: classification equals oracle (12 / 24 / 48)",
            ok_a, f"order counts {dict(sorted(counts.items()))}")

    F5 = make_field(5)
    same, order, eq = _agree(PottsModel.tame(F5, 3, 0, 1))
    out.add("5b", "N=3, char 5, j=-1/4: order 240 = 2|PGL2(F_5)|",
            same and order == 240 and eq == 12, f"order {order}, equivariant {eq}")

    F3 = make_field(3)
    same, order, eq = _agree(PottsModel.tame(F3, 5, 0, 1))
    out.add("5c", "N=5, char 3, j=-1/4: order 1440 = 2|PGL2(F_9)|",
            same and order == 1440 and eq == 20, f"order {order}, equivariant {eq}")

    agree = True
    literal = True
    tally: dict[int, int] = {}
    for F in (make_field(3), make_field(3, 2)):
        for m in _all_models(F, "wild"):
            same, order, eq = _agree(m)
            agree = agree and same and eq == 6
            literal = literal and order == 12
            tally[order] = tally.get(order, 0) + 1
    p5 = True
    for m in _all_models(F5, "wild"):
        same, order, eq = _agree(m, WILD_FIELD_CAP)
        p5 = p5 and same and order == 20 and eq == 10
    out.add("5d", "wild p=3 (F_3, F_9) and p=5 (F_5): classification equals oracle, equivariant 2p",
            agree and p5, f"p=3 orders {dict(sorted(tally.items()))}, p=5 all 20: {p5}")
    out.add("5d-literal", "every wild model over F_3 and F_9 has order exactly 12",
            literal, f"orders found {dict(sorted(tally.items()))}; j=-1/4 gives PGL2(F_3)",
            known_deviation=True)


# -- 6 to 9: the norm polynomial -----------------------------------------------


def check_resultant(out: _Collector, seed: int = ACCEPTANCE_SEED) -> None:
    F7 = make_field(7)
    hand = wild_norm.NormContext(3, F7, 2, 1, 1, 1, 3)
    sides = wild_norm.resultant_sides(hand)
    hand_ok = (sides.holds and wild_norm.delta(hand) == 3 and wild_norm.wild_j(hand) == 1
               and wild_norm.omega_and_p_identity(hand) == 3)
    ok = True
    for p, ell in RESULTANT_PAIRS:
        F = make_field(ell)
        rng = random.Random(seed + ell * 100 + p)
        for _ in range(200):
            if not wild_norm.verify_resultant_identity(wild_norm.random_context(F, p, rng)):
                ok = False
    out.add("6", "Res(H, H') = -U^p omega^2p delta^(p-1) (A^2-4BU)^p, 4 x 200 random contexts",
            ok and hand_ok, f"hand instance lhs={sides.lhs!r} rhs={sides.rhs!r}")


def _nonsingular_context(F, p, rng):
    while True:
        ctx = wild_norm.random_context(F, p, rng)
        try:
            wild_norm.wild_j(ctx)
        except SingularConfiguration:
            continue
        return ctx


def check_invariance(out: _Collector, seed: int = ACCEPTANCE_SEED) -> None:
    ok = True
    swaps = 0
    for p, ell in RESULTANT_PAIRS:
        F = make_field(ell)
        rng = random.Random(seed + 7 * ell + p)
        for _ in range(100):
            ctx = _nonsingular_context(F, p, rng)
            alpha, beta = F.random_nonzero(rng), F.random_element(rng)
            ok = ok and wild_norm.change_coordinates(ctx, wild_norm.Affine(alpha, beta)).invariant
            rep = wild_norm.change_coordinates(ctx, wild_norm.DeltaSwap())
            ok = ok and rep.invariant and rep.delta_product == 1
            ok = ok and rep.new.t == ctx.t.inverse()
            swaps += 1
    out.add("7", "wild j invariant under affine changes and the delta swap",
            ok, f"{swaps} affine and {swaps} swap changes")


def check_norm(out: _Collector) -> None:
    ok = True
    count = 0
    for p, ell in ((3, 7), (5, 11), (7, 29)):
        F = make_field(ell)
        for t in wild_norm.order_p_elements(F, p):
            for psi in (F.one, F(2)):
                ctx = wild_norm.NormContext(p, F, t, psi, 1, 0, 1)
                wild_norm.norm_poly(ctx)
                wild_norm.omega_and_p_identity(ctx)
                rep = wild_norm.invariant_subspace(ctx)
                ok = ok and rep.dimension == 2 and rep.matches_norm
                count += 1
    out.add("8", "N(tX+psi) = N(X); invariants of degree <= p are span{1, N}; p = omega (t-1)^(p-1)",
            ok, f"{count} contexts")


def check_specialization(out: _Collector) -> None:
    ok = True
    count = 0
    for p in (3, 5):
        F = make_field(p)
        for m in _all_models(F, "wild"):
            ctx = wild_norm.NormContext(p, F, 1, 1, 1, m.A, m.B)
            ok = ok and wild_norm.wild_j(ctx) == j_invariant(m)
            count += 1
    out.add("9", "wild j at t=1, psi=1, U=1 equals 1/(A^2-4B)", ok, f"{count} models")


# -- 10: Picard -----------------------------------------------------------------


def check_picard(out: _Collector, seed: int = ACCEPTANCE_SEED) -> None:
    tops = {N: hodge_characters(N).top_wedge for N in (3, 5, 7, 9)}
    top_ok = all(v == (-1) ** ((N - 1) // 2) for N, v in tops.items())
    gen_ok = all(subgroup_generated([(1, 1), (1, 2)], N).order == 4 * N for N in (3, 5, 7))
    laws = True
    mu = True
    for p in (5, 7):
        F = make_field(p)
        m = (p - 1) // 2
        window = (-12, 12)
        rng = random.Random(seed + p)
        for _ in range(500):
            a, b, c = (random_unit(F, m, window, (-1, 1), rng) for _ in range(3))
            laws = laws and (a * b) * c == a * (b * c)
            laws = laws and (a * a.inverse()).is_one() and (a.inverse() * a).is_one()
        mu = mu and mu_n_structure(p, n=p, window=window, seed=seed).verified
        mu = mu and mu_n_structure(p, n=2, window=window, seed=seed).verified
    out.add("10", "Hodge top wedge, beta image of order 4N, truncated Laurent group laws, mu_2 and mu_p",
            top_ok and gen_ok and laws and mu,
            f"top wedge {tops}, generation {gen_ok}, laws {laws}, mu {mu}")


# -- 11, 12: census and cusps ---------------------------------------------------


def check_census(out: _Collector) -> None:
    parts = []
    ok = True
    for N, q in ((3, 7), (3, 13), (5, 11)):
        r = census_tame(N, make_field(q))
        ok = ok and r.match and r.max_witness_degree <= 6
        parts.append(f"tame N={N} q={q}: {r.classes}")
    for p, s in ((3, 1), (3, 2), (5, 1)):
        r = census_wild(make_field(p, s))
        ok = ok and r.match and r.max_witness_degree <= 6
        parts.append(f"wild q={p ** s}: {r.classes}")
    out.add("11", "census classes = q - 1, witnesses within degree 6", ok, "; ".join(parts))


def check_cusps(out: _Collector) -> None:
    cert = all(degeneration_check(N, make_field(q)).certified for N, q in ((3, 7), (5, 11)))
    acct = True
    for N in range(3, 22, 2):
        for d in cusp_combinatorics(N):
            acct = acct and sum(d.genera) + d.nodes - 1 == N - 1
    out.add("12", "t=1 degeneration gives 2 rational components meeting in N points; genus accounting",
            cert and acct, f"degeneration {cert}, accounting N <= 21 {acct}")


# -- 13: CLI goldens ------------------------------------------------------------

GOLDEN_BATTERY: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("pgl2_order", ("pgl2", "order", "--field", "7", "--matrix", "[[3,0],[0,1]]")),
    ("pgl2_classify", ("pgl2", "classify", "--field", "11", "--generators", "[[[4,0],[0,1]],[[0,1],[1,0]]]")),
    ("pgl2_survey", ("pgl2", "survey", "--field", "3^2")),
    ("poly_phi", ("poly", "phi", "--n", "15")),
    ("poly_chi", ("poly", "chi", "--n", "5")),
    ("poly_reduce", ("poly", "reduce", "--n", "5", "--p", "5")),
    ("curve_info", ("curve", "info", "--field", "7", "--N", "3", "--A", "0", "--B", "-1")),
    ("curve_iso", ("curve", "iso", "--variant", "wild", "--field", "3",
                   "--A1", "0", "--B1", "2", "--A2", "2", "--B2", "0")),
    ("curve_aut", ("curve", "aut", "--field", "7", "--N", "3", "--A", "0", "--B", "-1", "--oracle")),
    ("wildnorm_resultant", ("wildnorm", "verify-resultant", "--p", "3", "--field", "7",
                            "--trials", "20", "--seed", "1")),
    ("picard_characters", ("picard", "characters", "--N", "5")),
    ("moduli_census", ("moduli", "census", "--variant", "tame", "--N", "3", "--field", "7")),
)


def golden_text(name: str) -> str:
    return resources.files("potts").joinpath("golden", f"{name}.json").read_text()


def check_goldens(out: _Collector) -> None:
    from .cli import run

    bad = []
    for name, argv in GOLDEN_BATTERY:
        code, text = run(list(argv))
        if code != 0 or text != golden_text(name):
            bad.append(name)
    out.add("13", "CLI output byte-identical to 12 golden files", not bad,
            "mismatched: " + ", ".join(bad) if bad else f"{len(GOLDEN_BATTERY)} requests")


CHECKS: tuple[Callable[[_Collector], None], ...] = (
    check_orders,
    check_survey,
    check_cyclotomic,
    check_reduction,
    check_automorphisms,
    check_resultant,
    check_invariance,
    check_norm,
    check_specialization,
    check_picard,
    check_census,
    check_cusps,
    check_goldens,
)


def run_acceptance(checks=CHECKS) -> list[CriterionResult]:
    out = _Collector()
    for check in checks:
        start = time.perf_counter()
        before = len(out.results)
        check(out)
        elapsed = time.perf_counter() - start
        for r in out.results[before:]:
            r.seconds = elapsed
    return out.results


def summary(results: list[CriterionResult]) -> dict:
    return {
        "results": [r.to_json() for r in results],
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "unexpected": [r.key for r in results if r.unexpected],
    }


if __name__ == "__main__":
    res = run_acceptance()
    for r in res:
        print(r.line())
    print(json.dumps(summary(res)["unexpected"]))
