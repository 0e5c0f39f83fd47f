"""
Exact-equality verification suites run by ``weylzhu verify``.

Each suite returns a list of :class:`CheckResult`.  Basis states are
enumerated by :func:`enumeration_basis`, so values of mu outside the strip
are enumerated at Re(mu) clamped into [0, 1]; the mode engine itself does
not depend on mu.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Sequence

from .exactmath import GaussRat, rat
from .flow import central_charge, flow_hom_check, flow_iso, gen_bracket, phi, rho, spectral_flow
from .fock import State, TruncConfig, weight
from .grading import OmegaDescription, classify, enumeration_basis, grading_lemma_scan, in_strip, omega_test
from .modes import (
    A,
    ASTAR,
    GenMode,
    act_gen,
    act_word,
    mode_of,
    omega_state,
    virasoro_mode,
)
from .report import CheckResult

__all__ = [
    "SUITES",
    "run_suite",
    "virasoro_defect",
    "virasoro_suite",
    "weight_formula_suite",
    "two_path_suite",
    "modes_suite",
    "flow_suite",
    "grading_suite",
    "zhu_props_suite",
]


def virasoro_defect(mu, m: int, n: int, w: State) -> State:
    """``[L(m), L(n)] w - (m-n) L(m+n) w - (m^3-m)/12 c_mu delta_{m+n,0} w``."""
    mu = GaussRat.coerce(mu)
    lhs = virasoro_mode(mu, m, virasoro_mode(mu, n, w)) - virasoro_mode(mu, n, virasoro_mode(mu, m, w))
    rhs = virasoro_mode(mu, m + n, w).scale(m - n)
    if m + n == 0:
        rhs = rhs + w.scale(central_charge(mu) * GaussRat(rat(m ** 3 - m) / 12))
    return lhs - rhs


def virasoro_suite(mu, cfg: TruncConfig, state_cap=None) -> List[CheckResult]:
    """Virasoro brackets for m, n in the mode window on every basis monomial."""
    mu = GaussRat.coerce(mu)
    cap = cfg.deg_cap - 1 if state_cap is None else rat(state_cap)
    lo, hi = cfg.mode_window
    res = CheckResult(f"virasoro_brackets[mu={mu}]")
    for b in enumeration_basis(mu, cap):
        w = State.monomial(b)
        for m in range(lo, hi + 1):
            for n in range(lo, hi + 1):
                res.record(not virasoro_defect(mu, m, n, w), f"m={m}, n={n}, w={b}")
    return [res]


def weight_formula_suite(mu, cap) -> List[CheckResult]:
    """L(0) acts on each monomial by its symbolic weight."""
    mu = GaussRat.coerce(mu)
    res = CheckResult(f"l0_weight_formula[mu={mu}]")
    for b in enumeration_basis(mu, cap):
        w = State.monomial(b)
        expected = w.scale(weight(b).evaluate(mu))
        res.record(virasoro_mode(mu, 0, w) == expected, f"w={b}")
    return [res]


def two_path_suite(mu, cap, window) -> List[CheckResult]:
    """Expansion and recursion routes agree on all basis triples."""
    lo, hi = window
    basis = enumeration_basis(mu, cap)
    res = CheckResult("two_path_mode_agreement")
    for v in basis:
        for w in basis:
            for p in range(lo, hi + 1):
                a = mode_of(v, p, w, route="expansion")
                b = mode_of(v, p, w, route="recursion")
                res.record(a == b, f"v={v}, p={p}, w={w}")
    return [res]


def modes_suite(mu, cfg: TruncConfig) -> List[CheckResult]:
    cap = cfg.deg_cap - 1
    return weight_formula_suite(mu, cfg.deg_cap) + two_path_suite(mu, cap, cfg.mode_window)


def _generator_modes(window) -> List[GenMode]:
    lo, hi = window
    return [GenMode(k, n) for k in (A, ASTAR) for n in range(lo, hi + 1)]


def flow_suite(mu, cfg: TruncConfig, pair_cap=2) -> List[CheckResult]:
    mu = GaussRat.coerce(mu)
    lo, hi = cfg.mode_window

    iso = CheckResult("flow_maps_omega_mu_to_omega_1_minus_mu")
    iso.record(flow_iso(omega_state(mu)) == omega_state(1 - mu), f"mu={mu}")

    cc = CheckResult("central_charge_symmetric")
    cc.record(central_charge(mu) == central_charge(1 - mu), f"mu={mu}")

    hom = CheckResult("flow_is_homomorphism")
    basis = enumeration_basis(mu, pair_cap)
    for u in basis:
        for v in basis:
            for n in range(lo, hi + 1):
                hom.record(flow_hom_check(State.monomial(u), State.monomial(v), n), f"u={u}, v={v}, n={n}")

    lift = CheckResult("mode_flow_matches_state_flow")
    gens = _generator_modes(cfg.mode_window)
    for g in gens:
        ((c, word),) = spectral_flow(1, 1, [g])
        for b in basis:
            w = State.monomial(b)
            lhs = flow_iso(act_gen(g, w))
            rhs = act_word(word, flow_iso(w)).scale(c)
            lift.record(lhs == rhs, f"mode={g}, w={b}")

    brk = CheckResult("automorphisms_preserve_brackets")
    for x in gens:
        for y in gens:
            base = gen_bracket(x, y)
            for s in (-1, 1, 2):
                (_, (rx,)), (_, (ry,)) = rho(s, x), rho(s, y)
                brk.record(gen_bracket(rx, ry) == base, f"rho_{s}: {x}, {y}")
            for t in (GaussRat(1), GaussRat(-2), GaussRat(1, 1)):
                (cx, (px,)), (cy, (py,)) = phi(t, x), phi(t, y)
                brk.record(cx * cy * gen_bracket(px, py) == base, f"phi_{t}: {x}, {y}")
    return [cc, iso, hom, lift, brk]


def grading_suite(mu, cfg: TruncConfig, max_length: int = 3) -> List[CheckResult]:
    mu = GaussRat.coerce(mu)
    region = classify(mu)
    vac = CheckResult(f"vacuum_space_matches_region[{region.subcase.value}]")
    outcome = omega_test(mu, State.vacuum(), cfg)
    expect_pass = region.omega is not OmegaDescription.ZERO
    vac.record(bool(outcome) == expect_pass, f"omega_test(1) = {outcome}")
    out = [vac]
    if in_strip(mu):
        scan = grading_lemma_scan(mu, cfg, max_length=max_length)
        res = CheckResult(f"shift_sum_dichotomy[words={scan.words}]")
        res.passed = scan.nonzero - len(scan.counterexamples)
        for word, shift in scan.counterexamples:
            res.record(False, f"word={word}, shift={shift}")
        out.append(res)
    return out


def zhu_props_suite(mu, cfg: TruncConfig, report_cap=None) -> List[CheckResult]:
    from .zhu import ZhuContext, build_c_span, build_o_span, f_map_check, filtration_check, identity_checks, zhu_quotient

    report_cap = cfg.deg_cap - 2 if report_cap is None else rat(report_cap)
    ctx = build_c_span(build_o_span(ZhuContext.create(mu, cfg)))
    q = zhu_quotient(ctx, report_cap)
    return filtration_check(ctx, q) + identity_checks(ctx, report_cap) + [f_map_check(ctx)]


SUITES: Dict[str, Callable[..., List[CheckResult]]] = {
    "virasoro": virasoro_suite,
    "modes": modes_suite,
    "flow": flow_suite,
    "grading": grading_suite,
    "zhu-props": zhu_props_suite,
}


def run_suite(name: str, mu, cfg: TruncConfig) -> List[CheckResult]:
    return SUITES[name](mu, cfg)
