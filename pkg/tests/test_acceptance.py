"""
End-to-end acceptance gate.

Each criterion is a function returning ``(ok, detail)``.  Under pytest every
criterion prints one ``PASS``/``FAIL`` line (visible even with capture on);
``python tests/test_acceptance.py`` prints the same lines without pytest.
"""

import random
import sys
import tempfile
import time
from pathlib import Path

import pytest

from weylzhu.exactmath import GaussRat, parse_gauss
from weylzhu.flow import central_charge, flow_hom_check, flow_iso
from weylzhu.fock import VACUUM, Monomial, State, TruncConfig
from weylzhu.grading import Subcase, Tag, classify, enumeration_basis, grading_lemma_scan, omega_test
from weylzhu.modes import omega_state
from weylzhu.plotting import region_map
from weylzhu.suites import two_path_suite, virasoro_suite, weight_formula_suite, zhu_props_suite
from weylzhu.tensor import (
    TensorVector,
    tensor_basis,
    tensor_central_charge,
    tensor_classify,
    tensor_virasoro_defect,
)
from weylzhu.grading import TAG_RANK
from weylzhu.zhu import zhu_report

G = parse_gauss


def _all_ok(results):
    bad = [r for r in results if not r.ok]
    total = sum(r.passed for r in results)
    if bad:
        return False, f"{bad[0].name}: {bad[0].failures[:1]}"
    return True, f"{total} checks"


def central_charges():
    t0 = time.perf_counter()
    expect = {"0": 2, "1/2": -1, "-1/2": 11, "2": 26}
    ok = all(central_charge(G(m)) == c for m, c in expect.items())
    dt = time.perf_counter() - t0
    return ok and dt < 1, f"{len(expect)} values in {dt:.3f}s"


def virasoro_brackets():
    results = []
    for mu in ("0", "1/3", "1/2", "1/4+1/4i", "-1/2"):
        t0 = time.perf_counter()
        results += virasoro_suite(G(mu), TruncConfig(deg_cap=4, mode_window=(-3, 3)), state_cap=3)
        if time.perf_counter() - t0 > 60:
            return False, f"mu={mu} exceeded 60s"
    return _all_ok(results)


def weight_formula():
    results = []
    for mu in ("0", "1/3", "1/4+1/4i", "-1/2"):
        results += weight_formula_suite(G(mu), 4)
    return _all_ok(results)


def two_path_agreement():
    return _all_ok(two_path_suite(G("1/2"), 3, (-4, 4)))


def conformal_flow():
    mus = [G(m) for m in ("0", "1/3", "1/2", "1/4+1/4i", "2")]
    iso = all(flow_iso(omega_state(mu)) == omega_state(1 - mu) for mu in mus)
    count = bad = 0
    for mu in mus:
        basis = enumeration_basis(mu, 2)
        for u in basis:
            for v in basis:
                for n in range(-3, 4):
                    count += 1
                    bad += not flow_hom_check(State.monomial(u), State.monomial(v), n)
    return iso and not bad, f"omega exchange {'ok' if iso else 'broken'}, {count - bad}/{count} homomorphism checks"


def region_classification():
    t0 = time.perf_counter()
    witnesses = {
        "1/2": (Tag.OMEGA_VOA, Subcase.CASE2_REAL_STRIP),
        "1/4": (Tag.OMEGA_VOA, Subcase.CASE2_REAL_STRIP),
        "3/4": (Tag.OMEGA_VOA, Subcase.CASE2_REAL_STRIP),
        "i": (Tag.STRIP_CONF_OMEGA, Subcase.CASE3_EDGE_IMAG),
        "1/4+1/2i": (Tag.STRIP_CONF_OMEGA, Subcase.CASE4B_STRIP_WIDE_IM),
        "0": (Tag.STRIP_CONF_OMEGA, Subcase.CASE1_INTEGER),
        "2": (Tag.NOT_OMEGA_GENERATED, Subcase.CASE5_OUTSIDE),
        "-1/2": (Tag.NOT_OMEGA_GENERATED, Subcase.CASE5_OUTSIDE),
    }
    wrong = [m for m, (tag, sub) in witnesses.items() if (classify(G(m)).tag, classify(G(m)).subcase) != (tag, sub)]
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "regions.svg"
        counts = region_map(str(path))
        svg_ok = path.read_text().lstrip().startswith("<?xml")
    three = sorted(k for k, v in counts.items() if v) == sorted(t.value for t in Tag)
    dt = time.perf_counter() - t0
    ok = not wrong and svg_ok and three and dt < 5
    return ok, f"witness mismatches {wrong}, grid tags {counts}, {dt:.2f}s"


def omega_certificates():
    cfg = TruncConfig(deg_cap=4, mode_window=(-4, 4))
    problems = []
    for m in ("1/3", "1/4+1/4i"):
        mu = G(m)
        c = cfg.with_mu(mu)
        for b in enumeration_basis(mu, 3):
            if bool(omega_test(mu, State.monomial(b), c)) != (b == VACUUM):
                problems.append((m, str(b)))
        if not omega_test(mu, State.vacuum().scale(G("3/2+i")), c):
            problems.append((m, "scaled vacuum"))
    mu = G("2")
    c = cfg.with_mu(mu)
    basis = enumeration_basis(mu, 3)
    for b in basis:
        r = omega_test(mu, State.monomial(b), c)
        if r or (str(r.u), r.n) != ("a(-1)|0>", -1):
            problems.append(("2", str(b)))
    mu = G("0")
    c = cfg.with_mu(mu)
    for t in range(4):
        if not omega_test(mu, State.monomial(Monomial((), (0,) * t)), c):
            problems.append(("0", f"a*(0)^{t}"))
    return not problems, f"{len(basis)} witnesses at mu=2, problems {problems[:3]}"


def zhu_one_dimensional():
    cfg = TruncConfig(deg_cap=4, pair_budget=3)
    dims = {}
    for m in ("1/3", "1/2", "1/4+1/4i", "2/5+1/5i"):
        rep = zhu_report(G(m), cfg, 2, checks=False)
        dims[m] = (rep["dimUpperBound"], rep["cQuotientDim"])
    return all(v == (1, 1) for v in dims.values()), f"(dimUpperBound, cQuotientDim) = {dims}"


def weyl_contrast():
    rep = zhu_report(G("0"), TruncConfig(deg_cap=3), 1, checks=False)
    table = {(e["left"], e["right"]): State.parse(e["product"]) for e in rep["starTable"]}
    a, s = "a(-1)|0>", "a*(0)|0>"
    weyl = (a, s) in table and (s, a) in table and table[(a, s)] - table[(s, a)] == State.vacuum()
    return rep["dimUpperBound"] >= 3 and weyl, f"dimUpperBound {rep['dimUpperBound']}, Weyl relation {weyl}"


def zhu_identities():
    results = []
    for m in ("1/3", "0"):
        results += zhu_props_suite(G(m), TruncConfig(deg_cap=4, pair_budget=3))
    return _all_ok(results)


def shift_sum_scan():
    bad, words = 0, 0
    for m in ("1/3", "1/2"):
        rep = grading_lemma_scan(G(m), TruncConfig(deg_cap=4, mode_window=(-3, 3)), max_length=3)
        bad += len(rep.counterexamples)
        words += rep.words
    return bad == 0 and words > 0, f"{words} words, {bad} counterexamples"


def rank_n():
    rng = random.Random(20261019)
    pool = ["0", "1", "1/3", "1/2", "2", "-1/2", "i", "1/4+1/2i", "1/4+1/4i", "3/4", "1+i"]
    mismatches = 0
    for _ in range(10):
        mus = [G(x) for x in rng.choices(pool, k=rng.choice([2, 3]))]
        c_ok = tensor_central_charge(mus) == sum((central_charge(m) for m in mus), GaussRat(0))
        weakest = min((classify(m) for m in mus), key=lambda r: TAG_RANK[r.tag]).tag
        mismatches += not (c_ok and tensor_classify(mus).tag is weakest)
    mus = [G("1/3"), G("1/2")]
    vir_bad = vir_count = 0
    for key in tensor_basis(mus, 2):
        w = TensorVector(2, {key: 1})
        for m in range(-3, 4):
            for n in range(-3, 4):
                vir_count += 1
                vir_bad += bool(tensor_virasoro_defect(mus, m, n, w))
    return not mismatches and not vir_bad, f"{mismatches} tuple mismatches, {vir_count - vir_bad}/{vir_count} brackets"


CRITERIA = [
    (1, "central charge constants", central_charges),
    (2, "Virasoro brackets on basis states", virasoro_brackets),
    (3, "L(0) weight formula", weight_formula),
    (4, "two mode routes agree", two_path_agreement),
    (5, "conformal flow isomorphism", conformal_flow),
    (6, "region classification and map", region_classification),
    (7, "vacuum-space certificates", omega_certificates),
    (8, "one-dimensional Zhu quotient", zhu_one_dimensional),
    (9, "Weyl relation at mu = 0", weyl_contrast),
    (10, "Zhu identity suite", zhu_identities),
    (11, "shift-sum dichotomy scan", shift_sum_scan),
    (12, "rank-n tensor products", rank_n),
]


def run_criterion(num, label, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # report the crash as a failure line
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    line = f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}  {label}  [{dt:.1f}s]  {detail}"
    return ok, line


@pytest.mark.slow
@pytest.mark.parametrize("num, label, fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, label, fn, capsys):
    ok, line = run_criterion(num, label, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    outcomes = [run_criterion(*c) for c in CRITERIA]
    for _, line in outcomes:
        print(line)
    sys.exit(0 if all(ok for ok, _ in outcomes) else 1)
