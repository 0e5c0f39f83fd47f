import json

import pytest

from weylzhu.exactmath import parse_gauss, rat
from weylzhu.fock import VACUUM, Monomial, State, TruncConfig, parse_state
from weylzhu.zhu import (
    StripError,
    ZhuContext,
    build_c_span,
    build_o_span,
    c_quotient_dim,
    circ,
    f_map_check,
    filtration_check,
    identity_checks,
    in_o_span,
    residue,
    star,
    zhu_quotient,
    zhu_report,
)

P = parse_state
CFG = TruncConfig(deg_cap=4, pair_budget=3)


@pytest.fixture(scope="module")
def third():
    return build_c_span(build_o_span(ZhuContext.create("1/3", CFG)))


@pytest.fixture(scope="module")
def boundary():
    return build_c_span(build_o_span(ZhuContext.create("0", TruncConfig(deg_cap=3))))


class TestProducts:
    def test_vacuum_circ(self, third):
        for v in ["|0>", "a(-1)|0>", "a(-1)a*(0)|0>"]:
            assert circ(P("|0>"), P(v), third) == State()

    def test_non_integral_circ(self, third):
        v = P("a(-1)a*(-1)|0>")
        assert circ(P("a*(0)|0>"), v, third) == P("a*(0)a(-1)a*(-1)|0>")

    def test_integral_circ_at_zero(self, boundary):
        got = circ(P("a(-1)|0>"), P("a*(0)|0>"), boundary)
        assert got == P("a(-2)a*(0)|0> + a(-1)a*(0)|0>")

    def test_vacuum_star(self, third):
        for v in ["|0>", "a(-1)|0>", "a(-2)a*(-1)a*(0)|0>"]:
            assert star(P("|0>"), P(v), third) == P(v)

    def test_star_gate(self, third):
        assert star(P("a*(0)|0>"), P("a(-1)|0>"), third) == State()

    def test_residue_reports_cutoff(self):
        s, last = residue(P("a(-1)|0>"), P("a*(0)|0>"), 1, 1)
        assert s == P("a(-1)a*(0)|0> + |0>")
        assert last >= 1

    def test_d_plus_l_is_vacuum_circ(self, third):
        u = P("a(-1)a*(0)|0>")
        assert circ(u, P("|0>"), third) == P("a(-2)a*(0)|0> + a(-1)a*(-1)|0> + a(-1)a*(0)|0>")


class TestSpans:
    def test_non_integral_monomials_in_o(self, third):
        for m in third.ambient:
            if not third.is_integral(m):
                assert in_o_span(third, State.monomial(m))

    def test_beta_collapses_to_scalar(self, third):
        rr = third.o_span
        nf = rr.reduce({Monomial((0,), (0,)): parse_gauss("1")})
        assert set(nf) <= {VACUUM}

    def test_zero_in_o(self, third):
        assert in_o_span(third, State())

    def test_c_span_contains_all_but_vacuum(self, third):
        for m in third.ambient:
            if m != VACUUM and third.re_weight(m) <= CFG.deg_cap - 1:
                assert third.c_span.contains({m: parse_gauss("1")})
        assert not third.c_span.contains({VACUUM: parse_gauss("1")})

    def test_boundary_c_span_member(self, boundary):
        assert boundary.c_span.contains({Monomial((1,), (0,)): parse_gauss("1")})


class TestQuotient:
    def test_third(self, third):
        q = zhu_quotient(third, 2)
        assert q.dim_upper_bound == 1
        assert q.repr_basis == [State.vacuum()]
        assert q.star_table[("|0>", "|0>")] == State.vacuum()
        assert c_quotient_dim(third, 2) == 1

    def test_report_cap_guard(self, third):
        with pytest.raises(ValueError):
            zhu_quotient(third, 3)

    def test_weyl_relation_at_zero(self, boundary):
        q = zhu_quotient(boundary, 1)
        assert q.dim_upper_bound >= 3
        a, s = "a(-1)|0>", "a*(0)|0>"
        assert q.star_table[(a, s)] - q.star_table[(s, a)] == State.vacuum()

    def test_gr_dims_sum(self, boundary):
        q = zhu_quotient(boundary, 1)
        assert sum(q.gr_dims.values()) == q.dim_upper_bound

    def test_refuses_outside_strip(self):
        with pytest.raises(StripError):
            ZhuContext.create("2", CFG)

    def test_monotone_in_pair_budget(self):
        dims = []
        for pb in (0, 1, 2, 3):
            ctx = build_o_span(ZhuContext.create("1/3", TruncConfig(deg_cap=4, pair_budget=pb)))
            dims.append(zhu_quotient(ctx, 2).dim_upper_bound)
        assert dims == sorted(dims, reverse=True)
        assert dims[-1] == 1


class TestChecks:
    @pytest.mark.parametrize("which", ["third", "boundary"])
    def test_all_pass(self, which, request):
        ctx = request.getfixturevalue(which)
        rc = ctx.cfg.deg_cap - 2
        q = zhu_quotient(ctx, rc)
        results = filtration_check(ctx, q) + identity_checks(ctx, rc) + [f_map_check(ctx)]
        for r in results:
            assert r.ok, r.failures[:3]
            assert r.passed > 0

    def test_f_map_examples(self, third):
        # a non-integral vector and u_{-2}v with u integral both vanish in gr
        g = P("a*(0)|0>")
        assert in_o_span(third, g)
        from weylzhu.modes import mode_of
        x = mode_of(P("a(-1)a*(0)|0>"), -2, P("|0>"))
        nf = third.o_span.reduce(dict(x.terms))
        assert all(third.re_weight(m) <= 1 for m in nf)

    def test_report_is_json_and_deterministic(self):
        a = json.dumps(zhu_report("1/2", CFG, 2))
        b = json.dumps(zhu_report("1/2", CFG, 2))
        assert a == b
        data = json.loads(a)
        assert data["dimUpperBound"] == 1 and data["cQuotientDim"] == 1
        assert {"mu", "degCap", "pairBudget", "reportCap", "v0Dim", "starTable", "checks"} <= set(data)
