"""
Truncated Zhu algebra computations for C-graded vertex algebras.

Everything lives inside the ambient space ``basis_up_to(mu, deg_cap)``.
Relations captured there are genuine elements of O(V), so the quotient
dimensions computed here are upper bounds for the corresponding pieces of
A(V).

Row reduction orders columns by descending real weight.  With homogeneous
generators the reduced rows are then homogeneous, and the rows whose pivot
has weight <= R span exactly the captured relations of weight <= R.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exactmath import ONE, GaussRat, RowReducer, binom, ceil_re, rat
from .fock import Monomial, State, TruncConfig, basis_up_to, weight, zero_direction
from .grading import in_strip, r_value
from .modes import d_op, lower_truncation_bound, mode_of
from .report import CheckResult

__all__ = [
    "ZhuContext",
    "ZhuQuotient",
    "StripError",
    "residue",
    "circ",
    "star",
    "build_o_span",
    "build_c_span",
    "zhu_quotient",
    "filtration_check",
    "f_map_check",
    "identity_checks",
    "CheckResult",
    "zhu_report",
]


class StripError(ValueError):
    """mu lies outside 0 <= Re(mu) <= 1, where the integer-weight part is unbounded below."""


@dataclass
class ZhuContext:
    mu: GaussRat
    cfg: TruncConfig
    ambient: List[Monomial]
    o_span: Optional[RowReducer] = None
    c_span: Optional[RowReducer] = None
    o_generators: int = 0
    c_generators: int = 0

    @classmethod
    def create(cls, mu, cfg: TruncConfig) -> "ZhuContext":
        mu = GaussRat.coerce(mu)
        if not in_strip(mu):
            raise StripError(
                f"mu = {mu} has Re(mu) outside [0, 1]: the vertex algebra is not "
                "Omega-generated there (Case 5) and its integer-weight part is not "
                "bounded below, so the Zhu construction is refused"
            )
        cfg = cfg.with_mu(mu)
        ambient = basis_up_to(mu, cfg.deg_cap, cfg.zero_cap)
        return cls(mu, cfg, ambient)

    # helpers ------------------------------------------------------------
    def re_weight(self, m: Monomial):
        return weight(m).re_at(self.mu)

    def column_key(self, m: Monomial):
        return (-self.re_weight(m), m.sort_key())

    def is_integral(self, m: Monomial) -> bool:
        return not r_value(self.mu, m)

    def v0(self, cap=None) -> List[Monomial]:
        cap = self.cfg.deg_cap if cap is None else rat(cap)
        return [m for m in self.ambient if self.is_integral(m) and self.re_weight(m) <= cap]

    def interior(self, *monos: Monomial, margin: int = 0) -> bool:
        """Combined zero-direction count stays ``margin`` below the cap (always true off the boundary)."""
        if zero_direction(self.mu) is None:
            return True
        return sum(self.zero_count(m) for m in monos) <= self.cfg.zero_cap - margin

    def zero_count(self, m: Monomial) -> int:
        zd = zero_direction(self.mu)
        if zd == "astar":
            return m.astar.count(0)
        if zd == "a":
            return m.a.count(0)
        return 0


# --------------------------------------------------------------------------
# residue products


def residue(u, v, exponent: int, pole: int, cfg: Optional[TruncConfig] = None) -> Tuple[State, int]:
    """``Res_z (1+z)^exponent z^(-pole) Y(u,z) v = sum_i C(exponent, i) u_{i-pole} v``.

    Returns the state and the last summation index i that can contribute
    (lower truncation).
    """
    bound = lower_truncation_bound(u, v)
    last = bound + pole
    out = State()
    for i in range(0, last + 1):
        b = binom(exponent, i)
        if b:
            out = out + mode_of(u, i - pole, v, cfg).scale(b)
    return out, last


def _homogeneous_parts(mu, u: State) -> List[Tuple[GaussRat, State]]:
    parts: Dict[GaussRat, Dict[Monomial, GaussRat]] = {}
    for m, c in u.terms.items():
        parts.setdefault(weight(m).evaluate(mu), {})[m] = c
    return [(w, State._raw(t)) for w, t in sorted(parts.items(), key=lambda kv: (kv[0].re, kv[0].im))]


def _state(x) -> State:
    if isinstance(x, State):
        return x
    if isinstance(x, Monomial):
        return State.monomial(x)
    return State.parse(x)


def circ(u, v, ctx: ZhuContext) -> State:
    """The O(V)-generating product, extended linearly over weight components of u."""
    u, v = _state(u), _state(v)
    out = State()
    for w, part in _homogeneous_parts(ctx.mu, u):
        ceil = ceil_re(w)
        if w == ceil:
            res, _ = residue(part, v, ceil, 2, ctx.cfg)
        else:
            res, _ = residue(part, v, ceil - 1, 1, ctx.cfg)
        out = out + res
    return out


def star(u, v, ctx: ZhuContext) -> State:
    """Zhu's product; zero on components of u with non-integer weight."""
    u, v = _state(u), _state(v)
    out = State()
    for w, part in _homogeneous_parts(ctx.mu, u):
        if w.is_integer():
            res, _ = residue(part, v, int(w.re), 1, ctx.cfg)
            out = out + res
    return out


def _as_vec(s: State) -> Dict[Monomial, GaussRat]:
    return dict(s.terms)


# --------------------------------------------------------------------------
# spans


def _pairs(ctx: ZhuContext, budget):
    """Monomial pairs (u, v) with Re(|u|+|v|) <= budget and integer |u|+|v|."""
    amb = ctx.ambient
    zc = ctx.cfg.zero_cap
    boundary = zero_direction(ctx.mu) is not None
    for u in amb:
        wu = weight(u).evaluate(ctx.mu)
        if wu.re > budget:
            break
        for v in amb:
            wv = weight(v).evaluate(ctx.mu)
            if wu.re + wv.re > budget:
                break
            if not (wu + wv).is_integer():
                continue  # lies in the non-integer part, already spanned by monomials
            if boundary and ctx.zero_count(u) + ctx.zero_count(v) > zc:
                continue
            yield u, v


def build_o_span(ctx: ZhuContext) -> ZhuContext:
    """Row-reduce the captured relations of O(V) inside the ambient space."""
    rr = RowReducer(ctx.column_key)
    count = 0
    for m in ctx.ambient:
        if not ctx.is_integral(m):
            rr.add({m: ONE})
            count += 1
    for u, v in _pairs(ctx, ctx.cfg.pair_budget):
        rr.add(_as_vec(circ(u, v, ctx)))
        count += 1
    return dataclasses.replace(ctx, o_span=rr, o_generators=count)


def _c_generators(ctx: ZhuContext):
    cap = ctx.cfg.deg_cap
    zc = ctx.cfg.zero_cap
    boundary = zero_direction(ctx.mu) is not None
    for m in ctx.ambient:
        if not ctx.is_integral(m):
            yield State.monomial(m)
    for u in ctx.ambient:
        wu = ctx.re_weight(u)
        integral = ctx.is_integral(u)
        for v in ctx.ambient:
            if boundary and ctx.zero_count(u) + ctx.zero_count(v) > zc:
                continue
            base = wu + ctx.re_weight(v)
            # u_{-n} v has weight |u| + |v| + n - 1
            n = 2 if integral else 1
            while base + n - 1 <= cap:
                yield mode_of(State.monomial(u), -n, State.monomial(v), ctx.cfg)
                n += 1


def build_c_span(ctx: ZhuContext) -> ZhuContext:
    """Span of a, u_{-n}v (n >= 2, u integral) and b_{-m}w (m >= 1, b non-integral)."""
    rr = RowReducer(ctx.column_key)
    count = 0
    for g in _c_generators(ctx):
        if g:
            rr.add(_as_vec(g))
        count += 1
    return dataclasses.replace(ctx, c_span=rr, c_generators=count)


# --------------------------------------------------------------------------
# quotient


@dataclass
class ZhuQuotient:
    mu: GaussRat
    report_cap: object
    repr_basis: List[State]
    dim_upper_bound: int
    v0_dim: int
    gr_dims: Dict[int, int]
    star_table: Dict[Tuple[str, str], State] = field(default_factory=dict)

    @property
    def labels(self) -> List[str]:
        return [str(s) for s in self.repr_basis]


def _pivot_weights(rr: RowReducer, ctx: ZhuContext):
    return [ctx.re_weight(c) for c in rr.pivots]


def normal_form(ctx: ZhuContext, s: State) -> State:
    return State._raw(ctx.o_span.reduce(_as_vec(s)))


def in_o_span(ctx: ZhuContext, s: State) -> bool:
    return not ctx.o_span.reduce(_as_vec(s))


def zhu_quotient(ctx: ZhuContext, report_cap) -> ZhuQuotient:
    """Upper-bound certificate for A(V) restricted to weights <= report_cap."""
    report_cap = rat(report_cap)
    if report_cap > ctx.cfg.deg_cap - 2:
        raise ValueError("report_cap must not exceed deg_cap - 2")
    if ctx.o_span is None:
        ctx = build_o_span(ctx)
    rr = ctx.o_span
    v0 = ctx.v0(report_cap)
    free = [m for m in v0 if m not in rr.pivots]
    gr: Dict[int, int] = {}
    for m in free:
        k = int(ctx.re_weight(m))
        gr[k] = gr.get(k, 0) + 1
    repr_basis = [State.monomial(m) for m in free]
    table = {}
    for x in free:
        for y in free:
            table[(str(x), str(y))] = normal_form(ctx, star(x, y, ctx))
    return ZhuQuotient(ctx.mu, report_cap, repr_basis, len(free), len(v0), dict(sorted(gr.items())), table)


def c_quotient_dim(ctx: ZhuContext, report_cap) -> int:
    """dim of (ambient / captured C(V)) in weights <= report_cap."""
    report_cap = rat(report_cap)
    if ctx.c_span is None:
        ctx = build_c_span(ctx)
    low = [m for m in ctx.ambient if ctx.re_weight(m) <= report_cap]
    return sum(1 for m in low if m not in ctx.c_span.pivots)


# --------------------------------------------------------------------------
# checks


def _max_re_weight(ctx: ZhuContext, s: State):
    return max((ctx.re_weight(m) for m in s.terms), default=None)


def _within(ctx: ZhuContext, s: State, level) -> bool:
    top = _max_re_weight(ctx, s)
    return top is None or top <= level


def filtration_check(ctx: ZhuContext, quotient: ZhuQuotient, margin: int = 0) -> List[CheckResult]:
    """Filtration containment and gr-commutativity on the representative basis.

    At Re(mu) in {0, 1} only pairs inside the zero-direction cap (by
    ``margin``) are checked; beyond it the needed relations leave the
    ambient space.
    """
    mult = CheckResult("filtration_multiplicative")
    comm = CheckResult("gr_commutative")
    monos = [next(iter(s.terms)) for s in quotient.repr_basis]
    for x in monos:
        for y in monos:
            if not ctx.interior(x, y, margin=margin):
                continue
            s, t = ctx.re_weight(x), ctx.re_weight(y)
            xy = quotient.star_table[(str(x), str(y))]
            yx = quotient.star_table[(str(y), str(x))]
            mult.record(_within(ctx, xy, s + t), f"{x} * {y} leaves F_{s + t}")
            comm.record(_within(ctx, xy - yx, s + t - 1), f"[{x}, {y}] not in F_{s + t - 1}")
    return [mult, comm]


def f_map_check(ctx: ZhuContext, level=None) -> CheckResult:
    """Every captured C(V) basis vector of weight k <= level lies in O + F_{k-1}."""
    if ctx.o_span is None:
        ctx = build_o_span(ctx)
    if ctx.c_span is None:
        ctx = build_c_span(ctx)
    level = ctx.cfg.pair_budget if level is None else rat(level)
    res = CheckResult("c_span_in_kernel_of_f")
    for row in ctx.c_span.basis():
        g = State._raw(dict(row))
        k = _max_re_weight(ctx, g)
        if k > level:
            continue
        nf = normal_form(ctx, g)
        res.record(_within(ctx, nf, k - 1), f"f({g}) = {nf} != 0 in gr_{k}")
    return res


def identity_checks(ctx: ZhuContext, report_cap, margin: int = 0) -> List[CheckResult]:
    """Spot checks of the standard O(V) identities inside the captured span.

    Pairs are restricted as in :func:`filtration_check`.
    """
    report_cap = rat(report_cap)
    if ctx.o_span is None:
        ctx = build_o_span(ctx)
    budget = ctx.cfg.pair_budget
    v0 = ctx.v0(report_cap)
    small = [m for m in ctx.ambient if ctx.re_weight(m) <= report_cap]

    dl = CheckResult("D_plus_L_in_O")
    for m in small:
        if not ctx.interior(m, margin=margin):
            continue
        w = weight(m).evaluate(ctx.mu)
        u = State.monomial(m)
        dl.record(in_o_span(ctx, d_op(u) + u.scale(w)), f"(D+L){m}")

    prop3 = CheckResult("residue_family_in_O")
    for u in small:
        wu = weight(u).evaluate(ctx.mu)
        delta = 1 if wu.is_integer() else 0
        ceil = ceil_re(wu)
        for v in small:
            if not ctx.interior(u, v, margin=margin):
                continue
            base = ctx.re_weight(u) + ctx.re_weight(v)
            if not (wu + weight(v).evaluate(ctx.mu)).is_integer():
                continue
            for m in range(0, 3):
                if base + m > budget:
                    break
                for n in range(0, m + 1):
                    s, _ = residue(u, v, ceil + delta - 1 + n, 1 + delta + m, ctx.cfg)
                    prop3.record(in_o_span(ctx, s), f"u={u}, v={v}, m={m}, n={n}")

    swap = CheckResult("star_swap_identity")
    comm = CheckResult("star_commutator_identity")
    for u in v0:
        wu = int(ctx.re_weight(u))
        for v in v0:
            if not ctx.interior(u, v, margin=margin):
                continue
            wv = int(ctx.re_weight(v))
            uv = star(u, v, ctx)
            vu = star(v, u, ctx)
            alt, _ = residue(v, u, wv - 1, 1, ctx.cfg)
            swap.record(in_o_span(ctx, uv - alt), f"u={u}, v={v}")
            br, _ = residue(u, v, wu - 1, 0, ctx.cfg)
            comm.record(in_o_span(ctx, uv - vu - br), f"u={u}, v={v}")
    return [dl, prop3, swap, comm]


def zhu_report(mu, cfg: TruncConfig, report_cap, checks: bool = True) -> dict:
    """Full certificate as a JSON-ready dict."""
    ctx = build_c_span(build_o_span(ZhuContext.create(mu, cfg)))
    q = zhu_quotient(ctx, report_cap)
    out = {
        "mu": str(ctx.mu),
        "degCap": str(cfg.deg_cap),
        "pairBudget": str(cfg.pair_budget),
        "reportCap": str(q.report_cap),
        "dimUpperBound": q.dim_upper_bound,
        "v0Dim": q.v0_dim,
        "grDims": {str(k): v for k, v in q.gr_dims.items()},
        "cQuotientDim": c_quotient_dim(ctx, report_cap),
        "reprBasis": q.labels,
        "starTable": [
            {"left": a, "right": b, "product": str(p)} for (a, b), p in q.star_table.items()
        ],
        "checks": [],
    }
    zd = zero_direction(ctx.mu)
    if zd is not None:
        # weight-zero direction is enumerated only up to this many factors
        out["zeroDirectionCap"] = {"generator": "a*(0)" if zd == "astar" else "a(-1)", "maxFactors": cfg.zero_cap}
    if checks:
        results = filtration_check(ctx, q) + identity_checks(ctx, report_cap) + [f_map_check(ctx)]
        out["checks"] = [r.as_dict() for r in results]
    return out
