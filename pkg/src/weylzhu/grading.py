"""
Weights, the V^r split, vacuum-space tests and the mu-plane classification.

The mu-plane splits into five cases.  The first diamond condition uses
``Re(mu) <= 1/2`` and the mirrored one the strict ``Re(1 - mu) < 1/2``; at
``Re(mu) = 1/2`` only the first fires.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .exactmath import GaussRat, WeightExpr, ceil_re, rat
from .fock import VACUUM, Monomial, State, TruncConfig, basis_up_to, weight
from .modes import mode_of

__all__ = [
    "Tag",
    "Subcase",
    "OmegaDescription",
    "RegionClass",
    "classify",
    "in_strip",
    "mu_grid",
    "rat_range",
    "r_value",
    "VrSplit",
    "vr_split",
    "OmegaPass",
    "OmegaViolation",
    "omega_test",
    "degree",
    "enumeration_basis",
    "grading_lemma_scan",
    "GradingLemmaReport",
]


class Tag(str, enum.Enum):
    OMEGA_VOA = "OMEGA_VOA"
    STRIP_CONF_OMEGA = "STRIP_CONF_OMEGA"
    NOT_OMEGA_GENERATED = "NOT_OMEGA_GENERATED"


class Subcase(str, enum.Enum):
    CASE1_INTEGER = "CASE1_INTEGER"
    CASE2_REAL_STRIP = "CASE2_REAL_STRIP"
    CASE3_EDGE_IMAG = "CASE3_EDGE_IMAG"
    CASE4A_DIAMOND = "CASE4A_DIAMOND"
    CASE4B_STRIP_WIDE_IM = "CASE4B_STRIP_WIDE_IM"
    CASE5_OUTSIDE = "CASE5_OUTSIDE"


class OmegaDescription(str, enum.Enum):
    TRIVIAL_VACUUM_LINE = "TRIVIAL_VACUUM_LINE"
    INFINITE_FAMILY = "INFINITE_FAMILY"
    ZERO = "ZERO"


# ordering used to pick the "weakest" tag of a tensor product
TAG_RANK = {Tag.OMEGA_VOA: 2, Tag.STRIP_CONF_OMEGA: 1, Tag.NOT_OMEGA_GENERATED: 0}


@dataclass(frozen=True)
class RegionClass:
    tag: Tag
    subcase: Optional[Subcase]
    omega: OmegaDescription

    def as_row(self) -> Tuple[str, str, str]:
        return (self.tag.value, self.subcase.value if self.subcase else "", self.omega.value)


def classify(mu) -> RegionClass:
    """Region of mu in the conformal-flow classification (exact comparisons)."""
    mu = GaussRat.coerce(mu)
    p, q = mu.re, abs(mu.im)
    if p < 0 or p > 1:
        return RegionClass(Tag.NOT_OMEGA_GENERATED, Subcase.CASE5_OUTSIDE, OmegaDescription.ZERO)
    if p == 0 or p == 1:
        if q == 0:
            return RegionClass(Tag.STRIP_CONF_OMEGA, Subcase.CASE1_INTEGER, OmegaDescription.INFINITE_FAMILY)
        return RegionClass(Tag.STRIP_CONF_OMEGA, Subcase.CASE3_EDGE_IMAG, OmegaDescription.TRIVIAL_VACUUM_LINE)
    cond_i = 0 < p <= mpq(1, 2) and q <= p
    cond_ii = 0 < 1 - p < mpq(1, 2) and q <= 1 - p
    if cond_i or cond_ii:
        sub = Subcase.CASE2_REAL_STRIP if q == 0 else Subcase.CASE4A_DIAMOND
        return RegionClass(Tag.OMEGA_VOA, sub, OmegaDescription.TRIVIAL_VACUUM_LINE)
    return RegionClass(Tag.STRIP_CONF_OMEGA, Subcase.CASE4B_STRIP_WIDE_IM, OmegaDescription.TRIVIAL_VACUUM_LINE)


def rat_range(lo, hi, step) -> List:
    """Exact arithmetic progression lo, lo+step, ... <= hi."""
    lo, hi, step = rat(lo), rat(hi), rat(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    out = []
    x = lo
    while x <= hi:
        out.append(x)
        x += step
    return out


def mu_grid(re_spec, im_spec) -> List[GaussRat]:
    """Points re + im*i for (lo, hi, step) triples; real part varies slowest."""
    return [GaussRat(x, y) for x in rat_range(*re_spec) for y in rat_range(*im_spec)]


def in_strip(mu) -> bool:
    re = GaussRat.coerce(mu).re
    return 0 <= re <= 1


def r_value(mu, m: Monomial) -> GaussRat:
    """r = |m| - ceil(Re|m|); zero exactly on integer weights."""
    w = weight(m).evaluate(mu)
    return w - ceil_re(w)


@dataclass
class VrSplit:
    r: GaussRat
    members: List[Monomial] = field(default_factory=list)


def vr_split(mu, cap, zero_cap: int = 3) -> List[VrSplit]:
    """Partition ``basis_up_to(mu, cap)`` by r-value; the r = 0 block first."""
    blocks: Dict[GaussRat, VrSplit] = {}
    for m in basis_up_to(mu, cap, zero_cap):
        r = r_value(mu, m)
        blocks.setdefault(r, VrSplit(r)).members.append(m)
    return sorted(blocks.values(), key=lambda b: (bool(b.r), b.r.re, b.r.im))


def degree(mu, m: Monomial) -> WeightExpr:
    """Degree in the Omega-generated grading.

    Inside the strip the vacuum space is spanned by vectors of weight 0, so
    degree and weight coincide.
    """
    if not in_strip(mu):
        raise ValueError(f"degree grading is undefined for Re(mu) = {GaussRat.coerce(mu).re} (outside 0 <= Re(mu) <= 1)")
    return weight(m)


def enumeration_basis(mu, cap, zero_cap: int = 3) -> List[Monomial]:
    """Basis used for brute-force scans.

    Inside the strip this is ``basis_up_to``.  Outside it, where weights are
    unbounded below, monomials are enumerated by the weight at Re(mu) clamped
    into [0, 1] and then reordered by the clamped grading.
    """
    mu = GaussRat.coerce(mu)
    if in_strip(mu):
        return basis_up_to(mu, cap, zero_cap)
    clamp = GaussRat(min(max(mu.re, 0), 1), 0)
    return basis_up_to(clamp, cap, zero_cap)


# --------------------------------------------------------------------------
# vacuum space

GENERATORS = {
    "a": Monomial((0,), ()),
    "a*": Monomial((), (0,)),
}


@dataclass(frozen=True)
class OmegaPass:
    """No lowering mode found within the truncation."""

    scanned: int
    truncated: bool = True

    def __bool__(self):
        return True

    def __str__(self):
        return "IN_OMEGA_UP_TO_TRUNCATION"


@dataclass(frozen=True)
class OmegaViolation:
    """An absolute certificate: u_n v != 0 with n a lowering index."""

    u: Monomial
    n: int
    image: State

    def __bool__(self):
        return False

    def __str__(self):
        return f"VIOLATION(u={self.u}, n={self.n})"


def _lowering(mu, u: Monomial, n: int) -> bool:
    # n is forbidden unless n = |u| - 1 or n < Re|u| - 1
    w = weight(u).evaluate(mu)
    if w.is_integer() and n == w.re - 1:
        return False
    return n >= w.re - 1


def omega_test(mu, v, cfg: TruncConfig):
    """Search for u, n with u_n v != 0 violating the vacuum-space condition."""
    mu = GaussRat.coerce(mu)
    v = v if isinstance(v, State) else State.parse(v)
    lo, hi = cfg.mode_window
    scanned = 0
    # strong generators first: they carry the canonical witnesses
    gens = [GENERATORS["a"], GENERATORS["a*"]]
    rest = [m for m in enumeration_basis(mu, cfg.deg_cap, cfg.zero_cap) if m not in gens]
    for u in gens + rest:
        for n in range(lo, hi + 1):
            if not _lowering(mu, u, n):
                continue
            scanned += 1
            out = mode_of(State.monomial(u), n, v)
            if out:
                return OmegaViolation(u, n, out)
    return OmegaPass(scanned)


# --------------------------------------------------------------------------
# shift-sum scan of generator words on the vacuum space


@dataclass
class GradingLemmaReport:
    mu: GaussRat
    words: int = 0
    nonzero: int = 0
    zero_branch: int = 0
    positive_branch: int = 0
    counterexamples: List[Tuple[Tuple[Tuple[str, int], ...], GaussRat]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def grading_lemma_scan(mu, cfg: TruncConfig, max_length: int = 3,
                       omega_basis: Optional[Sequence[State]] = None) -> GradingLemmaReport:
    """Check the shift-sum dichotomy on all nonzero generator words.

    Words ``v^k_{n_k} ... v^1_{n_1} u0`` with generators a(-1)1, a*(0)1,
    indices in ``cfg.mode_window`` and ``u0`` in the vacuum space (by default
    the vacuum, the whole vacuum space off mu in {0, 1}).
    """
    mu = GaussRat.coerce(mu)
    if not in_strip(mu):
        raise ValueError("the scan needs 0 <= Re(mu) <= 1")
    lo, hi = cfg.mode_window
    if omega_basis is None:
        omega_basis = [State.vacuum()]
    rep = GradingLemmaReport(mu)
    gens = [(name, m, weight(m).evaluate(mu)) for name, m in GENERATORS.items()]

    def walk(word, shift, state):
        if len(word) == max_length:
            return
        for name, g, gw in gens:
            for n in range(lo, hi + 1):
                out = mode_of(State.monomial(g), n, state)
                new_word = word + ((name, n),)
                new_shift = shift + gw - (n + 1)
                rep.words += 1
                if not out:
                    continue
                rep.nonzero += 1
                if not new_shift:
                    rep.zero_branch += 1
                elif new_shift.re > 0:
                    rep.positive_branch += 1
                else:
                    rep.counterexamples.append((new_word, new_shift))
                walk(new_word, new_shift, out)

    for u0 in omega_basis:
        walk((), GaussRat(0), u0)
    return rep
