"""
Conformal vectors, central charges, spectral flow and the isomorphism
``F : (M, omega_mu) -> (M, omega_{1-mu})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .exactmath import ONE, GaussRat
from .fock import Monomial, State, TruncConfig, add_into, weight
from .modes import A, ASTAR, GenMode, mode_of, omega_state

__all__ = [
    "ConformalVector",
    "central_charge",
    "flow_iso",
    "flow_hom_check",
    "rho",
    "phi",
    "spectral_flow",
    "gen_bracket",
]


def central_charge(mu) -> GaussRat:
    """c_mu = 2(6 mu (mu - 1) + 1)."""
    mu = GaussRat.coerce(mu)
    return (mu * (mu - 1) * 6 + 1) * 2


@dataclass(frozen=True)
class ConformalVector:
    mu: GaussRat
    state: State
    central_charge: GaussRat

    @classmethod
    def at(cls, mu) -> "ConformalVector":
        mu = GaussRat.coerce(mu)
        return cls(mu, omega_state(mu), central_charge(mu))

    def weight_is_two(self) -> bool:
        return all(weight(m).evaluate(self.mu) == 2 for m in self.state.terms)


def _flow_mono(m: Monomial) -> Tuple[Monomial, int]:
    # a(-m-1) -> a*(-m), a*(-n) -> -a(-n-1)
    sign = -1 if len(m.astar) % 2 else 1
    return Monomial(m.astar, m.a), sign


def flow_iso(s) -> State:
    """The monomial map F extended linearly."""
    s = s if isinstance(s, State) else State.parse(s)
    acc: Dict[Monomial, GaussRat] = {}
    for m, c in s.terms.items():
        out, sign = _flow_mono(m)
        add_into(acc, out, c * sign)
    return State._raw(acc)


def flow_hom_check(u, v, n: int, cfg: TruncConfig = None) -> bool:
    """F(u_n v) == F(u)_n F(v), exactly."""
    lhs = flow_iso(mode_of(u, n, v, cfg))
    rhs = mode_of(flow_iso(u), n, flow_iso(v), cfg)
    return lhs == rhs


# --------------------------------------------------------------------------
# automorphisms of the Weyl algebra on mode words

Word = Sequence[GenMode]
Term = Tuple[GaussRat, Tuple[GenMode, ...]]


def rho(s: int, g: GenMode) -> Term:
    """Spectral flow: a(n) -> a(n+s), a*(n) -> a*(n-s)."""
    if g.kind == A:
        return ONE, (GenMode(A, g.index + s),)
    return ONE, (GenMode(ASTAR, g.index - s),)


def phi(t, g: GenMode) -> Term:
    """a(n) -> t a*(n), a*(n) -> -t^{-1} a(n)."""
    t = GaussRat.coerce(t)
    if not t:
        raise ValueError("phi_t needs t != 0")
    if g.kind == A:
        return t, (GenMode(ASTAR, g.index),)
    return -t.inverse(), (GenMode(A, g.index),)


def spectral_flow(s: int, t, word: Word, order: str = "phi_after_rho") -> List[Term]:
    """Image of a mode word under phi_t o rho_s (rho applied first).

    Each generator maps to a single generator, so the image is one term.
    """
    t = GaussRat.coerce(t)
    if not t:
        raise ValueError("phi_t needs t != 0")
    coeff = ONE
    out = []
    for g in word:
        c1, (g1,) = rho(s, g)
        c2, (g2,) = phi(t, g1)
        coeff = coeff * c1 * c2
        out.append(g2)
    return [(coeff, tuple(out))]


def gen_bracket(x: GenMode, y: GenMode) -> int:
    """Scalar [x, y] of two generator modes (K = 1)."""
    if x.kind == y.kind:
        return 0
    if x.kind == A:
        return 1 if x.index + y.index == 0 else 0
    return -1 if x.index + y.index == 0 else 0
