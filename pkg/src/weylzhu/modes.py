"""
Mode actions on the Weyl Fock space.

Two independent routes compute the p-th mode ``v_p w`` of a state ``v``:

``expansion``
    Wick evaluation of the normally ordered product of derivative fields
    ``prod 1/m! d^m a(z) * prod 1/n! d^n a*(z)``; every annihilation mode must
    contract with a factor of the target, every other factor is a creation
    mode whose index is fixed by the total z-degree.

``recursion``
    Peel the leftmost generator ``g`` off ``v = g_j v'`` and apply the iterate
    identity ``(g_j v')_p = sum_i (-1)^i C(j,i) [g_{j-i} v'_{p+i}
    - (-1)^j v'_{j+p-i} g_i]``.

Both routes are exact and cached per (monomial, p, monomial); the caches only
memoize pure functions.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import gmpy2
from gmpy2 import mpq

from .exactmath import ONE, GaussRat, binom
from .fock import VACUUM, Monomial, State, TruncConfig, add_into, weight

__all__ = [
    "GenMode",
    "A",
    "ASTAR",
    "TruncationOverflow",
    "act_gen",
    "act_word",
    "mode_of",
    "mode_expansion",
    "apply_expansion",
    "truncation_index",
    "lower_truncation_bound",
    "d_op",
    "omega_state",
    "beta_state",
    "virasoro_mode",
    "beta_mode",
    "commutator_check",
    "commutator_defect",
]

A = "A"
ASTAR = "ASTAR"


class GenMode(NamedTuple):
    kind: str
    index: int

    def __str__(self):
        return f"a({self.index})" if self.kind == A else f"a*({self.index})"

    @property
    def is_creation(self) -> bool:
        return self.index <= -1 if self.kind == A else self.index <= 0


class TruncationOverflow(ArithmeticError):
    """A computed term left the truncated ambient space."""

    def __init__(self, term: Monomial, re_weight, deg_cap, context: str = ""):
        msg = f"term {term} has Re(weight) {re_weight} > deg_cap {deg_cap}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
        self.term = term
        self.re_weight = re_weight
        self.deg_cap = deg_cap


def _remove_one(t: Tuple[int, ...], x: int) -> Tuple[int, ...]:
    i = t.index(x)
    return t[:i] + t[i + 1:]


def _insert(t: Tuple[int, ...], x: int) -> Tuple[int, ...]:
    # keep descending order
    for i, y in enumerate(t):
        if x >= y:
            return t[:i] + (x,) + t[i:]
    return t + (x,)


def _level(m: Monomial):
    return sum(m.a) + sum(m.astar) + mpq(len(m.a) + len(m.astar), 2)


@lru_cache(maxsize=None)
def _gen_on_mono(kind: str, n: int, m: Monomial) -> Tuple[Tuple[Monomial, int], ...]:
    if kind == A:
        if n <= -1:
            return ((Monomial(_insert(m.a, -n - 1), m.astar), 1),)
        # a(n) with n >= 0 contracts a*(-n): [a(n), a*(-n)] = 1
        c = m.astar.count(n)
        if not c:
            return ()
        return ((Monomial(m.a, _remove_one(m.astar, n)), c),)
    if n <= 0:
        return ((Monomial(m.a, _insert(m.astar, -n)), 1),)
    # a*(n) with n >= 1 contracts a(-n): [a*(n), a(-n)] = -1
    c = m.a.count(n - 1)
    if not c:
        return ()
    return ((Monomial(_remove_one(m.a, n - 1), m.astar), -c),)


def act_gen(mode: GenMode, s: State) -> State:
    """Apply a single generator mode a(n) or a*(n) to a state."""
    acc: Dict[Monomial, GaussRat] = {}
    for m, c in s.terms.items():
        for out, k in _gen_on_mono(mode.kind, mode.index, m):
            add_into(acc, out, c * k)
    return State._raw(acc)


def act_word(word: Sequence[GenMode], s: State) -> State:
    """Apply a word of generator modes; the rightmost mode acts first."""
    for g in reversed(word):
        s = act_gen(g, s)
        if not s:
            break
    return s


# --------------------------------------------------------------------------
# expansion route


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _wick(v: Monomial, p: int, w: Monomial) -> Tuple[Tuple[Monomial, object], ...]:
    factors = [(A, m) for m in v.a] + [(ASTAR, n) for n in v.astar]
    acc: Dict[Monomial, object] = {}
    target_total = -p - 1

    def finish(wa, ws, zsum, coeff, free):
        s = target_total - zsum
        if s < 0:
            return
        for extra in _compositions(s, len(free)):
            c = coeff
            na, ns = wa, ws
            for (kind, order), e in zip(free, extra):
                c = c * binom(order + e, order)
                if not c:
                    break
                if kind == A:
                    na = _insert(na, order + e)
                else:
                    ns = _insert(ns, order + e)
            if c:
                out = Monomial(na, ns)
                x = acc.get(out, 0) + c
                if x:
                    acc[out] = x
                else:
                    acc.pop(out, None)

    def rec(i, wa, ws, zsum, coeff, free):
        if i == len(factors):
            finish(wa, ws, zsum, coeff, free)
            return
        kind, order = factors[i]
        if kind == A:
            # annihilator a(k), k >= 0, against a*(-k) in the target
            for k, cnt in Counter(ws).items():
                c = coeff * cnt * binom(-k - 1, order)
                if c:
                    rec(i + 1, wa, _remove_one(ws, k), zsum - k - 1 - order, c, free)
        else:
            # annihilator a*(k), k >= 1, against a(-k) = depth k-1
            for d, cnt in Counter(wa).items():
                k = d + 1
                c = -coeff * cnt * binom(-k, order)
                if c:
                    rec(i + 1, _remove_one(wa, d), ws, zsum - k - order, c, free)
        rec(i + 1, wa, ws, zsum, coeff, free + ((kind, order),))

    rec(0, w.a, w.astar, 0, 1, ())
    return tuple(acc.items())


def mode_expansion(v: Monomial, p: int, max_index: int) -> List[Tuple[int, Tuple[GenMode, ...]]]:
    """Normally ordered words of the p-th mode of ``Y(v, z)``.

    Annihilation indices are limited to ``<= max_index``; this is exact on
    every target whose factors all have depth below ``max_index``.  Creation
    modes come first in each word.
    """
    factors = [(A, m) for m in v.a] + [(ASTAR, n) for n in v.astar]
    out = []

    def rec(i, word, zsum, coeff):
        if i == len(factors):
            free = [j for j, g in enumerate(word) if g is None]
            s = -p - 1 - zsum
            if s < 0:
                return
            for extra in _compositions(s, len(free)):
                c = coeff
                full = list(word)
                for j, e in zip(free, extra):
                    kind, order = factors[j]
                    c *= binom(order + e, order)
                    full[j] = GenMode(kind, -order - e - 1 if kind == A else -order - e)
                if c:
                    cre = [g for g in full if g.is_creation]
                    ann = [g for g in full if not g.is_creation]
                    out.append((c, tuple(cre + ann)))
            return
        kind, order = factors[i]
        if kind == A:
            for k in range(0, max_index + 1):
                c = coeff * binom(-k - 1, order)
                if c:
                    rec(i + 1, word + [GenMode(A, k)], zsum - k - 1 - order, c)
        else:
            for k in range(1, max_index + 1):
                c = coeff * binom(-k, order)
                if c:
                    rec(i + 1, word + [GenMode(ASTAR, k)], zsum - k - order, c)
        rec(i + 1, word + [None], zsum, coeff)

    rec(0, [], 0, 1)
    return out


def apply_expansion(expansion, target: State) -> State:
    acc: Dict[Monomial, GaussRat] = {}
    for c, word in expansion:
        for m, x in act_word(word, target).terms.items():
            add_into(acc, m, x * c)
    return State._raw(acc)


# --------------------------------------------------------------------------
# recursion route


def _floor_bound(*monos: Monomial) -> int:
    # v_q w = 0 once q > deg v + deg w - 1 (deg = weight at mu = 1/2)
    return int(gmpy2.floor(sum(_level(m) for m in monos) - 1))


@lru_cache(maxsize=None)
def _iterate(v: Monomial, p: int, w: Monomial) -> Tuple[Tuple[Monomial, object], ...]:
    if not v.a and not v.astar:
        return ((w, 1),) if p == -1 else ()
    if p > _floor_bound(v, w):
        return ()
    if v.a:
        kind, m = A, v.a[0]
        j = -m - 1
        rest = Monomial(v.a[1:], v.astar)
        gen_mono = Monomial((0,), ())
    else:
        kind, n = ASTAR, v.astar[0]
        j = -n - 1
        rest = Monomial((), v.astar[1:])
        gen_mono = Monomial((), (0,))

    def g(k):
        # the k-th mode of the generator state as a GenMode
        return GenMode(A, k) if kind == A else GenMode(ASTAR, k + 1)

    acc: Dict[Monomial, object] = {}

    def add(m, c):
        x = acc.get(m, 0) + c
        if x:
            acc[m] = x
        else:
            acc.pop(m, None)

    sign_j = -1 if j % 2 else 1
    # first sum: g_{j-i} v'_{p+i} w
    top = _floor_bound(rest, w) - p
    for i in range(0, top + 1):
        b = binom(j, i)
        if not b:
            continue
        c0 = b if i % 2 == 0 else -b
        gm = g(j - i)
        for m1, c1 in _iterate(rest, p + i, w):
            for m2, c2 in _gen_on_mono(gm.kind, gm.index, m1):
                add(m2, c0 * c1 * c2)
    # second sum: -(-1)^j v'_{j+p-i} g_i w
    top2 = _floor_bound(gen_mono, w)
    for i in range(0, top2 + 1):
        b = binom(j, i)
        if not b:
            continue
        c0 = -(b if i % 2 == 0 else -b) * sign_j
        gm = g(i)
        for m1, c1 in _gen_on_mono(gm.kind, gm.index, w):
            for m2, c2 in _iterate(rest, j + p - i, m1):
                add(m2, c0 * c1 * c2)
    return tuple(acc.items())


_ROUTES = {"expansion": _wick, "recursion": _iterate}


def _as_state(x) -> State:
    if isinstance(x, State):
        return x
    if isinstance(x, Monomial):
        return State.monomial(x)
    return State.parse(x)


def mode_of(v, p: int, target, cfg: Optional[TruncConfig] = None, route: str = "expansion") -> State:
    """Return ``v_p(target)`` exactly.

    If ``cfg`` carries a value of mu, every output term is checked against
    ``cfg.deg_cap`` and :class:`TruncationOverflow` is raised on excess.
    """
    v = _as_state(v)
    target = _as_state(target)
    fn = _ROUTES[route]
    acc: Dict[Monomial, GaussRat] = {}
    for mv, cv in v.terms.items():
        for mw, cw in target.terms.items():
            c = cv * cw
            for m, x in fn(mv, p, mw):
                add_into(acc, m, c * x)
    if cfg is not None and cfg.mu is not None:
        for m in acc:
            re_w = weight(m).re_at(cfg.mu)
            if re_w > cfg.deg_cap:
                raise TruncationOverflow(m, re_w, cfg.deg_cap, f"mode {p} of {v}")
    return State._raw(acc)


def lower_truncation_bound(v, w) -> int:
    """An index B with ``v_q w = 0`` for every q > B (degree count, no scan)."""
    v = _as_state(v)
    w = _as_state(w)
    if not v or not w:
        return -(10 ** 9)
    return max(_floor_bound(mv, mw) for mv in v.terms for mw in w.terms)


def truncation_index(v, w) -> int:
    """Least P with ``v_p w = 0`` for every p >= P (found by scanning down)."""
    v = _as_state(v)
    w = _as_state(w)
    if not v or not w:
        return -(10 ** 9)
    bound = max(_floor_bound(mv, mw) for mv in v.terms for mw in w.terms)
    q = bound
    floor_q = bound - 2 * (max(_level(m) for m in v.terms) + max(_level(m) for m in w.terms)) - 4
    while q >= floor_q:
        if mode_of(v, q, w):
            return q + 1
        q -= 1
    return bound + 1


def d_op(v) -> State:
    """Translation operator D(v) = v_{-2} 1."""
    return mode_of(v, -2, State.vacuum())


def omega_state(mu) -> State:
    """(1-mu) a(-1)a*(-1)|0> - mu a(-2)a*(0)|0>."""
    mu = GaussRat.coerce(mu)
    return State({Monomial((0,), (1,)): ONE - mu, Monomial((1,), (0,)): -mu})


def beta_state() -> State:
    return State({Monomial((0,), (0,)): ONE})


def virasoro_mode(mu, n: int, s, cfg: Optional[TruncConfig] = None) -> State:
    """L^mu(n) s = (omega_mu)_{n+1} s."""
    return mode_of(omega_state(mu), n + 1, s, cfg)


def beta_mode(n: int, s, cfg: Optional[TruncConfig] = None) -> State:
    return mode_of(beta_state(), n, s, cfg)


def commutator_defect(v, v2, n: int, m: int, w, cfg: Optional[TruncConfig] = None) -> State:
    """``[v_n, v2_m] w - sum_i C(n,i) (v_i v2)_{m+n-i} w``; zero iff the formula holds."""
    v, v2, w = _as_state(v), _as_state(v2), _as_state(w)
    lhs = mode_of(v, n, mode_of(v2, m, w, cfg), cfg) - mode_of(v2, m, mode_of(v, n, w, cfg), cfg)
    rhs = State()
    top = truncation_index(v, v2)
    for i in range(0, max(top, 0)):
        b = binom(n, i)
        if b:
            rhs = rhs + mode_of(mode_of(v, i, v2), m + n - i, w, cfg).scale(b)
    return lhs - rhs


def commutator_check(v, v2, n: int, m: int, w, cfg: Optional[TruncConfig] = None) -> bool:
    return not commutator_defect(v, v2, n, m, w, cfg)
