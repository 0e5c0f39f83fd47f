"""
Fock-space states of the rank-one Weyl vertex algebra.

A basis monomial is a word in creation modes applied to the vacuum::

    a(-m_1-1) ... a(-m_k-1) a*(-n_1) ... a*(-n_t) |0>

stored as two descending tuples ``a = (m_1, ..., m_k)`` and
``astar = (n_1, ..., n_t)`` with all entries >= 0.  Creation modes of equal
kind commute and a creation a(-m-1) commutes with a creation a*(-n), so this
form is canonical.  The central element K is identified with 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from gmpy2 import mpq

from .exactmath import ONE, ZERO, GaussRat, WeightExpr, parse_gauss, rat

__all__ = [
    "Monomial",
    "VACUUM",
    "State",
    "TruncConfig",
    "StateSyntaxError",
    "weight",
    "basis_up_to",
    "zero_direction",
    "parse_state",
    "print_state",
    "state_to_json",
    "state_from_json",
]


class Monomial(NamedTuple):
    a: Tuple[int, ...] = ()
    astar: Tuple[int, ...] = ()

    @classmethod
    def make(cls, a: Iterable[int] = (), astar: Iterable[int] = ()) -> "Monomial":
        a = tuple(sorted(a, reverse=True))
        astar = tuple(sorted(astar, reverse=True))
        if (a and a[-1] < 0) or (astar and astar[-1] < 0):
            raise ValueError("mode depths must be >= 0")
        return cls(a, astar)

    @property
    def weight(self) -> WeightExpr:
        return weight(self)

    @property
    def length(self) -> int:
        return len(self.a) + len(self.astar)

    def sort_key(self):
        return (-len(self.a), self.a, len(self.astar), self.astar)

    def __str__(self):
        return "".join(f"a({-m - 1})" for m in self.a) + "".join(
            f"a*({-n})" for n in self.astar
        ) + "|0>"


VACUUM = Monomial((), ())


def weight(m: Monomial) -> WeightExpr:
    """L^mu(0)-weight (sum m_i + sum n_j + k) + (t - k)*mu."""
    k, t = len(m.a), len(m.astar)
    return WeightExpr(sum(m.a) + sum(m.astar) + k, t - k)


def _level(m: Monomial):
    # mu-independent ordering key: the weight at mu = 1/2
    return sum(m.a) + sum(m.astar) + mpq(m.length, 2)


class State:
    """Finite Q(i)-linear combination of monomials; treat as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, GaussRat]] = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = GaussRat.coerce(c)
                if c:
                    clean[mono] = c
        self.terms: Dict[Monomial, GaussRat] = clean

    @classmethod
    def _raw(cls, terms: Dict[Monomial, GaussRat]) -> "State":
        s = cls.__new__(cls)
        s.terms = terms
        return s

    @classmethod
    def monomial(cls, m: Monomial, coeff=ONE) -> "State":
        return cls({m: coeff})

    @classmethod
    def vacuum(cls) -> "State":
        return cls({VACUUM: ONE})

    @classmethod
    def parse(cls, text: str) -> "State":
        return parse_state(text)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, GaussRat]]:
        return iter(self.items())

    def items(self) -> List[Tuple[Monomial, GaussRat]]:
        return sorted(self.terms.items(), key=lambda kv: (_level(kv[0]), kv[0].sort_key()))

    def __eq__(self, other):
        if isinstance(other, State):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "State") -> "State":
        out = dict(self.terms)
        for m, c in other.terms.items():
            x = out.get(m)
            x = c if x is None else x + c
            if x:
                out[m] = x
            else:
                out.pop(m, None)
        return State._raw(out)

    def __neg__(self) -> "State":
        return State._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "State") -> "State":
        return self + (-other)

    def scale(self, c) -> "State":
        c = GaussRat.coerce(c)
        if not c:
            return State()
        return State._raw({m: x * c for m, x in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def coeff(self, m: Monomial) -> GaussRat:
        return self.terms.get(m, ZERO)

    def weights(self) -> set:
        return {weight(m) for m in self.terms}

    def is_homogeneous(self, mu) -> bool:
        return len({weight(m).evaluate(mu) for m in self.terms}) <= 1

    def __repr__(self):
        return f"State({print_state(self)!r})"

    def __str__(self):
        return print_state(self)


def add_into(acc: Dict[Monomial, GaussRat], m: Monomial, c: GaussRat) -> None:
    x = acc.get(m)
    x = c if x is None else x + c
    if x:
        acc[m] = x
    else:
        acc.pop(m, None)


# --------------------------------------------------------------------------
# truncation


@dataclass(frozen=True)
class TruncConfig:
    """Truncation parameters for every finite computation.

    ``deg_cap`` bounds Re(weight) of the ambient space, ``pair_budget``
    bounds Re(|u|+|v|) for generator pairs, ``mode_window`` is the closed
    interval of mode indices for brute-force scans.  Its upper end also caps
    the number of weight-zero-real-part generator factors when Re(mu) is 0
    or 1.  ``mu`` (optional) switches on the overflow check of the mode
    engine.
    """

    deg_cap: object = 4
    pair_budget: object = None
    mode_window: Tuple[int, int] = (-4, 4)
    mu: Optional[GaussRat] = None

    def __post_init__(self):
        object.__setattr__(self, "deg_cap", rat(self.deg_cap))
        pb = self.deg_cap - 1 if self.pair_budget is None else rat(self.pair_budget)
        object.__setattr__(self, "pair_budget", pb)
        if self.mu is not None:
            object.__setattr__(self, "mu", GaussRat.coerce(self.mu))
        lo, hi = self.mode_window
        if lo > hi:
            raise ValueError("empty mode window")
        if self.deg_cap < 0:
            raise ValueError("deg_cap must be non-negative")
        if self.pair_budget + 1 > self.deg_cap:
            raise ValueError("pair_budget + 1 must not exceed deg_cap")

    @property
    def zero_cap(self) -> int:
        return max(self.mode_window[1], 0)

    def with_mu(self, mu) -> "TruncConfig":
        return TruncConfig(self.deg_cap, self.pair_budget, self.mode_window, GaussRat.coerce(mu))


def zero_direction(mu) -> Optional[str]:
    """Which generator has weight with zero real part ('a', 'astar' or None)."""
    re = GaussRat.coerce(mu).re
    if re == 0:
        return "astar"
    if re == 1:
        return "a"
    return None


def basis_up_to(mu, cap, zero_cap: int = 3) -> List[Monomial]:
    """All monomials with Re(weight) <= cap, graded by Re(weight).

    Requires 0 <= Re(mu) <= 1.  When Re(mu) is 0 (resp. 1) the factor
    a*(0) (resp. a(-1)) has weight of real part zero; its multiplicity is
    capped by ``zero_cap``.
    """
    mu = GaussRat.coerce(mu)
    cap = rat(cap)
    p = mu.re
    if p < 0 or p > 1:
        raise ValueError(
            f"Re(mu) = {p} lies outside [0, 1]: weights are not bounded below "
            "and the basis cannot be enumerated"
        )
    if cap < 0:
        raise ValueError("cap must be non-negative")
    wa = 1 - p  # Re weight of a(-1)
    ws = p  # Re weight of a*(0)
    out = []

    def parts(budget, base, maxpart, count_cap_zero):
        # multisets (descending tuples) of depths with sum(depth + base) <= budget
        res = [((), mpq(0))]

        def rec(prefix, used, maxd, zeros):
            for d in range(maxd, -1, -1):
                w = d + base
                if used + w > budget:
                    continue
                if w == 0:
                    if zeros >= count_cap_zero:
                        continue
                    nz = zeros + 1
                else:
                    nz = zeros
                tup = prefix + (d,)
                res.append((tup, used + w))
                rec(tup, used + w, d, nz)

        rec((), mpq(0), maxpart, 0)
        return res

    maxd = int(cap) + 1
    a_parts = parts(cap, wa, maxd, zero_cap)
    for a_tup, wa_used in a_parts:
        s_parts = parts(cap - wa_used, ws, maxd, zero_cap)
        for s_tup, ws_used in s_parts:
            out.append(Monomial(a_tup, s_tup))
    out.sort(key=lambda m: (weight(m).re_at(mu), m.sort_key()))
    return out


# --------------------------------------------------------------------------
# text grammar


class StateSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.text = text


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        # drop whitespace but remember original offsets
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.s = "".join(ch for _, ch in self.chars)
        self.i = 0

    def orig(self, i=None) -> int:
        i = self.i if i is None else i
        if i < len(self.chars):
            return self.chars[i][0]
        return len(self.text)

    def error(self, msg, i=None):
        raise StateSyntaxError(msg, self.orig(i), self.text)

    def peek(self, k=1) -> str:
        return self.s[self.i:self.i + k]

    def eat(self, tok: str) -> bool:
        if self.s.startswith(tok, self.i):
            self.i += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.eat(tok):
            self.error(f"expected {tok!r}")

    def integer(self) -> int:
        j = self.i
        if self.peek() in "+-":
            self.i += 1
        k = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if k == self.i:
            self.error("expected integer", j)
        return int(self.s[j:self.i])


def _read_coeff(sc: _Scanner) -> GaussRat:
    start = sc.i
    if sc.peek() == "(":
        depth = 0
        j = sc.i
        while j < len(sc.s):
            if sc.s[j] == "(":
                depth += 1
            elif sc.s[j] == ")":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if j >= len(sc.s):
            sc.error("unbalanced parenthesis")
        body = sc.s[sc.i + 1:j]
        sc.i = j + 1
    else:
        j = sc.i
        if j < len(sc.s) and sc.s[j] in "+-":
            j += 1
        while j < len(sc.s) and (sc.s[j].isdigit() or sc.s[j] in "/."):
            j += 1
        # optional imaginary unit, with or without '*'
        if sc.s.startswith("*i", j):
            j += 2
        elif sc.s.startswith("i", j):
            j += 1
        body = sc.s[sc.i:j]
        sc.i = j
    if "." in body:
        sc.error("non-rational coefficient (decimals are not accepted)", start)
    try:
        return parse_gauss(body)
    except ValueError:
        sc.error(f"malformed coefficient {body!r}", start)


def parse_state(text: str) -> State:
    """Parse ``term ('+' term)*`` with ``term := [coeff '*'] factor* '|0>'``.

    A ``-`` between terms is also accepted and negates the following term.
    """
    sc = _Scanner(text)
    if not sc.s:
        sc.error("empty state")
    if sc.s == "0":
        return State()
    acc: Dict[Monomial, GaussRat] = {}
    sign = ONE
    while True:
        if sc.peek() in ("a", "|"):
            coeff = ONE
        else:
            coeff = _read_coeff(sc)
            if not sc.eat("*"):
                sc.error("expected '*' after coefficient")
        a_modes, s_modes = [], []
        while not sc.eat("|0>"):
            pos = sc.i
            if sc.eat("a*("):
                n = sc.integer()
                sc.expect(")")
                if n > 0:
                    sc.error(f"a*({n}) is not a creation mode", pos)
                s_modes.append(-n)
            elif sc.eat("a("):
                n = sc.integer()
                sc.expect(")")
                if n >= 0:
                    sc.error(f"a({n}) is not a creation mode", pos)
                a_modes.append(-n - 1)
            else:
                sc.error("expected factor or '|0>'")
        add_into(acc, Monomial.make(a_modes, s_modes), coeff * sign)
        if sc.i == len(sc.s):
            break
        if sc.eat("+"):
            sign = ONE
        elif sc.eat("-"):
            sign = -ONE
        else:
            sc.error("expected '+' between terms")
    return State._raw(acc)


def _coeff_str(c: GaussRat) -> str:
    s = str(c)
    if c.re and c.im:
        return f"({s})"
    return s


def print_state(s: State) -> str:
    """Canonical text form; ``"0"`` for the zero state."""
    if not s.terms:
        return "0"
    parts = []
    for m, c in s.items():
        if c == ONE:
            parts.append(str(m))
        else:
            parts.append(f"{_coeff_str(c)}*{m}")
    return " + ".join(parts)


def state_to_json(s: State) -> list:
    return [{"monomial": str(m), "coeff": str(c)} for m, c in s.items()]


def state_from_json(data) -> State:
    if isinstance(data, str):
        data = json.loads(data)
    acc: Dict[Monomial, GaussRat] = {}
    for item in data:
        (m, _), = parse_state(item["monomial"]).terms.items()
        add_into(acc, m, parse_gauss(item["coeff"]))
    return State._raw(acc)
