"""
Exact scalar arithmetic over Q and Q(i), symbolic weights n + d*mu, and
sparse row reduction.

Everything in this package is computed without rounding.  Rationals are
``gmpy2.mpq`` values; Gaussian rationals wrap a pair of them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Rat",
    "rat",
    "GaussRat",
    "ZERO",
    "ONE",
    "I",
    "WeightExpr",
    "ceil_re",
    "binom",
    "parse_gauss",
    "parse_rat",
    "SparseVec",
    "RowReducer",
    "row_reduce",
    "membership",
]

Rat = type(mpq(0))


def rat(x) -> "Rat":
    """Coerce ints, mpq, Fractions or ``"p/q"`` strings to an exact rational."""
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, float):
        raise TypeError("floating-point values are not accepted; use 'p/q'")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str) -> "Rat":
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return mpq(num, den)


def _fmt_rat(x) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussRat:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Rat else rat(re)
        self.im = im if type(im) is Rat else rat(im)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, str):
            return parse_gauss(x)
        if isinstance(x, complex):
            raise TypeError("complex floats are not accepted")
        return cls(x, 0)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRat):
            other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            other = GaussRat.coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            if isinstance(other, (int, Rat)):
                return GaussRat(self.re * other, self.im * other)
            other = GaussRat.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat(a * c, b)
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussRat.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    # predicates -----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rat)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.re, self.im)) if self.im else hash(self.re)
        return h

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        if not self.im:
            return _fmt_rat(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = _fmt_rat(self.im) + "*i"
        if not self.re:
            return im
        sep = "" if im.startswith("-") else "+"
        return f"{_fmt_rat(self.re)}{sep}{im}"


ZERO = GaussRat(0, 0)
ONE = GaussRat(1, 0)
I = GaussRat(0, 1)

_NUM = r"\d+(?:/\d+)?"
_GAUSS_TERM = re.compile(
    rf"([+-]?)(?:({_NUM})(?:\*?(i)(?:/(\d+))?)?|(i)(?:/(\d+))?)"
)


def parse_gauss(text: str) -> GaussRat:
    """Parse the decimal-free form of a Gaussian rational.

    Accepts e.g. ``"1/3"``, ``"-2"``, ``"i"``, ``"1/4+1/2i"``,
    ``"1/4+1/2*i"``, ``"3/4-i/4"``.  Decimals are rejected.
    """
    s = "".join(text.split())
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        raise ValueError("empty Gaussian rational")
    if "." in s or "e" in s.lower():
        raise ValueError(f"decimal notation is not accepted: {text!r}")
    re_part = mpq(0)
    im_part = mpq(0)
    pos = 0
    seen = 0
    while pos < len(s):
        m = _GAUSS_TERM.match(s, pos)
        if not m or m.end() == pos or (seen and not m.group(1)):
            raise ValueError(f"cannot parse Gaussian rational {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(2) is not None:
            val = parse_rat(m.group(2)) * sign
            if m.group(3):
                if m.group(4):
                    val /= int(m.group(4))
                im_part += val
            else:
                re_part += val
        else:
            val = mpq(sign)
            if m.group(6):
                val /= int(m.group(6))
            im_part += val
        pos = m.end()
        seen += 1
    return GaussRat(re_part, im_part)


def ceil_re(w: GaussRat) -> int:
    """Least integer >= Re(w)."""
    return int(gmpy2.ceil(GaussRat.coerce(w).re))


def binom(n: int, k: int) -> int:
    """Generalized binomial n(n-1)...(n-k+1)/k! for any integer n, k >= 0."""
    if k < 0:
        return 0
    if n >= 0:
        return int(gmpy2.comb(n, k)) if k <= n else 0
    # binom(-m, k) = (-1)^k binom(m+k-1, k)
    v = int(gmpy2.comb(-n + k - 1, k))
    return -v if k & 1 else v


@dataclass(frozen=True, order=True)
class WeightExpr:
    """Symbolic weight ``int_part + mu_part * mu``."""

    int_part: int
    mu_part: int

    def evaluate(self, mu) -> GaussRat:
        mu = GaussRat.coerce(mu)
        return GaussRat(self.int_part + mu.re * self.mu_part, mu.im * self.mu_part)

    def re_at(self, mu) -> "Rat":
        return self.int_part + GaussRat.coerce(mu).re * self.mu_part

    def __add__(self, other: "WeightExpr") -> "WeightExpr":
        return WeightExpr(self.int_part + other.int_part, self.mu_part + other.mu_part)

    def __sub__(self, other: "WeightExpr") -> "WeightExpr":
        return WeightExpr(self.int_part - other.int_part, self.mu_part - other.mu_part)

    def shift(self, n: int) -> "WeightExpr":
        return WeightExpr(self.int_part + n, self.mu_part)

    def __str__(self):
        if not self.mu_part:
            return str(self.int_part)
        d = self.mu_part
        mu = "mu" if d == 1 else ("-mu" if d == -1 else f"{d}*mu")
        if not self.int_part:
            return mu
        return f"{self.int_part}{'' if mu.startswith('-') else '+'}{mu}"


# --------------------------------------------------------------------------
# sparse linear algebra over Q(i)

SparseVec = Dict[Hashable, GaussRat]


def _clean(v) -> SparseVec:
    return {k: GaussRat.coerce(c) for k, c in v.items() if c}


class RowReducer:
    """Incremental exact row reduction.

    Columns are ordered by ``column_key`` (smallest key = leftmost).  The
    basis is kept fully reduced: every pivot column is zero in all other
    rows, and each pivot entry equals one.
    """

    def __init__(self, column_key=None):
        self.column_key = column_key or (lambda c: c)
        self.pivots: Dict[Hashable, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _leading(self, row: SparseVec):
        return min(row, key=self.column_key)

    def reduce(self, vec) -> SparseVec:
        """Return the normal form of ``vec`` modulo the current span."""
        row = dict(vec)
        for col in [c for c in row if c in self.pivots]:
            c = row.get(col)
            if not c:
                continue
            for k, x in self.pivots[col].items():
                y = row.get(k)
                y = -(c * x) if y is None else y - c * x
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
        return row

    def add(self, vec) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        row = self.reduce(_clean(vec))
        if not row:
            return False
        lead = self._leading(row)
        inv = row[lead].inverse()
        if inv != ONE:
            row = {k: x * inv for k, x in row.items()}
        for col, prow in self.pivots.items():
            c = prow.get(lead)
            if c:
                for k, x in row.items():
                    y = prow.get(k)
                    y = -(c * x) if y is None else y - c * x
                    if y:
                        prow[k] = y
                    else:
                        del prow[k]
        self.pivots[lead] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(_clean(vec))

    def basis(self) -> List[SparseVec]:
        return [dict(self.pivots[c]) for c in sorted(self.pivots, key=self.column_key)]


def row_reduce(rows: Iterable, column_key=None) -> Tuple[int, List[SparseVec]]:
    """Reduced row-echelon basis and rank of the span of ``rows``."""
    rr = RowReducer(column_key)
    for r in rows:
        rr.add(r)
    return rr.rank, rr.basis()


def membership(v, basis: List[SparseVec], column_key=None) -> bool:
    """True iff ``v`` reduces to zero against an already row-reduced basis."""
    rr = RowReducer(column_key)
    for row in basis:
        lead = rr._leading(row)
        rr.pivots[lead] = dict(row)
    return rr.contains(v)
