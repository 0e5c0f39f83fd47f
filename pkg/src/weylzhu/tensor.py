"""
Rank-n Weyl vertex algebras as tensor products of rank-one factors, each
with its own conformal parameter.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactmath import ONE, ZERO, GaussRat, rat
from .flow import central_charge
from .fock import VACUUM, Monomial, State, TruncConfig, basis_up_to, parse_state, print_state, weight
from .grading import TAG_RANK, OmegaDescription, RegionClass, Tag, classify
from .modes import lower_truncation_bound, mode_of, omega_state

__all__ = [
    "TensorVector",
    "tensor_central_charge",
    "tensor_classify",
    "tensor_mode",
    "tensor_omega",
    "tensor_virasoro_mode",
    "tensor_basis",
    "tensor_virasoro_defect",
    "parse_tensor",
]

Key = Tuple[Monomial, ...]
SEP = "(x)"


class TensorVector:
    """Linear combination of pure tensors of monomials."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Optional[Dict[Key, GaussRat]] = None):
        self.rank = rank
        self.terms: Dict[Key, GaussRat] = {}
        for k, c in (terms or {}).items():
            if len(k) != rank:
                raise ValueError("tensor rank mismatch")
            c = GaussRat.coerce(c)
            if c:
                self.terms[k] = c

    @classmethod
    def pure(cls, factors: Sequence[State]) -> "TensorVector":
        acc: Dict[Key, GaussRat] = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            key = tuple(m for m, _ in combo)
            c = ONE
            for _, x in combo:
                c = c * x
            acc[key] = acc.get(key, ZERO) + c
        return cls(len(factors), acc)

    @classmethod
    def vacuum(cls, rank: int) -> "TensorVector":
        return cls(rank, {(VACUUM,) * rank: ONE})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __add__(self, other: "TensorVector") -> "TensorVector":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorVector(self.rank, out)

    def __neg__(self):
        return TensorVector(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        return self + (-other)

    def scale(self, c) -> "TensorVector":
        c = GaussRat.coerce(c)
        return TensorVector(self.rank, {k: x * c for k, x in self.terms.items()})

    def weight(self, mus: Sequence) -> Optional[GaussRat]:
        """Common weight of all terms, or None when inhomogeneous."""
        ws = {sum((weight(m).evaluate(mu) for m, mu in zip(k, mus)), ZERO) for k in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def items(self) -> List[Tuple[Key, GaussRat]]:
        return sorted(self.terms.items(), key=lambda kv: tuple(m.sort_key() for m in kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.items():
            body = f" {SEP} ".join(str(m) for m in k)
            parts.append(body if c == ONE else f"({c})*[{body}]")
        return " + ".join(parts)

    __repr__ = __str__


def parse_tensor(text: str) -> TensorVector:
    """Pure tensor of factor states joined by ``(x)``."""
    return TensorVector.pure([parse_state(f) for f in text.split(SEP)])


def tensor_central_charge(mus: Iterable) -> GaussRat:
    out = ZERO
    for mu in mus:
        out = out + central_charge(mu)
    return out


def tensor_classify(mus: Sequence) -> RegionClass:
    """OMEGA_VOA iff every factor is; otherwise the class of the weakest factor."""
    classes = [classify(mu) for mu in mus]
    if not classes:
        return RegionClass(Tag.OMEGA_VOA, None, OmegaDescription.TRIVIAL_VACUUM_LINE)
    return min(classes, key=lambda c: TAG_RANK[c.tag])


def _index_ranges(bounds: Sequence[int], total: int):
    # tuples (j_1..j_n) with j_k <= bounds[k] and sum(j_k + 1) == total
    n = len(bounds)
    if n == 1:
        j = total - 1
        if j <= bounds[0]:
            yield (j,)
        return
    rest_max = sum(b + 1 for b in bounds[1:])
    lo = total - rest_max - 1
    for j in range(lo, bounds[0] + 1):
        for tail in _index_ranges(bounds[1:], total - j - 1):
            yield (j,) + tail


def tensor_mode(v: TensorVector, p: int, w: TensorVector, cfg: Optional[TruncConfig] = None) -> TensorVector:
    """``(v_1 (x) ... (x) v_n)_p = sum (v_1)_{j_1} (x) ... (x) (v_n)_{j_n}`` over sum(j_k + 1) = p + 1."""
    if v.rank != w.rank:
        raise ValueError("tensor rank mismatch")
    acc: Dict[Key, GaussRat] = {}
    for kv, cv in v.terms.items():
        for kw, cw in w.terms.items():
            bounds = [lower_truncation_bound(State.monomial(a), State.monomial(b)) for a, b in zip(kv, kw)]
            for js in _index_ranges(bounds, p + 1):
                images = []
                for a, b, j in zip(kv, kw, js):
                    img = mode_of(State.monomial(a), j, State.monomial(b), cfg)
                    if not img:
                        break
                    images.append(img)
                else:
                    for combo in itertools.product(*(s.terms.items() for s in images)):
                        key = tuple(m for m, _ in combo)
                        c = cv * cw
                        for _, x in combo:
                            c = c * x
                        acc[key] = acc.get(key, ZERO) + c
    return TensorVector(v.rank, acc)


def tensor_omega(mus: Sequence) -> TensorVector:
    """Sum of the factor conformal vectors, each embedded in its own slot."""
    n = len(mus)
    out = TensorVector(n)
    for i, mu in enumerate(mus):
        factors = [State.vacuum()] * n
        factors[i] = omega_state(mu)
        out = out + TensorVector.pure(factors)
    return out


def tensor_virasoro_mode(mus: Sequence, n: int, w: TensorVector) -> TensorVector:
    return tensor_mode(tensor_omega(mus), n + 1, w)


def tensor_basis(mus: Sequence, cap, zero_cap: int = 3) -> List[Key]:
    """Pure tensors of basis monomials with total Re(weight) <= cap."""
    cap = rat(cap)
    per = [basis_up_to(mu, cap, zero_cap) for mu in mus]
    out = []
    for combo in itertools.product(*per):
        total = sum(weight(m).re_at(mu) for m, mu in zip(combo, mus))
        if total <= cap:
            out.append(combo)
    return out


def tensor_virasoro_defect(mus: Sequence, m: int, n: int, w: TensorVector) -> TensorVector:
    """``[L(m), L(n)] w - (m-n) L(m+n) w - (m^3-m)/12 c delta_{m+n,0} w``."""
    lm = lambda k, x: tensor_virasoro_mode(mus, k, x)
    lhs = lm(m, lm(n, w)) - lm(n, lm(m, w))
    rhs = lm(m + n, w).scale(m - n)
    if m + n == 0:
        c = tensor_central_charge(mus)
        rhs = rhs + w.scale(c * GaussRat(rat(m ** 3 - m) / 12))
    return lhs - rhs
