"""Exact vertex algebra calculus for the rank-N beta-gamma/b-c system.

States are finite rational combinations of canonical normally ordered words.
A word is a sorted tuple of GenVar letters and denotes the right-nested Wick
product of those letters.  For a free system the creation modes of the
generators supercommute, so the sorted words are a linear basis (the Fock
basis) and merging a single letter into a word is plain signed insertion.
Every other product is reduced to that base case:

* contractions of two letters come from the defining pole table
  (beta with gamma, b with c, simple poles only),
* a bracket against a longer word uses the non-commutative Wick formula
  [a_l :bc:] = :[a_l b]c: + (-1)^{|a||b|} :b[a_l c]: + int_0^l [[a_l b]_m c] dm,
* a composite left argument against a single letter uses skew-symmetry
  [a_l b] = -(-1)^{|a||b|} [b_{-l-d} a],
* Wick products with a composite left factor are reduced with
  quasi-associativity
  ::ab:c: = :a:bc:: + :(int_0^d a)[b_l c]: + (-1)^{|a||b|} :(int_0^d b)[a_l c]:.

The integrals are finite sums over bracket coefficients, so everything is
exact; coefficients are Fractions throughout.  The two pairwise caches are
only ever written with finished immutable values, so results never depend on
evaluation order.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Tuple

from .superpoly import (
    BETA, GAMMA, B, C, PLAIN, GenVar, gv, sort_letters, word_parity,
    word_weight,
)

_F0 = Fraction(0)
_F1 = Fraction(1)

Word = Tuple[GenVar, ...]


class IndexOutOfRange(ValueError):
    """Generator component index outside 1..N."""


class NotEigenvector(ValueError):
    """The field is not an eigenvector of L circ_1."""


class FieldExpr:
    """Element of the free-field algebra in the canonical word basis."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _canonical: bool = False):
        if _canonical:
            self.terms = terms
            return
        out: dict = {}
        for word, coeff in (terms or {}).items():
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if not c:
                continue
            w, sign = sort_letters(word)
            if sign == 0:
                continue
            out[w] = out.get(w, _F0) + sign * c
        self.terms = {w: c for w, c in out.items() if c}

    @classmethod
    def zero(cls) -> "FieldExpr":
        return cls({}, _canonical=True)

    @classmethod
    def vacuum(cls) -> "FieldExpr":
        return cls({(): _F1}, _canonical=True)

    @classmethod
    def from_word(cls, word: Iterable[GenVar], coeff=1) -> "FieldExpr":
        return cls({tuple(word): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldExpr):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        return self.terms.items()

    def __add__(self, other: "FieldExpr") -> "FieldExpr":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, _F0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FieldExpr(out, _canonical=True)

    def __sub__(self, other: "FieldExpr") -> "FieldExpr":
        return self + (-other)

    def __neg__(self) -> "FieldExpr":
        return FieldExpr({w: -c for w, c in self.terms.items()}, _canonical=True)

    def scale(self, coeff) -> "FieldExpr":
        c0 = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        if not c0:
            return FieldExpr.zero()
        return FieldExpr({w: c * c0 for w, c in self.terms.items()},
                         _canonical=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def parity(self):
        ps = {word_parity(w) for w in self.terms}
        if len(ps) == 1:
            return ps.pop()
        return None

    def weight(self) -> int:
        """Letter-count conformal weight; requires homogeneity."""
        ws = {word_weight(w) for w in self.terms}
        if len(ws) != 1:
            raise ValueError(f"not weight homogeneous: {sorted(ws)}")
        return ws.pop()

    def is_weight_homogeneous(self, w: int) -> bool:
        return all(word_weight(word) == w for word in self.terms)

    def __repr__(self) -> str:
        from . import textio

        return textio.field_to_text(self)


class LambdaPolynomial:
    """All nonnegative products at once: entry n holds a circ_n b."""

    __slots__ = ("products",)

    def __init__(self, products=None):
        self.products = {n: e for n, e in (products or {}).items()
                         if not e.is_zero()}

    def __getitem__(self, n: int) -> FieldExpr:
        return self.products.get(n, FieldExpr.zero())

    def items(self):
        return self.products.items()

    def support(self):
        return sorted(self.products)

    def is_zero(self) -> bool:
        return not self.products

    def max_pole(self) -> int:
        """Least N with a circ_n b = 0 for all n >= N (the pole order)."""
        return 1 + max(self.products) if self.products else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, LambdaPolynomial):
            return self.products == other.products
        return NotImplemented

    def __repr__(self) -> str:
        from . import textio

        inner = ", ".join(f"{n}: {textio.field_to_text(e)}"
                          for n, e in sorted(self.products.items()))
        return "{" + inner + "}"


# simple pole constants among der-0 letters with equal index and chart
_CONTRACTIONS = {(BETA, GAMMA): 1, (GAMMA, BETA): -1, (B, C): 1, (C, B): 1}

_WICK_CACHE: Dict[Tuple[Word, Word], FieldExpr] = {}
_LB_CACHE: Dict[Tuple[Word, Word], Dict[int, FieldExpr]] = {}


def clear_caches() -> None:
    _WICK_CACHE.clear()
    _LB_CACHE.clear()


def _merge_letter(x: GenVar, w: Word):
    """Insert the creation mode of x into the sorted word w, with sign."""
    pos = bisect_left(w, x)
    if x.odd:
        if pos < len(w) and w[pos] == x:
            return None, 0
        if sum(1 for y in w[:pos] if y.odd) & 1:
            return w[:pos] + (x,) + w[pos:], -1
    return w[:pos] + (x,) + w[pos:], 1


def _wick_letter_expr(x: GenVar, e: FieldExpr) -> FieldExpr:
    out: dict = {}
    for word, coeff in e.terms.items():
        w, sign = _merge_letter(x, word)
        if sign == 0:
            continue
        s = out.get(w, _F0) + sign * coeff
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return FieldExpr(out, _canonical=True)


def translate(a: FieldExpr, k: int = 1) -> FieldExpr:
    """The translation operator d applied k times (Leibniz over letters)."""
    for _ in range(k):
        out: dict = {}
        for word, coeff in a.terms.items():
            for i, letter in enumerate(word):
                w, sign = sort_letters(word[:i] + (letter.bump(),)
                                       + word[i + 1:])
                if sign == 0:
                    continue
                s = out.get(w, _F0) + sign * coeff
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        a = FieldExpr(out, _canonical=True)
    return a


def _acc_add(acc: dict, n: int, e: FieldExpr) -> None:
    if n in acc:
        acc[n] = acc[n] + e
    else:
        acc[n] = e


def _contract(x: GenVar, y: GenVar):
    if x.chart != y.chart or x.index != y.index:
        return None
    sign = _CONTRACTIONS.get((x.symbol, y.symbol))
    if sign is None:
        return None
    n = x.der + y.der
    return n, Fraction(sign * (-1) ** x.der * factorial(n))


def _skew(p: Dict[int, FieldExpr], pv: int, pw: int) -> Dict[int, FieldExpr]:
    # v circ_n w = -(-1)^{|v||w|} sum_j (-1)^{n+j}/j! d^j (w circ_{n+j} v)
    sign0 = 1 if (pv and pw) else -1
    acc: dict = {}
    for m, e in p.items():
        for j in range(m + 1):
            coeff = Fraction(sign0 * (-1) ** m, factorial(j))
            _acc_add(acc, m - j, translate(e, j).scale(coeff))
    return {n: e for n, e in acc.items() if not e.is_zero()}


def _lam_expr_word(e: FieldExpr, w: Word) -> Dict[int, FieldExpr]:
    acc: dict = {}
    for u, cu in e.terms.items():
        for n, f in _lb_words(u, w).items():
            _acc_add(acc, n, f.scale(cu))
    return {n: f for n, f in acc.items() if not f.is_zero()}


def _lb_words(v: Word, w: Word) -> Dict[int, FieldExpr]:
    key = (v, w)
    cached = _LB_CACHE.get(key)
    if cached is not None:
        return cached
    if not v or not w:
        res: Dict[int, FieldExpr] = {}
    elif len(v) == 1 and len(w) == 1:
        c = _contract(v[0], w[0])
        res = {} if c is None else {c[0]: FieldExpr({(): c[1]},
                                                    _canonical=True)}
    elif len(w) >= 2:
        # non-commutative Wick formula on w = :y rest:
        y, rest = w[0], w[1:]
        p1 = _lb_words(v, (y,))
        p2 = _lb_words(v, rest)
        acc: dict = {}
        rest_expr = FieldExpr({rest: _F1}, _canonical=True)
        for n, e in p1.items():
            _acc_add(acc, n, wick(e, rest_expr))
        sgn = -1 if (word_parity(v) and y.odd) else 1
        for n, e in p2.items():
            _acc_add(acc, n, _wick_letter_expr(y, e).scale(sgn))
        for n1, e in p1.items():
            for m, e2 in _lam_expr_word(e, rest).items():
                k = n1 + m + 1
                _acc_add(acc, k, e2.scale(Fraction(comb(k, m + 1))))
        res = {n: e for n, e in acc.items() if not e.is_zero()}
    else:
        res = _skew(_lb_words(w, v), word_parity(v), word_parity(w))
    _LB_CACHE[key] = res
    return res


def _wick_words(v: Word, w: Word) -> FieldExpr:
    key = (v, w)
    cached = _WICK_CACHE.get(key)
    if cached is not None:
        return cached
    if not v:
        res = FieldExpr({w: _F1}, _canonical=True)
    elif len(v) == 1:
        nw, sign = _merge_letter(v[0], w)
        res = (FieldExpr.zero() if sign == 0
               else FieldExpr({nw: Fraction(sign)}, _canonical=True))
    else:
        # quasi-associativity on v = :x rest:
        x, rest = v[0], v[1:]
        res = _wick_letter_expr(x, _wick_words(rest, w))
        for n, e in _lb_words(rest, w).items():
            res = res + _wick_letter_expr(x.bump(n + 1), e).scale(
                Fraction(1, factorial(n + 1)))
        sign_xr = -1 if (x.odd and word_parity(rest)) else 1
        rest_expr = FieldExpr({rest: _F1}, _canonical=True)
        for n, e in _lb_words((x,), w).items():
            res = res + wick(translate(rest_expr, n + 1), e).scale(
                Fraction(sign_xr, factorial(n + 1)))
    _WICK_CACHE[key] = res
    return res


def wick(a: FieldExpr, b: FieldExpr) -> FieldExpr:
    """Canonical form of the normally ordered product :ab:."""
    out = FieldExpr.zero()
    for va, ca in a.terms.items():
        for wb, cb in b.terms.items():
            out = out + _wick_words(va, wb).scale(ca * cb)
    return out


def lambda_bracket(a: FieldExpr, b: FieldExpr) -> LambdaPolynomial:
    """[a_l b] as the family of all nonnegative products a circ_n b."""
    acc: dict = {}
    for va, ca in a.terms.items():
        for wb, cb in b.terms.items():
            for n, e in _lb_words(va, wb).items():
                _acc_add(acc, n, e.scale(ca * cb))
    return LambdaPolynomial(acc)


def circle(a: FieldExpr, n: int, b: FieldExpr) -> FieldExpr:
    """The n-th product; n! a circ_{-n-1} b = :(d^n a) b: for n >= 0."""
    if n >= 0:
        return lambda_bracket(a, b)[n]
    k = -n - 1
    return wick(translate(a, k), b).scale(Fraction(1, factorial(k)))


def commute_order(a: FieldExpr, b: FieldExpr) -> int:
    """Least N >= 0 with a circ_n b = 0 for all n >= N."""
    return lambda_bracket(a, b).max_pole()


def conformal_weight(a: FieldExpr, virasoro: FieldExpr) -> Fraction:
    """Eigenvalue mu with L circ_1 a = mu a; NotEigenvector otherwise."""
    if a.is_zero():
        raise ValueError("the zero field has no conformal weight")
    image = circle(virasoro, 1, a)
    if image.is_zero():
        mu = _F0
    else:
        word, coeff = next(iter(a.terms.items()))
        mu = image.terms.get(word, _F0) / coeff
    if image == a.scale(mu):
        return mu
    raise NotEigenvector("not an L circ_1 eigenvector")


def generator(symbol, index: int, der: int = 0) -> FieldExpr:
    """The length-one word d^der x^index."""
    return FieldExpr.from_word((gv(symbol, index, der),))


def topological_fields(npairs: int) -> Dict[str, FieldExpr]:
    """The four fields L, J, Q, G that exist at every rank."""
    total = {name: FieldExpr.zero() for name in ("L", "J", "Q", "G")}
    for i in range(1, npairs + 1):
        beta, gamma = generator(BETA, i), generator(GAMMA, i)
        bb, cc = generator(B, i), generator(C, i)
        total["L"] = total["L"] + wick(beta, translate(gamma)) \
            - wick(bb, translate(cc))
        total["J"] = total["J"] - wick(bb, cc)
        total["Q"] = total["Q"] + wick(beta, cc)
        total["G"] = total["G"] + wick(bb, translate(gamma))
    return total


class FockAlgebra:
    """Context fixing the number N of beta-gamma/b-c pairs."""

    def __init__(self, npairs: int):
        if npairs < 1:
            raise ValueError("need at least one pair")
        self.npairs = npairs

    def generator(self, symbol, index: int, der: int = 0) -> FieldExpr:
        if not 1 <= index <= self.npairs:
            raise IndexOutOfRange(
                f"index {index} outside 1..{self.npairs}")
        return generator(symbol, index, der)

    def topological_fields(self) -> Dict[str, FieldExpr]:
        return topological_fields(self.npairs)
