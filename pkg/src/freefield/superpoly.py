"""Supercommutative polynomial calculus over exact rationals.

The ring is generated by indexed letters ``GenVar(chart, symbol, index, der)``,
the k-th derivatives of the four generator families beta, gamma, b, c with an
upper component index.  beta and gamma are even, b and c are odd.  A monomial
is a tuple of letters sorted under the global order (chart, symbol, index,
der); odd letters may not repeat.  Reordering letters follows the Koszul rule,
so every routine stores the sorted order and folds the sign into the
coefficient.  Coefficients are ``fractions.Fraction``: always in lowest terms
with positive denominator, so all arithmetic is exact.

Weights: wt(d^k beta) = wt(d^k b) = k + 1 and wt(d^k gamma) = wt(d^k c) = k,
so the derivation ``PolyExpr.partial`` raises the weight of every monomial by
exactly one.

Besides the primary derivative indexing (der = k for d^k x), the subscript
indexing x_m is supported through d^k x = k! x_{k+1} for x = beta, b, c and
d^k gamma = (k-1)! gamma_k; ``to_subscript_basis`` / ``from_subscript_basis``
convert coefficients between the two, and ``partial_subscript`` implements
D x_m = m x_{m+1} directly on subscript coefficients.

All values are immutable after construction and every operation is a pure
function, so they are safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, NamedTuple

BETA, GAMMA, B, C = 0, 1, 2, 3
SYMBOL_NAMES = ("beta", "gamma", "b", "c")
SYMBOL_RANK = {name: i for i, name in enumerate(SYMBOL_NAMES)}
PLAIN, TILDE = 0, 1

# parity by symbol: b and c are odd
_ODD = (False, False, True, True)

_F0 = Fraction(0)
_F1 = Fraction(1)


class InhomogeneousWeight(ValueError):
    """Raised when a weight is requested of a non-homogeneous element."""


class GenVar(NamedTuple):
    """One generator letter d^der x^index on the given chart.

    Being a tuple, a GenVar compares and hashes in the canonical global
    order (chart, symbol, index, der) used for monomial normalization.
    """

    chart: int
    symbol: int
    index: int
    der: int

    @property
    def odd(self) -> bool:
        return _ODD[self.symbol]

    @property
    def weight(self) -> int:
        if self.symbol in (BETA, B):
            return self.der + 1
        return self.der

    def bump(self, k: int = 1) -> "GenVar":
        """The letter with derivative order raised by k."""
        return GenVar(self.chart, self.symbol, self.index, self.der + k)


def gv(symbol, index: int, der: int = 0, chart: int = PLAIN) -> GenVar:
    """Convenience constructor; accepts the symbol by name or rank."""
    if isinstance(symbol, str):
        symbol = SYMBOL_RANK[symbol]
    if index < 1:
        raise ValueError("component index starts at 1")
    if der < 0:
        raise ValueError("derivative order must be >= 0")
    return GenVar(chart, symbol, index, der)


Word = tuple  # tuple[GenVar, ...]


def sort_letters(letters: Iterable[GenVar]):
    """Sort letters into canonical order, returning (word, koszul_sign).

    Returns (None, 0) when an odd letter repeats (the monomial is zero).
    """
    seq = list(letters)
    sign = 1
    for i in range(1, len(seq)):
        x = seq[i]
        j = i - 1
        while j >= 0 and seq[j] > x:
            if seq[j].odd and x.odd:
                sign = -sign
            seq[j + 1] = seq[j]
            j -= 1
        seq[j + 1] = x
    for a, b in zip(seq, seq[1:]):
        if a == b and a.odd:
            return None, 0
    return tuple(seq), sign


def word_parity(word: Word) -> int:
    return sum(1 for x in word if x.odd) & 1


def word_weight(word: Word) -> int:
    return sum(x.weight for x in word)


class PolyExpr:
    """Finite rational combination of supercommutative monomials."""

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
    def zero(cls) -> "PolyExpr":
        return cls({}, _canonical=True)

    @classmethod
    def one(cls) -> "PolyExpr":
        return cls({(): _F1}, _canonical=True)

    @classmethod
    def variable(cls, var: GenVar) -> "PolyExpr":
        return cls({(var,): _F1}, _canonical=True)

    @classmethod
    def monomial(cls, letters: Iterable[GenVar], coeff=1) -> "PolyExpr":
        return cls({tuple(letters): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyExpr):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        return self.terms.items()

    def __add__(self, other: "PolyExpr") -> "PolyExpr":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, _F0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return PolyExpr(out, _canonical=True)

    def __sub__(self, other: "PolyExpr") -> "PolyExpr":
        return self + (-other)

    def __neg__(self) -> "PolyExpr":
        return PolyExpr({w: -c for w, c in self.terms.items()}, _canonical=True)

    def scale(self, coeff) -> "PolyExpr":
        c0 = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        if not c0:
            return PolyExpr.zero()
        return PolyExpr({w: c * c0 for w, c in self.terms.items()}, _canonical=True)

    def __mul__(self, other):
        if isinstance(other, PolyExpr):
            out: dict = {}
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    w, sign = sort_letters(wa + wb)
                    if sign == 0:
                        continue
                    s = out.get(w, _F0) + sign * ca * cb
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
            return PolyExpr(out, _canonical=True)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def parity(self):
        """0 or 1 for homogeneous parity, None for mixed, None for zero."""
        ps = {word_parity(w) for w in self.terms}
        if len(ps) == 1:
            return ps.pop()
        return None

    def weight(self) -> int:
        """Common weight of all monomials; InhomogeneousWeight if mixed."""
        if not self.terms:
            raise InhomogeneousWeight("weight of the zero element is undefined")
        ws = {word_weight(w) for w in self.terms}
        if len(ws) != 1:
            raise InhomogeneousWeight(f"mixed weights {sorted(ws)}")
        return ws.pop()

    def is_weight_homogeneous(self, w: int) -> bool:
        return all(word_weight(word) == w for word in self.terms)

    def partial(self) -> "PolyExpr":
        """The derivation d (Leibniz over letters, der -> der + 1)."""
        out: dict = {}
        for word, coeff in self.terms.items():
            for i, letter in enumerate(word):
                w, sign = sort_letters(word[:i] + (letter.bump(),) + word[i + 1:])
                if sign == 0:
                    continue
                s = out.get(w, _F0) + sign * coeff
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return PolyExpr(out, _canonical=True)

    def partial_pow(self, k: int) -> "PolyExpr":
        p = self
        for _ in range(k):
            p = p.partial()
        return p

    def __repr__(self) -> str:  # delegated to textio lazily to avoid a cycle
        from . import textio

        return textio.poly_to_text(self)


def subscript_scale(word: Word) -> Fraction:
    """Product of the factorials relating d-indexed letters to subscripts.

    d^k x = k! x_{k+1} for x = beta, b, c; d^k gamma = (k-1)! gamma_k.
    """
    f = 1
    for x in word:
        if x.symbol == GAMMA:
            if x.der == 0:
                raise ValueError("gamma with der = 0 has no subscript form")
            f *= factorial(x.der - 1)
        else:
            f *= factorial(x.der)
    return Fraction(f)


def to_subscript_basis(p: PolyExpr) -> PolyExpr:
    """Rescale coefficients so that monomials read as subscript letters."""
    return PolyExpr({w: c * subscript_scale(w) for w, c in p.terms.items()},
                    _canonical=True)


def from_subscript_basis(p: PolyExpr) -> PolyExpr:
    return PolyExpr({w: c / subscript_scale(w) for w, c in p.terms.items()},
                    _canonical=True)


def partial_subscript(p: PolyExpr) -> PolyExpr:
    """D x_m = m x_{m+1} on subscript-basis coefficients."""
    out: dict = {}
    for word, coeff in p.terms.items():
        for i, letter in enumerate(word):
            m = letter.der if letter.symbol == GAMMA else letter.der + 1
            if letter.symbol == GAMMA and letter.der == 0:
                raise ValueError("gamma with der = 0 has no subscript form")
            w, sign = sort_letters(word[:i] + (letter.bump(),) + word[i + 1:])
            if sign == 0:
                continue
            s = out.get(w, _F0) + sign * coeff * m
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return PolyExpr(out, _canonical=True)
