"""The polynomial ring R with its current-algebra action and straightening.

R is the supercommutative ring on d^k beta^j, d^(k+1) gamma^j, d^k b^j,
d^k c^j (k >= 0, j = 1, 2).  sl2 acts on beta, b through the standard
two-dimensional representation (H e1 = e1, G e2 = e1, F e1 = e2) and on
gamma, c through its dual (negative transpose); the t^n part of the loop
algebra lowers the derivative order, truncating to zero when the subscript
would leave the ring.

The eight quadratic invariants:

  A[Bb] = beta1 b2 - beta2 b1        A[Bc] = beta1 c1 + beta2 c2
  A[Bg] = beta1 dgamma1 + beta2 dgamma2
  A[bc] = b1 c1 + b2 c2              A[gb] = b1 dgamma1 + b2 dgamma2
  A[gc] = c1 dgamma2 - c2 dgamma1
  A[bb] = b1 b2                      A[cc] = c1 c2

together with their derivatives generate the invariant ring, and the
standard monomials (ordered words admissible under the partial order below)
form a linear basis of it.  ``straighten`` rewrites any ordered word in this
basis by an exact linear solve against the expanded standard words of the
same weight and multidegree; the rewriting relations are kept as test
identities, not as the algorithm.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, List, NamedTuple, Tuple

from . import linalg
from .superpoly import (
    BETA, GAMMA, B, C, PLAIN, GenVar, PolyExpr, gv, word_weight,
)

# pseudo-symbols ordered beta > dgamma > b > c
W_C, W_B, W_DG, W_BETA = 0, 1, 2, 3
_WSYM_ODD = {W_C: True, W_B: True, W_DG: False, W_BETA: False}
_WSYM_WEIGHT = {W_C: 0, W_B: 1, W_DG: 1, W_BETA: 1}

# label -> (x, y) pseudo-symbols, x >= y in the symbol order
LABELS: Dict[str, Tuple[int, int]] = {
    "Bb": (W_BETA, W_B),
    "Bc": (W_BETA, W_C),
    "Bg": (W_BETA, W_DG),
    "bc": (W_B, W_C),
    "gb": (W_DG, W_B),
    "gc": (W_DG, W_C),
    "bb": (W_B, W_B),
    "cc": (W_C, W_C),
}


class NotStandard(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class InconsistentSystem(RuntimeError):
    """The straightening solve failed; the basis property is violated."""


class Inhomogeneous(ValueError):
    pass


class WeylGen(NamedTuple):
    """d^der applied to one of the eight quadratic generators."""

    label: str
    der: int

    @property
    def symbols(self) -> Tuple[int, int]:
        return LABELS[self.label]

    @property
    def weight(self) -> int:
        x, y = LABELS[self.label]
        return _WSYM_WEIGHT[x] + _WSYM_WEIGHT[y] + self.der


class LieGen(NamedTuple):
    """Current-algebra element: base in {H, G, F} times t^power."""

    base: str
    power: int


def _v(sym, idx, der=0):
    return PolyExpr.variable(gv(sym, idx, der))


_BASE_EXPANSIONS = {
    "Bb": _v(BETA, 1) * _v(B, 2) - _v(BETA, 2) * _v(B, 1),
    "Bc": _v(BETA, 1) * _v(C, 1) + _v(BETA, 2) * _v(C, 2),
    "Bg": _v(BETA, 1) * _v(GAMMA, 1, 1) + _v(BETA, 2) * _v(GAMMA, 2, 1),
    "bc": _v(B, 1) * _v(C, 1) + _v(B, 2) * _v(C, 2),
    "gb": _v(B, 1) * _v(GAMMA, 1, 1) + _v(B, 2) * _v(GAMMA, 2, 1),
    "gc": _v(C, 1) * _v(GAMMA, 2, 1) - _v(C, 2) * _v(GAMMA, 1, 1),
    "bb": _v(B, 1) * _v(B, 2),
    "cc": _v(C, 1) * _v(C, 2),
}

_WEYL_CACHE: Dict[WeylGen, PolyExpr] = {}


def weyl(label: str, der: int = 0) -> PolyExpr:
    """The expanded quadratic d^der A[label]."""
    g = WeylGen(label, der)
    out = _WEYL_CACHE.get(g)
    if out is None:
        out = _BASE_EXPANSIONS[label].partial_pow(der)
        _WEYL_CACHE[g] = out
    return out


def expand_word(word) -> PolyExpr:
    out = PolyExpr.one()
    for g in word:
        out = out * weyl(g.label, g.der)
    return out


# action of H, G, F on a single letter: symbol -> index -> (index', scalar)
# beta, b carry the defining representation; gamma, c its dual.
_E_ACTION = {
    "H": {1: (1, 1), 2: (2, -1)},
    "G": {2: (1, 1)},
    "F": {1: (2, 1)},
}
_DUAL_ACTION = {
    "H": {1: (1, -1), 2: (2, 1)},
    "G": {1: (2, -1)},
    "F": {2: (1, -1)},
}


def _act_letter(base: str, power: int, x: GenVar):
    """Image of one letter, or None when it is annihilated."""
    if x.chart != PLAIN:
        raise ValueError("the current algebra acts on the plain chart ring")
    if x.symbol == GAMMA and x.der == 0:
        raise ValueError("gamma with der = 0 is outside the ring R")
    table = _E_ACTION if x.symbol in (BETA, B) else _DUAL_ACTION
    hit = table[base].get(x.index)
    if hit is None:
        return None
    new_index, scalar = hit
    m = x.der - 1 if x.symbol == GAMMA else x.der  # subscript minus one
    if m < power:
        return None
    factor = Fraction(factorial(m), factorial(m - power))
    return GenVar(PLAIN, x.symbol, new_index, x.der - power), scalar * factor


def act(xi: LieGen, f: PolyExpr) -> PolyExpr:
    """Even derivation action of xi = base * t^power on the ring."""
    out = PolyExpr.zero()
    for word, coeff in f.terms.items():
        for i, letter in enumerate(word):
            hit = _act_letter(xi.base, xi.power, letter)
            if hit is None:
                continue
            new_letter, scalar = hit
            mono = PolyExpr.monomial(
                word[:i] + (new_letter,) + word[i + 1:], coeff * scalar)
            out = out + mono
    return out


def act_name(base: str, f: PolyExpr, power: int = 0) -> PolyExpr:
    return act(LieGen(base, power), f)


def weyl_less(a: WeylGen, b: WeylGen, both_odd_variant: bool = True) -> bool:
    """The strict partial order on the generator set.

    both_odd_variant selects the resolved reading of the fourth sub-case of
    the equal-derivative case (both symbols odd); with False the sub-case is
    read exactly as printed (a second rule for x' odd, y' even), leaving
    both-odd pairs incomparable.
    """
    k, kp = a.der, b.der
    x, y = a.symbols
    xp, yp = b.symbols
    if k <= kp - 2:
        return True
    if k == kp - 1:
        if _WSYM_ODD[xp]:
            return xp > y
        return xp >= y
    if k == kp:
        xp_odd, yp_odd = _WSYM_ODD[xp], _WSYM_ODD[yp]
        if not xp_odd and not yp_odd:
            return (xp > x and yp >= y) or (xp >= x and yp > y)
        if not xp_odd and yp_odd:
            return xp >= x and yp > y
        if xp_odd and not yp_odd:
            return xp > x and yp >= y
        if both_odd_variant:
            return xp > x and yp > y
        return False
    return False


def is_standard(word, both_odd_variant: bool = True) -> bool:
    for a, b in zip(word, word[1:]):
        if a == b and a.label == "Bg":
            continue
        if not weyl_less(a, b, both_odd_variant):
            return False
    return True


def enumerate_standard(w: int, both_odd_variant: bool = True):
    """All standard words of total weight w, in construction order."""
    if w < 0:
        return []
    gens = sorted(
        (WeylGen(label, der) for label in LABELS for der in range(w + 1)
         if WeylGen(label, der).weight <= w),
        key=lambda g: (g.der, g.label))
    out: List[Tuple[WeylGen, ...]] = []

    def rec(prefix, used):
        if used == w:
            out.append(tuple(prefix))
        last = prefix[-1] if prefix else None
        for g in gens:
            if used + g.weight > w:
                continue
            if last is not None and not (
                    weyl_less(last, g, both_odd_variant)
                    or (last == g and g.label == "Bg")):
                continue
            prefix.append(g)
            rec(prefix, used + g.weight)
            prefix.pop()

    rec([], 0)
    return out


def _symbol_content(word) -> Tuple[int, int, int, int]:
    counts = [0, 0, 0, 0]
    ring_symbol = {W_BETA: BETA, W_DG: GAMMA, W_B: B, W_C: C}
    for g in word:
        for s in g.symbols:
            counts[ring_symbol[s]] += 1
    return tuple(counts)


def straighten(word, both_odd_variant: bool = True):
    """Rewrite an ordered word as a combination of standard words.

    Returns {standard word: coefficient}; empty when the product expands
    to zero.  Existence and uniqueness come from the basis property, so a
    failed solve raises InconsistentSystem.
    """
    word = tuple(word)
    target = expand_word(word)
    if target.is_zero():
        return {}
    w = sum(g.weight for g in word)
    content = _symbol_content(word)
    candidates = [s for s in enumerate_standard(w, both_odd_variant)
                  if _symbol_content(s) == content]
    expansions = [expand_word(s) for s in candidates]
    monomials = sorted(set(target.terms)
                       | {m for e in expansions for m in e.terms})
    rows = [[e.terms.get(m, Fraction(0)) for e in expansions]
            for m in monomials]
    rhs = [target.terms.get(m, Fraction(0)) for m in monomials]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise InconsistentSystem(f"straightening failed for {word}")
    return {s: c for s, c in zip(candidates, sol) if c}


# generator order of the linear-independence argument:
# d^k c1 < d^k c2 < d^k b2 < d^k b1 < d^(k+1) gamma1 < d^(k+1) gamma2
#   < d^k beta2 < d^k beta1 < d^(k+1) c1 < ...
_PROOF_RANK = {
    (C, 1): 0, (C, 2): 1, (B, 2): 2, (B, 1): 3,
    (GAMMA, 1): 4, (GAMMA, 2): 5, (BETA, 2): 6, (BETA, 1): 7,
}


def _proof_key(x: GenVar):
    level = x.der - 1 if x.symbol == GAMMA else x.der
    return (level, _PROOF_RANK[(x.symbol, x.index)])


def monomial_order_key(word):
    """Graded-lex key: longer words are larger, then letterwise."""
    return (len(word), tuple(sorted(_proof_key(x) for x in word)))


def leading_monomial(f: PolyExpr):
    """The largest monomial of f under the proof order; ZeroInput on 0."""
    if f.is_zero():
        raise ZeroInput("leading monomial of zero")
    return max(f.terms, key=monomial_order_key)


def filtration_degrees(f: PolyExpr) -> Tuple[int, int]:
    """(number of beta and b letters, number of beta letters)."""
    degs = set()
    for word in f.terms:
        n = sum(1 for x in word if x.symbol in (BETA, B))
        s = sum(1 for x in word if x.symbol == BETA)
        degs.add((n, s))
    if len(degs) != 1:
        raise Inhomogeneous(f"mixed filtration degrees {sorted(degs)}")
    return degs.pop()
