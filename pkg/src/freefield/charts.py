"""Blow-up chart series and the quadratic transformation identity.

On the chart where the double cover is resolved, the generators pull back to
Laurent series in the formal parameter t (t^2 is the inverse of the first
coordinate), with polynomial coefficients in the plain generators extended by
the even weight-0 variable gamma^2.  The closed forms

  beta~1 = 2/t beta1 - t gamma2 beta2         beta~2 = t beta2
  b~1    = 2/t b1    - t gamma2 b2            b~2    = t b2
  d gamma~1 = (t/2) d gamma1                  c~1    = (t/2) c1
  d gamma~2 = (1/t) d gamma2 + (t/2) gamma2 d gamma1
  c~2       = (1/t) c2       + (t/2) gamma2 c1

are exact, and so is the substitution rule d t = -(1/2) t^3 d gamma1, so
every derivative of every chart generator is a finite exact Laurent
polynomial; truncation windows are contract guards, not approximations.
All the tilde series carry odd powers of t only.

``verify_alpha_identity`` checks, exactly modulo t^4, that

  A(x~, y~, i, j) = alpha (A(x,y,i,j)
      + (t^2/2)(sum_k H t^k A . d^k gamma1/k! - sum_k F t^k A . d^k gamma2/k!))

with alpha = 1 on the four mixed pairs, 2 on (beta,beta), (b,b), (beta,b)
and 1/2 on (dgamma,dgamma), (c,dgamma), (c,c).  The correction operator in
the second sum is the one the chart really produces once the dual action is
pinned by invariance of the quadratics; it annihilates invariants and cuts
out exactly the invariant subspace together with sl2, just as the H/G sum
of the membership criterion does.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .invariants import chart_correction
from .superpoly import B as B_SYM
from .superpoly import BETA, C as C_SYM, GAMMA, PolyExpr, gv

_F0 = Fraction(0)
_HALF = Fraction(1, 2)


class TruncationTooDeep(ValueError):
    """Requested order beyond the supported expansion window."""


class UnknownPairClass(ValueError):
    pass


class ChartSeries:
    """Laurent polynomial in t with PolyExpr coefficients.

    ``trunc`` is the certification window: exponents >= trunc are unknown
    and never stored; None means the series is exact at every order.
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc: Optional[int] = None):
        out = {}
        for m, p in (coeffs or {}).items():
            if trunc is not None and m >= trunc:
                continue
            if p:
                out[m] = p
        self.coeffs = out
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc: Optional[int] = None) -> "ChartSeries":
        return cls({}, trunc)

    def min_exp(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def __eq__(self, other) -> bool:
        if isinstance(other, ChartSeries):
            return self.coeffs == other.coeffs and self.trunc == other.trunc
        return NotImplemented

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, m: int) -> PolyExpr:
        if self.trunc is not None and m >= self.trunc:
            raise TruncationTooDeep(f"t^{m} is beyond the window {self.trunc}")
        return self.coeffs.get(m, PolyExpr.zero())

    @staticmethod
    def _min_trunc(a: Optional[int], b: Optional[int]) -> Optional[int]:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "ChartSeries") -> "ChartSeries":
        out = dict(self.coeffs)
        for m, p in other.coeffs.items():
            s = out.get(m, PolyExpr.zero()) + p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ChartSeries(out, self._min_trunc(self.trunc, other.trunc))

    def __sub__(self, other: "ChartSeries") -> "ChartSeries":
        return self + (-other)

    def __neg__(self) -> "ChartSeries":
        return ChartSeries({m: -p for m, p in self.coeffs.items()}, self.trunc)

    def scale(self, c) -> "ChartSeries":
        return ChartSeries({m: p.scale(c) for m, p in self.coeffs.items()},
                           self.trunc)

    def __mul__(self, other: "ChartSeries") -> "ChartSeries":
        # unknown terms of one factor meet the lowest exponent of the other
        trunc = None
        if self.trunc is not None:
            me = other.min_exp()
            trunc = self.trunc + me if me is not None else None
        if other.trunc is not None:
            me = self.min_exp()
            t2 = other.trunc + me if me is not None else None
            trunc = self._min_trunc(trunc, t2)
        out: dict = {}
        for ma, pa in self.coeffs.items():
            for mb, pb in other.coeffs.items():
                m = ma + mb
                prod = pa * pb
                if not prod:
                    continue
                s = out.get(m, PolyExpr.zero()) + prod
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return ChartSeries(out, trunc)

    def partial(self) -> "ChartSeries":
        """d, with the exact substitution d(t^m) = -(m/2) t^(m+2) dgamma1."""
        dg1 = PolyExpr.variable(gv(GAMMA, 1, 1))
        out: dict = {}

        def add(m, p):
            if not p:
                return
            s = out.get(m, PolyExpr.zero()) + p
            if s:
                out[m] = s
            else:
                out.pop(m, None)

        for m, p in self.coeffs.items():
            add(m, p.partial())
            add(m + 2, (dg1 * p).scale(Fraction(-m, 2)))
        return ChartSeries(out, self.trunc)

    def partial_pow(self, k: int) -> "ChartSeries":
        s = self
        for _ in range(k):
            s = s.partial()
        return s

    def truncate(self, order: int) -> "ChartSeries":
        if self.trunc is not None and order > self.trunc:
            raise TruncationTooDeep(
                f"window {order} exceeds certified order {self.trunc}")
        return ChartSeries({m: p for m, p in self.coeffs.items()
                            if m < order}, order)

    def __repr__(self) -> str:
        from . import textio

        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"t^{m}*({textio.poly_to_text(p)})"
                              for m, p in self.items())
        tail = "" if self.trunc is None else f" + O(t^{self.trunc})"
        return body + tail


def _series(entries) -> ChartSeries:
    return ChartSeries({m: p for m, p in entries.items()}, None)


def _var(sym, idx, der=0) -> PolyExpr:
    return PolyExpr.variable(gv(sym, idx, der))


_G2 = _var(GAMMA, 2, 0)  # the adjoined even weight-0 coefficient variable


def _base_forms() -> Dict[Tuple[int, int], ChartSeries]:
    return {
        (BETA, 1): _series({-1: _var(BETA, 1).scale(2),
                            1: -(_G2 * _var(BETA, 2))}),
        (BETA, 2): _series({1: _var(BETA, 2)}),
        (B_SYM, 1): _series({-1: _var(B_SYM, 1).scale(2),
                             1: -(_G2 * _var(B_SYM, 2))}),
        (B_SYM, 2): _series({1: _var(B_SYM, 2)}),
        (GAMMA, 1): _series({1: _var(GAMMA, 1, 1).scale(_HALF)}),
        (GAMMA, 2): _series({-1: _var(GAMMA, 2, 1),
                             1: (_G2 * _var(GAMMA, 1, 1)).scale(_HALF)}),
        (C_SYM, 1): _series({1: _var(C_SYM, 1).scale(_HALF)}),
        (C_SYM, 2): _series({-1: _var(C_SYM, 2),
                             1: (_G2 * _var(C_SYM, 1)).scale(_HALF)}),
    }


_BASES = _base_forms()
_TILDE_CACHE: Dict[Tuple[int, int, int], ChartSeries] = {}

_SYMBOL_BY_NAME = {"beta": BETA, "gamma": GAMMA, "b": B_SYM, "c": C_SYM}

MAX_GENERATOR_ORDER = 5
MAX_PAIR_ORDER = 4


def _tilde_exact(symbol: int, j: int, l: int) -> ChartSeries:
    key = (symbol, j, l)
    out = _TILDE_CACHE.get(key)
    if out is None:
        out = _BASES[(symbol, j)].partial_pow(l)
        _TILDE_CACHE[key] = out
    return out


def tilde_generator(symbol, j: int, l: int, order: int) -> ChartSeries:
    """The chart expansion of d^l x~^j (for gamma: d^(l+1) gamma~^j).

    Exact at every displayed order; `order` beyond the supported window of
    the listed expansions raises TruncationTooDeep.
    """
    if isinstance(symbol, str):
        symbol = _SYMBOL_BY_NAME[symbol]
    if j not in (1, 2):
        raise ValueError("component index must be 1 or 2")
    if l < 0:
        raise ValueError("derivative order must be >= 0")
    if order > MAX_GENERATOR_ORDER:
        raise TruncationTooDeep(
            f"window {order} exceeds the supported order "
            f"{MAX_GENERATOR_ORDER}")
    return _tilde_exact(symbol, j, l).truncate(order)


# pair classes; pairs are given over the pseudo-symbols beta, dgamma, b, c
FIRST_CLASS = (("beta", "dgamma"), ("beta", "c"), ("b", "dgamma"), ("b", "c"))
SECOND_CLASS = (("beta", "beta"), ("beta", "b"), ("b", "b"), ("c", "c"),
                ("dgamma", "dgamma"), ("c", "dgamma"))

ALPHA_TABLE = {pair: Fraction(1) for pair in FIRST_CLASS}
ALPHA_TABLE.update({("beta", "beta"): Fraction(2), ("beta", "b"): Fraction(2),
                    ("b", "b"): Fraction(2)})
ALPHA_TABLE.update({("dgamma", "dgamma"): _HALF, ("c", "dgamma"): _HALF,
                    ("c", "c"): _HALF})


def _pair_letter(x: str, j: int, i: int) -> PolyExpr:
    if x == "dgamma":
        return _var(GAMMA, j, i + 1)
    return _var(_SYMBOL_BY_NAME[x], j, i)


def _pair_tilde(x: str, j: int, i: int) -> ChartSeries:
    if x == "dgamma":
        return _tilde_exact(GAMMA, j, i)
    return _tilde_exact(_SYMBOL_BY_NAME[x], j, i)


def A_pair(x: str, y: str, i: int, j: int) -> PolyExpr:
    """The invariant quadratic of the pair class, on the plain chart."""
    if (x, y) in FIRST_CLASS:
        return _pair_letter(x, 1, i) * _pair_letter(y, 1, j) \
            + _pair_letter(x, 2, i) * _pair_letter(y, 2, j)
    if (x, y) in SECOND_CLASS:
        return _pair_letter(x, 1, i) * _pair_letter(y, 2, j) \
            - _pair_letter(x, 2, i) * _pair_letter(y, 1, j)
    raise UnknownPairClass(f"({x}, {y}) is in neither pair class")


def tilde_A(x: str, y: str, i: int, j: int, order: int) -> ChartSeries:
    """A_pair evaluated on the chart series, truncated at the window."""
    if i + j > 2:
        raise ValueError("supported derivative orders have i + j <= 2")
    if order > MAX_PAIR_ORDER:
        raise TruncationTooDeep(
            f"window {order} exceeds the supported order {MAX_PAIR_ORDER}")
    if (x, y) in FIRST_CLASS:
        full = _pair_tilde(x, 1, i) * _pair_tilde(y, 1, j) \
            + _pair_tilde(x, 2, i) * _pair_tilde(y, 2, j)
    elif (x, y) in SECOND_CLASS:
        full = _pair_tilde(x, 1, i) * _pair_tilde(y, 2, j) \
            - _pair_tilde(x, 2, i) * _pair_tilde(y, 1, j)
    else:
        raise UnknownPairClass(f"({x}, {y}) is in neither pair class")
    return full.truncate(order)


def verify_alpha_identity(x: str, y: str, i: int, j: int) -> dict:
    """Check the chart transformation identity for one pair, modulo t^4."""
    from . import textio

    alpha = ALPHA_TABLE.get((x, y))
    if alpha is None:
        raise UnknownPairClass(f"({x}, {y}) has no table entry")
    lhs = tilde_A(x, y, i, j, MAX_PAIR_ORDER)
    plain = A_pair(x, y, i, j)
    rhs = ChartSeries({0: plain.scale(alpha),
                       2: lemma_in_lhs(plain).scale(alpha * _HALF)},
                      MAX_PAIR_ORDER)
    residual = lhs - rhs
    ok = not residual.coeffs
    return {
        "pair": f"({x},{y})",
        "i": i,
        "j": j,
        "alpha": str(alpha),
        "status": "pass" if ok else "fail",
        "residual": "0" if ok else repr(residual),
    }


def alpha_identity_report() -> list:
    """All ten pair classes and all derivative splits with i + j <= 2."""
    out = []
    for pair in FIRST_CLASS + SECOND_CLASS:
        for i in range(3):
            for j in range(3 - i):
                out.append(verify_alpha_identity(pair[0], pair[1], i, j))
    return out
