"""The eight distinguished fields of the rank-2 system and their algebra.

  Q = :beta1 c1: + :beta2 c2:          L = sum_i :beta_i d gamma_i: - :b_i d c_i:
  J = -:b1 c1: - :b2 c2:               G = :b1 d gamma1: + :b2 d gamma2:
  B = :beta1 b2: - :beta2 b1:          D = :b1 b2:
  C = :d gamma1 c2: - :d gamma2 c1:    E = :c1 c2:

C and B descend from the others (C = G circ_0 E, B = Q circ_0 D), and with
the Virasoro vector shortened to L' = L - (1/2) dJ the eight fields close
into the N=4 superconformal algebra at central charge 6.  The closure
certificate is exact: every nonnegative product of two sections is solved
against the standard-word basis of its weight space over Q.

``gr2_symbol`` sends a field to its top component in the double filtration
(by the number of beta and b letters, then by beta letters alone), read as a
supercommutative polynomial; the eight sections map onto the eight quadratic
generators, with a sign on J and C.  ``basis_element`` lifts a standard word
to the right-nested Wick product of the matching sections; the lift carries
the compensating signs on the J and C letters so that the symbol of the lift
is exactly the expanded standard word.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .superpoly import B as B_SYM
from .superpoly import BETA, C as C_SYM, GAMMA, PolyExpr
from .vertex import (
    FieldExpr, FockAlgebra, LambdaPolynomial, circle, conformal_weight,
    generator, lambda_bracket, topological_fields, translate, wick,
)
from .weylring import enumerate_standard, expand_word, is_standard, weyl

SECTION_NAMES = ("L", "J", "Q", "G", "B", "C", "D", "E")

_F0 = Fraction(0)


class WrongRank(ValueError):
    """The section algebra lives at rank N = 2 only."""


class NotStandard(ValueError):
    pass


class ClosureFailure(RuntimeError):
    """A product of sections escaped the standard-word span."""


_SECTIONS_CACHE: Dict[str, FieldExpr] = {}


def sections(algebra: Optional[FockAlgebra] = None) -> Dict[str, FieldExpr]:
    """All eight fields; requires the rank-2 context."""
    if algebra is not None and algebra.npairs != 2:
        raise WrongRank(f"sections need N = 2, got N = {algebra.npairs}")
    if not _SECTIONS_CACHE:
        out = topological_fields(2)
        b1, b2 = generator(B_SYM, 1), generator(B_SYM, 2)
        c1, c2 = generator(C_SYM, 1), generator(C_SYM, 2)
        beta1, beta2 = generator(BETA, 1), generator(BETA, 2)
        dg1 = translate(generator(GAMMA, 1))
        dg2 = translate(generator(GAMMA, 2))
        out["B"] = wick(beta1, b2) - wick(beta2, b1)
        out["D"] = wick(b1, b2)
        out["C"] = wick(dg1, c2) - wick(dg2, c1)
        out["E"] = wick(c1, c2)
        _SECTIONS_CACHE.update(out)
    return dict(_SECTIONS_CACHE)


def section(name: str, algebra: Optional[FockAlgebra] = None) -> FieldExpr:
    if name not in SECTION_NAMES:
        raise KeyError(f"unknown section {name!r}")
    return sections(algebra)[name]


def shifted_virasoro() -> FieldExpr:
    """L' = L - (1/2) dJ, the genuine Virasoro vector (c = 6)."""
    s = sections()
    return s["L"] - translate(s["J"]).scale(Fraction(1, 2))


def section_weight(name: str) -> int:
    """Integer conformal weight under the unshifted L grading."""
    return section(name).weight()


def _check(relation: str, lhs: FieldExpr, rhs: FieldExpr) -> dict:
    from . import textio

    residual = lhs - rhs
    return {
        "relation": relation,
        "status": "pass" if residual.is_zero() else "fail",
        "lhs": textio.field_to_text(lhs),
        "rhs": textio.field_to_text(rhs),
        "witness": textio.field_to_text(residual),
    }


def verify_descent_relations() -> List[dict]:
    """C = G circ_0 E and B = Q circ_0 D, exactly."""
    s = sections()
    return [
        _check("G circ_0 E = C", circle(s["G"], 0, s["E"]), s["C"]),
        _check("Q circ_0 D = B", circle(s["Q"], 0, s["D"]), s["B"]),
    ]


def gr2_symbol(a: FieldExpr) -> PolyExpr:
    """Top component of the double filtration, as a polynomial.

    Keeps the words maximizing (number of beta and b letters, number of
    beta letters) and drops every Wick correction below them.
    """
    if a.is_zero():
        return PolyExpr.zero()

    def bidegree(word):
        n = sum(1 for x in word if x.symbol in (BETA, B_SYM))
        s = sum(1 for x in word if x.symbol == BETA)
        return (n, s)

    top = max(bidegree(w) for w in a.terms)
    return PolyExpr({w: c for w, c in a.terms.items() if bidegree(w) == top},
                    _canonical=True)


def expected_symbols() -> Dict[str, PolyExpr]:
    """The quadratic generators each section maps onto, with signs."""
    return {
        "L": weyl("Bg"), "Q": weyl("Bc"), "J": -weyl("bc"), "G": weyl("gb"),
        "B": weyl("Bb"), "D": weyl("bb"), "C": -weyl("gc"), "E": weyl("cc"),
    }


# standard-word letter -> (section, sign); the signs on bc and gc make
# gr2_symbol(basis_element(s)) equal expand(s) on the nose.
ALPHA_LIFT = {
    "bb": ("D", 1), "Bb": ("B", 1), "Bg": ("L", 1), "Bc": ("Q", 1),
    "bc": ("J", -1), "gb": ("G", 1), "gc": ("C", -1), "cc": ("E", 1),
}


def basis_element(word) -> FieldExpr:
    """Right-nested Wick product of the lifted generators of a standard word."""
    word = tuple(word)
    if not is_standard(word):
        raise NotStandard(f"{word} is not standard")
    out = FieldExpr.vacuum()
    for g in reversed(word):
        name, sign = ALPHA_LIFT[g.label]
        lifted = translate(section(name), g.der).scale(sign)
        out = wick(lifted, out)
    return out


_BASIS_CACHE: Dict[int, List[Tuple[tuple, FieldExpr]]] = {}


def standard_field_basis(w: int) -> List[Tuple[tuple, FieldExpr]]:
    if w not in _BASIS_CACHE:
        _BASIS_CACHE[w] = [(s, basis_element(s)) for s in enumerate_standard(w)]
    return _BASIS_CACHE[w]


def solve_in_span(target: FieldExpr, basis: List[FieldExpr]):
    """Exact coordinates of target in the given family, or None."""
    words = sorted(set(target.terms).union(*[set(b.terms) for b in basis])
                   if basis else set(target.terms))
    rows = [[b.terms.get(word, _F0) for b in basis] for word in words]
    rhs = [target.terms.get(word, _F0) for word in words]
    return linalg.solve(rows, rhs)


def weight_space_report(w: int) -> dict:
    """Standard words of weight w, their lifts, and exact independence."""
    if w < 0:
        return {"weight": w, "count": 0, "independent": True, "words": []}
    from . import textio

    basis = standard_field_basis(w)
    words = sorted({word for _, f in basis for word in f.terms})
    index = {word: i for i, word in enumerate(words)}
    rows = []
    for _, f in basis:
        row = [_F0] * len(words)
        for word, c in f.terms.items():
            row[index[word]] = c
        rows.append(row)
    rk = linalg.rank(rows) if rows else 0
    return {
        "weight": w,
        "count": len(basis),
        "independent": rk == len(basis),
        "words": [textio.stdword_to_text(s) for s, _ in basis],
    }


def n4_ope_table() -> Dict[Tuple[str, str], LambdaPolynomial]:
    """Full lambda bracket for every ordered pair of the eight sections."""
    s = sections()
    return {(a, b): lambda_bracket(s[a], s[b])
            for a in SECTION_NAMES for b in SECTION_NAMES}


def certify_closure(max_weight: int = 3) -> List[dict]:
    """Exact span membership of every nonnegative product of two sections.

    Every entry of the pair table is solved against the standard-word basis
    of its weight; ClosureFailure means the strong-generation property broke.
    """
    from . import textio

    table = n4_ope_table()
    weights = {name: section_weight(name) for name in SECTION_NAMES}
    results = []
    for (a, b), bracket in sorted(table.items()):
        for n, entry in sorted(bracket.items()):
            w = weights[a] + weights[b] - n - 1
            if w > max_weight:
                continue
            if not entry.is_weight_homogeneous(w):
                raise ClosureFailure(
                    f"{a} circ_{n} {b} is not weight homogeneous of {w}")
            basis = standard_field_basis(w)
            combo = solve_in_span(entry, [f for _, f in basis])
            if combo is None:
                raise ClosureFailure(f"{a} circ_{n} {b} escapes the span")
            witness = " + ".join(
                f"({c})*[{textio.stdword_to_text(word)}]"
                for (word, _), c in zip(basis, combo) if c) or "0"
            results.append({
                "relation": f"{a} circ_{n} {b} in span(weight {w})",
                "status": "pass",
                "lhs": textio.field_to_text(entry),
                "rhs": witness,
                "witness": witness,
            })
    return results
