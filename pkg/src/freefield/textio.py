"""Plain-text formats for ring elements, fields and standard words.

Grammar (whitespace separates factors, ``*`` is also accepted):

  poly      := ['-'] term (('+'|'-') term)*
  term      := (rational '*'?)? factor*
  factor    := ['~'] name '^' index ['_' der]       e.g.  beta^1_2,  ~c^2
  rational  := int ['/' int]

  field     := ['-'] fterm (('+'|'-') fterm)*
  fterm     := (rational '*'?)? (word | '1')
  word      := ':' letter+ ':'                      e.g.  :b^1 d(gamma^1):
  letter    := 'd(' letter ')' | ['~'] name '^' index

  stdword   := gen (' ' gen)*
  gen       := 'A[' label ']' ['^(' der ')']        label in
               {Bb, Bc, Bg, bc, gb, gc, bb, cc}     (B = beta, g = d gamma)

Printing always emits canonical order, and parse(print(x)) == x exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .superpoly import GenVar, PolyExpr, SYMBOL_NAMES, SYMBOL_RANK, PLAIN
from .vertex import FieldExpr


class ParseError(ValueError):
    pass


_RAT_RE = re.compile(r"^\d+(?:/\d+)?$")
_GEN_RE = re.compile(r"^(~?)(beta|gamma|b|c)\^(\d+)(?:_(\d+))?$")


def genvar_to_text(x: GenVar, subscript_der: bool = True) -> str:
    base = ("~" if x.chart else "") + SYMBOL_NAMES[x.symbol] + f"^{x.index}"
    if subscript_der:
        return base + (f"_{x.der}" if x.der else "")
    return "d(" * x.der + base + ")" * x.der


def genvar_from_text(tok: str) -> GenVar:
    der = 0
    while tok.startswith("d("):
        if not tok.endswith(")"):
            raise ParseError(f"unbalanced d( ) in {tok!r}")
        tok = tok[2:-1]
        der += 1
    m = _GEN_RE.match(tok)
    if not m:
        raise ParseError(f"not a generator: {tok!r}")
    chart = 1 if m.group(1) else PLAIN
    base_der = int(m.group(4)) if m.group(4) else 0
    return GenVar(chart, SYMBOL_RANK[m.group(2)], int(m.group(3)),
                  base_der + der)


def _split_terms(text: str):
    """Split at top-level + and -, yielding (sign, chunk)."""
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    terms = []
    sign, buf, depth = 1, [], 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and buf and "".join(buf).strip():
            terms.append((sign, "".join(buf).strip()))
            sign, buf = (1 if ch == "+" else -1), []
        elif depth == 0 and ch in "+-" and not "".join(buf).strip():
            sign *= 1 if ch == "+" else -1
            buf = []
        else:
            buf.append(ch)
    last = "".join(buf).strip()
    if not last:
        raise ParseError(f"dangling sign in {text!r}")
    terms.append((sign, last))
    return terms


def _coeff_prefix(c: Fraction) -> str:
    return "" if c == 1 else f"{c}*"


def poly_to_text(p: PolyExpr) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for word, coeff in sorted(p.terms.items()):
        body = " ".join(genvar_to_text(x) for x in word) or "1"
        mag = -coeff if coeff < 0 else coeff
        piece = _coeff_prefix(mag) + body if word else str(mag)
        parts.append(("- " if coeff < 0 else "+ ") + piece)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def poly_from_text(text: str) -> PolyExpr:
    total = PolyExpr.zero()
    for sign, chunk in _split_terms(text):
        coeff = Fraction(sign)
        letters = []
        for tok in chunk.replace("*", " ").split():
            if _RAT_RE.match(tok):
                coeff *= Fraction(tok)
            else:
                letters.append(genvar_from_text(tok))
        total = total + PolyExpr.monomial(letters, coeff)
    return total


def field_to_text(f: FieldExpr) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for word, coeff in sorted(f.terms.items()):
        if word:
            body = ":" + " ".join(genvar_to_text(x, subscript_der=False)
                                  for x in word) + ":"
        else:
            body = "1"
        mag = -coeff if coeff < 0 else coeff
        piece = _coeff_prefix(mag) + body if word else str(mag)
        parts.append(("- " if coeff < 0 else "+ ") + piece)
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def field_from_text(text: str) -> FieldExpr:
    total = FieldExpr.zero()
    for sign, chunk in _split_terms(text):
        coeff = Fraction(sign)
        m = re.search(r":([^:]*):", chunk)
        letters = []
        if m:
            inside = m.group(1).strip()
            if not inside:
                raise ParseError("empty word : :")
            letters = [genvar_from_text(tok) for tok in inside.split()]
            chunk = chunk[:m.start()] + chunk[m.end():]
        for tok in chunk.replace("*", " ").split():
            if _RAT_RE.match(tok):
                coeff *= Fraction(tok)
            else:
                raise ParseError(f"unexpected token {tok!r}")
        total = total + FieldExpr.from_word(letters, coeff)
    return total


_STD_RE = re.compile(r"^A\[(Bb|Bc|Bg|bc|gb|gc|bb|cc)\](?:\^\((\d+)\))?$")


def stdword_to_text(word) -> str:
    from .weylring import WeylGen

    toks = []
    for g in word:
        toks.append(f"A[{g.label}]" + (f"^({g.der})" if g.der else ""))
    return " ".join(toks) if toks else "1"


def stdword_from_text(text: str):
    from .weylring import WeylGen

    text = text.strip()
    if text == "1":
        return ()
    out = []
    for tok in text.split():
        m = _STD_RE.match(tok)
        if not m:
            raise ParseError(f"not a quadratic generator: {tok!r}")
        out.append(WeylGen(m.group(1), int(m.group(2) or 0)))
    return tuple(out)
