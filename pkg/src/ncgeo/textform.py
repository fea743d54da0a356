"""Canonical text rendering for scalars and algebra elements.

The emitted strings stay inside the expression grammar accepted by
:mod:`ncgeo.parsing` (rationals, ``i``, ``hbar``, ``^``, ``*``, ``inv(...)``)
and round-trip bit-exactly: parsing the canonical text of an element yields
an identical element.
"""

from __future__ import annotations

from .scalars import GaussRat, Poly, Scalar


def _frac_text(f) -> str:
    return str(f)


def _gauss_term(g: GaussRat) -> tuple[int, str]:
    """Render a Gaussian rational as (sign, absolute text).

    Mixed re/im values get parentheses and always report sign +1 so the
    caller never splits them.
    """
    if g.im == 0:
        sign = -1 if g.re < 0 else 1
        return sign, _frac_text(abs(g.re))
    if g.re == 0:
        sign = -1 if g.im < 0 else 1
        mag = abs(g.im)
        return sign, "i" if mag == 1 else f"{_frac_text(mag)}*i"
    im_op = "+" if g.im > 0 else "-"
    mag = abs(g.im)
    im_txt = "i" if mag == 1 else f"{_frac_text(mag)}*i"
    return 1, f"({_frac_text(g.re)} {im_op} {im_txt})"


def _poly_terms(p: Poly) -> list[tuple[int, str]]:
    """Signed text for each hbar-monomial, highest degree first."""
    out: list[tuple[int, str]] = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        sign, ctext = _gauss_term(c)
        if k == 0:
            out.append((sign, ctext))
            continue
        power = "hbar" if k == 1 else f"hbar^{k}"
        if ctext == "1":
            out.append((sign, power))
        else:
            out.append((sign, f"{ctext}*{power}"))
    return out


def _join_signed(terms: list[tuple[int, str]]) -> str:
    if not terms:
        return "0"
    sign, text = terms[0]
    parts = [f"-{text}" if sign < 0 else text]
    for sign, text in terms[1:]:
        parts.append(f" - {text}" if sign < 0 else f" + {text}")
    return "".join(parts)


def poly_text(p: Poly) -> str:
    return _join_signed(_poly_terms(p))


def scalar_text(s: Scalar) -> str:
    if s.den == (GaussRat(1),):
        return poly_text(s.num)
    return f"({poly_text(s.num)})*inv({poly_text(s.den)})"


def _scalar_product_prefix(s: Scalar) -> tuple[int, str]:
    """Signed text of a scalar usable as a ``*word`` prefix."""
    num_terms = _poly_terms(s.num)
    if s.den == (GaussRat(1),):
        if len(num_terms) == 1:
            return num_terms[0]
        return 1, f"({_join_signed(num_terms)})"
    den = poly_text(s.den)
    if len(num_terms) == 1:
        sign, text = num_terms[0]
        if text == "1":
            return sign, f"inv({den})"
        return sign, f"{text}*inv({den})"
    return 1, f"({_join_signed(num_terms)})*inv({den})"


def word_text(word: tuple[str, ...]) -> str:
    if not word:
        return "1"
    runs: list[tuple[str, int]] = []
    for sym in word:
        if runs and runs[-1][0] == sym:
            runs[-1] = (sym, runs[-1][1] + 1)
        else:
            runs.append((sym, 1))
    return "*".join(sym if n == 1 else f"{sym}^{n}" for sym, n in runs)


def element_text(sorted_terms: list[tuple[tuple[str, ...], Scalar]]) -> str:
    """Canonical text of an element given graded-lex-descending terms."""
    rendered: list[tuple[int, str]] = []
    for word, coeff in sorted_terms:
        if not word:
            if coeff.den == (GaussRat(1),):
                rendered.extend(_poly_terms(coeff.num))
            else:
                rendered.append(_scalar_product_prefix(coeff))
            continue
        wtext = word_text(word)
        if coeff.is_one():
            rendered.append((1, wtext))
            continue
        sign, prefix = _scalar_product_prefix(coeff)
        if prefix == "1":
            rendered.append((sign, wtext))
        else:
            rendered.append((sign, f"{prefix}*{wtext}"))
    return _join_signed(rendered)
