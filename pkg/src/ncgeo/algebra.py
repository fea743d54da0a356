"""Finitely presented *-algebras with confluent normal-form rewriting.

An algebra is described by a :class:`Presentation`: a generator alphabet
with a fixed order, an involution table, and rewrite rules that replace a
leading word by a lower combination under the graded lexicographic order.
Every :class:`AlgebraElement` is kept in normal form, so equality of
elements is equality of their term dictionaries.

The shipped rule sets perform PBW-style normal ordering plus Casimir
elimination; confluence is not proved here but is exercised by the
randomized double-reduction tests and, for the Weyl algebra, certified
against a faithful polynomial representation.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import S_ONE, S_ZERO, Scalar, ScalarLike
from .textform import element_text

Word = tuple[str, ...]

EMPTY_WORD: Word = ()


class PresentationError(ValueError):
    """Raised for ill-formed presentations or mismatched element owners."""


class RewriteRule:
    """A directed replacement lhs -> sum of scalar-weighted words."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Word, rhs: dict[Word, Scalar]):
        self.lhs = lhs
        self.rhs = {w: c for w, c in rhs.items() if not c.is_zero()}

    def __repr__(self) -> str:
        return f"RewriteRule({'*'.join(self.lhs)} -> {len(self.rhs)} terms)"


class Presentation:
    """Generator alphabet, involution, rewrite rules and named derivations."""

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        involution: dict[str, str],
        rules: Iterable[tuple[Word, dict[Word, ScalarLike]]],
        hbar_value: Fraction | None = None,
    ):
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        self._order = {g: k for k, g in enumerate(self.generators)}
        for g, gs in involution.items():
            if g not in self._order or gs not in self._order:
                raise PresentationError(f"involution uses unknown generator {g}->{gs}")
        self.involution = dict(involution)
        if any(self.involution[self.involution[g]] != g for g in self.involution):
            raise PresentationError("involution table is not an involution")
        self.hbar_value = hbar_value
        self.rules: list[RewriteRule] = []
        self._rules_by_head: dict[str, list[RewriteRule]] = {}
        self._nf_cache: dict[Word, dict[Word, Scalar]] = {}
        self.derivations: dict[str, Derivation] = {}
        for lhs, rhs in rules:
            self._add_rule(lhs, rhs)
        self._check_involution_compatible()

    # -- construction helpers -------------------------------------------

    def _add_rule(self, lhs: Word, rhs: dict[Word, ScalarLike]) -> None:
        lhs = tuple(lhs)
        rhs_terms = {tuple(w): Scalar.coerce(c) for w, c in rhs.items()}
        key = self.word_key(lhs)
        for w in rhs_terms:
            for sym in w:
                if sym not in self._order:
                    raise PresentationError(f"unknown generator {sym!r} in rule")
            if self.word_key(w) >= key:
                raise PresentationError(
                    f"rule {'*'.join(lhs)} does not decrease the word order"
                )
        rule = RewriteRule(lhs, rhs_terms)
        self.rules.append(rule)
        self._rules_by_head.setdefault(lhs[0], []).append(rule)

    def _check_involution_compatible(self) -> None:
        for rule in self.rules:
            terms = {self.star_word(rule.lhs): S_ONE}
            for w, c in rule.rhs.items():
                sw = self.star_word(w)
                terms[sw] = terms.get(sw, S_ZERO) - c.conjugate()
            if self.reduce_terms(terms):
                raise PresentationError(
                    "involution is not compatible with the rewrite rules"
                )

    # -- word order and reduction ----------------------------------------

    def word_key(self, word: Word):
        """Graded lexicographic key; rewriting strictly decreases it."""
        return (len(word), tuple(self._order[s] for s in word))

    def star_word(self, word: Word) -> Word:
        inv = self.involution
        return tuple(inv[s] for s in reversed(word))

    def _find_redex(self, word: Word):
        by_head = self._rules_by_head
        for pos, sym in enumerate(word):
            for rule in by_head.get(sym, ()):
                n = len(rule.lhs)
                if word[pos : pos + n] == rule.lhs:
                    return pos, rule
        return None

    def all_redexes(self, word: Word) -> list[tuple[int, RewriteRule]]:
        out = []
        for pos in range(len(word)):
            for rule in self._rules_by_head.get(word[pos], ()):
                n = len(rule.lhs)
                if word[pos : pos + n] == rule.lhs:
                    out.append((pos, rule))
        return out

    def reduce_word(self, word: Word) -> dict[Word, Scalar]:
        """Normal form of a single word as a word->scalar dictionary."""
        cache = self._nf_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        stack = [word]
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            redex = self._find_redex(w)
            if redex is None:
                cache[w] = {w: S_ONE}
                stack.pop()
                continue
            pos, rule = redex
            pre, suf = w[: pos], w[pos + len(rule.lhs) :]
            pending = [pre + rw + suf for rw in rule.rhs if pre + rw + suf not in cache]
            if pending:
                stack.extend(pending)
                continue
            acc: dict[Word, Scalar] = {}
            for rw, rc in rule.rhs.items():
                for nw, nc in cache[pre + rw + suf].items():
                    prev = acc.get(nw)
                    acc[nw] = rc * nc if prev is None else prev + rc * nc
            cache[w] = {k: v for k, v in acc.items() if not v.is_zero()}
            stack.pop()
        return cache[word]

    def reduce_terms(self, terms: dict[Word, Scalar]) -> dict[Word, Scalar]:
        out: dict[Word, Scalar] = {}
        for word, coeff in terms.items():
            if coeff.is_zero():
                continue
            for nw, nc in self.reduce_word(word).items():
                prev = out.get(nw)
                val = coeff * nc if prev is None else prev + coeff * nc
                if val.is_zero():
                    out.pop(nw, None)
                else:
                    out[nw] = val
        return out

    def reduce_terms_random_order(
        self, terms: dict[Word, Scalar], rng: random.Random
    ) -> dict[Word, Scalar]:
        """Fully reduce, choosing the applied redex at random at each step.

        Used by the confluence witness tests; agreement with
        :meth:`reduce_terms` on random input is evidence that the rule set
        is confluent.
        """
        out: dict[Word, Scalar] = {}
        work = [(w, c) for w, c in terms.items() if not c.is_zero()]
        while work:
            word, coeff = work.pop()
            redexes = self.all_redexes(word)
            if not redexes:
                prev = out.get(word)
                val = coeff if prev is None else prev + coeff
                if val.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = val
                continue
            pos, rule = redexes[rng.randrange(len(redexes))]
            pre, suf = word[:pos], word[pos + len(rule.lhs) :]
            for rw, rc in rule.rhs.items():
                work.append((pre + rw + suf, coeff * rc))
        return out

    # -- element constructors ---------------------------------------------

    def element(self, terms: dict[Word, ScalarLike]) -> "AlgebraElement":
        raw = {tuple(w): Scalar.coerce(c) for w, c in terms.items()}
        for w in raw:
            for sym in w:
                if sym not in self._order:
                    raise PresentationError(f"unknown generator {sym!r}")
        return AlgebraElement(self, self.reduce_terms(raw))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {EMPTY_WORD: S_ONE})

    def scalar(self, value: ScalarLike) -> "AlgebraElement":
        s = Scalar.coerce(value)
        return AlgebraElement(self, {} if s.is_zero() else {EMPTY_WORD: s})

    def gen(self, name: str) -> "AlgebraElement":
        if name not in self._order:
            raise PresentationError(f"unknown generator {name!r}")
        return AlgebraElement(self, self.reduce_terms({(name,): S_ONE}))

    def gens(self) -> tuple["AlgebraElement", ...]:
        return tuple(self.gen(g) for g in self.generators)

    def register_derivation(self, derivation: "Derivation") -> "Derivation":
        self.derivations[derivation.name] = derivation
        return derivation

    def __repr__(self) -> str:
        return f"Presentation({self.name!r}, gens={','.join(self.generators)})"


class AlgebraElement:
    """Finite sum of scalar-weighted normal words over one presentation."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, reduced_terms: dict[Word, Scalar]):
        self.presentation = presentation
        self.terms = reduced_terms

    # -- ring operations ----------------------------------------------------

    def _check_owner(self, other: "AlgebraElement") -> None:
        if self.presentation is not other.presentation:
            raise PresentationError(
                f"elements of {self.presentation.name} and "
                f"{other.presentation.name} cannot be combined"
            )

    def __add__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            other = self.presentation.scalar(other)
        self._check_owner(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            prev = out.get(w)
            val = c if prev is None else prev + c
            if val.is_zero():
                out.pop(w, None)
            else:
                out[w] = val
        return AlgebraElement(self.presentation, out)

    __radd__ = __add__

    def __sub__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            other = self.presentation.scalar(other)
        return self + (-other)

    def __rsub__(self, other) -> "AlgebraElement":
        return self.presentation.scalar(other) + (-self)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(
            self.presentation, {w: -c for w, c in self.terms.items()}
        )

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check_owner(other)
        raw: dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                prev = raw.get(w)
                val = c1 * c2 if prev is None else prev + c1 * c2
                raw[w] = val
        return AlgebraElement(
            self.presentation, self.presentation.reduce_terms(raw)
        )

    def __rmul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):  # handled by __mul__
            return NotImplemented
        return self.scale(other)

    def scale(self, value: ScalarLike) -> "AlgebraElement":
        s = Scalar.coerce(value)
        if s.is_zero():
            return AlgebraElement(self.presentation, {})
        return AlgebraElement(
            self.presentation, {w: c * s for w, c in self.terms.items()}
        )

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            raise ValueError("negative powers are not defined in the algebra")
        out = self.presentation.one()
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> "AlgebraElement":
        """The involution x -> x*: antilinear and antimultiplicative."""
        pres = self.presentation
        raw: dict[Word, Scalar] = {}
        for w, c in self.terms.items():
            sw = pres.star_word(w)
            prev = raw.get(sw)
            cc = c.conjugate()
            raw[sw] = cc if prev is None else prev + cc
        return AlgebraElement(pres, pres.reduce_terms(raw))

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_hermitian(self) -> bool:
        return self == self.adjoint()

    def is_scalar_multiple_of_one(self) -> bool:
        return not self.terms or set(self.terms) == {EMPTY_WORD}

    def scalar_part(self) -> Scalar:
        return self.terms.get(EMPTY_WORD, S_ZERO)

    def coefficient(self, word: Word) -> Scalar:
        return self.terms.get(tuple(word), S_ZERO)

    def degree(self) -> int:
        """Maximal word length; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def sorted_terms(self) -> list[tuple[Word, Scalar]]:
        key = self.presentation.word_key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.presentation.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.presentation is other.presentation and self.terms == other.terms

    __hash__ = None  # mutable-ish container semantics; use canonical_text as key

    def canonical_text(self) -> str:
        return element_text(self.sorted_terms())

    def __repr__(self) -> str:
        return self.canonical_text()


class Derivation:
    """Inner derivation f -> prefactor * (g f - f g), possibly named.

    The adjoint derivation d*(f) = (d(f*))* is again inner and is returned
    by :meth:`adjoint`; a derivation is hermitian when d* = d.
    """

    __slots__ = ("presentation", "prefactor", "inner", "name")

    def __init__(
        self,
        presentation: Presentation,
        prefactor: ScalarLike,
        inner: AlgebraElement,
        name: str = "",
    ):
        if inner.presentation is not presentation:
            raise PresentationError("inner element belongs to another presentation")
        self.presentation = presentation
        self.prefactor = Scalar.coerce(prefactor)
        self.inner = inner
        self.name = name

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.presentation is not self.presentation:
            raise PresentationError("derivation applied across presentations")
        return (self.inner * x - x * self.inner).scale(self.prefactor)

    def adjoint(self) -> "Derivation":
        return Derivation(
            self.presentation,
            -self.prefactor.conjugate(),
            self.inner.adjoint(),
            name=f"{self.name}*" if self.name else "",
        )

    def is_hermitian(self) -> bool:
        adj = self.adjoint()
        return all(
            adj(self.presentation.gen(g)) == self(self.presentation.gen(g))
            for g in self.presentation.generators
        )

    def same_action(self, other: "Derivation") -> bool:
        """Agreement on all generators (hence everywhere, by Leibniz)."""
        return all(
            self(self.presentation.gen(g)) == other(self.presentation.gen(g))
            for g in self.presentation.generators
        )

    def __repr__(self) -> str:
        return f"Derivation({self.name or '<anonymous>'})"


# -- spec-level operation names ------------------------------------------------


def normal_form(
    raw_terms: dict[Word, ScalarLike], presentation: Presentation
) -> AlgebraElement:
    """Normal form of a raw scalar-weighted word sum."""
    return presentation.element(raw_terms)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def involution(x: AlgebraElement) -> AlgebraElement:
    return x.adjoint()


def apply_derivation(d: Derivation, x: AlgebraElement) -> AlgebraElement:
    return d(x)


def equals(x: AlgebraElement, y: AlgebraElement) -> bool:
    if x.presentation is not y.presentation:
        raise PresentationError("cannot compare elements of different presentations")
    return x == y


def random_element(
    presentation: Presentation,
    rng: random.Random,
    max_degree: int = 4,
    max_terms: int = 4,
    coeff_bound: int = 3,
    allow_i: bool = True,
    allow_hbar: bool = False,
) -> AlgebraElement:
    """Random element with small integer (optionally i- or hbar-) weights."""
    raw: dict[Word, Scalar] = {}
    gens = presentation.generators
    for _ in range(rng.randint(1, max_terms)):
        length = rng.randint(0, max_degree)
        word = tuple(rng.choice(gens) for _ in range(length))
        re = rng.randint(-coeff_bound, coeff_bound)
        im = rng.randint(-coeff_bound, coeff_bound) if allow_i else 0
        c = Scalar.from_rational(re, im)
        if allow_hbar and rng.random() < 0.3:
            c = c * Scalar.hbar(rng.randint(1, 2))
        prev = raw.get(word)
        raw[word] = c if prev is None else prev + c
    return AlgebraElement(presentation, presentation.reduce_terms(raw))
