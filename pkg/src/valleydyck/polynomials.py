"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a finite map from monomials to nonzero ``Fraction``
coefficients.  A monomial is a tuple of ``(variable, exponent)`` pairs with
positive integer exponents, sorted by variable.  The zero polynomial has an
empty term map, and two polynomials are equal exactly when their term maps
are equal, so identity testing is fully reliable.

Variables are plain names such as ``a``, ``q``, ``t`` or members of the
indexed families ``alpha1``, ``beta3``, ``gamma2``.  Two distinguished
*formal inverse* variables exist so that weight tables whose entries are
honest rational functions of a single quantity stay inside one ring:

* ``a_inv`` satisfies ``a * a_inv = 1``;
* ``t1_inv`` satisfies ``(t + 1) * t1_inv = 1``.

Canonicalization rewrites any monomial containing both a base variable and
its inverse, so products such as ``a**3 * a_inv`` reduce to ``a**2``
automatically and never leak out of arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Union

from .errors import NotDivisible

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]
PolyLike = Union["Polynomial", int, Fraction]

# Formal inverse variables: name -> (base variable, shift); the pair means
# name = 1 / (base + shift), rewritten via base * name = 1 - shift * name.
INVERSE_VARS: dict[str, tuple[str, Fraction]] = {
    "a_inv": ("a", Fraction(0)),
    "t1_inv": ("t", Fraction(1)),
}

_NAME_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*?)(\d*)$")


def var_key(name: str) -> tuple[str, int]:
    """Sort key that orders indexed variables numerically (alpha2 < alpha10)."""
    m = _NAME_RE.match(name)
    if m is None:
        raise ValueError(f"bad variable name: {name!r}")
    prefix, digits = m.group(1), m.group(2)
    return (prefix, int(digits) if digits else -1)


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _mono_sort_key(mono: Monomial):
    # Graded lexicographic, encoded so that plain ascending sort puts the
    # leading monomial first: higher total degree first, then earlier
    # variables with larger exponents first.
    return (-_mono_degree(mono), tuple((var_key(v), -e) for v, e in mono))


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    merged = dict(m1)
    for v, e in m2:
        merged[v] = merged.get(v, 0) + e
    return _freeze(merged)


def _freeze(mono: Mapping[str, int]) -> Monomial:
    return tuple(sorted(((v, e) for v, e in mono.items() if e), key=lambda it: var_key(it[0])))


def _needs_reduction(raw: dict[Monomial, Fraction]) -> bool:
    for mono in raw:
        names = {v for v, _ in mono}
        for inv, (base, _) in INVERSE_VARS.items():
            if inv in names and base in names:
                return True
    return False


def _reduce_inverses(raw: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    """Apply the base*inverse rewrite rules until no monomial holds both."""
    if not _needs_reduction(raw):
        return raw
    out: dict[Monomial, Fraction] = {}
    stack: list[tuple[dict[str, int], Fraction]] = [(dict(m), c) for m, c in raw.items()]
    while stack:
        mono, coeff = stack.pop()
        if not coeff:
            continue
        rule = None
        for inv, (base, shift) in INVERSE_VARS.items():
            if mono.get(inv, 0) > 0 and mono.get(base, 0) > 0:
                rule = (inv, base, shift)
                break
        if rule is None:
            key = _freeze(mono)
            out[key] = out.get(key, Fraction(0)) + coeff
            continue
        inv, base, shift = rule
        lowered = dict(mono)
        lowered[base] -= 1
        cancelled = dict(lowered)
        cancelled[inv] -= 1
        stack.append((cancelled, coeff))
        if shift:
            stack.append((lowered, -shift * coeff))
    return {m: c for m, c in out.items() if c}


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        if terms is None:
            object.__setattr__(self, "_terms", {})
            return
        raw = {m: Fraction(c) for m, c in terms.items() if c}
        raw = _reduce_inverses(raw)
        object.__setattr__(self, "_terms", raw)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.const(1)

    @classmethod
    def const(cls, value: Scalar) -> "Polynomial":
        value = Fraction(value)
        return cls({(): value} if value else {})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        var_key(name)  # validates
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, coeff: Scalar, powers: Mapping[str, int]) -> "Polynomial":
        for v, e in powers.items():
            var_key(v)
            if e < 0:
                raise ValueError("monomial exponents must be nonnegative")
        return cls({_freeze(powers): Fraction(coeff)})

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(value: PolyLike) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.const(value)
        raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")

    def __add__(self, other: PolyLike) -> "Polynomial":
        other = self._coerce(other)
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return self._coerce(other) + (-self)

    def __mul__(self, other: PolyLike) -> "Polynomial":
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return Polynomial()
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- structure ---------------------------------------------------------

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms[()]

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(_mono_degree(m) for m in self._terms)

    def variables(self) -> tuple[str, ...]:
        seen = {v for m in self._terms for v, _ in m}
        return tuple(sorted(seen, key=var_key))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: _mono_sort_key(item[0]))

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        mono = min(self._terms, key=_mono_sort_key)
        return mono, self._terms[mono]

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "Polynomial":
        """Simultaneously substitute polynomials for variables.

        Unbound variables stay symbolic; binding every variable to a rational
        yields a constant polynomial.  Binding the base of a formal inverse
        variable also binds the inverse to the reciprocal value, so the
        defining relation survives every substitution.
        """
        bound = {v: self._coerce(val) for v, val in bindings.items()}
        present = {v for m in self._terms for v, _ in m}
        for inv, (base, shift) in INVERSE_VARS.items():
            if inv in present and inv not in bound and base in bound:
                value = bound[base] + Polynomial.const(shift)
                if not value.is_constant or not value:
                    raise ValueError(
                        f"binding {base} that way leaves no rational value for {inv}"
                    )
                bound[inv] = Polynomial.const(Fraction(1) / value.constant_value())
        total = Polynomial()
        for mono, coeff in self._terms.items():
            piece = Polynomial.const(coeff)
            residual: dict[str, int] = {}
            for v, e in mono:
                if v in bound:
                    piece = piece * (bound[v] ** e)
                else:
                    residual[v] = e
            if residual:
                piece = piece * Polynomial({_freeze(residual): Fraction(1)})
            total = total + piece
        return total

    def evaluate(self, bindings: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at rational values for every variable of the polynomial."""
        return self.substitute(bindings).constant_value()

    # -- exact division ----------------------------------------------------

    def exact_div(self, divisor: PolyLike) -> "Polynomial":
        """Return ``q`` with ``q * divisor == self``; raise NotDivisible otherwise."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return Polynomial()
        lead_mono, lead_coeff = divisor.leading_term()
        lead_exp = dict(lead_mono)
        remainder = dict(self._terms)
        quotient: dict[Monomial, Fraction] = {}
        while remainder:
            mono = min(remainder, key=_mono_sort_key)
            coeff = remainder[mono]
            exps = dict(mono)
            for v, e in lead_exp.items():
                if exps.get(v, 0) < e:
                    raise NotDivisible(f"({self}) is not divisible by ({divisor})")
                exps[v] = exps.get(v, 0) - e
            q_mono = _freeze(exps)
            q_coeff = coeff / lead_coeff
            quotient[q_mono] = quotient.get(q_mono, Fraction(0)) + q_coeff
            piece = Polynomial({q_mono: q_coeff}) * divisor
            for m, c in piece._terms.items():
                new = remainder.get(m, Fraction(0)) - c
                if new:
                    remainder[m] = new
                else:
                    remainder.pop(m, None)
        result = Polynomial(quotient)
        if result * divisor != self:
            raise NotDivisible(f"({self}) is not divisible by ({divisor})")
        return result

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for mono, coeff in self.sorted_terms():
            factors = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = factors
            else:
                body = f"{mag}*{factors}"
            chunks.append(("- " if coeff < 0 else "+ ") + body)
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(coeff), "monomial": {v: e for v, e in mono}}
            for mono, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for entry in data:
            mono = _freeze(dict(entry["monomial"]))
            terms[mono] = terms.get(mono, Fraction(0)) + Fraction(entry["coeff"])
        return cls(terms)


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient via the falling factorial.

    Defined for any integer ``n``: zero when ``k < 0``, otherwise
    ``n (n-1) ... (n-k+1) / k!``, which is always an integer.
    """
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    return num // factorial(k)
