"""Truncated formal power series in x over polynomial coefficients.

A series of order N stores the coefficients of x^0 .. x^N exactly; all
arithmetic is the truncated ring arithmetic and never consults anything
beyond the stored order.  Generating functions defined by a quadratic (or
higher) functional equation are produced by :func:`solve_fixed_point`, which
iterates the equation and then *checks* the fixed-point property instead of
trusting convergence; no square root is ever taken.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import (
    BadParams,
    NonzeroConstantTerm,
    NotAContraction,
    NotAUnit,
    NotDivisibleByX,
    OrderMismatch,
)
from .polynomials import Polynomial, binomial

CoeffLike = Union[Polynomial, int, Fraction]


def _coeff(value: CoeffLike) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.const(value)


class TruncatedSeries:
    """Coefficients c0..cN of a formal power series in x, each a Polynomial."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[CoeffLike]):
        data = tuple(_coeff(c) for c in coeffs)
        if not data:
            raise ValueError("a truncated series needs at least the x^0 coefficient")
        object.__setattr__(self, "_coeffs", data)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[CoeffLike], order: int | None = None) -> "TruncatedSeries":
        data = list(coeffs)
        if order is not None:
            if len(data) > order + 1:
                data = data[: order + 1]
            data.extend([0] * (order + 1 - len(data)))
        return cls(data)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.constant(1, order)

    @classmethod
    def constant(cls, value: CoeffLike, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([value], order)

    @classmethod
    def x(cls, order: int) -> "TruncatedSeries":
        return cls.from_coeffs([0, 1], order)

    # -- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Polynomial, ...]:
        return self._coeffs

    def coefficient(self, n: int) -> Polynomial:
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} outside stored order {self.order}")
        return self._coeffs[n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderMismatch(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self._coeffs[: order + 1])

    def map_coeffs(self, fn: Callable[[Polynomial], CoeffLike]) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self._coeffs])

    def substitute_params(self, bindings: Mapping[str, CoeffLike]) -> "TruncatedSeries":
        """Substitute values for coefficient-level variables in every coefficient."""
        return self.map_coeffs(lambda c: c.substitute(bindings))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __str__(self) -> str:
        return " ; ".join(f"{n}: {c}" for n, c in enumerate(self._coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, [{self}])"

    def pretty(self) -> str:
        return "\n".join(f"{n}: {c}" for n, c in enumerate(self._coeffs))

    # -- arithmetic --------------------------------------------------------

    def _match(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other) -> "TruncatedSeries":
        if isinstance(other, (Polynomial, int, Fraction)):
            other = TruncatedSeries.constant(other, self.order)
        self._match(other)
        return TruncatedSeries([a + b for a, b in zip(self._coeffs, other._coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self._coeffs])

    def __sub__(self, other) -> "TruncatedSeries":
        if isinstance(other, (Polynomial, int, Fraction)):
            other = TruncatedSeries.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (Polynomial, int, Fraction)):
            return self.scale(other)
        self._match(other)
        n = self.order
        out = []
        for k in range(n + 1):
            acc = Polynomial.zero()
            for i in range(k + 1):
                a = self._coeffs[i]
                b = other._coeffs[k - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def scale(self, factor: CoeffLike) -> "TruncatedSeries":
        factor = _coeff(factor)
        return TruncatedSeries([c * factor for c in self._coeffs])

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series powers must be nonnegative integers")
        result = TruncatedSeries.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            if e > 1:
                base = base * base
            e >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self._coeffs[0]
        if not c0.is_constant or not c0:
            raise NotAUnit(f"constant term {c0} is not a nonzero rational")
        inv0 = Fraction(1) / c0.constant_value()
        out = [Polynomial.const(inv0)]
        for n in range(1, self.order + 1):
            acc = Polynomial.zero()
            for i in range(1, n + 1):
                ci = self._coeffs[i]
                if ci:
                    acc = acc + ci * out[n - i]
            out.append(acc * Polynomial.const(-inv0))
        return TruncatedSeries(out)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (Polynomial, int, Fraction)):
            return self.div_poly(other)
        self._match(other)
        return self * other.inverse()

    def shift_div_x(self, k: int = 1) -> "TruncatedSeries":
        """Divide by x^k exactly; the order drops to N - k."""
        if not 0 <= k <= self.order:
            raise NotDivisibleByX(f"cannot divide an order-{self.order} series by x^{k}")
        if any(self._coeffs[i] for i in range(k)):
            raise NotDivisibleByX("leading coefficients are not all zero")
        return TruncatedSeries(self._coeffs[k:])

    def div_poly(self, divisor: CoeffLike) -> "TruncatedSeries":
        """Divide every coefficient exactly by a scalar polynomial."""
        divisor = _coeff(divisor)
        return TruncatedSeries([c.exact_div(divisor) for c in self._coeffs])

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        coeffs = [Polynomial.from_json(c) for c in data["coeffs"]]
        if len(coeffs) != data["order"] + 1:
            raise ValueError("series JSON: coefficient count does not match order")
        return cls(coeffs)


def solve_fixed_point(
    phi: Callable[[TruncatedSeries], TruncatedSeries], order: int
) -> TruncatedSeries:
    """Unique fixed point of an x-adically contracting series map.

    The map is probed with two series that differ only in the top
    coefficient; a contraction must send them to equal truncations.  The
    iteration then runs exactly order+1 steps from the constant seed and the
    fixed-point property is asserted rather than assumed.
    """
    zero = TruncatedSeries.zero(order)
    bumped = TruncatedSeries.from_coeffs([0] * order + [1], order)
    if phi(zero) != phi(bumped):
        raise NotAContraction("map distinguishes series that agree below the top order")
    seed = phi(zero).coefficient(0)
    current = TruncatedSeries.constant(seed, order)
    for _ in range(order + 1):
        current = phi(current)
    if phi(current) != current:
        raise NotAContraction("iteration did not reach a fixed point")
    return current


def _delannoy_number(n: int) -> int:
    return sum(binomial(n, i) * binomial(n + i, i) for i in range(n + 1))


@lru_cache(maxsize=None)
def named_series(name: str, order: int, r: int | None = None) -> TruncatedSeries:
    """Generating functions used throughout, each from its defining relation.

    Symbolic parameters stay symbolic: motzkin_ab in a and b, the Schroder
    families in q, the Narayana family and chebyshev_u in t.  ``fuss``
    requires the arity parameter ``r >= 1``; ``delannoy`` is built from the
    central Delannoy binomial sum.
    """
    if order < 0:
        raise BadParams("order must be nonnegative")
    if name != "fuss" and r is not None:
        raise BadParams(f"series {name!r} takes no r parameter")
    x = TruncatedSeries.x(order)
    one = TruncatedSeries.one(order)
    a, b = Polynomial.var("a"), Polynomial.var("b")
    q, t = Polynomial.var("q"), Polynomial.var("t")
    if name == "catalan":
        return solve_fixed_point(lambda f: one + x * f * f, order)
    if name == "motzkin_ab":
        return solve_fixed_point(lambda f: one + (x * f).scale(a) + (x * x * f * f).scale(b), order)
    if name == "schroder_large":
        return solve_fixed_point(lambda f: one + (x * f).scale(q) + x * f * f, order)
    if name == "schroder_small":
        return solve_fixed_point(
            lambda f: one - (x * f).scale(q) + (x * f * f).scale(q + 1), order
        )
    if name == "narayana":
        return solve_fixed_point(lambda f: one + (x * f).scale(t - 1) + x * f * f, order)
    if name == "narayana_shift":
        # the series whose n-th coefficient is the (n+1)-st Narayana polynomial over t
        return solve_fixed_point(lambda f: (one + x * f) * (one + (x * f).scale(t)), order)
    if name == "chebyshev_u":
        return TruncatedSeries.from_coeffs([1, -2 * t, 1], order).inverse()
    if name == "fuss":
        if r is None or r < 1:
            raise BadParams("fuss needs an integer parameter r >= 1")
        return solve_fixed_point(lambda f: one + x * f ** (r + 1), order)
    if name == "delannoy":
        return TruncatedSeries([_delannoy_number(n) for n in range(order + 1)])
    raise BadParams(f"unknown series name {name!r}")


def _require_weight_series(*series: TruncatedSeries) -> None:
    first = series[0]
    for s in series:
        if s.order != first.order:
            raise OrderMismatch("weight series must share one order")
        if s.coefficient(0):
            raise NonzeroConstantTerm(f"weight series has constant term {s.coefficient(0)}")


def valley_series(
    alpha: TruncatedSeries, beta: TruncatedSeries, gamma: TruncatedSeries
) -> TruncatedSeries:
    """Master generating function 1 / (1 - gamma - alpha^2 beta / (1 - alpha))."""
    _require_weight_series(alpha, beta, gamma)
    one = TruncatedSeries.one(alpha.order)
    pyramids_above = (alpha * alpha * beta) * (one - alpha).inverse()
    return (one - gamma - pyramids_above).inverse()


def valley_series_ab(alpha: TruncatedSeries, beta: TruncatedSeries) -> TruncatedSeries:
    """Specialization gamma = alpha*beta: (1 - alpha) / (1 - alpha - alpha*beta)."""
    _require_weight_series(alpha, beta)
    one = TruncatedSeries.one(alpha.order)
    return (one - alpha) * (one - alpha - alpha * beta).inverse()
