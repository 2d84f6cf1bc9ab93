"""Valley weight tables, brute-force weight sums, and the specialization registry.

A weight table stores, up to a chosen order, the three weight sequences of
the valley system: ``alpha[k]`` for an inner maximal pyramid of height k,
``beta[k]`` for the ascent of a valley-bearing primitive factor whose
valleys sit at level k, and ``gamma[k]`` for a maximal pyramid of height k
on the axis.  The weight of a decomposed path is the product over its parts,
and weight sums over all structures of a given size are computed by
exhaustive enumeration so they can be checked against generating-function
coefficients computed independently.

Registry entries build their weight series from each specialization's
defining generating functions; two of them need the formal inverse variables
from :mod:`valleydyck.polynomials` (``a_inv`` for the Motzkin table,
``t1_inv`` for the shifted Narayana table) because a lone ``beta[k]`` is a
genuine rational function there even though every full path weight is a
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Union

from .errors import BadParams, FamilyViolation, NotValleyUniform, OrderExceeded
from .paths import (
    Path,
    Pyramid,
    ValleyStructure,
    analyze,
    enumerate_family,
    primitive_factors,
    valley_structures,
)
from .polynomials import Polynomial
from .series import TruncatedSeries, _require_weight_series, named_series

ParamValue = Union[int, Fraction, Polynomial, str]


@dataclass(frozen=True)
class WeightSpec:
    """The three 1-indexed weight sequences, each stored up to one order."""

    alpha: tuple[Polynomial, ...]
    beta: tuple[Polynomial, ...]
    gamma: tuple[Polynomial, ...]

    def __post_init__(self):
        if not len(self.alpha) == len(self.beta) == len(self.gamma):
            raise ValueError("weight sequences must share one length")

    @property
    def order(self) -> int:
        return len(self.alpha)

    def _at(self, table: tuple[Polynomial, ...], k: int) -> Polynomial:
        if not 1 <= k <= self.order:
            raise OrderExceeded(f"index {k} outside the table order {self.order}")
        return table[k - 1]

    def alpha_at(self, k: int) -> Polynomial:
        return self._at(self.alpha, k)

    def beta_at(self, k: int) -> Polynomial:
        return self._at(self.beta, k)

    def gamma_at(self, k: int) -> Polynomial:
        return self._at(self.gamma, k)

    def to_series(self) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
        def series(table):
            return TruncatedSeries((Polynomial.zero(),) + table)

        return series(self.alpha), series(self.beta), series(self.gamma)

    def to_json(self) -> dict:
        return {
            "alpha": [p.to_json() for p in self.alpha],
            "beta": [p.to_json() for p in self.beta],
            "gamma": [p.to_json() for p in self.gamma],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "WeightSpec":
        return cls(
            tuple(Polynomial.from_json(p) for p in data["alpha"]),
            tuple(Polynomial.from_json(p) for p in data["beta"]),
            tuple(Polynomial.from_json(p) for p in data["gamma"]),
        )

    def substitute(self, bindings: Mapping[str, Polynomial]) -> "WeightSpec":
        """Substitute values for symbolic parameters in every entry."""
        if not bindings:
            return self
        return WeightSpec(
            tuple(p.substitute(bindings) for p in self.alpha),
            tuple(p.substitute(bindings) for p in self.beta),
            tuple(p.substitute(bindings) for p in self.gamma),
        )


def spec_from_series(
    alpha: TruncatedSeries, beta: TruncatedSeries, gamma: TruncatedSeries
) -> WeightSpec:
    """Extract the weight sequences from three series with zero constant term."""
    _require_weight_series(alpha, beta, gamma)
    return WeightSpec(alpha.coeffs[1:], beta.coeffs[1:], gamma.coeffs[1:])


def structure_weight(structure: ValleyStructure, spec: WeightSpec) -> Polynomial:
    """Product over parts: a pyramid of height h weighs gamma[h], a block
    with ascent k and inner heights i_1..i_r weighs beta[k] * alpha[i_1] * ... ."""
    total = Polynomial.one()
    for part in structure.parts:
        if isinstance(part, Pyramid):
            total = total * spec.gamma_at(part.height)
        else:
            total = total * spec.beta_at(part.ascent)
            for h in part.heights:
                total = total * spec.alpha_at(h)
    return total


def path_weight(path: Path, spec: WeightSpec) -> Polynomial:
    """Weight of a raw valley-uniform Dyck path, read off its statistics.

    This route never builds a ValleyStructure: a factor without valleys is a
    pyramid on the axis, and a factor with valleys at the common level k
    contributes beta[k] times alpha of each maximal pyramid height.  It
    therefore serves as an independent cross-check of structure_weight.
    """
    if path.family != "dyck":
        raise FamilyViolation("valley weights apply to Dyck paths")
    total = Polynomial.one()
    for factor in primitive_factors(path):
        stats = analyze(factor)
        levels = {lvl for _, lvl in stats.valleys}
        if not levels:
            total = total * spec.gamma_at(factor.size)
        elif len(levels) == 1:
            total = total * spec.beta_at(levels.pop())
            for height, _, _ in stats.pyramids:
                total = total * spec.alpha_at(height)
        else:
            raise NotValleyUniform(f"valleys of {factor.steps!r} sit at several levels")
    return total


def valley_weight_sum(n: int, spec: WeightSpec) -> Polynomial:
    """Sum of structure weights over every valley structure of size n."""
    total = Polynomial.zero()
    for structure in valley_structures(n):
        total = total + structure_weight(structure, spec)
    return total


# -- target-family weightings --------------------------------------------------

_A = Polynomial.var("a")
_B = Polynomial.var("b")
_Q = Polynomial.var("q")
_T = Polynomial.var("t")


def _motzkin_ab_weight(path: Path) -> Polynomial:
    flats = path.steps.count("F")
    downs = path.steps.count("D")
    return _A**flats * _B**downs


def _schroder_q_weight(path: Path) -> Polynomial:
    return _Q ** path.steps.count("H")


def _narayana_t_weight(path: Path) -> Polynomial:
    return _T ** len(analyze(path).peaks)


def _level_peaks_weight(path: Path) -> Polynomial:
    total = Polynomial.one()
    for _, level in analyze(path).peaks:
        total = total * ((_T + 1) if level == 1 else _T)
    return total


TARGET_WEIGHTINGS: dict[str, Callable[[Path], Polynomial]] = {
    "motzkin_ab": _motzkin_ab_weight,
    "schroder_q": _schroder_q_weight,
    "narayana_t": _narayana_t_weight,
    "level_peaks": _level_peaks_weight,
}


def target_weight(path: Path, weighting: str) -> Polynomial:
    try:
        fn = TARGET_WEIGHTINGS[weighting]
    except KeyError:
        raise BadParams(f"unknown target weighting {weighting!r}") from None
    return fn(path)


def target_weight_sum(n: int, family: str, filt: str, weighting: str) -> Polynomial:
    total = Polynomial.zero()
    for path in enumerate_family(family, n, filt):
        total = total + target_weight(path, weighting)
    return total


# -- the registry of specializations -------------------------------------------


def _as_poly(value: ParamValue, default: Polynomial | None = None) -> Polynomial:
    if value is None:
        if default is None:
            raise BadParams("missing required parameter")
        return default
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.const(value)
    if isinstance(value, str):
        if value == "sym":
            if default is None:
                raise BadParams("this parameter has no symbolic default")
            return default
        return Polynomial.const(Fraction(value))
    raise BadParams(f"cannot interpret parameter value {value!r}")


def _as_int(value: ParamValue, name: str) -> int:
    try:
        n = int(value)  # type: ignore[arg-type]
    except (TypeError, ValueError):
        raise BadParams(f"parameter {name} must be an integer") from None
    return n


def _build_generic(order: int) -> WeightSpec:
    mk = lambda stem, k: Polynomial.var(f"{stem}{k}")
    return WeightSpec(
        tuple(mk("alpha", k) for k in range(1, order + 1)),
        tuple(mk("beta", k) for k in range(1, order + 1)),
        tuple(mk("gamma", k) for k in range(1, order + 1)),
    )


def _geometric(order: int, pole: ParamValue) -> TruncatedSeries:
    """x / (1 - pole*x) up to the order."""
    x = TruncatedSeries.x(order)
    one = TruncatedSeries.one(order)
    return x * (one - x.scale(_as_poly(pole))).inverse()


def _build_geom_3x(order: int) -> WeightSpec:
    alpha = _geometric(order, 1)
    beta = _geometric(order, 2)
    return spec_from_series(alpha, beta, alpha * beta)


def _build_geom_fib(order: int) -> WeightSpec:
    alpha = _geometric(order, 1)
    return spec_from_series(alpha, alpha, alpha * alpha)


def _build_motzkin_ab(order: int) -> WeightSpec:
    m = named_series("motzkin_ab", order)
    x = TruncatedSeries.x(order)
    alpha = x.scale(_A)
    beta = (x * m).scale(_B * Polynomial.var("a_inv"))
    gamma = (x * x * m).scale(_B)
    return spec_from_series(alpha, beta, gamma)


def _build_schroder_large_q(order: int) -> WeightSpec:
    r = named_series("schroder_large", order)
    x = TruncatedSeries.x(order)
    alpha = x.scale(_Q + 1)
    beta = (r - 1).div_poly(_Q + 1)
    gamma = x * (r - 1)
    return spec_from_series(alpha, beta, gamma)


def _build_schroder_small_q(order: int) -> WeightSpec:
    s = named_series("schroder_small", order)
    x = TruncatedSeries.x(order)
    alpha = x
    beta = (s - 1).scale(_Q + 1)
    gamma = (x * (s - 1)).scale(_Q + 1)
    return spec_from_series(alpha, beta, gamma)


def _build_narayana_t(order: int) -> WeightSpec:
    n = named_series("narayana", order)
    x = TruncatedSeries.x(order)
    alpha = x.scale(_T)
    beta = (n - 1).div_poly(_T)
    gamma = x * (n - 1)
    return spec_from_series(alpha, beta, gamma)


def _build_narayana_shift_t(order: int) -> WeightSpec:
    f = named_series("narayana_shift", order)
    x = TruncatedSeries.x(order)
    alpha = x.scale(_T + 1)
    beta = (x * f).scale(_T * Polynomial.var("t1_inv"))
    gamma = (x * x * f).scale(_T)
    return spec_from_series(alpha, beta, gamma)


def _chebyshev_series(order, a, b, c, d):
    x = TruncatedSeries.x(order)
    one = TruncatedSeries.one(order)
    alpha = x.scale(a - b) * (one - x.scale(b)).inverse()
    beta = x.scale(c) * (one - x.scale(d)).inverse()
    return alpha, beta


def _build_chebyshev_abcd(order: int, a=None, b=None, c=None, d=None) -> WeightSpec:
    a = _as_poly(a, _A)
    b = _as_poly(b, _B)
    c = _as_poly(c, Polynomial.var("c"))
    d = _as_poly(d, Polynomial.var("d"))
    alpha, beta = _chebyshev_series(order, a, b, c, d)
    return spec_from_series(alpha, beta, alpha * beta)


def _build_chebyshev_second(order: int, a=None, b=None, c=None) -> WeightSpec:
    a = _as_poly(a, _A)
    b = _as_poly(b, _B)
    c = _as_poly(c, Polynomial.var("c"))
    x = TruncatedSeries.x(order)
    one = TruncatedSeries.one(order)
    kernel = (one - x.scale(2 * c) + x * x).inverse()
    alpha = (x.scale(2 * b) * (one - x.scale(a))) * kernel
    beta = x.scale(a) * (one - x.scale(a)).inverse()
    gamma = (x * x).scale(2 * a * b) * kernel
    return spec_from_series(alpha, beta, gamma)


def _build_delannoy_tuple(order: int, a=None, b=None, c=None, d=None) -> WeightSpec:
    values = [a, b, c, d]
    if any(v is None for v in values):
        raise BadParams("delannoy_tuple needs numeric a, b, c, d")
    a, b, c, d = (Polynomial.const(Fraction(v)) for v in values)  # type: ignore[arg-type]
    alpha, beta = _chebyshev_series(order, a, b, c, d)
    return spec_from_series(alpha, beta, alpha * beta)


def _fuss_power(order: int, r: int, exponent: int) -> TruncatedSeries:
    t_series = named_series("fuss", order, r=r)
    return TruncatedSeries.x(order) * t_series**exponent


def _build_fuss_sym(order: int, m=None, r=None) -> WeightSpec:
    m, r = _as_int(m, "m"), _as_int(r, "r")
    alpha = _fuss_power(order, r, m)
    return spec_from_series(alpha, alpha, alpha * alpha)


def _build_fuss_asym(order: int, m=None, r=None) -> WeightSpec:
    m, r = _as_int(m, "m"), _as_int(r, "r")
    alpha = _fuss_power(order, r, r)
    beta = _fuss_power(order, r, m)
    return spec_from_series(alpha, beta, alpha * beta)


def _build_fuss_cubic(order: int, m=None, r=None) -> WeightSpec:
    # gamma deliberately equals alpha here, not alpha*beta
    m, r = _as_int(m, "m"), _as_int(r, "r")
    alpha = _fuss_power(order, r, r)
    beta = _fuss_power(order, r, m)
    return spec_from_series(alpha, beta, alpha)


REGISTRY: dict[str, Callable[..., WeightSpec]] = {
    "generic": _build_generic,
    "geom_3x": _build_geom_3x,
    "geom_fib": _build_geom_fib,
    "motzkin_ab": _build_motzkin_ab,
    "schroder_large_q": _build_schroder_large_q,
    "schroder_small_q": _build_schroder_small_q,
    "narayana_t": _build_narayana_t,
    "narayana_shift_t": _build_narayana_shift_t,
    "chebyshev_abcd": _build_chebyshev_abcd,
    "chebyshev_second": _build_chebyshev_second,
    "delannoy_tuple": _build_delannoy_tuple,
    "fuss_sym": _build_fuss_sym,
    "fuss_asym": _build_fuss_asym,
    "fuss_cubic": _build_fuss_cubic,
}

# keyword parameters each builder accepts; anything else a caller supplies is
# treated as a value for one of the entry's symbolic coefficients
REGISTRY_PARAMS: dict[str, tuple[str, ...]] = {
    "generic": (),
    "geom_3x": (),
    "geom_fib": (),
    "motzkin_ab": (),
    "schroder_large_q": (),
    "schroder_small_q": (),
    "narayana_t": (),
    "narayana_shift_t": (),
    "chebyshev_abcd": ("a", "b", "c", "d"),
    "chebyshev_second": ("a", "b", "c"),
    "delannoy_tuple": ("a", "b", "c", "d"),
    "fuss_sym": ("m", "r"),
    "fuss_asym": ("m", "r"),
    "fuss_cubic": ("m", "r"),
}

# the seven weight tuples whose scaled weight sums agree, with their multipliers
DELANNOY_TUPLES: tuple[tuple[tuple[int, int, int, int], int], ...] = (
    ((4, 3, 7, 2), 7),
    ((2, 1, 7, 4), 7),
    ((5, 4, 4, 1), 4),
    ((5, 1, 1, 1), 4),
    ((1, 0, 4, 5), 4),
    ((3, 2, 8, 3), 8),
    ((3, 1, 4, 3), 8),
)


def registry_names() -> tuple[str, ...]:
    return tuple(REGISTRY)


@lru_cache(maxsize=None)
def _registry_get_cached(name: str, order: int, frozen_params: tuple) -> WeightSpec:
    builder = REGISTRY[name]
    return builder(order, **dict(frozen_params))


def registry_get(name: str, order: int, **params: ParamValue) -> WeightSpec:
    """Build a registered weight table at the given order.

    Parameterized entries accept keyword parameters; numeric values may be
    ints, Fractions or fraction strings like ``"7/3"``, and ``"sym"`` keeps
    a parameter symbolic where the entry has a symbolic default.  Parameters
    an entry does not declare are substituted into the finished table, so a
    symbolic table can be pinned to numeric values in one call.
    """
    if name not in REGISTRY:
        raise BadParams(f"unknown weight table {name!r}; known: {', '.join(REGISTRY)}")
    if order < 0:
        raise BadParams("order must be nonnegative")
    declared = REGISTRY_PARAMS[name]
    builder_params = {k: v for k, v in params.items() if k in declared}
    bindings = {
        k: _as_poly(v)
        for k, v in params.items()
        if k not in declared and v != "sym"
    }
    try:
        frozen = tuple(sorted(builder_params.items()))
        hash(frozen)
        spec = _registry_get_cached(name, order, frozen)
    except TypeError:
        spec = REGISTRY[name](order, **builder_params)
    return spec.substitute(bindings)
