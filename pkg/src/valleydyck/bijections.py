"""Executable weight-preserving bijections on decorated valley structures.

Five of the maps (phi, theta, sigma, rho, psi) share one shape: their weight
tables force every block to have inner height 1 and every axis pyramid to
have height at least 2, so each part normalizes to u^k (ud)^r d^k with
k, r >= 1 (a pyramid of height h is the case k = h - 1, r = 1).  A part is
decorated with a subpath whose size matches k, plus, for theta, a string of
r - 1 two-way symbols; the forward map emits per part

    phi:    u Q d f^(r-1)          Q a Motzkin path of length k - 1
    theta:  u Q d s_1 .. s_(r-1)   Q a q-large Schroder path of semilength k
    sigma:  u W d (ud)^(r-1)       W a q-large Schroder path of semilength k
    rho:    u Q d (ud)^(r-1)       Q a Dyck path of semilength k
    psi:    u Q d (ud)^(r-1)       Q a Dyck path of semilength k

and concatenates the images.  The inverse reads the unique factorization of
a target path back off: first primitive factor, then the maximal run of
trailing flats / double flats / (ud) factors.

The sixth map, tau, exchanges the two integer weight systems of the
Delannoy pair (4,3,7,2) and (2,1,7,4).  It works purely on run-length data:
a factor is (marked ascent k0, inner pyramid heights, a letter string of
length k0 - 1), and the map is a reversal-and-relabeling shuffle between
the letter string and the encoded pyramid heights that preserves the letter
value product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

from .errors import (
    BadParams,
    InvalidDecoration,
    NotInTargetFamily,
    UniqueFactorizationFailure,
)
from .paths import (
    Path,
    Pyramid,
    ValleyBlock,
    ValleyStructure,
    enumerate_family,
    passes_filter,
    valley_structures,
)
from .polynomials import Polynomial
from .weights import target_weight

MAP_IDS = ("phi", "theta", "sigma", "rho", "psi")

MAP_TARGET: dict[str, tuple[str, str]] = {
    "phi": ("motzkin", "first_not_flat"),
    "theta": ("schroder_large", "y_filter"),
    "sigma": ("schroder_small", "first_two_not_ud"),
    "rho": ("dyck", "first_two_not_ud"),
    "psi": ("dyck", "first_two_not_ud"),
}

MAP_REGISTRY_SPEC: dict[str, str] = {
    "phi": "motzkin_ab",
    "theta": "schroder_large_q",
    "sigma": "schroder_small_q",
    "rho": "narayana_t",
    "psi": "narayana_shift_t",
}

MAP_TARGET_WEIGHTING: dict[str, str] = {
    "phi": "motzkin_ab",
    "theta": "schroder_q",
    "sigma": "schroder_q",
    "rho": "narayana_t",
    "psi": "level_peaks",
}

_DECORATION_FAMILY: dict[str, str] = {
    "phi": "motzkin",
    "theta": "schroder_large",
    "sigma": "schroder_large",
    "rho": "dyck",
    "psi": "dyck",
}

_A = Polynomial.var("a")
_B = Polynomial.var("b")
_Q = Polynomial.var("q")
_T = Polynomial.var("t")


@dataclass(frozen=True)
class PartDecoration:
    subpath: Path
    symbols: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        for s in self.symbols:
            if s not in ("H", "ud"):
                raise InvalidDecoration(f"unknown decoration symbol {s!r}")


@dataclass(frozen=True)
class DecoratedStructure:
    map_id: str
    structure: ValleyStructure
    decorations: tuple[PartDecoration, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "decorations", tuple(self.decorations))
        if self.map_id not in MAP_IDS:
            raise BadParams(f"unknown map {self.map_id!r}")
        if len(self.decorations) != len(self.structure.parts):
            raise InvalidDecoration("one decoration per part is required")
        family = _DECORATION_FAMILY[self.map_id]
        for part, deco in zip(self.structure.parts, self.decorations):
            k, r = _part_form(self.map_id, part)
            if deco.subpath.family != family:
                raise InvalidDecoration(f"{self.map_id} decorations are {family} paths")
            wanted = k - 1 if self.map_id == "phi" else k
            if deco.subpath.size != wanted:
                raise InvalidDecoration(
                    f"decoration size {deco.subpath.size} does not match part size {wanted}"
                )
            if self.map_id == "theta":
                if len(deco.symbols) != r - 1:
                    raise InvalidDecoration("theta needs r-1 symbols")
            elif deco.symbols:
                raise InvalidDecoration(f"{self.map_id} takes no symbols")

    @property
    def size(self) -> int:
        return self.structure.semilength

    def to_json(self) -> dict:
        parts = []
        for part, deco in zip(self.structure.parts, self.decorations):
            if isinstance(part, Pyramid):
                entry: dict = {"kind": "pyramid", "height": part.height}
            else:
                entry = {"kind": "block", "ascent": part.ascent, "heights": list(part.heights)}
            entry["sub"] = deco.subpath.steps
            if deco.symbols:
                entry["symbols"] = list(deco.symbols)
            parts.append(entry)
        return {"map": self.map_id, "parts": parts}

    @classmethod
    def from_json(cls, data: Mapping) -> "DecoratedStructure":
        map_id = data["map"]
        family = _DECORATION_FAMILY.get(map_id)
        if family is None:
            raise BadParams(f"unknown map {map_id!r}")
        parts: list = []
        decos: list[PartDecoration] = []
        for entry in data["parts"]:
            if entry["kind"] == "pyramid":
                parts.append(Pyramid(entry["height"]))
            else:
                parts.append(ValleyBlock(entry["ascent"], tuple(entry["heights"])))
            decos.append(
                PartDecoration(Path(family, entry["sub"]), tuple(entry.get("symbols", ())))
            )
        return cls(map_id, ValleyStructure(tuple(parts)), tuple(decos))


def _part_form(map_id: str, part) -> tuple[int, int]:
    """Normalize a part to (ascent k, peak count r); reject parts outside the domain."""
    if isinstance(part, Pyramid):
        if part.height < 2:
            raise InvalidDecoration(f"{map_id} admits no axis pyramid of height 1")
        return part.height - 1, 1
    if any(h != 1 for h in part.heights):
        raise InvalidDecoration(f"{map_id} admits only blocks with unit inner pyramids")
    return part.ascent, len(part.heights)


def _part_in_domain(map_id: str, part) -> bool:
    try:
        _part_form(map_id, part)
    except InvalidDecoration:
        return False
    return True


def enumerate_decorated(n: int, map_id: str) -> Iterator[DecoratedStructure]:
    """All decorated objects of size n, structure by structure."""
    if map_id not in MAP_IDS:
        raise BadParams(f"unknown map {map_id!r}")
    family = _DECORATION_FAMILY[map_id]
    for structure in valley_structures(n):
        if not all(_part_in_domain(map_id, p) for p in structure.parts):
            continue
        per_part = []
        for part in structure.parts:
            k, r = _part_form(map_id, part)
            sub_size = k - 1 if map_id == "phi" else k
            subs = list(enumerate_family(family, sub_size))
            if map_id == "theta":
                choices = [
                    PartDecoration(sub, syms)
                    for sub in subs
                    for syms in product(("H", "ud"), repeat=r - 1)
                ]
            else:
                choices = [PartDecoration(sub) for sub in subs]
            per_part.append(choices)
        for combo in product(*per_part):
            yield DecoratedStructure(map_id, structure, tuple(combo))


def _part_image(map_id: str, part, deco: PartDecoration) -> str:
    k, r = _part_form(map_id, part)
    core = "U" + deco.subpath.steps + "D"
    if map_id == "phi":
        return core + "F" * (r - 1)
    if map_id == "theta":
        return core + "".join("H" if s == "H" else "UD" for s in deco.symbols)
    return core + "UD" * (r - 1)


def forward(map_id: str, obj):
    """Apply a map; decorated structures map to target paths, tau maps sides."""
    if map_id == "tau":
        if not isinstance(obj, TauDecorated):
            raise BadParams("tau applies to marked, lettered objects")
        return tau_apply(obj)
    if not isinstance(obj, DecoratedStructure) or obj.map_id != map_id:
        raise BadParams(f"object does not belong to map {map_id!r}")
    family, _ = MAP_TARGET[map_id]
    steps = "".join(
        _part_image(map_id, part, deco)
        for part, deco in zip(obj.structure.parts, obj.decorations)
    )
    return Path(family, steps)


def inverse(map_id: str, target):
    """Invert a map via the unique factorization of the target object."""
    if map_id == "tau":
        if not isinstance(target, TauDecorated):
            raise BadParams("tau applies to marked, lettered objects")
        return tau_apply(target)
    if map_id not in MAP_IDS:
        raise BadParams(f"unknown map {map_id!r}")
    family, filt = MAP_TARGET[map_id]
    if not isinstance(target, Path) or target.family != family:
        raise NotInTargetFamily(f"{map_id} inverts paths of family {family!r}")
    if not passes_filter(target.steps, filt):
        raise NotInTargetFamily(f"path {target.steps!r} fails the {filt} condition")
    deco_family = _DECORATION_FAMILY[map_id]
    steps = target.steps
    i = 0
    parts: list = []
    decos: list[PartDecoration] = []
    while i < len(steps):
        if steps[i] != "U":
            raise UniqueFactorizationFailure(f"expected an up step at {i} in {steps!r}")
        level = 1
        j = i + 1
        while j < len(steps) and level > 0:
            level += {"U": 1, "D": -1, "F": 0, "H": 0}[steps[j]]
            j += 1
        if level != 0:
            raise UniqueFactorizationFailure(f"unbalanced factor at {i} in {steps!r}")
        sub = Path(deco_family, steps[i + 1 : j - 1])
        i = j
        symbols: list[str] = []
        if map_id == "phi":
            flats = 0
            while i < len(steps) and steps[i] == "F":
                i += 1
                flats += 1
            r = 1 + flats
        elif map_id == "theta":
            while i < len(steps):
                if steps[i] == "H":
                    symbols.append("H")
                    i += 1
                elif steps[i : i + 2] == "UD":
                    symbols.append("ud")
                    i += 2
                else:
                    break
            r = 1 + len(symbols)
        else:
            count = 0
            while steps[i : i + 2] == "UD":
                count += 1
                i += 2
            r = 1 + count
        k = sub.size + 1 if map_id == "phi" else sub.size
        if k < 1:
            raise UniqueFactorizationFailure(f"empty core factor at {i} in {steps!r}")
        parts.append(Pyramid(k + 1) if r == 1 else ValleyBlock(k, (1,) * r))
        decos.append(PartDecoration(sub, tuple(symbols)))
    return DecoratedStructure(map_id, ValleyStructure(tuple(parts)), tuple(decos))


def decorated_weight(obj: DecoratedStructure) -> Polynomial:
    """Product of target-side weights of the decorations of every part."""
    total = Polynomial.one()
    for part, deco in zip(obj.structure.parts, obj.decorations):
        _, r = _part_form(obj.map_id, part)
        sub = deco.subpath
        if obj.map_id == "phi":
            total = total * _B * target_weight(sub, "motzkin_ab") * _A ** (r - 1)
        elif obj.map_id == "theta":
            sym = sum(1 for s in deco.symbols if s == "H")
            total = total * target_weight(sub, "schroder_q") * _Q**sym
        elif obj.map_id == "sigma":
            total = total * target_weight(sub, "schroder_q")
        elif obj.map_id == "rho":
            total = total * target_weight(sub, "narayana_t") * _T ** (r - 1)
        else:  # psi
            total = total * target_weight(sub, "narayana_t") * (_T + 1) ** (r - 1)
    return total


# -- the tau exchange between the two integer Delannoy weightings ---------------

TAU_SIDES = ("src_4372", "dst_2174")

_TAU_LETTERS = {"src_4372": ("1", "1h"), "dst_2174": ("1", "3h")}

_LETTER_VALUE = {"1": 1, "1h": 1, "3": 3, "3h": 3, "7": 7}


@dataclass(frozen=True)
class TauFactor:
    """One primitive factor: marked ascent, inner pyramid heights, letters.

    The mark sits at the end of the ascent; the letters decorate ascent
    steps 2..k0 and the first up step always carries the value 7.
    """

    ascent: int
    heights: tuple[int, ...]
    letters: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(self.heights))
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.ascent < 1:
            raise InvalidDecoration("the marked ascent must have length at least 1")
        if not self.heights or any(h < 1 for h in self.heights):
            raise InvalidDecoration("inner pyramid heights must be positive")
        if len(self.letters) != self.ascent - 1:
            raise InvalidDecoration("a factor carries ascent-1 letters")

    @property
    def semilength(self) -> int:
        return self.ascent + sum(self.heights)


@dataclass(frozen=True)
class TauDecorated:
    side: str
    factors: tuple[TauFactor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.side not in TAU_SIDES:
            raise BadParams(f"unknown tau side {self.side!r}")
        allowed = set(_TAU_LETTERS[self.side])
        for factor in self.factors:
            bad = [tok for tok in factor.letters if tok not in allowed]
            if bad:
                raise InvalidDecoration(
                    f"letters {bad} are not allowed on side {self.side}"
                )

    @property
    def size(self) -> int:
        return sum(f.semilength for f in self.factors)

    def to_path(self) -> Path:
        chunks = []
        for f in self.factors:
            inner = "".join("U" * h + "D" * h for h in f.heights)
            chunks.append("U" * f.ascent + inner + "D" * f.ascent)
        return Path("dyck", "".join(chunks))

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "parts": [
                {"k0": f.ascent, "letters": list(f.letters), "blocks": list(f.heights)}
                for f in self.factors
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TauDecorated":
        factors = tuple(
            TauFactor(entry["k0"], tuple(entry["blocks"]), tuple(entry["letters"]))
            for entry in data["parts"]
        )
        return cls(data["side"], factors)


def enumerate_tau(n: int, side: str) -> Iterator[TauDecorated]:
    """All marked, lettered objects of size n on one side of the exchange."""
    if side not in TAU_SIDES:
        raise BadParams(f"unknown tau side {side!r}")
    alphabet = _TAU_LETTERS[side]
    for structure in valley_structures(n):
        per_part: list[list[TauFactor]] = []
        feasible = True
        for part in structure.parts:
            choices: list[TauFactor] = []
            if isinstance(part, Pyramid):
                # the mark splits a height-h axis pyramid as k0 + (h - k0)
                for k0 in range(1, part.height):
                    for letters in product(alphabet, repeat=k0 - 1):
                        choices.append(TauFactor(k0, (part.height - k0,), letters))
            else:
                for letters in product(alphabet, repeat=part.ascent - 1):
                    choices.append(TauFactor(part.ascent, part.heights, letters))
            if not choices:
                feasible = False
                break
            per_part.append(choices)
        if not feasible:
            continue
        for combo in product(*per_part):
            yield TauDecorated(side, tuple(combo))


def _encode_heights(heights: tuple[int, ...], marker: str) -> tuple[str, ...]:
    """Each pyramid of height h becomes marker^(h-1) followed by '1'."""
    out: list[str] = []
    for h in heights:
        out.extend([marker] * (h - 1))
        out.append("1")
    return tuple(out)


def _decode_heights(tokens: tuple[str, ...], marker: str) -> tuple[int, ...]:
    heights: list[int] = []
    run = 0
    for tok in tokens:
        if tok == marker:
            run += 1
        elif tok == "1":
            heights.append(run + 1)
            run = 0
        else:
            raise InvalidDecoration(f"unexpected token {tok!r} while decoding heights")
    if run:
        raise InvalidDecoration("height encoding must end with a closing '1'")
    return tuple(heights)


def tau_apply(obj: TauDecorated) -> TauDecorated:
    """Exchange sides one primitive factor at a time.

    Per factor, with V the '3'/'1' encoding of the inner heights (which
    always ends in '1'):

        new ascent   = sum of old heights
        new heights  = decode of reversed(letters) + ('1',)
        new letters  = relabeled reverse of V without its final '1'

    Applying the map from the other side uses the mirrored alphabet; the
    construction is an involution up to the side tag, and the letter value
    product (3 per hatted-3, 7 once per factor) is preserved because the
    dropped token is always the valueless '1'.
    """
    src = obj.side == "src_4372"
    out: list[TauFactor] = []
    for f in obj.factors:
        if src:
            encoded = _encode_heights(f.heights, "3")
            new_letters = tuple(
                "3h" if tok == "3" else "1" for tok in reversed(encoded[:-1])
            )
            new_heights = _decode_heights(tuple(reversed(f.letters)) + ("1",), "1h")
        else:
            encoded = _encode_heights(f.heights, "1h")
            new_letters = tuple(reversed(encoded[:-1]))
            unhatted = tuple("3" if tok == "3h" else "1" for tok in f.letters)
            new_heights = _decode_heights(tuple(reversed(unhatted)) + ("1",), "3")
        out.append(TauFactor(sum(f.heights), new_heights, new_letters))
    return TauDecorated("dst_2174" if src else "src_4372", tuple(out))


def tau_value(obj: TauDecorated) -> int:
    """Product of the numeric letter values over all up steps."""
    total = 1
    for f in obj.factors:
        total *= 7
        if obj.side == "src_4372":
            for h in f.heights:
                total *= 3 ** (h - 1)
        else:
            for letter in f.letters:
                total *= _LETTER_VALUE[letter]
    return total


def tau_ustep_weights(factor: TauFactor, side: str) -> tuple[str, ...]:
    """Weight tokens of the factor's up steps in path order, starting with '7'."""
    tokens: list[str] = ["7"]
    tokens.extend(factor.letters)
    if side == "src_4372":
        for h in factor.heights:
            tokens.extend(["3"] * (h - 1))
            tokens.append("1")
    else:
        tokens.extend(["1"] * sum(factor.heights))
    return tuple(tokens)


def tau_structure(obj: TauDecorated) -> ValleyStructure:
    """Forget marks and letters, keeping the underlying valley structure."""
    parts = []
    for f in obj.factors:
        if len(f.heights) == 1:
            parts.append(Pyramid(f.ascent + f.heights[0]))
        else:
            parts.append(ValleyBlock(f.ascent, f.heights))
    return ValleyStructure(tuple(parts))
