"""Lattice path families, structural statistics, and exhaustive enumerators.

Steps are single characters: ``U`` = (1,1), ``D`` = (1,-1), ``F`` = (1,0)
(the Motzkin unit flat) and ``H`` = (2,0) (the Schroder/Delannoy double
flat).  A path is a family tag plus a step string; validation happens at
construction.  Delannoy paths may dip below the axis; every other family is
confined to the first quadrant, and the small Schroder family additionally
forbids ``H`` on the axis.

The size of a path is its semilength (half the width) except for Motzkin
paths, whose size is the step count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .errors import (
    FamilyViolation,
    IllegalCharacter,
    NegativeLevel,
    NonzeroEnd,
    NotValleyUniform,
)

STEP_RISE = {"U": 1, "D": -1, "F": 0, "H": 0}
STEP_WIDTH = {"U": 1, "D": 1, "F": 1, "H": 2}

FAMILY_STEPS = {
    "dyck": "UD",
    "motzkin": "UDF",
    "schroder_large": "UDH",
    "schroder_small": "UDH",
    "delannoy": "UDH",
}

FILTERS = ("none", "first_not_flat", "first_two_not_ud", "y_filter")

_FILTER_PREDICATES = {
    "none": lambda s: True,
    "first_not_flat": lambda s: not s.startswith("F"),
    "first_two_not_ud": lambda s: not s.startswith("UD"),
    "y_filter": lambda s: not (s.startswith("H") or s.startswith("UD")),
}


def passes_filter(steps: str, filt: str) -> bool:
    """Whether a step string satisfies one of the opening-step filters."""
    try:
        return _FILTER_PREDICATES[filt](steps)
    except KeyError:
        raise ValueError(f"unknown filter {filt!r}") from None


@dataclass(frozen=True)
class Path:
    family: str
    steps: str = ""

    def __post_init__(self):
        alphabet = FAMILY_STEPS.get(self.family)
        if alphabet is None:
            raise FamilyViolation(f"unknown family {self.family!r}")
        level = 0
        below_ok = self.family == "delannoy"
        for ch in self.steps:
            if ch not in alphabet:
                raise IllegalCharacter(f"step {ch!r} is not allowed in {self.family}")
            if self.family == "schroder_small" and ch == "H" and level == 0:
                raise FamilyViolation("small Schroder paths have no H-step on the axis")
            level += STEP_RISE[ch]
            if level < 0 and not below_ok:
                raise NegativeLevel(f"path dips to level {level}")
        if level != 0:
            raise NonzeroEnd(f"path ends at level {level}")

    @property
    def width(self) -> int:
        return sum(STEP_WIDTH[ch] for ch in self.steps)

    @property
    def size(self) -> int:
        """Semilength, or the step count for Motzkin paths."""
        if self.family == "motzkin":
            return len(self.steps)
        return self.width // 2

    def levels(self) -> tuple[int, ...]:
        """Level after 0, 1, 2, ... steps (length len(steps)+1)."""
        out = [0]
        for ch in self.steps:
            out.append(out[-1] + STEP_RISE[ch])
        return tuple(out)

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {"family": self.family, "steps": self.steps}

    @classmethod
    def from_json(cls, data: Mapping) -> "Path":
        return cls(data["family"], data["steps"])


def parse_path(text: str, family: str) -> Path:
    """Validate a step string and wrap it as a Path."""
    return Path(family, text)


@dataclass(frozen=True)
class PathStats:
    """Deterministic structural statistics of a path.

    Positions are 0-based step indices.  A peak/valley is recorded with the
    level of the shared point of its two steps; a maximal pyramid with its
    height, altitude (level of its last down step) and start position.
    """

    peaks: tuple[tuple[int, int], ...]
    valleys: tuple[tuple[int, int], ...]
    pyramids: tuple[tuple[int, int, int], ...]  # (height, altitude, start)
    factor_spans: tuple[tuple[int, int], ...]
    first_step: str
    first_two: str


def analyze(path: Path) -> PathStats:
    steps = path.steps
    levels = path.levels()
    peaks = []
    valleys = []
    for i in range(len(steps) - 1):
        if steps[i] == "U" and steps[i + 1] == "D":
            peaks.append((i, levels[i + 1]))
        elif steps[i] == "D" and steps[i + 1] == "U":
            valleys.append((i, levels[i + 1]))
    pyramids = []
    for i, _ in peaks:
        h = 1
        while (
            i - h >= 0
            and i + 1 + h < len(steps)
            and steps[i - h] == "U"
            and steps[i + 1 + h] == "D"
        ):
            h += 1
        pyramids.append((h, levels[i + 1 + h], i - h + 1))
    spans = []
    start = 0
    for i in range(len(steps)):
        if levels[i + 1] == 0:
            spans.append((start, i + 1))
            start = i + 1
    return PathStats(
        peaks=tuple(peaks),
        valleys=tuple(valleys),
        pyramids=tuple(pyramids),
        factor_spans=tuple(spans),
        first_step=steps[:1],
        first_two=steps[:2],
    )


def primitive_factors(path: Path) -> list[Path]:
    """Split at every return to level zero."""
    factors = []
    start = 0
    level = 0
    for i, ch in enumerate(path.steps):
        level += STEP_RISE[ch]
        if level == 0:
            factors.append(Path(path.family, path.steps[start : i + 1]))
            start = i + 1
    return factors


def elevate(path: Path) -> Path:
    if path.family != "dyck":
        raise FamilyViolation("elevation is defined for Dyck paths")
    return Path("dyck", "U" + path.steps + "D")


def concat(first: Path, second: Path) -> Path:
    if first.family != second.family:
        raise FamilyViolation("cannot concatenate paths of different families")
    return Path(first.family, first.steps + second.steps)


def enumerate_family(family: str, n: int, filt: str = "none") -> Iterator[Path]:
    """All paths of the family with the given size, lexicographic in U<D<F<H.

    The optional filter keeps only paths whose opening steps satisfy the
    subfamily condition (no leading flat, no leading ud, or both exclusions
    combined for the large Schroder subfamily).
    """
    if n < 0:
        raise ValueError("size must be nonnegative")
    if filt not in _FILTER_PREDICATES:
        raise ValueError(f"unknown filter {filt!r}")
    alphabet = FAMILY_STEPS.get(family)
    if alphabet is None:
        raise FamilyViolation(f"unknown family {family!r}")
    keep = _FILTER_PREDICATES[filt]
    width = n if family == "motzkin" else 2 * n
    below_ok = family == "delannoy"
    prefix: list[str] = []

    def walk(level: int, remaining: int) -> Iterator[str]:
        if remaining == 0:
            if level == 0:
                yield "".join(prefix)
            return
        for ch in alphabet:
            w = STEP_WIDTH[ch]
            if w > remaining:
                continue
            if family == "schroder_small" and ch == "H" and level == 0:
                continue
            nl = level + STEP_RISE[ch]
            if nl < 0 and not below_ok:
                continue
            if abs(nl) > remaining - w:
                continue
            prefix.append(ch)
            yield from walk(nl, remaining - w)
            prefix.pop()

    for steps in walk(0, width):
        if keep(steps):
            yield Path(family, steps)


# -- valley-uniform structure ------------------------------------------------


@dataclass(frozen=True)
class Pyramid:
    """A primitive factor u^h d^h (no valleys)."""

    height: int

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("pyramid height must be positive")

    @property
    def size(self) -> int:
        return self.height


@dataclass(frozen=True)
class ValleyBlock:
    """A primitive factor u^k (u^i1 d^i1 ... u^ir d^ir) d^k with r >= 2 peaks.

    All valleys sit at the ascent level k; heights are the inner pyramid
    heights in path order.
    """

    ascent: int
    heights: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "heights", tuple(self.heights))
        if self.ascent < 1:
            raise ValueError("block ascent must be positive")
        if len(self.heights) < 2 or any(h < 1 for h in self.heights):
            raise ValueError("a block needs at least two positive pyramid heights")

    @property
    def size(self) -> int:
        return self.ascent + sum(self.heights)


Part = Union[Pyramid, ValleyBlock]


@dataclass(frozen=True)
class ValleyStructure:
    """Canonical decomposition of a valley-uniform Dyck path into parts."""

    parts: tuple[Part, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def semilength(self) -> int:
        return sum(p.size for p in self.parts)

    def to_path(self) -> Path:
        chunks = []
        for part in self.parts:
            if isinstance(part, Pyramid):
                chunks.append("U" * part.height + "D" * part.height)
            else:
                inner = "".join("U" * h + "D" * h for h in part.heights)
                chunks.append("U" * part.ascent + inner + "D" * part.ascent)
        return Path("dyck", "".join(chunks))

    @classmethod
    def from_path(cls, path: Path) -> "ValleyStructure":
        if path.family != "dyck":
            raise FamilyViolation("valley structures are built from Dyck paths")
        parts: list[Part] = []
        for factor in primitive_factors(path):
            parts.append(_parse_factor(factor))
        return cls(tuple(parts))


def _run_lengths(steps: str) -> list[tuple[str, int]]:
    runs = []
    for ch in steps:
        if runs and runs[-1][0] == ch:
            runs[-1][1] += 1
        else:
            runs.append([ch, 1])
    return [(ch, n) for ch, n in runs]


def _parse_factor(factor: Path) -> Part:
    steps = factor.steps
    runs = _run_lengths(steps)
    if len(runs) == 2:
        return Pyramid(runs[0][1])
    stats = analyze(factor)
    valley_levels = {level for _, level in stats.valleys}
    if len(valley_levels) != 1:
        raise NotValleyUniform(f"valleys of {steps!r} sit at levels {sorted(valley_levels)}")
    k = valley_levels.pop()
    if runs[0][1] < k or runs[-1][1] < k:
        raise NotValleyUniform(f"{steps!r} is not of the form u^k (pyramids) d^k")
    inner_runs = _run_lengths(steps[k:-k])
    heights = []
    for i in range(0, len(inner_runs), 2):
        up = inner_runs[i]
        down = inner_runs[i + 1] if i + 1 < len(inner_runs) else ("?", -1)
        if up[0] != "U" or down[0] != "D" or up[1] != down[1]:
            raise NotValleyUniform(f"{steps!r} is not of the form u^k (pyramids) d^k")
        heights.append(up[1])
    return ValleyBlock(k, tuple(heights))


def is_valley_uniform(path: Path) -> bool:
    """True when every primitive factor has all its valleys at one level."""
    if path.family != "dyck":
        raise FamilyViolation("the valley condition applies to Dyck paths")
    for factor in primitive_factors(path):
        levels = {level for _, level in analyze(factor).valleys}
        if len(levels) > 1:
            return False
    return True


def valley_structures(n: int) -> Iterator[ValleyStructure]:
    """Every decomposition of total size n into pyramids and valley blocks."""
    if n < 0:
        raise ValueError("size must be nonnegative")

    def parts_of_size(s: int) -> Iterator[Part]:
        yield Pyramid(s)
        for k in range(1, s - 1):
            for heights in _compositions(s - k, 2):
                yield ValleyBlock(k, heights)

    def rec(remaining: int) -> Iterator[tuple[Part, ...]]:
        if remaining == 0:
            yield ()
            return
        for s in range(1, remaining + 1):
            for part in parts_of_size(s):
                for tail in rec(remaining - s):
                    yield (part,) + tail

    for parts in rec(n):
        yield ValleyStructure(parts)


def _compositions(total: int, min_parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of positive integers with the given sum and length >= min_parts."""

    def go(rest: int, made: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            if made >= min_parts:
                yield ()
            return
        for first in range(1, rest + 1):
            for tail in go(rest - first, made + 1):
                yield (first,) + tail

    return go(total, 0)


def render_ascii(path: Path) -> str:
    """Fixed-width picture: '/' and '\\' for slopes, '_' for flats, one row per level."""
    if not path.steps:
        return ""
    cells: dict[tuple[int, int], str] = {}
    x = 0
    level = 0
    for ch in path.steps:
        if ch == "U":
            cells[(level, x)] = "/"
            level += 1
            x += 1
        elif ch == "D":
            level -= 1
            cells[(level, x)] = "\\"
            x += 1
        elif ch == "F":
            cells[(level, x)] = "_"
            x += 1
        else:  # H
            cells[(level, x)] = "_"
            cells[(level, x + 1)] = "_"
            x += 2
    rows = sorted({r for r, _ in cells})
    width = x
    lines = []
    for r in range(rows[-1], rows[0] - 1, -1):
        line = "".join(cells.get((r, c), " ") for c in range(width))
        lines.append(line.rstrip())
    return "\n".join(lines)
