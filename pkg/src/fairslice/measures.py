"""Exact piecewise-constant value measures on the unit interval.

Every quantity in the engine is a ``fractions.Fraction``; each operation
here is closed over the rationals, so the procedures and checkers built on
top compare values exactly, with no tolerance anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    AllocationError,
    InsufficientMassError,
    InvalidDensityError,
    ParseError,
)

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

_RATIONAL_RE = re.compile(r"-?\d+(/[1-9]\d*)?")


def as_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction, or ``"p/q"`` string to an exact Fraction.

    Floats are rejected on purpose: binary floats silently misrepresent
    decimal constants, which would defeat exact replication.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"booleans are not rational values: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(
            f"floats are rejected to keep arithmetic exact; write {value!r} as 'p/q'"
        )
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.fullmatch(text):
            raise ParseError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise ParseError(f"cannot read a rational out of {type(value).__name__}")


@dataclass(frozen=True, order=True)
class Interval:
    """Closed subinterval of [0, 1] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo = as_rational(self.lo)
        hi = as_rational(self.hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _normalize_intervals(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    spans = sorted((iv for iv in intervals if iv.hi > iv.lo))
    merged: list[Interval] = []
    for iv in spans:
        if merged and iv.lo <= merged[-1].hi:
            if iv.hi > merged[-1].hi:
                merged[-1] = Interval(merged[-1].lo, iv.hi)
        else:
            merged.append(iv)
    return tuple(merged)


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of closed intervals, kept sorted, disjoint and merged.

    Endpoints carry no mass under the absolutely continuous measures used
    here, so zero-length intervals are dropped and touching intervals merge.
    """

    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize_intervals(self.intervals))

    @classmethod
    def of(cls, *bounds: tuple[RationalLike, RationalLike]) -> "IntervalSet":
        return cls(tuple(Interval(as_rational(a), as_rational(b)) for a, b in bounds))

    @property
    def length(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), ZERO)

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        pieces = []
        for a in self.intervals:
            for b in other.intervals:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if hi > lo:
                    pieces.append(Interval(lo, hi))
        return IntervalSet(tuple(pieces))

    def complement(self) -> "IntervalSet":
        pieces = []
        cursor = ZERO
        for iv in self.intervals:
            if iv.lo > cursor:
                pieces.append(Interval(cursor, iv.lo))
            cursor = iv.hi
        if cursor < ONE:
            pieces.append(Interval(cursor, ONE))
        return IntervalSet(tuple(pieces))

    def contains_point(self, x: RationalLike) -> bool:
        x = as_rational(x)
        return any(iv.lo <= x <= iv.hi for iv in self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(str(iv) for iv in self.intervals)


EMPTY_SET = IntervalSet()
FULL_SET = IntervalSet((Interval(ZERO, ONE),))


# Density validation codes, reported rather than raised so that callers can
# inspect exactly which invariant a declaration breaks.
NEGATIVE_DENSITY = "NEGATIVE_DENSITY"
GAP_OR_OVERLAP = "GAP_OR_OVERLAP"
TOTAL_MASS_NOT_ONE = "TOTAL_MASS_NOT_ONE"


@dataclass(frozen=True)
class DensityViolation:
    code: str
    detail: str


@dataclass(frozen=True)
class DensityReport:
    violations: tuple[DensityViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)


@dataclass(frozen=True)
class Piece:
    """One constant-density span of a step density.

    The density may be any rational at construction time; ``validate``
    reports negatives instead of refusing to represent them.
    """

    lo: Fraction
    hi: Fraction
    density: Fraction

    def __post_init__(self):
        lo = as_rational(self.lo)
        hi = as_rational(self.hi)
        density = as_rational(self.density)
        if not (ZERO <= lo <= ONE and ZERO <= hi <= ONE):
            raise ValueError(f"piece bounds [{lo}, {hi}] outside [0, 1]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "density", density)


@dataclass(frozen=True)
class StepDensity:
    """A value measure given by a piecewise-constant probability density.

    Pieces are stored exactly as declared (no merging), which keeps
    document round-trips value-faithful.
    """

    pieces: tuple[Piece, ...]

    @classmethod
    def of(cls, *triples: tuple[RationalLike, RationalLike, RationalLike]) -> "StepDensity":
        return cls(tuple(Piece(lo, hi, density) for lo, hi, density in triples))

    @classmethod
    def uniform(cls) -> "StepDensity":
        return cls.of((ZERO, ONE, ONE))

    def validate(self) -> DensityReport:
        found: list[DensityViolation] = []
        if not self.pieces:
            found.append(DensityViolation(GAP_OR_OVERLAP, "no pieces declared"))
            return DensityReport(tuple(found))
        if self.pieces[0].lo != ZERO:
            found.append(
                DensityViolation(GAP_OR_OVERLAP, f"first piece starts at {self.pieces[0].lo}, not 0")
            )
        if self.pieces[-1].hi != ONE:
            found.append(
                DensityViolation(GAP_OR_OVERLAP, f"last piece ends at {self.pieces[-1].hi}, not 1")
            )
        for k, piece in enumerate(self.pieces):
            if piece.lo >= piece.hi:
                found.append(
                    DensityViolation(GAP_OR_OVERLAP, f"piece {k} is empty or reversed: [{piece.lo}, {piece.hi}]")
                )
            if piece.density < 0:
                found.append(
                    DensityViolation(NEGATIVE_DENSITY, f"piece {k} has density {piece.density}")
                )
        for k in range(len(self.pieces) - 1):
            a, b = self.pieces[k], self.pieces[k + 1]
            if a.hi != b.lo:
                found.append(
                    DensityViolation(GAP_OR_OVERLAP, f"pieces {k} and {k + 1} do not abut: {a.hi} vs {b.lo}")
                )
        total = sum((p.density * (p.hi - p.lo) for p in self.pieces), ZERO)
        if total != ONE:
            found.append(DensityViolation(TOTAL_MASS_NOT_ONE, f"total mass is {total}"))
        return DensityReport(tuple(found))

    def require_valid(self, label: str = "density") -> None:
        report = self.validate()
        if not report.ok:
            details = "; ".join(f"{v.code}: {v.detail}" for v in report.violations)
            raise InvalidDensityError(f"invalid {label}: {details}", report.violations)

    def mass(self, region: Union[Interval, IntervalSet]) -> Fraction:
        """Exact measure of a region: sum of density times overlap length."""
        spans = (region,) if isinstance(region, Interval) else region.intervals
        total = ZERO
        for piece in self.pieces:
            if piece.density == 0:
                continue
            for span in spans:
                overlap = min(piece.hi, span.hi) - max(piece.lo, span.lo)
                if overlap > 0:
                    total += piece.density * overlap
        return total

    def cdf(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        if not (ZERO <= x <= ONE):
            raise ValueError(f"cdf argument {x} outside [0, 1]")
        return self.mass(Interval(ZERO, x))

    def quantile_left(self, target: RationalLike, start: RationalLike = ZERO) -> Fraction:
        """Leftmost x at or right of ``start`` with mass([start, x]) >= target.

        The anchored form makes chained cutting (moving knife, greedy
        equal-value cuts) a single primitive instead of repeated density
        restrictions.
        """
        target = as_rational(target)
        start = as_rational(start)
        if target < 0:
            raise ValueError(f"quantile target {target} is negative")
        if not (ZERO <= start <= ONE):
            raise ValueError(f"quantile anchor {start} outside [0, 1]")
        if target == 0:
            return start
        acc = ZERO
        for piece in self.pieces:
            seg_lo = max(piece.lo, start)
            if seg_lo >= piece.hi or piece.density == 0:
                continue
            gained = piece.density * (piece.hi - seg_lo)
            if acc + gained >= target:
                return seg_lo + (target - acc) / piece.density
            acc += gained
        raise InsufficientMassError(
            f"only {acc} mass available in [{start}, 1], needed {target}"
        )

    def median_interval(self) -> Interval:
        """Closed set of points where the cdf equals one half.

        Degenerate (lo == hi) exactly when the median is unique.
        """
        lo = self.quantile_left(HALF)
        acc = ZERO
        hi = ZERO
        for piece in reversed(self.pieces):
            if piece.density == 0 or piece.lo >= piece.hi:
                continue
            gained = piece.density * (piece.hi - piece.lo)
            if acc + gained >= HALF:
                hi = piece.hi - (HALF - acc) / piece.density
                break
            acc += gained
        return Interval(lo, hi)

    def breakpoints(self) -> tuple[Fraction, ...]:
        points = {ZERO, ONE}
        for piece in self.pieces:
            points.add(piece.lo)
            points.add(piece.hi)
        return tuple(sorted(points))

    def density_at(self, x: RationalLike) -> Fraction:
        """Density just right of x (pieces are read as half-open [lo, hi))."""
        x = as_rational(x)
        for piece in self.pieces:
            if piece.lo <= x < piece.hi:
                return piece.density
        return ZERO


@dataclass(frozen=True)
class Scenario:
    """Named players with the value densities they declare to the referee."""

    players: tuple[tuple[str, StepDensity], ...]

    def __post_init__(self):
        names = [name for name, _ in self.players]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate player names: {names}")
        if not names:
            raise ValueError("a scenario needs at least one player")
        for name, density in self.players:
            density.require_valid(f"density for {name!r}")

    @classmethod
    def of(cls, declarations: Mapping[str, StepDensity]) -> "Scenario":
        return cls(tuple(declarations.items()))

    @property
    def n(self) -> int:
        return len(self.players)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.players)

    def density(self, name: str) -> StepDensity:
        for player, density in self.players:
            if player == name:
                return density
        raise KeyError(name)

    def index(self, name: str) -> int:
        for i, (player, _) in enumerate(self.players):
            if player == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class Allocation:
    """A partition of [0, 1] into one interval set per player.

    Portions may share endpoints (endpoints carry no mass); the constructor
    checks that interiors are pairwise disjoint and that the union covers
    the whole cake.
    """

    portions: tuple[tuple[str, IntervalSet], ...]

    def __post_init__(self):
        names = [name for name, _ in self.portions]
        if len(set(names)) != len(names):
            raise AllocationError(f"duplicate portion owners: {names}")
        covered = EMPTY_SET
        total = ZERO
        for _, portion in self.portions:
            covered = covered.union(portion)
            total += portion.length
        if covered != FULL_SET:
            raise AllocationError(f"portions cover {covered}, not the whole cake")
        if total != ONE:
            raise AllocationError(
                f"portion lengths sum to {total}: interiors overlap"
            )

    @classmethod
    def of(cls, portions: Mapping[str, IntervalSet]) -> "Allocation":
        return cls(tuple(portions.items()))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.portions)

    def portion(self, name: str) -> IntervalSet:
        for player, portion in self.portions:
            if player == name:
                return portion
        raise KeyError(name)

    def as_dict(self) -> dict[str, IntervalSet]:
        return dict(self.portions)
