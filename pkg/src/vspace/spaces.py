"""Finite vicinity spaces (V-spaces).

A V-space assigns to every point a non-empty ordered sequence of
vicinities, each a subset of the point set containing the point itself.
Systems come in two flavours: *strong* systems list pairwise distinct
vicinity sets, *weak* systems may repeat.  A weak system conceptually
extends to an infinite sequence by padding with its first vicinity, so an
index past the end of the stored sequence denotes index 0.

Everything here is immutable and purely functional; values can be shared
freely across threads.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

WEAK = "weak"
STRONG = "strong"

# A labeling is a total map from points to label tokens.
Labeling = Mapping[int, str]


@dataclass(frozen=True)
class Violation:
    """One structural defect found by validation."""

    kind: str
    point: int | None
    detail: str

    def __str__(self) -> str:
        where = "space" if self.point is None else f"point {self.point}"
        return f"{self.kind} ({where}): {self.detail}"


@dataclass(frozen=True)
class VicinitySystem:
    """The ordered vicinities of one point."""

    owner: int
    vicinities: tuple[frozenset[int], ...]
    mode: str = STRONG


@dataclass(frozen=True)
class FiniteVSpace:
    """A V-space on the dense point set 0..num_points-1."""

    num_points: int
    systems: Mapping[int, VicinitySystem]
    mode: str = STRONG

    @property
    def points(self) -> range:
        return range(self.num_points)

    def system(self, point: int) -> VicinitySystem:
        try:
            return self.systems[point]
        except KeyError:
            raise ValidationError(f"point {point} has no vicinity system") from None


def make_space(
    vicinities: Mapping[int, Sequence[Iterable[int]]],
    mode: str = STRONG,
    num_points: int | None = None,
) -> FiniteVSpace:
    """Build a space from per-point vicinity lists.

    Points not mentioned as keys get an empty system (flagged later by
    validate_space), so deliberately broken spaces can be constructed.
    """
    mentioned = set(vicinities)
    for vics in vicinities.values():
        for v in vics:
            mentioned.update(v)
    n = num_points if num_points is not None else (max(mentioned) + 1 if mentioned else 0)
    systems = {}
    for p in range(n):
        vics = tuple(frozenset(v) for v in vicinities.get(p, ()))
        systems[p] = VicinitySystem(p, vics, mode)
    return FiniteVSpace(n, systems, mode)


def validate_system(
    system: VicinitySystem,
    num_points: int | None = None,
    mode: str | None = None,
) -> list[Violation]:
    """All invariant violations of one system (empty list means valid)."""
    out: list[Violation] = []
    p = system.owner
    if system.mode not in (WEAK, STRONG):
        out.append(Violation("bad-mode", p, f"unknown mode {system.mode!r}"))
    if mode is not None and system.mode != mode:
        out.append(Violation("mode-mismatch", p, f"system mode {system.mode} != space mode {mode}"))
    if not system.vicinities:
        out.append(Violation("empty-system", p, "system has no vicinities"))
    for i, vic in enumerate(system.vicinities):
        if p not in vic:
            out.append(Violation("owner-not-in-vicinity", p, f"vicinity {i} does not contain its owner"))
        if num_points is not None:
            stray = sorted(m for m in vic if not 0 <= m < num_points)
            if stray:
                out.append(Violation("member-out-of-range", p, f"vicinity {i} members {stray} outside 0..{num_points - 1}"))
    if system.mode == STRONG:
        seen: dict[frozenset[int], int] = {}
        for i, vic in enumerate(system.vicinities):
            if vic in seen:
                out.append(Violation("duplicate-vicinity", p, f"vicinities {seen[vic]} and {i} are equal sets"))
            else:
                seen[vic] = i
    return out


def validate_space(space: FiniteVSpace) -> list[Violation]:
    """All invariant violations of a candidate space (empty list = valid)."""
    out: list[Violation] = []
    if space.mode not in (WEAK, STRONG):
        out.append(Violation("bad-mode", None, f"unknown mode {space.mode!r}"))
    for p in space.points:
        if p not in space.systems:
            out.append(Violation("missing-system", p, "point has no vicinity system"))
    for key, system in sorted(space.systems.items()):
        if not 0 <= key < space.num_points:
            out.append(Violation("unknown-point", key, f"system keyed by point outside 0..{space.num_points - 1}"))
            continue
        if system.owner != key:
            out.append(Violation("owner-mismatch", key, f"system owner is {system.owner}"))
        out.extend(validate_system(system, space.num_points, space.mode))
    return out


def require_valid_space(space: FiniteVSpace) -> None:
    violations = validate_space(space)
    if violations:
        raise ValidationError("invalid space: " + "; ".join(str(v) for v in violations))


def require_total_labeling(pi: Labeling, points: Iterable[int]) -> None:
    missing = sorted(p for p in points if p not in pi)
    if missing:
        raise ValidationError(f"labeling undefined on points {missing}")
    for p, token in pi.items():
        if not isinstance(token, str) or not token:
            raise ValidationError(f"label of point {p} must be a non-empty string")


def weak_from_strong(system: VicinitySystem) -> VicinitySystem:
    """View a strong system as a weak one.

    The sequence is unchanged: the infinite padding of a weak system by
    its vicinity 0 is left implicit (see module docstring).
    """
    if system.mode != STRONG:
        raise ValidationError("weak_from_strong expects a strong system")
    violations = validate_system(system)
    if violations:
        raise ValidationError("invalid system: " + "; ".join(str(v) for v in violations))
    return replace(system, mode=WEAK)


def strong_from_weak(system: VicinitySystem) -> VicinitySystem:
    """Deduplicate a weak system into a strong one.

    Keeps the first occurrence of each distinct vicinity set, in order.
    On finite data this is effective, unlike in the general infinite
    setting.
    """
    if system.mode != WEAK:
        raise ValidationError("strong_from_weak expects a weak system")
    violations = validate_system(system)
    if violations:
        raise ValidationError("invalid system: " + "; ".join(str(v) for v in violations))
    seen: list[frozenset[int]] = []
    for vic in system.vicinities:
        if vic not in seen:
            seen.append(vic)
    return VicinitySystem(system.owner, tuple(seen), STRONG)


def induced_space(points: Iterable[int], pi: Labeling) -> FiniteVSpace:
    """The strong space where each point's single vicinity is its label class."""
    pts = sorted(set(points))
    n = len(pts)
    if pts != list(range(n)):
        raise ValidationError("points must form a dense range 0..n-1")
    require_total_labeling(pi, pts)
    classes: dict[str, frozenset[int]] = {}
    for p in pts:
        classes.setdefault(pi[p], frozenset())
    for token in classes:
        classes[token] = frozenset(p for p in pts if pi[p] == token)
    systems = {p: VicinitySystem(p, (classes[pi[p]],), STRONG) for p in pts}
    return FiniteVSpace(n, systems, STRONG)
