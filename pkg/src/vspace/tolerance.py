"""Constancy of labelings over vicinities.

A labeling is *tolerant* at a point when some vicinity of that point
carries a single label.  This module reports tolerance per point, builds
the cover that picks each point's least constant vicinity, and verifies
two facts that hold for every finite space:

* if two points are connected and carry different labels, some point has
  no constant vicinity (``check_nontol``);
* two differently labelled points are never connected in the space
  induced by the labeling (``check_nonconn``).

Both verifiers return a three-way outcome rather than a boolean so that
an unmet hypothesis is never confused with a counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass

from .connectivity import DEFAULT_MAX_COVERS, chain_exists, is_connected
from .errors import ValidationError
from .spaces import (
    FiniteVSpace,
    Labeling,
    induced_space,
    require_total_labeling,
    require_valid_space,
)

HOLDS = "holds"
NOT_APPLICABLE = "notapplicable"
REFUTED = "refuted"


@dataclass(frozen=True)
class ToleranceReport:
    """Per-point tolerance: violators and least constant indices.

    ``violations`` and ``tolerant_indices`` partition the point set.
    """

    violations: frozenset[int]
    tolerant_indices: dict[int, int]


@dataclass(frozen=True)
class TheoremOutcome:
    status: str
    reason: str | None = None
    violations: frozenset[int] | None = None
    witness: dict[int, int] | None = None


@dataclass(frozen=True)
class RefutationTrace:
    """Why a candidate chain in an induced space forces equal labels.

    ``meeting_points[j]`` is the least element of the intersection of the
    label classes of chain[j] and chain[j+1]; all of them, and hence both
    endpoints, carry ``label``.
    """

    chain: tuple[int, ...]
    meeting_points: tuple[int, ...]
    label: str


def constant_on(pi: Labeling, vicinity: frozenset[int]) -> bool:
    """True iff every member of the vicinity carries the same label."""
    labels = set()
    for y in vicinity:
        if y not in pi:
            raise ValidationError(f"labeling undefined on point {y}")
        labels.add(pi[y])
        if len(labels) > 1:
            return False
    return True


def tolerance_report(space: FiniteVSpace, pi: Labeling) -> ToleranceReport:
    """Classify every point as tolerant (with its least constant index) or not.

    Weak padding never produces a new constant index: indices past the
    end denote vicinity 0, which is examined first anyway.
    """
    require_valid_space(space)
    require_total_labeling(pi, space.points)
    violations = set()
    indices: dict[int, int] = {}
    for p in space.points:
        for i, vic in enumerate(space.system(p).vicinities):
            if constant_on(pi, vic):
                indices[p] = i
                break
        else:
            violations.add(p)
    return ToleranceReport(frozenset(violations), indices)


def tolerant_cover(space: FiniteVSpace, pi: Labeling) -> dict[int, int]:
    """The cover choosing each point's least constant vicinity.

    Requires the labeling to be tolerant everywhere; the resulting cover
    has a constant labeling on every chosen vicinity.
    """
    report = tolerance_report(space, pi)
    if report.violations:
        bad = sorted(report.violations)
        raise ValidationError(f"no constant vicinity at points {bad}")
    return dict(sorted(report.tolerant_indices.items()))


def check_nontol(
    space: FiniteVSpace,
    pi: Labeling,
    a: int,
    b: int,
    engine: str = "brute",
    max_covers: int = DEFAULT_MAX_COVERS,
) -> TheoremOutcome:
    """Connected endpoints with different labels force a tolerance failure.

    Returns Holds with the violating points, NotApplicable when the
    hypothesis fails, and Refuted if the implication ever failed (it
    cannot on a valid space; the acceptance suite sweeps this).
    """
    require_valid_space(space)
    require_total_labeling(pi, space.points)
    for e in (a, b):
        if e not in space.points:
            raise ValidationError(f"endpoint {e} not a point of the space")
    if pi[a] == pi[b]:
        return TheoremOutcome(NOT_APPLICABLE, reason="equal labels")
    verdict = is_connected(space, a, b, engine=engine, max_covers=max_covers)
    if not verdict.connected:
        return TheoremOutcome(NOT_APPLICABLE, reason="not connected")
    report = tolerance_report(space, pi)
    if report.violations:
        return TheoremOutcome(HOLDS, violations=report.violations)
    return TheoremOutcome(REFUTED)


def check_nonconn(points, pi: Labeling, a: int, b: int) -> TheoremOutcome:
    """Differently labelled points are not connected in the induced space.

    The induced space has a unique cover, which is returned as the
    witness on Holds.  Equal labels are a precondition error, not a
    NotApplicable outcome.
    """
    space = induced_space(points, pi)
    for e in (a, b):
        if e not in space.points:
            raise ValidationError(f"endpoint {e} not a point of the space")
    if pi[a] == pi[b]:
        raise ValidationError("endpoints carry equal labels")
    unique_cover = {p: 0 for p in space.points}
    if chain_exists(space, unique_cover, a, b) is None:
        return TheoremOutcome(HOLDS, witness=unique_cover)
    return TheoremOutcome(REFUTED)


def refute_chain_in_induced(points, pi: Labeling, chain) -> RefutationTrace:
    """Explain why a chain in an induced space equalises the end labels.

    Walks the chain, taking the least element of each consecutive class
    intersection, and propagates the first point's label through to the
    last.  Raises when consecutive classes are disjoint (not a chain).
    """
    space = induced_space(points, pi)
    seq = list(chain)
    if not seq:
        raise ValidationError("chain must be non-empty")
    for x in seq:
        if x not in space.points:
            raise ValidationError(f"chain point {x} not a point of the space")
    meeting = []
    for x, y in zip(seq, seq[1:]):
        cls_x = space.system(x).vicinities[0]
        cls_y = space.system(y).vicinities[0]
        common = cls_x & cls_y
        if not common:
            raise ValidationError(f"not a chain: classes of {x} and {y} are disjoint")
        meeting.append(min(common))
    return RefutationTrace(tuple(seq), tuple(meeting), pi[seq[0]])
