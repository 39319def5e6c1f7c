"""Coding an enumeration oracle into a vicinity space.

Given an oracle and two designated points a < b, the coded space gives a
and b one vicinity each,

    V_a = {a} + {code(x, s) : x first enumerated at s}
    V_b = {b} + {code(x, s) : s >= 1 and x first enumerated at s - 1}

while every other point x gets the descending family

    V_{x,n} = {x} + {code(x, t) : n <= t <= T},

everything truncated to the points 0..M and deduplicated.  The two-value
labeling pi gives a and b different labels yet is tolerant everywhere,
and a and b are never connected.  The payoff is the reverse direction:
from any cover witnessing that (and the designated endpoints), the
oracle's membership can be read back without consulting the oracle,
because x was enumerated at stage s exactly when code(x, s) lies in the
witnessed vicinity of a, and any witness must pick a late enough
vicinity for enumerated points.

Codes use the pairing code(x, s) = (x+s)(x+s+1)/2 + x, a bijection with
x <= code(x, s) and equality only at (0, 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .connectivity import Cover, resolve_choice, validate_cover, verify_witness
from .errors import CodingConfigError, ValidationError
from .oracles import EnumerationOracle
from .spaces import STRONG, FiniteVSpace, VicinitySystem
from .tolerance import tolerance_report, tolerant_cover

LABEL_A = "0"
LABEL_B = "1"


def pair(x: int, s: int) -> int:
    """Diagonal pairing code of (x, s)."""
    if x < 0 or s < 0:
        raise ValidationError("pair expects non-negative arguments")
    d = x + s
    return d * (d + 1) // 2 + x


def unpair(code: int) -> tuple[int, int]:
    """Inverse of pair."""
    if code < 0:
        raise ValidationError("unpair expects a non-negative code")
    d = (isqrt(8 * code + 1) - 1) // 2
    x = code - d * (d + 1) // 2
    return x, d - x


@dataclass(frozen=True)
class CodedSpaceConfig:
    """Designated endpoints and the finite cut-offs of a coded space.

    Points run 0..point_bound, stages 0..stage_bound.
    """

    a: int
    b: int
    point_bound: int
    stage_bound: int


@dataclass(frozen=True)
class CodedSpace:
    space: FiniteVSpace
    pi: dict[int, str]
    config: CodedSpaceConfig


@dataclass(frozen=True)
class RoundtripReport:
    """Results of the end-to-end coding check.

    ``decoded_in`` lists the points the tolerant witness decodes as
    enumerated; ``mismatches`` pairs each disagreeing point with
    (decoded, expected).
    """

    labels_differ: bool
    tolerance_ok: bool
    witness_ok: bool
    agreement_ok: bool
    decoded_in: tuple[int, ...]
    mismatches: tuple[tuple[int, bool, bool], ...]
    witness: dict[int, int] | None

    @property
    def passed(self) -> bool:
        return self.labels_differ and self.tolerance_ok and self.witness_ok and self.agreement_ok


def _bounded_entries(oracle: EnumerationOracle, config: CodedSpaceConfig) -> dict[int, int]:
    """Oracle entries visible within the configured stage bound."""
    return {x: s for x, s in oracle.entries.items() if s <= config.stage_bound}


def validate_config(oracle: EnumerationOracle, config: CodedSpaceConfig) -> list[str]:
    """All reasons the configuration cannot carry the coding (empty = valid).

    Beyond the endpoint conditions, every value x <= M enumerated at
    stage s needs headroom: s + 2 <= T and code(x, T) <= M.  Otherwise
    truncation leaves x with a code-free vicinity that a witness cover
    may select, and the decode step would under-report x.
    """
    problems: list[str] = []
    a, b, m, t = config.a, config.b, config.point_bound, config.stage_bound
    if not 0 <= a < b:
        problems.append(f"endpoints must satisfy 0 <= a < b, got a={a} b={b}")
    if b > m:
        problems.append(f"endpoint b={b} exceeds point bound {m}")
    if t < 0:
        problems.append(f"stage bound {t} must be non-negative")
    if problems:
        return problems
    entries = _bounded_entries(oracle, config)
    for e, name in ((a, "a"), (b, "b")):
        if e in entries:
            problems.append(f"endpoint {name}={e} is enumerated (stage {entries[e]})")
        x, s = unpair(e)
        if entries.get(x) == s:
            problems.append(
                f"endpoint {name}={e} is the code of ({x},{s}) with {x} newly enumerated at {s}"
            )
        if s >= 1 and entries.get(x) == s - 1:
            problems.append(
                f"endpoint {name}={e} is the code of ({x},{s}) with {x} newly enumerated at {s - 1}"
            )
    if 0 not in (a, b) and entries.get(0, 0) >= 1:
        problems.append(
            "0 enumerated at a positive stage but not an endpoint: "
            "its own code (0,0) would defeat the least-code decode rule"
        )
    for x in sorted(entries):
        if x > m:
            continue
        s = entries[x]
        if pair(x, s) > m:
            problems.append(f"required code ({x},{s}) = {pair(x, s)} exceeds point bound {m}")
        if pair(x, s + 1) > m:
            problems.append(f"required code ({x},{s + 1}) = {pair(x, s + 1)} exceeds point bound {m}")
        if s + 2 > t:
            problems.append(
                f"value {x} enumerated at stage {s} leaves no constant vicinity below stage bound {t}"
            )
        if pair(x, t) > m:
            problems.append(
                f"code ({x},{t}) = {pair(x, t)} exceeds point bound {m}: "
                f"truncation would leave {x} a code-free vicinity"
            )
    return problems


def build_pi(oracle: EnumerationOracle, config: CodedSpaceConfig) -> dict[int, str]:
    """The two-value labeling of the coded space.

    Bases first: pi(a) = 0, pi(b) = 1, then pi(0) = pi(1) = 0 unless
    already set.  Every remaining y is the code of some (x, s) with
    x < y: label 0 when x newly enumerated at s, label 1 when s >= 1 and
    x newly enumerated at s - 1, otherwise copy pi(x).
    """
    problems = validate_config(oracle, config)
    if problems:
        raise CodingConfigError("; ".join(problems))
    entries = _bounded_entries(oracle, config)
    pi: dict[int, str] = {config.a: LABEL_A, config.b: LABEL_B}
    pi.setdefault(0, LABEL_A)
    pi.setdefault(1, LABEL_A)
    for y in range(config.point_bound + 1):
        if y in pi:
            continue
        x, s = unpair(y)
        if entries.get(x) == s:
            pi[y] = LABEL_A
        elif s >= 1 and entries.get(x) == s - 1:
            pi[y] = LABEL_B
        else:
            pi[y] = pi[x]
    return pi


def build_coded_space(oracle: EnumerationOracle, config: CodedSpaceConfig) -> CodedSpace:
    """Construct the coded space and its labeling for a valid config."""
    problems = validate_config(oracle, config)
    if problems:
        raise CodingConfigError("; ".join(problems))
    entries = _bounded_entries(oracle, config)
    a, b, m, t = config.a, config.b, config.point_bound, config.stage_bound
    v_a = {a} | {pair(x, s) for x, s in entries.items() if pair(x, s) <= m}
    v_b = {b} | {pair(x, s + 1) for x, s in entries.items() if pair(x, s + 1) <= m}
    systems: dict[int, VicinitySystem] = {
        a: VicinitySystem(a, (frozenset(v_a),), STRONG),
        b: VicinitySystem(b, (frozenset(v_b),), STRONG),
    }
    for x in range(m + 1):
        if x in (a, b):
            continue
        vics: list[frozenset[int]] = []
        for n in range(t + 1):
            vic = frozenset({x} | {pair(x, u) for u in range(n, t + 1) if pair(x, u) <= m})
            if vic not in vics:
                vics.append(vic)
        systems[x] = VicinitySystem(x, tuple(vics), STRONG)
    space = FiniteVSpace(m + 1, systems, STRONG)
    return CodedSpace(space, build_pi(oracle, config), config)


def _stages_from_endpoint_vicinity(chosen_a: frozenset[int], a: int) -> dict[int, int]:
    """Read first-appearance stages back out of a's chosen vicinity.

    Every member other than a itself is the code of (x, s) for some x
    enumerated at s; the point a is skipped because it sits in V_a as a
    base point, not as a code.
    """
    stages: dict[int, int] = {}
    for member in chosen_a:
        if member == a:
            continue
        x, s = unpair(member)
        if x not in stages or s < stages[x]:
            stages[x] = s
    return stages


def decode_from_cover(space: FiniteVSpace, cover: Cover, a: int, b: int) -> dict[int, bool]:
    """Recover enumerated-set membership from a witness cover.

    For each point x other than the endpoints, find the least t with
    code(x, t) in x's chosen vicinity; x is reported enumerated iff such
    a t exists and x's first-appearance stage (read from a's chosen
    vicinity) is at most t.  Vicinities holding no code of their owner
    decode as not enumerated.  The cover must witness that a and b are
    not connected.
    """
    validate_cover(space, cover)
    if not verify_witness(space, cover, a, b):
        raise ValidationError("cover is not a witness: it admits a chain between the endpoints")
    chosen_a = resolve_choice(space.system(a), cover[a])
    stages = _stages_from_endpoint_vicinity(chosen_a, a)
    decoded: dict[int, bool] = {}
    for x in space.points:
        if x in (a, b):
            continue
        chosen = resolve_choice(space.system(x), cover[x])
        least_t: int | None = None
        for member in chosen:
            mx, mt = unpair(member)
            if mx == x and (least_t is None or mt < least_t):
                least_t = mt
        decoded[x] = least_t is not None and x in stages and stages[x] <= least_t
    return decoded


def verify_roundtrip(oracle: EnumerationOracle, config: CodedSpaceConfig) -> RoundtripReport:
    """Build, witness, decode, and compare against the oracle.

    Checks, in order: the endpoint labels differ; the labeling is
    tolerant at every point; the cover of least constant vicinities
    witnesses non-connectedness; decoding that cover agrees with oracle
    membership on every non-endpoint point up to the stage bound.
    """
    coded = build_coded_space(oracle, config)
    space, pi, cfg = coded.space, coded.pi, coded.config
    labels_differ = pi[cfg.a] != pi[cfg.b]
    report = tolerance_report(space, pi)
    tolerance_ok = not report.violations
    witness: dict[int, int] | None = None
    witness_ok = False
    decoded: dict[int, bool] = {}
    mismatches: list[tuple[int, bool, bool]] = []
    if tolerance_ok:
        witness = tolerant_cover(space, pi)
        witness_ok = verify_witness(space, witness, cfg.a, cfg.b)
    if witness_ok:
        assert witness is not None
        decoded = decode_from_cover(space, witness, cfg.a, cfg.b)
        entries = _bounded_entries(oracle, cfg)
        for x in sorted(decoded):
            expected = x in entries
            if decoded[x] != expected:
                mismatches.append((x, decoded[x], expected))
    agreement_ok = witness_ok and not mismatches
    return RoundtripReport(
        labels_differ=labels_differ,
        tolerance_ok=tolerance_ok,
        witness_ok=witness_ok,
        agreement_ok=agreement_ok,
        decoded_in=tuple(x for x in sorted(decoded) if decoded[x]),
        mismatches=tuple(mismatches),
        witness=witness,
    )
