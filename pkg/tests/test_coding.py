import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vspace import (
    CodedSpaceConfig,
    CodingConfigError,
    EnumerationOracle,
    ValidationError,
    build_coded_space,
    build_pi,
    constant_on,
    decode_from_cover,
    is_connected,
    machine_enumeration,
    pair,
    tolerant_cover,
    unpair,
    validate_config,
    validate_space,
    verify_roundtrip,
    verify_witness,
)
from vspace.oracles import DECJZ, HALT, INC

K1 = EnumerationOracle({3: 1}, 3)
K1_CONFIG = CodedSpaceConfig(a=0, b=2, point_bound=25, stage_bound=3)

# Labels of the K1 coded space, derived by applying the three-way rule
# upward from the bases pi(0)=pi(1)="0", pi(2)="1".
K1_PI = {
    0: "0", 1: "0", 2: "1", 3: "0", 4: "0", 5: "1", 6: "0", 7: "0", 8: "1",
    9: "0", 10: "0", 11: "0", 12: "1", 13: "0", 14: "0", 15: "0", 16: "0",
    17: "1", 18: "1", 19: "0", 20: "1", 21: "0", 22: "0", 23: "1", 24: "0",
    25: "0",
}


def test_pair_examples():
    assert pair(3, 1) == 13
    assert pair(0, 0) == 0
    assert unpair(18) == (3, 2)


@given(st.integers(0, 10**9))
def test_unpair_then_pair_roundtrip(code):
    x, s = unpair(code)
    assert pair(x, s) == code


@given(st.integers(0, 10**4), st.integers(0, 10**4))
def test_pair_then_unpair_roundtrip(x, s):
    assert unpair(pair(x, s)) == (x, s)


@given(st.integers(0, 10**4), st.integers(0, 10**4))
def test_pair_dominates_first_argument(x, s):
    code = pair(x, s)
    assert x <= code
    assert (x == code) == ((x, s) == (0, 0))


def test_config_rejects_enumerated_endpoint():
    oracle = EnumerationOracle({0: 1}, 3)
    problems = validate_config(oracle, CodedSpaceConfig(0, 2, 25, 3))
    assert any("endpoint a=0 is enumerated" in p for p in problems)


def test_config_rejects_endpoint_claimed_by_first_code_clause():
    # 13 = code(3, 1) and 3 first appears at stage 1, so 13 would sit in
    # the vicinity of a as a code.
    problems = validate_config(K1, CodedSpaceConfig(0, 13, 25, 3))
    assert any("newly enumerated at 1" in p for p in problems)


def test_config_rejects_endpoint_claimed_by_second_code_clause():
    # 18 = code(3, 2): one stage past the appearance of 3.
    problems = validate_config(K1, CodedSpaceConfig(0, 18, 25, 3))
    assert any("code of (3,2)" in p for p in problems)


def test_config_rejects_required_code_beyond_point_bound():
    problems = validate_config(K1, CodedSpaceConfig(0, 2, 12, 3))
    assert any("required code (3,1) = 13 exceeds" in p for p in problems)


def test_config_rejects_missing_stage_headroom():
    oracle = EnumerationOracle({3: 2}, 3)
    problems = validate_config(oracle, CodedSpaceConfig(0, 2, 25, 3))
    assert any("no constant vicinity" in p for p in problems)


def test_config_rejects_code_free_tail_vicinities():
    # code(3, 4) = 31 > 20: truncation would leave point 3 with a bare
    # vicinity that a witness could select, defeating the decode rule.
    oracle = EnumerationOracle({3: 1}, 4)
    problems = validate_config(oracle, CodedSpaceConfig(0, 2, 20, 4))
    assert any("code-free" in p for p in problems)


def test_config_rejects_zero_enumerated_late_without_being_an_endpoint():
    oracle = EnumerationOracle({0: 1}, 3)
    problems = validate_config(oracle, CodedSpaceConfig(2, 4, 25, 3))
    assert any("least-code decode rule" in p for p in problems)


def test_build_rejects_invalid_config():
    with pytest.raises(CodingConfigError):
        build_coded_space(EnumerationOracle({0: 1}, 3), CodedSpaceConfig(0, 2, 25, 3))


def test_endpoint_vicinities_of_k1():
    coded = build_coded_space(K1, K1_CONFIG)
    assert coded.space.systems[0].vicinities == (frozenset({0, 13}),)
    assert coded.space.systems[2].vicinities == (frozenset({2, 18}),)


def test_enumerated_point_vicinities_of_k1():
    coded = build_coded_space(K1, K1_CONFIG)
    assert coded.space.systems[3].vicinities == (
        frozenset({3, 9, 13, 18, 24}),
        frozenset({3, 13, 18, 24}),
        frozenset({3, 18, 24}),
        frozenset({3, 24}),
    )


def test_truncated_vicinities_deduplicate_in_order():
    coded = build_coded_space(K1, K1_CONFIG)
    assert coded.space.systems[5].vicinities == (frozenset({5, 20}), frozenset({5}))
    for x in range(6, 26):
        assert coded.space.systems[x].vicinities == (frozenset({x}),)


def test_coded_space_is_a_valid_strong_space():
    coded = build_coded_space(K1, K1_CONFIG)
    assert validate_space(coded.space) == []
    assert coded.space.mode == "strong"


def test_empty_oracle_coded_space():
    oracle = EnumerationOracle({}, 2)
    coded = build_coded_space(oracle, CodedSpaceConfig(0, 2, 5, 2))
    assert coded.space.systems[0].vicinities == (frozenset({0}),)
    assert coded.space.systems[2].vicinities == (frozenset({2}),)
    assert coded.space.systems[1].vicinities == (
        frozenset({1, 2, 4}),
        frozenset({1, 4}),
        frozenset({1}),
    )


def test_pi_of_k1_matches_the_threeway_rule():
    assert build_pi(K1, K1_CONFIG) == K1_PI


def test_pi_labels_the_appearance_codes():
    pi = build_pi(K1, K1_CONFIG)
    assert pi[13] == "0"  # code of (3, 1): 3 newly at 1
    assert pi[18] == "1"  # code of (3, 2): one stage later
    assert pi[3] == pi[0] == "0"  # 3 = code(0, 2), 0 never enumerated


def test_pi_endpoint_labels_always_differ():
    for oracle, config in [
        (K1, K1_CONFIG),
        (EnumerationOracle({}, 2), CodedSpaceConfig(0, 2, 5, 2)),
        (EnumerationOracle({3: 1, 5: 4}, 6), CodedSpaceConfig(0, 2, 71, 6)),
    ]:
        pi = build_pi(oracle, config)
        assert pi[config.a] == "0"
        assert pi[config.b] == "1"


def test_appearance_codes_sit_in_both_endpoint_vicinities():
    coded = build_coded_space(K1, K1_CONFIG)
    assert pair(3, 1) in coded.space.systems[0].vicinities[0]
    assert pair(3, 2) in coded.space.systems[2].vicinities[0]


def test_constancy_threshold_around_the_appearance_stage():
    coded = build_coded_space(K1, K1_CONFIG)
    vics = coded.space.systems[3].vicinities
    # Non-constant up to one stage past the appearance, constant after.
    assert not constant_on(coded.pi, vics[0])
    assert not constant_on(coded.pi, vics[1])
    assert not constant_on(coded.pi, vics[2])
    assert constant_on(coded.pi, vics[3])


def k1_all_covers(space):
    lengths = [len(space.systems[p].vicinities) for p in space.points]
    for combo in itertools.product(*(range(k) for k in lengths)):
        yield dict(enumerate(combo))


def test_witness_exclusion_below_the_appearance_stage():
    # No cover assigning point 3 a vicinity with index <= its appearance
    # stage can witness: both endpoint vicinities meet it.
    coded = build_coded_space(K1, K1_CONFIG)
    checked = 0
    for cover in k1_all_covers(coded.space):
        if cover[3] <= 1:
            assert not verify_witness(coded.space, cover, 0, 2)
            checked += 1
    assert checked == 64


def test_every_witness_decodes_the_oracle_exactly():
    coded = build_coded_space(K1, K1_CONFIG)
    expected = {x: x == 3 for x in range(26) if x not in (0, 2)}
    witnesses = 0
    for cover in k1_all_covers(coded.space):
        if verify_witness(coded.space, cover, 0, 2):
            witnesses += 1
            assert decode_from_cover(coded.space, cover, 0, 2) == expected
    assert witnesses == 64


def test_decode_of_tolerant_cover():
    coded = build_coded_space(K1, K1_CONFIG)
    cover = tolerant_cover(coded.space, coded.pi)
    assert cover[3] == 3
    decoded = decode_from_cover(coded.space, cover, 0, 2)
    assert decoded[3] is True
    assert decoded[4] is False
    assert decoded[13] is False  # its own codes exceed the point bound
    assert sorted(x for x, flag in decoded.items() if flag) == [3]


def test_decode_rejects_non_witness_covers():
    coded = build_coded_space(K1, K1_CONFIG)
    all_zero = {p: 0 for p in coded.space.points}
    with pytest.raises(ValidationError):
        decode_from_cover(coded.space, all_zero, 0, 2)


def test_roundtrip_k1():
    report = verify_roundtrip(K1, K1_CONFIG)
    assert report.passed
    assert report.decoded_in == (3,)
    assert report.mismatches == ()


def test_roundtrip_empty_oracle():
    report = verify_roundtrip(EnumerationOracle({}, 2), CodedSpaceConfig(0, 2, 5, 2))
    assert report.passed
    assert report.decoded_in == ()


def test_roundtrip_two_enumerations():
    oracle = EnumerationOracle({3: 1, 5: 4}, 6)
    config = CodedSpaceConfig(0, 2, 71, 6)
    coded = build_coded_space(oracle, config)
    assert coded.space.systems[0].vicinities == (frozenset({0, 13, 50}),)
    assert coded.space.systems[2].vicinities == (frozenset({2, 18, 60}),)
    report = verify_roundtrip(oracle, config)
    assert report.passed
    assert report.decoded_in == (3, 5)


def test_any_witness_decodes_randomized_small_spaces():
    # Decode soundness is not a property of the tolerant cover alone:
    # every witness of every small valid config must decode the oracle.
    rng = random.Random(99)
    spaces_checked = 0
    for _ in range(25):
        t = rng.randint(3, 4)
        xs = rng.sample(range(3, 7), rng.randint(1, 2))
        entries = {x: rng.randint(0, t - 2) for x in xs}
        m = max(pair(x, t) for x in xs)
        oracle = EnumerationOracle(entries, t)
        config = CodedSpaceConfig(0, 2, m, t)
        assert validate_config(oracle, config) == []
        coded = build_coded_space(oracle, config)
        lengths = [len(coded.space.systems[p].vicinities) for p in coded.space.points]
        total = 1
        for k in lengths:
            total *= k
        if total > 2**12:
            continue
        expected = {x: x in entries for x in coded.space.points if x not in (0, 2)}
        for cover in k1_all_covers(coded.space):
            if verify_witness(coded.space, cover, 0, 2):
                assert decode_from_cover(coded.space, cover, 0, 2) == expected
        spaces_checked += 1
    assert spaces_checked >= 10


def test_pruned_engine_handles_a_large_coded_space():
    # Raw cover count here is about two million: far beyond exhaustive
    # testing comfort, easy prey for branch-and-prune.
    oracle = EnumerationOracle({3: 1, 5: 4}, 6)
    coded = build_coded_space(oracle, CodedSpaceConfig(0, 2, 71, 6))
    verdict = is_connected(coded.space, 0, 2, engine="pruned", max_covers=10_000)
    assert not verdict.connected
    assert verify_witness(coded.space, verdict.witness, 0, 2)
    decoded = decode_from_cover(coded.space, verdict.witness, 0, 2)
    assert sorted(x for x, flag in decoded.items() if flag) == [3, 5]


def test_roundtrip_machine_oracle():
    loop = ((DECJZ, 0, 0),)
    programs = [
        loop,                                  # 0 = a: must never halt
        ((HALT,),),                            # halts in 1 step
        loop,                                  # 2 = b
        ((INC, 0), (INC, 0), (HALT,)),         # halts in 3 steps
    ]
    oracle = machine_enumeration(programs, 5)
    assert oracle.entries == {1: 1, 3: 3}
    report = verify_roundtrip(oracle, CodedSpaceConfig(0, 2, 39, 5))
    assert report.passed
    assert report.decoded_in == (1, 3)
