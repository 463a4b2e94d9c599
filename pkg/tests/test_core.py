"""Greedy machinery: frozen worked examples plus oracle cross-checks."""

import math

import pytest

import stanley as st
from stanley.search import naive_greedy

from conftest import naive_is_3_free, naive_is_covered


def test_is_3_free_examples():
    assert st.is_3_free([0, 1, 3, 4])
    assert not st.is_3_free([0, 1, 2])
    assert not st.is_3_free([0, 1, 3, 5])  # 1,3,5


def test_is_covered_examples():
    assert st.is_covered(5, [0, 1, 3, 4])  # 2*3-1
    assert st.is_covered(7, [0, 1, 3, 4])  # 2*4-1
    assert not st.is_covered(9, [0, 1, 3, 4])
    assert not st.is_covered(3, [0, 1, 3, 4])  # being a term is not coverage


def test_covered_matches_oracle():
    terms = st.greedy_extend([0], 20).terms
    for z in range(0, 2 * terms[-1] + 2):
        assert st.is_covered(z, terms) == naive_is_covered(z, terms)


def test_term_validation():
    for bad in ([], [0, 0], [1, 0], [-1, 2], [0, 1.5], [0, True]):
        with pytest.raises(st.MalformedInputError):
            st.is_3_free(bad)


def test_prefix_rejects_progressions():
    with pytest.raises(st.MalformedInputError):
        st.StanleyPrefix.from_terms([0, 1, 2])
    prefix = st.StanleyPrefix.from_terms([0, 1, 3, 4])
    assert len(prefix) == 4 and prefix.last == 4


def test_greedy_from_zero():
    assert st.greedy_extend([0], 8).terms == (0, 1, 3, 4, 9, 10, 12, 13)


def test_greedy_zero_two():
    # 4 would close the progression 0,2,4; then 5 is free
    assert st.greedy_extend([0, 2], 4).terms == (0, 2, 3, 5)


def test_greedy_seeded_block():
    prefix = st.greedy_extend([0, 2, 5, 6], 16)
    assert prefix.terms[:9] == (0, 2, 5, 6, 9, 11, 14, 15, 27)


def test_greedy_matches_naive_oracle():
    for seed in ([0], [0, 2], [0, 4], [0, 5], [0, 1, 6, 7, 10, 15, 16, 18]):
        fast = st.greedy_extend(seed, 40).terms
        assert list(fast) == naive_greedy(list(seed), 40)
        assert naive_is_3_free(fast)


def test_greedy_idempotent_on_prefixes():
    long = st.greedy_extend([0], 64).terms
    for cut in (1, 2, 5, 17, 33):
        assert st.greedy_extend(long[:cut], 64).terms == long


def test_greedy_translates_with_the_seed():
    # progressions are translation invariant, so a shifted seed shifts
    # the whole sequence
    for seed, shift in (([0], 7), ([0, 2], 1), ([0, 2], 5), ([0, 1, 5], 4)):
        base = st.greedy_extend(seed, 12).terms
        moved = st.greedy_extend([x + shift for x in seed], 12).terms
        assert moved == tuple(x + shift for x in base)


def test_greedy_argument_errors():
    with pytest.raises(st.MalformedInputError):
        st.greedy_extend([0, 1, 2], 5)  # seed already has a progression
    with pytest.raises(st.MalformedInputError):
        st.greedy_extend([0, 2], 1)  # shorter than the seed
    with pytest.raises(st.ResourceLimitError):
        st.greedy_extend([0], 10, cap=5)


def test_detect_character_base_sequence():
    profile = st.detect_character(st.greedy_extend([0], 16))
    assert profile == st.CharacterProfile(0, 0, 1, 3)
    assert profile.levels_verified == 4


def test_detect_character_seeded():
    profile = st.detect_character(st.greedy_extend([0, 1, 6, 7, 10, 15, 16, 18], 64))
    assert (profile.character, profile.settle_level, profile.repeat_factor) == (10, 3, 27)


def test_detect_character_two_seed():
    profile = st.detect_character(st.greedy_extend([0, 2], 8))
    assert (profile.character, profile.settle_level, profile.repeat_factor) == (2, 1, 3)


def test_detect_character_tampered():
    assert st.detect_character([0, 1, 3, 5]) is None


def test_detect_character_too_short():
    with pytest.raises(st.PrefixTooShortError):
        st.detect_character([0, 1, 3])


def test_detect_agrees_with_brute_oracle():
    for seed in ([0], [0, 2], [0, 2, 5, 6], [0, 1, 6, 7, 10, 15, 16, 18]):
        brute = st.brute_character(list(seed), 3)
        fast = st.detect_character(st.greedy_extend(seed, 1 << ((len(seed) - 1).bit_length() + 3)))
        assert (brute is None) == (fast is None)
        if brute is not None:
            assert brute.character == fast.character
            assert brute.settle_level == fast.settle_level


def test_omitted_set_base():
    gaps = st.omitted_set(st.greedy_extend([0], 12), 20)
    assert gaps.elements == () and gaps.omega is None


def test_omitted_set_seeded():
    prefix = st.greedy_extend([0, 1, 6, 7, 10, 15, 16, 18], 16)
    gaps = st.omitted_set(prefix, 27)
    assert gaps.elements == (3, 4, 5, 9)
    assert gaps.omega == 9
    assert gaps.scan_bound == 27


def test_omitted_bound_below_character():
    # largest omitted value stays under the detected character
    prefix = st.greedy_extend([0, 1, 6, 7, 10, 15, 16, 18], 64)
    profile = st.detect_character(prefix)
    gaps = st.omitted_set(prefix, prefix.last)
    assert gaps.omega is not None and gaps.omega < profile.character


def test_omitted_requires_scanned_range():
    with pytest.raises(st.PrefixTooShortError):
        st.omitted_set([0, 1, 3, 4], 10)  # prefix only decides values up to 4


def test_growth_diagnostic_window():
    low, high = st.growth_diagnostic(st.greedy_extend([0], 256))
    assert 0.5 < low <= high < 1.5
    assert high == pytest.approx(1.0)


def test_growth_diagnostic_shortest_allowed():
    low, high = st.growth_diagnostic(st.greedy_extend([0], 8))
    assert high == pytest.approx(1.0)  # a_4 = 9 = 4**log2(3)
    assert low == pytest.approx(13 / 7 ** math.log2(3))


def test_growth_diagnostic_rejects_short_input():
    with pytest.raises(st.PrefixTooShortError):
        st.growth_diagnostic([0, 1, 3, 4])
