"""Residue-set predicates, products, transforms, and the file format."""

import io
import math

import pytest

import stanley as st

from conftest import naive_mod_3_free, naive_mod_covers_all

ACAL1 = st.ResidueSet(27, (0, 1, 6, 7, 10, 15, 16, 18))


def test_residue_set_validation():
    with pytest.raises(st.MalformedInputError):
        st.ResidueSet(9, (1, 2))  # 0 must be a member
    with pytest.raises(st.MalformedInputError):
        st.ResidueSet(9, (0, 2, 2))
    with pytest.raises(st.MalformedInputError):
        st.ResidueSet(9, (0, 3, 2))
    with pytest.raises(st.MalformedInputError):
        st.ResidueSet(0, (0,))
    assert st.ResidueSet.of(9, [6, 0, 2]).elements == (0, 2, 6)


def test_elements_may_exceed_modulus():
    row = st.ResidueSet(30, (0, 10, 13, 21, 27, 31, 34, 48))
    assert row.max_element == 48
    assert st.verify(row).is_near_modular


def test_is_mod_ap_examples():
    assert not st.is_mod_ap(0, 1, 3, 9)
    assert st.is_mod_ap(0, 2, 4, 9)
    assert st.is_mod_ap(0, 5, 1, 9)  # 0+1 == 2*5 mod 9


def test_is_mod_covered_allows_self_pairs():
    a = st.ResidueSet(3, (0, 2))
    # residue 1 needs the pair x = y = 2
    assert st.is_mod_covered(1, a)
    assert all(st.is_mod_covered(r, ACAL1) for r in range(27))


def test_verify_modular_fixture():
    report = st.verify(ACAL1)
    assert report.is_near_modular and report.is_modular
    assert report.uncovered_residues == ()
    assert report.witness_violation is None


def test_verify_detects_progression():
    report = st.verify(st.ResidueSet(9, (0, 1, 2, 7)))
    assert not report.is_near_modular
    assert report.witness_violation is not None


def test_verify_detects_uncovered():
    report = st.verify(st.ResidueSet(5, (0, 1)))
    assert not report.is_near_modular
    assert 3 in report.uncovered_residues


def test_verify_rejects_repeated_residue():
    report = st.verify(st.ResidueSet(5, (0, 5)))
    assert not report.is_near_modular


def test_verify_rejects_half_modulus_collision():
    # for even N, x and x + N/2 double to the same residue
    report = st.verify(st.ResidueSet(6, (0, 3)))
    assert not report.is_near_modular


def test_verify_near_but_not_modular():
    shifted = st.shift_max(st.ResidueSet(3, (0, 2)), 1)
    report = st.verify(shifted)
    assert report.is_near_modular and not report.is_modular


def test_verify_matches_naive_oracles(small_corpus):
    for a in small_corpus:
        report = st.verify(a)
        assert report.is_near_modular
        assert naive_mod_3_free(a)
        assert naive_mod_covers_all(a)


def test_product_block():
    got = st.product(st.ResidueSet(3, (0, 1)), st.ResidueSet(3, (0, 2)))
    assert got == st.ResidueSet(9, (0, 1, 6, 7))


def test_product_identity():
    unit = st.ResidueSet(1, (0,))
    assert st.product(unit, ACAL1) == ACAL1
    assert st.product(ACAL1, unit) == ACAL1


def test_product_cardinality_and_verdict(small_corpus):
    a, b = small_corpus[1], small_corpus[2]
    ab = st.product(a, b)
    assert ab.modulus == a.modulus * b.modulus
    assert len(ab) == len(a) * len(b)
    assert st.verify(ab).is_near_modular


def test_product_collision_rejected():
    with pytest.raises(st.InvariantViolationError):
        st.product(st.ResidueSet(2, (0, 2)), st.ResidueSet(3, (0, 1)))


def test_scale_preserves_structure():
    doubled = st.scale(st.ResidueSet(3, (0, 2)), 2)
    assert doubled == st.ResidueSet(3, (0, 4))
    assert st.verify(doubled).is_near_modular


def test_scale_requires_coprime_factor():
    with pytest.raises(st.PreconditionError):
        st.scale(st.ResidueSet(3, (0, 2)), 3)
    with pytest.raises(st.PreconditionError):
        st.scale(st.ResidueSet(9, (0, 1, 6, 7)), 6)


def test_shift_max_moves_only_the_top():
    shifted = st.shift_max(st.ResidueSet(3, (0, 2)), 2)
    assert shifted == st.ResidueSet(3, (0, 8))
    assert st.character_of(shifted) == st.character_of(st.ResidueSet(3, (0, 2))) + 2 * 2 * 3
    with pytest.raises(st.PreconditionError):
        st.shift_max(st.ResidueSet(3, (0, 2)), 0)


def test_to_modular_single_step():
    reduced, steps = st.to_modular(st.ResidueSet(3, (0, 4)))
    assert steps == 1
    assert reduced == st.ResidueSet(9, (0, 3, 4, 7))
    assert st.verify(reduced).is_modular


def test_to_modular_already_modular():
    reduced, steps = st.to_modular(ACAL1)
    assert steps == 0 and reduced == ACAL1


def test_to_modular_two_steps():
    row = st.load_appendix().row(30, 74)
    reduced, steps = st.to_modular(row)
    assert steps == 2 and reduced.modulus == 270
    assert st.verify(reduced).is_modular
    assert st.character_of(reduced) == st.character_of(row)


def test_to_modular_takes_no_extra_steps(corpus):
    # each doubling adds the old modulus to the max, so after j steps the
    # max is max + N*(3^j - 1)/2; minimality means the second-to-last
    # stage still had max >= modulus
    for member in corpus:
        reduced, steps = st.to_modular(member)
        assert st.verify(reduced).is_modular
        if steps:
            prior_max = member.max_element + member.modulus * (3 ** (steps - 1) - 1) // 2
            assert prior_max >= member.modulus * 3 ** (steps - 1)


def test_character_of_examples():
    assert st.character_of(ACAL1) == 10
    assert st.character_of(st.ResidueSet(3, (0, 2))) == 2
    assert st.character_of(st.ResidueSet(1, (0,))) == 0
    with pytest.raises(st.NegativeCharacterError):
        st.character_of(st.ResidueSet(9, (0, 1)))


def test_format_and_parse_round_trip(small_corpus):
    for a in small_corpus:
        assert st.parse_set(st.format_set(a)) == a


def test_parse_is_whitespace_tolerant():
    assert st.parse_set("  N = 27 ;  0 , 1,6, 7,10,15 ,16,18 ") == ACAL1


def test_parse_rejects_malformed_lines():
    for line in (
        "27; 0,1",
        "N=27 0,1",
        "N=27;",
        "N=27; 0,1,",
        "N=27; 0,-1",
        "N=27; 0,1x",
        "N=09; 0,1",
        "N=9; 0,011",  # leading zeros make the token ambiguous
    ):
        with pytest.raises(st.FormatError):
            st.parse_set(line)


def test_parse_rejects_unsorted_elements():
    with pytest.raises(st.MalformedInputError):
        st.parse_set("N=9; 0,7,6")


def test_read_sets_skips_comments_and_blanks():
    text = "# header\n\nN=3; 0,1\n  # inline comment line\nN=9; 0,1,6,7\n"
    sets = st.read_sets(text.splitlines())
    assert [a.modulus for a in sets] == [3, 9]


def test_load_set_file_path_and_handle(tmp_path):
    target = tmp_path / "sets.txt"
    target.write_text("N=3; 0,2\nN=27; 0,1,6,7,10,15,16,18\n", encoding="ascii")
    from_path = st.load_set_file(str(target))
    from_handle = st.load_set_file(io.StringIO(target.read_text(encoding="ascii")))
    assert from_path == from_handle
    assert from_path[1] == ACAL1
