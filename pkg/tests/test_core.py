import pytest
from hypothesis import given, strategies as st

from codewheels.core import (
    Code,
    NotAFace,
    SimplicialComplex,
    fmt_set,
    is_face,
    labels,
    link,
    maximal_sets,
    neural_complex,
    neurons,
    parse_set,
    parse_sets,
    relabel_compact,
    restrict,
    subsets,
    trunk,
    trunk_covered_by,
)
from tests.strategies import codes, codes_with_set

C_STAR = Code.parse("2345 123 134 145 13 14 23 34 45 3 4")
C2 = Code.parse("1236 234 135 456 13 23 4 5 6")
C_TL = Code.parse("123 145 245 246 346 24 45 46 1 2 3")
EX6 = Code.parse("2356 123 14 235 236 12 23 1 2 4")


def S(text: str) -> int:
    return parse_set(text)


def sets(text: str) -> list[int]:
    return sorted(parse_sets(text))


class TestGrammar:
    def test_digit_and_brace_forms_agree(self):
        assert parse_set("2356") == parse_set("{2,3,5,6}") == neurons(2, 3, 5, 6)

    def test_empty_tokens(self):
        assert parse_set("-") == parse_set("{}") == parse_set("∅") == 0

    def test_brace_form_for_large_labels(self):
        assert labels(parse_set("{1,10,12}")) == [1, 10, 12]
        assert fmt_set(neurons(1, 10)) == "{1,10}"

    def test_listing_mixes_forms(self):
        assert parse_sets("12 {3, 4} - 5") == [neurons(1, 2), neurons(3, 4), 0, neurons(5)]

    @pytest.mark.parametrize("bad", ["10", "1a", "{1,2", "x"])
    def test_rejects_bad_tokens(self, bad):
        with pytest.raises(ValueError):
            parse_sets(bad)

    @given(st.integers(0, (1 << 16) - 1))
    def test_format_parse_round_trip(self, mask):
        assert parse_set(fmt_set(mask)) == mask


class TestCode:
    def test_empty_word_inserted_and_sorted(self):
        c = Code.parse("12 1 12")
        assert c.words == (0, neurons(1), neurons(1, 2))

    def test_word_outside_ground_set_rejected(self):
        with pytest.raises(ValueError):
            Code(2, (neurons(3),))

    def test_equality_ignores_cache(self):
        a, b = Code.parse("12 1"), Code.parse("12 1")
        a.trunk_mask(1)
        assert a == b and hash(a) == hash(b)

    def test_str_lists_longest_first(self):
        assert str(Code.parse("1 12")) == "12 1 -"


class TestTrunk:
    def test_c2_trunk_of_35(self):
        assert trunk(C2, S("35")) == [S("135")]

    def test_empty_set_trunk_is_whole_code(self):
        assert trunk(C_TL, 0) == list(C_TL.words)

    def test_c_tl_trunk_of_4(self):
        assert sorted(trunk(C_TL, S("4"))) == sets("145 245 246 346 24 45 46")

    @given(codes(), st.integers(0, 31), st.integers(0, 31))
    def test_trunk_of_union_is_intersection(self, code, a, b):
        top = (1 << code.n) - 1
        a, b = a & top, b & top
        assert set(trunk(code, a | b)) == set(trunk(code, a)) & set(trunk(code, b))

    @given(codes_with_set())
    def test_face_iff_nonempty_trunk(self, pair):
        code, sigma = pair
        assert is_face(neural_complex(code), sigma) == bool(trunk(code, sigma))


class TestComplex:
    def test_facets_of_c_star(self):
        assert list(neural_complex(C_STAR).facets) == sets("2345 123 134 145")

    def test_facets_of_c_tl(self):
        assert list(neural_complex(C_TL).facets) == sets("123 145 245 246 346")

    def test_empty_code_gives_empty_face_complex(self):
        assert neural_complex(Code(1, ())).facets == (0,)

    def test_is_face_examples(self):
        assert not is_face(neural_complex(C2), S("3456"))
        assert not is_face(neural_complex(C_TL), S("1234"))
        assert is_face(neural_complex(C_TL), 0)

    def test_facets_form_antichain(self):
        cx = SimplicialComplex.parse("12 123 3 45")
        assert list(cx.facets) == sets("123 45")

    def test_faces_each_once(self):
        cx = SimplicialComplex.parse("123 234")
        faces = list(cx.faces())
        assert len(faces) == len(set(faces)) == 12

    def test_dim_and_purity(self):
        cx = neural_complex(C_STAR)
        assert cx.dim == 3 and not cx.is_pure
        assert neural_complex(C_TL).is_pure


class TestLink:
    def test_link_of_1_in_c_star_is_path(self):
        assert list(link(neural_complex(C_STAR), S("1")).facets) == sets("23 34 45")

    def test_link_of_4_in_c_tl_is_path(self):
        assert list(link(neural_complex(C_TL), S("4")).facets) == sets("15 25 26 36")

    def test_link_of_empty_set_is_complex(self):
        cx = neural_complex(C_TL)
        assert link(cx, 0) == cx

    def test_link_of_non_face_raises(self):
        with pytest.raises(NotAFace):
            link(neural_complex(C_TL), S("1234"))

    @given(codes(), st.integers(0, 31), st.integers(0, 31))
    def test_link_of_link(self, code, a, b):
        cx = neural_complex(code)
        top = (1 << code.n) - 1
        a, b = a & top, b & top & ~a
        if not is_face(cx, a | b):
            return
        assert link(link(cx, a), b) == link(cx, a | b)


class TestRestrict:
    def test_example6_restricted_to_56(self):
        assert restrict(EX6, S("56")) == Code(6, tuple(parse_sets("56 5 6")))

    def test_full_restriction_is_identity(self):
        assert restrict(C_STAR, S("12345")) == C_STAR

    def test_c_star_restricted_to_1(self):
        assert restrict(C_STAR, S("1")).words == (0, S("1"))

    @given(codes(), st.integers(0, 31))
    def test_idempotent(self, code, chi):
        chi &= (1 << code.n) - 1
        once = restrict(code, chi)
        assert restrict(once, chi) == once

    def test_relabel_compact(self):
        c = relabel_compact(Code.parse("135 3 5"), S("35"))
        assert c == Code(2, tuple(parse_sets("12 1 2")))


class TestTrunkCover:
    def test_c2(self):
        assert trunk_covered_by(C2, S("3"), [S("13"), S("23")])

    def test_empty_cover_set(self):
        assert trunk_covered_by(C_TL, S("4"), [0])

    def test_c_tl_fails(self):
        assert not trunk_covered_by(C_TL, S("4"), [S("24")])

    @given(codes(), st.integers(0, 31), st.integers(0, 31))
    def test_singleton_cover_is_trunk_inclusion(self, code, phi, psi):
        top = (1 << code.n) - 1
        phi, psi = phi & top, psi & top
        assert trunk_covered_by(code, phi, [psi]) == set(trunk(code, phi)).issubset(trunk(code, psi))


@given(st.lists(st.integers(0, 63), max_size=10))
def test_maximal_sets_is_antichain_of_maxima(family):
    top = maximal_sets(family)
    assert all(a & ~b for a in top for b in top if a != b)
    assert all(any(s & ~t == 0 for t in top) for s in family)


@given(st.integers(0, 255))
def test_subsets_ascending_and_complete(mask):
    subs = list(subsets(mask))
    assert subs == sorted(s for s in range(mask + 1) if s & ~mask == 0)
