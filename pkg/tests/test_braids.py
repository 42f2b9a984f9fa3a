"""Braid words, Garside left normal form, and the generator dictionary."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilden.braids import (
    BraidWord,
    braid_word,
    braids_equal,
    braid_is_trivial,
    build_generator,
    delta,
    exponent_sum,
    format_braid_word,
    full_twist,
    nf_inverse,
    nf_multiply,
    nf_to_braid_word,
    normal_form,
    parse_braid_text,
    perm_of_braid,
    sigma_alphabet,
)
from hilden.perms import identity_perm, psi_of_braid_word


# --- construction --------------------------------------------------------------


def test_braid_word_free_reduces():
    b = braid_word(4, [1, 2, -2, -1, 3])
    assert b.letters == (3,)
    assert exponent_sum(b) == 1


def test_braid_word_validates_letters():
    with pytest.raises(ValueError):
        braid_word(3, [3])
    with pytest.raises(ValueError):
        braid_word(3, [0])
    with pytest.raises(ValueError):
        braid_word(1, [])  # at least two strands


def test_mul_pow_inverse():
    a = braid_word(4, [1, 2])
    b = braid_word(4, [-2])
    assert (a * b).letters == (1,)
    assert (a**2).letters == (1, 2, 1, 2)
    assert a.inverse().letters == (-2, -1)
    with pytest.raises(ValueError):
        a * braid_word(5, [1])


def test_perm_of_braid_matches_psi():
    b = braid_word(5, [1, 3, -2, 4])
    assert perm_of_braid(b) == psi_of_braid_word(b.letters, 5)


# --- normal form anchors ------------------------------------------------------------


def test_nf_of_cancelling_pair_is_trivial():
    nf = normal_form(braid_word(3, [1, -1]))
    assert (nf.power, nf.factors) == (0, ())
    assert nf.canonical_length == 0


def test_nf_of_half_twist_is_one_delta():
    nf = normal_form(braid_word(3, [1, 2, 1]))
    assert (nf.power, nf.factors) == (1, ())


def test_nf_of_single_inverse_letter():
    nf = normal_form(braid_word(2, [-1]))
    assert (nf.power, nf.factors) == (-1, ())
    nf3 = normal_form(braid_word(3, [-1]))
    assert nf3.power == -1 and len(nf3.factors) == 1
    assert str(nf3.factors[0]) == "(1 2 3)"


# 42-letter word over four strands taken from a published worked example of
# left-greedy normal form (letters shifted to 1-based)
KER2 = [c + 1 for c in (
    1, 0, 2, 0, 1, 2, 1, 1, 2, 1, 0, 0, 2, 2, 1, 1, 0, 2, 0, 1, 2,
    1, 0, 0, 2, 1, 1, 0, 2, 0, 2, 1, 0, 1, 0, 2, 0, 2, 1, 1, 0, 2,
)]


def test_published_normal_form_example():
    b = braid_word(4, KER2)
    nf = normal_form(b)
    assert (nf.power, nf.canonical_length) == (0, 13)
    sq = normal_form(b * b)
    assert (sq.power, sq.canonical_length) == (2, 22)
    assert nf_multiply(nf, nf) == sq
    assert nf_multiply(sq, nf_inverse(sq)) == normal_form(braid_word(4, []))


def test_nf_round_trip_through_word():
    rng = random.Random(11)
    for _ in range(60):
        m = rng.randint(2, 6)
        word = [rng.choice([1, -1]) * rng.randint(1, m - 1) for _ in range(rng.randint(0, 30))]
        nf = normal_form(braid_word(m, word))
        assert normal_form(nf_to_braid_word(nf)) == nf


# --- the word problem ------------------------------------------------------------------


def test_braid_relation_and_far_commutation():
    for m in (3, 4, 5, 6):
        for i in range(1, m - 1):
            assert braids_equal(
                braid_word(m, [i, i + 1, i]), braid_word(m, [i + 1, i, i + 1])
            )
        for i in range(1, m - 1):
            for j in range(i + 2, m):
                assert braids_equal(braid_word(m, [i, j]), braid_word(m, [j, i]))


def test_strand_count_must_match():
    with pytest.raises(ValueError):
        braids_equal(braid_word(3, [1]), braid_word(4, [1]))


def test_sphere_relator_is_not_trivial_as_a_braid():
    z = build_generator("z", 1)
    assert not braid_is_trivial(z)


def test_full_twist_is_central():
    rng = random.Random(5)
    for m in (3, 4, 5):
        ft = full_twist(m)
        for _ in range(25):
            word = [rng.choice([1, -1]) * rng.randint(1, m - 1) for _ in range(12)]
            b = braid_word(m, word)
            assert braids_equal(b * ft, ft * b)


def test_delta_conjugation_flips_generators():
    for m in (3, 4, 5):
        d = delta(m)
        for i in range(1, m):
            lhs = d * braid_word(m, [i]) * d.inverse()
            assert braids_equal(lhs, braid_word(m, [m - i]))


def test_canonical_form_is_stable_under_relator_rewrites():
    # rewriting a subword by a braid relation must not change the normal form
    rng = random.Random(23)
    for _ in range(120):
        m = rng.randint(3, 5)
        word = [rng.choice([1, -1]) * rng.randint(1, m - 1) for _ in range(rng.randint(4, 20))]
        b = braid_word(m, word)
        i = rng.randint(1, m - 2)
        variant_letters = list(word)
        pos = rng.randint(0, len(word))
        insertion = rng.choice(
            [
                [i, i + 1, i, -i - 1, -i, -i - 1],  # braid relation commutator
                [i, -i],
                [-i, i],
            ]
        )
        variant_letters[pos:pos] = insertion
        assert normal_form(braid_word(m, variant_letters)) == normal_form(b)


# --- generator dictionary ------------------------------------------------------------


def test_single_index_generator_words():
    n = 2
    assert build_generator("s", n, 1).letters == (2, 3, 1, 2)
    assert build_generator("r", n, 1).letters == (-2, -3, 1, 2)
    assert build_generator("t", n, 1).letters == (1, 1)
    assert build_generator("rho", n).letters == (1, 3, 5)
    assert build_generator("z", n).letters == (1, 2, 3, 4, 5, 5, 4, 3, 2, 1)


def test_pair_generator_words():
    assert build_generator("x", 2, 1, 2).letters == (2, 3, 3, 2)
    assert build_generator("p", 2, 1, 3).letters == (
        4, 5, 3, 4, 2, 3, 1, 2, 2, 3, 1, 2, -4, -3, -5, -4
    )


def test_pair_indices_are_order_insensitive():
    assert build_generator("p", 2, 1, 3) == build_generator("p", 2, 3, 1)


def test_pair_generator_conjugation_recursion():
    # alpha_{i,j} = s_{j-1} alpha_{i,j-1} s_{j-1}^-1 for j-1 > i
    for kind in ("p", "x", "y"):
        for n in (2, 3):
            for i in range(1, n):
                for j in range(i + 2, n + 2):
                    s = build_generator("s", n, j - 1)
                    inner = build_generator(kind, n, i, j - 1)
                    assert build_generator(kind, n, i, j) == s * inner * s.inverse()


def test_p_is_square_of_s_and_xy_split():
    for n in (1, 2):
        for i in range(1, n + 1):
            s = build_generator("s", n, i)
            r = build_generator("r", n, i)
            assert build_generator("p", n, i, i + 1) == s * s
            assert build_generator("x", n, i, i + 1) == s * r.inverse()
            assert build_generator("y", n, i, i + 1) == r.inverse() * s


def test_shift_word():
    # shift = s_n ... s_1 t_1
    for n in (1, 2, 3):
        want = build_generator("t", n, 1)
        for i in range(1, n + 1):
            want = build_generator("s", n, i) * want
        assert build_generator("shift", n) == want


def test_build_generator_validation():
    with pytest.raises(ValueError):
        build_generator("q", 2, 1)
    with pytest.raises(ValueError):
        build_generator("s", 2, 3)  # s needs 1 <= i <= n
    with pytest.raises(ValueError):
        build_generator("t", 2, 4)  # t needs 1 <= i <= n+1
    with pytest.raises(ValueError):
        build_generator("p", 2, 2, 2)  # pair needs i != j
    with pytest.raises(ValueError):
        build_generator("rho", 2, 1)  # rho takes no index


def test_generator_images_land_in_the_right_cosets():
    # every dictionary generator maps into the liftable, block-preserving part
    from hilden.perms import is_liftable, preserves_blocks

    for n in (1, 2, 3):
        m = 2 * n + 2
        words = [build_generator("rho", n), build_generator("shift", n)]
        for i in range(1, n + 1):
            words += [build_generator(k, n, i) for k in ("s", "r")]
        for i in range(1, n + 2):
            words.append(build_generator("t", n, i))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 2):
                words += [build_generator(k, n, i, j) for k in ("p", "x", "y")]
        for w in words:
            pm = psi_of_braid_word(w.letters, m)
            assert is_liftable(pm) and preserves_blocks(pm)


# --- token grammar ----------------------------------------------------------------------


def test_parse_sigma_tokens():
    b = parse_braid_text("g1 G2 g1", strands=4)
    assert b.letters == (1, -2, 1)


def test_parse_identity_literal():
    assert parse_braid_text("1", strands=5).letters == ()
    assert parse_braid_text("g1 1 G1", strands=3).letters == ()


def test_parse_named_tokens():
    assert parse_braid_text("s1", n=2) == build_generator("s", 2, 1)
    assert parse_braid_text("S1", n=2) == build_generator("s", 2, 1).inverse()
    assert parse_braid_text("rho", n=2) == build_generator("rho", 2)
    assert parse_braid_text("RHO", n=2) == build_generator("rho", 2).inverse()
    assert parse_braid_text("p1.3", n=2) == build_generator("p", 2, 1, 3)
    assert parse_braid_text("X1.2", n=2) == build_generator("x", 2, 1, 2).inverse()


def test_parse_errors():
    with pytest.raises(ValueError, match="need n"):
        parse_braid_text("s1", strands=4)
    with pytest.raises(ValueError, match="out of range"):
        parse_braid_text("g9", strands=4)
    with pytest.raises(ValueError, match="unrecognized"):
        parse_braid_text("nope", n=2)
    with pytest.raises(ValueError):
        parse_braid_text("g1")  # needs exactly one of strands/n
    with pytest.raises(ValueError):
        parse_braid_text("g1", strands=3, n=1)


def test_format_parse_round_trip():
    b = braid_word(4, [1, -2, 3, 3])
    assert parse_braid_text(format_braid_word(b), strands=4) == b
    assert format_braid_word(braid_word(4, [])) == "1"


def test_sigma_alphabet_names():
    ab = sigma_alphabet(4)
    assert [ab.name(i) for i in (1, 2, 3)] == ["g1", "g2", "g3"]


# --- property suite ---------------------------------------------------------------------


word_st = st.lists(
    st.tuples(st.sampled_from([1, 2, 3]), st.sampled_from([1, -1])).map(lambda t: t[0] * t[1]),
    max_size=16,
)


@settings(max_examples=80, deadline=None)
@given(word_st, word_st)
def test_nf_multiply_agrees_with_concatenation(ls, ms):
    a, b = braid_word(4, ls), braid_word(4, ms)
    assert nf_multiply(normal_form(a), normal_form(b)) == normal_form(a * b)


@settings(max_examples=80, deadline=None)
@given(word_st)
def test_nf_inverse_agrees_with_word_inverse(ls):
    b = braid_word(4, ls)
    assert nf_inverse(normal_form(b)) == normal_form(b.inverse())
    assert braid_is_trivial(b * b.inverse())


@settings(max_examples=80, deadline=None)
@given(word_st)
def test_nf_preserves_the_underlying_permutation(ls):
    from hilden.perms import compose

    b = braid_word(4, ls)
    nf = normal_form(b)
    assert perm_of_braid(nf_to_braid_word(nf)) == perm_of_braid(b)
    # factor permutations composed with the delta contribution agree too
    w0 = perm_of_braid(delta(4))
    acc = identity_perm(4)
    for _ in range(nf.power % 2):
        acc = compose(acc, w0)  # w0 is an involution, only parity matters
    for f in nf.factors:
        acc = compose(acc, f)
    assert acc == perm_of_braid(b)
