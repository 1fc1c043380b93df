import random
from fractions import Fraction

import pytest

from clifflab.blades import (
    AlgebraSignature,
    BladeError,
    CliffordElement,
    blade_product,
    geometric_product,
    hodge_dual_vector,
    lambda2_embed,
    volume_commutation_sign,
    volume_element,
    volume_square_sign,
)


def naive_blade_product(s, t):
    """Oracle: bubble-sort the concatenated index word, then cancel pairs.

    Each adjacent swap contributes -1; each cancelled pair e_i e_i
    contributes -1.  Independent of the bitmask implementation.
    """
    word = list(s) + list(t)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    out = []
    k = 0
    while k < len(word):
        if k + 1 < len(word) and word[k] == word[k + 1]:
            sign = -sign
            k += 2
        else:
            out.append(word[k])
            k += 1
    return sign, tuple(out)


def rand_element(rng, sig, n_terms=4, max_grade=None):
    top = sig.rank if max_grade is None else max_grade
    out = CliffordElement.zero(sig)
    for _ in range(n_terms):
        k = rng.randint(0, top)
        indices = sorted(rng.sample(range(1, sig.rank + 1), k))
        coeff = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        out = out + CliffordElement.blade(sig, indices, coeff)
    return out


class TestBladeProduct:
    def test_generator_squares_to_minus_one(self):
        sig = AlgebraSignature(3)
        assert blade_product((1,), (1,), sig) == (-1, ())

    def test_shared_index_pair(self):
        # Frozen from the oracle: (1,2,1,3) needs one swap, then cancels (1,1).
        sig = AlgebraSignature(3)
        assert naive_blade_product((1, 2), (1, 3)) == (1, (2, 3))
        assert blade_product((1, 2), (1, 3), sig) == (1, (2, 3))

    def test_disjoint_even_blades(self):
        sig = AlgebraSignature(4)
        assert naive_blade_product((1, 2), (3, 4)) == (1, (1, 2, 3, 4))
        assert blade_product((1, 2), (3, 4), sig) == (1, (1, 2, 3, 4))

    def test_matches_oracle_exhaustively_small_rank(self):
        sig = AlgebraSignature(5)
        subsets = []
        for mask in range(32):
            subsets.append(tuple(i + 1 for i in range(5) if mask >> i & 1))
        for s in subsets:
            for t in subsets:
                assert blade_product(s, t, sig) == naive_blade_product(s, t)

    def test_index_out_of_range(self):
        sig = AlgebraSignature(3)
        with pytest.raises(BladeError):
            blade_product((4,), (1,), sig)


class TestGeometricProduct:
    def test_complex_unit_norm(self):
        sig = AlgebraSignature(2)
        one = CliffordElement.scalar(sig, 1)
        e12 = CliffordElement.blade(sig, (1, 2))
        assert (one + e12) * (one - e12) == CliffordElement.scalar(sig, 2)

    def test_blade_times_blade(self):
        # Oracle on (1,2,2,3): the inner pair cancels with a -1, leaving -e13.
        sig = AlgebraSignature(3)
        assert naive_blade_product((1, 2), (2, 3)) == (-1, (1, 3))
        got = CliffordElement.blade(sig, (1, 2)) * CliffordElement.blade(sig, (2, 3))
        assert got == CliffordElement.blade(sig, (1, 3), -1)

    def test_vector_times_bivector(self):
        sig = AlgebraSignature(2)
        got = CliffordElement.generator(sig, 1) * CliffordElement.blade(sig, (1, 2))
        assert got == CliffordElement.blade(sig, (2,), -1)

    def test_signature_mismatch(self):
        a = CliffordElement.scalar(AlgebraSignature(2), 1)
        b = CliffordElement.scalar(AlgebraSignature(3), 1)
        with pytest.raises(BladeError):
            geometric_product(a, b)

    def test_associativity_random(self):
        rng = random.Random(0)
        for r in range(1, 9):
            sig = AlgebraSignature(r)
            for _ in range(1000):
                a, b, c = (rand_element(rng, sig) for _ in range(3))
                assert (a * b) * c == a * (b * c)

    def test_parity_grading_random(self):
        rng = random.Random(1)
        for r in range(2, 9):
            sig = AlgebraSignature(r)
            for _ in range(50):
                a = rand_element(rng, sig)
                b = rand_element(rng, sig)
                even_a = CliffordElement(
                    sig, {m: c for (m, c) in a._terms.items() if bin(m).count("1") % 2 == 0}
                )
                odd_a = a - even_a
                even_b = CliffordElement(
                    sig, {m: c for (m, c) in b._terms.items() if bin(m).count("1") % 2 == 0}
                )
                odd_b = b - even_b
                assert (even_a * even_b).is_even()
                assert (odd_a * odd_b).is_even()
                assert (even_a * odd_b).is_odd() or (even_a * odd_b).is_zero()
                assert (odd_a * even_b).is_odd() or (odd_a * even_b).is_zero()

    def test_anticommutation_of_generators(self):
        for r in range(1, 17):
            sig = AlgebraSignature(r)
            for i in range(1, r + 1):
                for j in range(1, r + 1):
                    ei = CliffordElement.generator(sig, i)
                    ej = CliffordElement.generator(sig, j)
                    expected = CliffordElement.scalar(sig, -2 if i == j else 0)
                    assert ei * ej + ej * ei == expected


class TestVolume:
    def test_square_sign_small(self):
        sig2 = AlgebraSignature(2)
        v2 = volume_element(sig2)
        assert v2 * v2 == CliffordElement.scalar(sig2, -1)
        assert volume_square_sign(2) == -1

        sig3 = AlgebraSignature(3)
        v3 = volume_element(sig3)
        assert v3 * v3 == CliffordElement.scalar(sig3, 1)
        assert volume_square_sign(3) == 1

    def test_rank4_volume_anticommutes_and_squares_plus(self):
        sig = AlgebraSignature(4)
        v = volume_element(sig)
        assert v * v == CliffordElement.scalar(sig, 1)
        for i in range(1, 5):
            e = CliffordElement.generator(sig, i)
            assert v * e == -(e * v)

    def test_square_sign_formula_matches_product(self):
        for r in range(1, 10):
            sig = AlgebraSignature(r)
            v = volume_element(sig)
            assert v * v == CliffordElement.scalar(sig, volume_square_sign(r))

    def test_center_law(self):
        # The volume commutes with every generator exactly when r is odd.
        for r in range(2, 10):
            sig = AlgebraSignature(r)
            v = volume_element(sig)
            central = all(
                v * CliffordElement.generator(sig, i) == CliffordElement.generator(sig, i) * v
                for i in range(1, r + 1)
            )
            assert central == (r % 2 == 1)
            sign = volume_commutation_sign(r)
            for i in range(1, r + 1):
                e = CliffordElement.generator(sig, i)
                assert v * e == (e * v).scale(sign)


class TestHodgeDual:
    def test_rank3_signs(self):
        sig = AlgebraSignature(3)
        assert hodge_dual_vector(1, sig).index_set == (2, 3)
        assert hodge_dual_vector(1, sig).sign == 1
        assert hodge_dual_vector(2, sig).index_set == (1, 3)
        assert hodge_dual_vector(2, sig).sign == -1
        assert hodge_dual_vector(3, sig).sign == 1

    def test_rank7_first_dual_sign_from_oracle(self):
        sign, rest = naive_blade_product((1,), tuple(range(2, 8)))
        assert (sign, rest) == (1, tuple(range(1, 8)))
        b = hodge_dual_vector(1, AlgebraSignature(7))
        assert b.index_set == tuple(range(2, 8))
        assert b.sign == 1

    def test_normalization_all_ranks(self):
        for r in range(1, 10):
            sig = AlgebraSignature(r)
            for i in range(1, r + 1):
                b = hodge_dual_vector(i, sig)
                prod = CliffordElement.generator(sig, i) * CliffordElement.blade(
                    sig, b.index_set, b.sign
                )
                assert prod == volume_element(sig)

    def test_index_out_of_range(self):
        with pytest.raises(BladeError):
            hodge_dual_vector(4, AlgebraSignature(3))


class TestLambda2Embed:
    def test_orthonormal_pair(self):
        sig = AlgebraSignature(3)
        assert lambda2_embed(1, 2, sig) == CliffordElement.blade(sig, (1, 2))

    def test_antisymmetry(self):
        sig = AlgebraSignature(3)
        assert lambda2_embed(2, 1, sig) == CliffordElement.blade(sig, (1, 2), -1)

    def test_diagonal_vanishes(self):
        sig = AlgebraSignature(3)
        assert lambda2_embed(1, 1, sig).is_zero()


class TestSerialization:
    def test_text_form(self):
        sig = AlgebraSignature(3)
        x = CliffordElement.blade(sig, (1, 2), Fraction(1, 2)) + CliffordElement.scalar(sig, -3)
        assert x.to_text() == "-3·e{} + +1/2·e{1,2}"

    def test_json_round_trip(self):
        rng = random.Random(7)
        sig = AlgebraSignature(5)
        for _ in range(20):
            x = rand_element(rng, sig)
            assert CliffordElement.from_json(x.to_json()) == x

    def test_json_shape(self):
        import json

        sig = AlgebraSignature(2)
        x = CliffordElement.blade(sig, (1, 2))
        assert json.loads(x.to_json()) == {
            "terms": [{"blades": [1, 2], "num": 1, "den": 1}],
            "rank": 2,
        }
