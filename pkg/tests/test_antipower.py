"""Anti-power detection, the gamma search, and witness verification."""

import numpy as np
import pytest

import oracles
from antipow.antipower import (
    TAG_DEFINITIONAL,
    AntiPowerWitness,
    gamma,
    is_k_anti_power,
    verify_witness,
)
from antipow import _kernels
from antipow.construct import recurrence_constant
from antipow.errors import CapExceededError, UsageError
from antipow.morphism import fixed_point, parse_morphism
from antipow.word import FiniteWord, WordStream

# gamma values frozen from the brute-force oracle before the kernels existed
TM_GAMMA_1_20 = [1, 1, 5, 5, 5, 5, 11, 11, 11, 11, 11, 11, 11, 11, 13, 13, 13, 13, 13, 13]
PD_GAMMA_1_12 = [1, 1, 5, 5, 5, 5, 11, 11, 13, 13, 19, 19]
TM_I5_GAMMA_3_8 = [3, 5, 5, 5, 5, 7]


def alternating_stream() -> WordStream:
    return WordStream(letter_rule=lambda i: (i - 1) % 2, name="(01)^omega")


class TestIsKAntiPower:
    def test_examples(self):
        assert is_k_anti_power(FiniteWord("01"), 2)
        assert not is_k_anti_power(FiniteWord("011010"), 3)  # blocks 01,10,10
        assert is_k_anti_power(FiniteWord("0"), 1)

    def test_shape_error(self):
        with pytest.raises(UsageError, match="does not divide"):
            is_k_anti_power(FiniteWord("011010"), 4)
        with pytest.raises(UsageError, match="k must be"):
            is_k_anti_power(FiniteWord("01"), 0)

    def test_empty_word(self):
        assert is_k_anti_power(FiniteWord(""), 1)
        assert not is_k_anti_power(FiniteWord(""), 2)

    def test_matches_oracle_on_random_words(self):
        rng = np.random.default_rng(42)
        for _ in range(400):
            k = int(rng.integers(1, 7))
            m = int(rng.integers(1, 9))
            w = FiniteWord(rng.integers(0, 2, size=k * m))
            assert is_k_anti_power(w, k) == oracles.is_k_anti_power(w.text, k)


class TestGamma:
    def test_thue_morse_examples(self, tm_stream):
        assert gamma(tm_stream, 1, 1)[0] == 1
        assert gamma(tm_stream, 1, 2)[0] == 1
        m, witness = gamma(tm_stream, 1, 3)
        assert m == 5
        assert [b.text for b in witness.blocks] == ["01101", "00110", "01011"]

    def test_frozen_tables(self, tm_stream, pd_stream):
        got_tm = [gamma(tm_stream, 1, k)[0] for k in range(1, 21)]
        assert got_tm == TM_GAMMA_1_20
        got_pd = [gamma(pd_stream, 1, k)[0] for k in range(1, 13)]
        assert got_pd == PD_GAMMA_1_12
        got_i5 = [gamma(tm_stream, 5, k)[0] for k in range(3, 9)]
        assert got_i5 == TM_I5_GAMMA_3_8

    def test_large_k_spot_values(self, tm_stream):
        assert gamma(tm_stream, 1, 50)[0] == 49
        assert gamma(tm_stream, 1, 100)[0] == 97

    def test_matches_brute_oracle(self, tm, pd, r3):
        for mu in (tm, pd, r3):
            stream = fixed_point(mu)
            text = FiniteWord(stream.prefix_array(1 << 14)).text
            for i in (1, 2, 3, 7):
                for k in range(1, 9):
                    got, witness = gamma(stream, i, k)
                    assert got == oracles.gamma(text, i, k), (mu.text, i, k)
                    assert verify_witness(stream, witness)

    def test_monotone_in_k(self, tm_stream, pd_stream):
        for stream in (tm_stream, pd_stream):
            for i in (1, 5):
                values = [gamma(stream, i, k)[0] for k in range(1, 14)]
                assert all(a <= b for a, b in zip(values, values[1:]))

    def test_witness_shape(self, tm_stream):
        m, witness = gamma(tm_stream, 7, 4)
        assert witness.start == 7
        assert witness.k == 4
        assert witness.block_length == m
        assert witness.construction_tag == TAG_DEFINITIONAL
        assert witness.candidate_c is None
        assert len(witness.blocks) == 4

    def test_default_cap_matches_bound(self, tm, pd):
        # default m_cap is (c1+2)*r*k; the search must finish under it
        for mu in (tm, pd):
            stream = fixed_point(mu)
            cap_unit = recurrence_constant(mu).C
            for i in range(1, 51, 7):
                for k in range(1, 31, 3):
                    m, _ = gamma(stream, i, k)
                    assert m <= cap_unit * k

    def test_default_cap_requires_classified_stream(self):
        with pytest.raises(UsageError, match="non-morphic"):
            gamma(alternating_stream(), 1, 3)
        bad = fixed_point(parse_morphism("0:001,1:111"))
        with pytest.raises(UsageError, match="all-ones-image"):
            gamma(bad, 1, 3)

    def test_cap_exceeded_reports_largest_tried(self, tm_stream):
        with pytest.raises(CapExceededError) as err:
            gamma(tm_stream, 1, 3, m_cap=4)  # true gamma is 5
        assert err.value.largest_tried == 4
        assert err.value.exit_code == 3

    def test_periodic_word_has_no_3_anti_power(self):
        # blocks j and j+2 of (01)^omega are always equal, any m
        with pytest.raises(CapExceededError):
            gamma(alternating_stream(), 1, 3, m_cap=64)

    def test_validation(self, tm_stream):
        with pytest.raises(UsageError):
            gamma(tm_stream, 0, 3)
        with pytest.raises(UsageError):
            gamma(tm_stream, 1, 0)
        with pytest.raises(UsageError):
            gamma(tm_stream, 1, 3, m_cap=0)


class TestVerifyWitness:
    def test_gamma_witness_verifies(self, tm_stream):
        for k in (1, 2, 5):
            _, witness = gamma(tm_stream, 3, k)
            assert verify_witness(tm_stream, witness)

    def test_duplicate_block_rejected(self, tm_stream):
        _, w = gamma(tm_stream, 1, 3)
        forged = AntiPowerWitness(
            start=w.start,
            k=w.k,
            block_length=w.block_length,
            blocks=(w.blocks[0], w.blocks[0], w.blocks[2]),
        )
        assert not verify_witness(tm_stream, forged)

    def test_mutated_letter_rejected(self, tm_stream):
        _, w = gamma(tm_stream, 1, 3)
        flipped = np.array(w.blocks[1].data)
        flipped[0] ^= 1
        forged = AntiPowerWitness(
            start=w.start,
            k=w.k,
            block_length=w.block_length,
            blocks=(w.blocks[0], FiniteWord(flipped), w.blocks[2]),
        )
        assert not verify_witness(tm_stream, forged)

    def test_wrong_block_length_rejected(self, tm_stream):
        _, w = gamma(tm_stream, 1, 2)
        forged = AntiPowerWitness(
            start=w.start,
            k=2,
            block_length=w.block_length + 1,
            blocks=w.blocks,
        )
        assert not verify_witness(tm_stream, forged)

    def test_constructor_validation(self):
        blocks = (FiniteWord("0"), FiniteWord("1"))
        with pytest.raises(UsageError):
            AntiPowerWitness(start=0, k=2, block_length=1, blocks=blocks)
        with pytest.raises(UsageError):
            AntiPowerWitness(start=1, k=3, block_length=1, blocks=blocks)
        with pytest.raises(UsageError):
            AntiPowerWitness(
                start=1, k=2, block_length=1, blocks=blocks, construction_tag="bogus"
            )
        with pytest.raises(UsageError):
            AntiPowerWitness(
                start=1, k=2, block_length=1, blocks=blocks, candidate_c=11
            )

    def test_to_json(self, tm_stream):
        _, w = gamma(tm_stream, 1, 3)
        payload = w.to_json()
        assert payload == {
            "start": 1,
            "k": 3,
            "block_length": 5,
            "c": None,
            "blocks": ["01101", "00110", "01011"],
            "tag": "definitional",
        }


class TestFingerprintDistinctness:
    def test_matches_exhaustive_comparison(self):
        # fingerprinted duplicate detection vs pairwise exact comparison
        rng = np.random.default_rng(2024)
        agree = 0
        for _ in range(10_000):
            k = int(rng.integers(2, 9))
            m = int(rng.integers(1, 65))
            if rng.integers(0, 2):
                text = rng.integers(0, 2, size=k * m).astype(np.uint8)
            else:
                # force likely duplicates: draw blocks from a tiny pool
                pool = rng.integers(0, 2, size=(2, m)).astype(np.uint8)
                picks = rng.integers(0, 2, size=k)
                text = pool[picks].reshape(-1)
            got = _kernels.blocks_distinct(text, 0, k, m)
            blocks = [text[j * m : (j + 1) * m].tobytes() for j in range(k)]
            want = len(set(blocks)) == k
            assert got == want
            agree += 1
        assert agree == 10_000
