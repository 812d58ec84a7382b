import pytest

from k3latt.binforms import EvenBinaryForm, reduce
from k3latt.catalog import load_catalog
from k3latt.discforms import FiniteQF, parse_form_literal
from k3latt.lattice import GramMatrix
from k3latt.rank3 import (
    Ambiguous,
    NoMatch,
    Rank3Candidate,
    ZeroDiscriminant,
    is_small_discriminant,
    transcendental_of_singular,
    verify_candidate,
)

T0 = GramMatrix.from_rows([[4, 1, 0], [1, 4, 0], [0, 0, -2]])
T1 = GramMatrix.from_rows([[10, 4, 0], [4, 10, 0], [0, 0, -2]])
T1_FORM = FiniteQF.from_generators([2, 2, 42], ["0", "0", "5/42"], {(0, 1): "1/2"})


class TestSmallness:
    def test_minus_30(self):
        assert is_small_discriminant(-30)

    def test_minus_168(self):
        assert is_small_discriminant(-168)

    def test_minus_32(self):
        # k = 4 has 64 | 128
        assert not is_small_discriminant(-32)

    def test_minus_16(self):
        assert not is_small_discriminant(-16)  # 64 | 64

    def test_sign_independent(self):
        assert is_small_discriminant(30) == is_small_discriminant(-30)

    def test_zero(self):
        with pytest.raises(ZeroDiscriminant):
            is_small_discriminant(0)

    def test_failure_propagates_to_multiples(self):
        # once k^3 | 4d kills d, the same k kills d * m
        for d in (-32, -16):
            assert not is_small_discriminant(d)
            for m in (2, 3, 5):
                bound = 4 * abs(d * m)
                k = 4
                assert bound % k**3 == 0
                assert not is_small_discriminant(d * m)


class TestVerifyCandidate:
    def test_t0(self):
        rep = verify_candidate(Rank3Candidate(T0, -30, parse_form_literal("Z30(53/30)")))
        assert rep.verified
        assert (rep.signature_ok, rep.determinant_ok, rep.disc_form_ok, rep.small_ok) == (
            True, True, True, True)

    def test_t1(self):
        rep = verify_candidate(Rank3Candidate(T1, -168, T1_FORM))
        assert rep.verified

    def test_wrong_form_fails_only_disc(self):
        rep = verify_candidate(Rank3Candidate(T0, -30, parse_form_literal("Z30(7/30)")))
        assert not rep.disc_form_ok
        assert rep.signature_ok and rep.determinant_ok and rep.small_ok
        assert not rep.verified

    def test_negated_form_fails(self):
        rep = verify_candidate(Rank3Candidate(T1, -168, T1_FORM.negate()))
        assert not rep.disc_form_ok


class TestTranscendentalOfSingular:
    def test_case_15(self):
        f = transcendental_of_singular(15, parse_form_literal("Z15(26/15)"))
        assert f == EvenBinaryForm(2, 2, 1)

    def test_case_28_with_pairing(self):
        ns = FiniteQF.from_generators([2, 2, 7], ["0", "0", "12/7"], {(0, 1): "1/2"})
        assert transcendental_of_singular(28, ns) == EvenBinaryForm(2, 4, 2)

    def test_case_112_reconstructed(self):
        ns = parse_form_literal("Z8(15/8)+Z14(27/14)")
        assert transcendental_of_singular(112, ns) == EvenBinaryForm(4, 7, 0)

    def test_no_match(self):
        with pytest.raises(NoMatch):
            transcendental_of_singular(15, parse_form_literal("Z15(4/15)"))

    def test_ambiguous_on_two_class_genus(self):
        # d = 56 has a genus with two classes; target either of them
        mirror = FiniteQF.from_lattice(EvenBinaryForm(3, 5, 2).gram)
        with pytest.raises(Ambiguous):
            transcendental_of_singular(56, mirror.negate())

    def test_round_trip_over_catalog(self):
        # negating the lattice's own form must re-select the lattice
        for fam, case, form in load_catalog().rank2_matrices():
            ns = FiniteQF.from_lattice(form.gram).negate()
            try:
                derived = transcendental_of_singular(form.d, ns)
            except Ambiguous:
                pytest.fail(f"{fam} {case}: genus unexpectedly not a singleton")
            assert derived == reduce(form)[0]
