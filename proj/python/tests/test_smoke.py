from fractions import Fraction

import pytest

import koopdh


def test_modular_dynamics():
    params = koopdh.DhParams(7, 3)
    assert koopdh.simulate(params, 6) == [1, 3, 2, 6, 4, 5, 1]
    assert koopdh.mod_pow(3, 4, 7) == 4
    assert koopdh.find_primitive_root(23) == 5
    assert koopdh.dh_exchange(params, 2, 5) == {"c_e": 2, "c_d": 5, "c_ed": 4}
    assert koopdh.shared_secret_intersection(2, 5, params) == (4, 2, 5)
    assert koopdh.discrete_log_bruteforce(1, params) == 6


def test_big_integers_round_trip():
    big = 2**127 - 1
    assert koopdh.is_prime(97)
    assert koopdh.mod_pow(big, 2, 10**40) == big * big % 10**40


def test_invalid_parameters_raise_value_error():
    with pytest.raises(ValueError):
        koopdh.DhParams(7, 2)


def test_lifting_and_closing():
    params = koopdh.DhParams(7, 3)
    alpha = koopdh.canonical_alpha(7, 3)
    assert alpha == [1, -1, 0, 1]
    assert all(isinstance(a, Fraction) for a in alpha)
    assert koopdh.verify_closing(params, alpha, periods=2)
    assert not koopdh.verify_closing(params, [Fraction(-1), 0, 0])
    assert koopdh.minimal_lifting_dimension(koopdh.DhParams(23, 5)) == 12
    assert koopdh.lift_ciphertext(4, params, 3) == [4, 5, 1, 3]
    assert koopdh.lift_complex(1, koopdh.DhParams(5, 2), 1) == [Fraction(2, 5), Fraction(4, 5)]


def test_spectral_recovery():
    params = koopdh.DhParams(23, 5)
    for e in range(1, 23):
        assert koopdh.recover_exponent(params, koopdh.mod_pow(5, e, 23))[0] == e
    assert koopdh.recover_exponent(koopdh.DhParams(7, 3), 4) == (4, "even")
    assert len(koopdh.eigenvalues(7)) == 4


def test_edmd_and_complexity():
    series = koopdh.simulate(koopdh.DhParams(7, 3), 12)
    fit = koopdh.edmd_fit(series, 3, 7)
    assert fit["residual_sq"] == 0
    assert fit["a_hat"] == koopdh.companion_matrix(3, koopdh.canonical_alpha(7, 3))
    assert koopdh.berlekamp_massey([0, 1, 2] * 3) == (3, [0, 0, 1])
    assert koopdh.berlekamp_massey([0, 1, 2] * 3, field_prime=3)[0] == 2
    assert koopdh.lfsr_generate([3, -2], [1, 4], 5) == [1, 4, 10, 22, 46]


def test_reports():
    report = koopdh.run_experiment({"primes": [5, 7], "generators": "all", "seed": 1})
    assert report["schema_version"] == 1
    assert report["consistent"] is True
    assert [r["p"] for r in report["records"]] == [5, 5, 7, 7]
    assert koopdh.recover_report(koopdh.DhParams(5, 2), c=1)["parity"] == "unavailable"
    assert koopdh.verify_theorem_report(5, 13)["consistent"] is True
    with pytest.raises(ValueError):
        koopdh.run_experiment({"primes": [3]})


def test_module_location():
    assert koopdh._koopdh.__name__ == "koopdh._koopdh"
