import json
from math import gcd

import pytest
from hypothesis import given, strategies as st

from incongruence import families as fam
from incongruence.arith import kronecker, prime_factors, primes_in
from incongruence.errors import PreconditionError
from incongruence.generators import frobenius_coeffs, generate, partition_coeffs
from incongruence.selftest import dset_soundness
from incongruence.sieve import (
    RAMANUJAN,
    TWO_ELL,
    IncongruenceCertificate,
    certify,
    corollary_conditions,
    exceptional_residue,
    mock_precondition,
    prohibited_residues_eta,
    prohibited_residues_mock,
    sieve_residue,
    two_ell_analysis,
)

import oracles


# -- Kronecker symbol ---------------------------------------------------------

def test_kronecker_examples():
    for p in primes_in(3, 60):
        assert kronecker(1, p) == 1
    assert kronecker(2, 5) == -1
    assert kronecker(-23, 5) == kronecker(2, 5) == -1


@pytest.mark.parametrize("p", primes_in(3, 200))
def test_kronecker_matches_square_list(p):
    for a in range(-3 * p, 3 * p):
        assert kronecker(a, p) == oracles.is_qr(a, p)


def test_kronecker_extension():
    # (a|2) depends on a mod 8; (a|-1) on the sign of a
    assert [kronecker(a, 2) for a in (1, 3, 5, 7, 4)] == [1, -1, -1, 1, 0]
    assert kronecker(-5, -1) == -1 and kronecker(5, -1) == 1
    assert kronecker(1, 0) == 1 and kronecker(3, 0) == 0


@given(st.integers(-10**4, 10**4), st.integers(1, 400), st.integers(1, 400))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


# -- eta-family sieve ---------------------------------------------------------

def test_eta_sieve_examples():
    assert set(prohibited_residues_eta(-1, 1, 5, 0)) == {0, 3}
    assert set(prohibited_residues_eta(-1, 1, 5, 1)) == {1, 2}
    both = set(prohibited_residues_eta(-3, 3, 10, 0)) | set(prohibited_residues_eta(-3, 3, 10, 1))
    assert both == {0, 1, 3, 4, 5, 6, 8, 9}
    for B, N in [(-1, 1), (7, 4), (-24, 9)]:
        assert set(prohibited_residues_eta(B, N, 1, 0)) == {0}


@pytest.mark.parametrize("B, N, m, t0", [(-1, 1, 5, 0), (-3, 3, 10, 1), (16, 1, 40, 12),
                                         (-5, 5, 35, 4), (7, 6, 36, 11)])
def test_witnesses_reproduce_their_residue(B, N, m, t0):
    for t, d in prohibited_residues_eta(B, N, m, t0).items():
        assert gcd(d, 6 * N * m) == 1
        assert sieve_residue(t0, d, m, B) == t


def test_d_squared_minus_one():
    for d in range(1, 10**4 + 1):
        if gcd(d, 6) == 1:
            assert (d * d - 1) % 24 == 0 and (d * d - 1) % 3 == 0


def test_d_range_soundness_sample():
    # the full sweep m <= 40, N <= 10 runs in the acceptance suite
    assert dset_soundness([1, 7, 12, 25, 36, 40], [1, 4, 9, 10], [-1, -3, 16, 5],
                          dmax=10**5) == []


@pytest.mark.parametrize("ell", [5, 7, 11, 13, 17, 19, 23])
@pytest.mark.parametrize("B", [-1, -3, -6, 5, 16, -25])
def test_coherence_and_cardinality(ell, B):
    for t0 in range(ell):
        out = prohibited_residues_eta(B, 1, ell, t0)
        want = kronecker(24 * t0 + B, ell)
        assert all(kronecker(24 * t + B, ell) == want for t in out)
        if (24 * t0 + B) % ell:
            assert len(out) == (ell - 1) // 2


def test_eta_sieve_bad_input():
    with pytest.raises(ValueError):
        prohibited_residues_eta(-1, 1, 5, 5)
    with pytest.raises(ValueError):
        prohibited_residues_eta(-1, 0, 5, 0)


# -- mock sieve ---------------------------------------------------------------

def test_mock_omega_example():
    out = prohibited_residues_mock("Omega", 40, 12)
    assert out[20] == 7
    assert (12 * 49 + 2 * (49 - 1) // 3) % 40 == 20
    assert mock_precondition("Omega", 40, 12) == 5


def test_mock_f_precondition_fails():
    with pytest.raises(PreconditionError) as err:
        prohibited_residues_mock("F", 5, 0)
    assert "-1" in err.value.condition


def test_mock_f_example():
    assert set(prohibited_residues_mock("F", 5, 2)) == {1, 2}


@pytest.mark.parametrize("flavor", ["F", "Omega"])
@pytest.mark.parametrize("m", [5, 7, 10, 13, 35, 40])
def test_mock_sieve_is_total(flavor, m):
    for t0 in range(m):
        a = 1 - 24 * t0 if flavor == "F" else -3 * t0 - 2
        ok = any(p > 2 and kronecker(a, p) == -1 for p in prime_factors(m))
        if ok:
            out = prohibited_residues_mock(flavor, m, t0)
            assert out
            for t, d in out.items():
                assert gcd(d, 24 * m) == 1
                sq = d * d
                step = (1 - sq) // 24 if flavor == "F" else 2 * (sq - 1) // 3
                assert (t0 * sq + step) % m == t
        else:
            with pytest.raises(PreconditionError):
                prohibited_residues_mock(flavor, m, t0)


def test_mock_unknown_flavor():
    with pytest.raises(ValueError):
        prohibited_residues_mock("nu", 5, 1)


# -- exceptional residues and corollaries ---------------------------------------

def test_exceptional_examples():
    assert exceptional_residue(fam.partition(), 5) == 4
    assert exceptional_residue(fam.frobenius(6), 5) == 4
    assert exceptional_residue(fam.mock("omega"), 5) == 1
    assert exceptional_residue(fam.mock("f"), 7) == 5


@pytest.mark.parametrize("ell, want", [(5, 3), (7, 2), (13, 4), (23, 15)])
def test_exceptional_nu(ell, want):
    assert exceptional_residue(fam.mock("nu"), ell) == want == (ell * ell - 1) // 3 % ell


def test_exceptional_errors():
    with pytest.raises(ValueError):
        exceptional_residue(fam.partition(), 3)
    with pytest.raises(ValueError):
        exceptional_residue(fam.frobenius(10), 5)


def test_corollary_k3_mod_7_rule():
    passing = [l for l in primes_in(5, 100) if corollary_conditions(fam.frobenius(3), l).holds()]
    assert passing == [l for l in primes_in(5, 100) if l % 7 in (3, 5, 6)]


def _divisibility_flags(k, hi=1000):
    return [l for l in primes_in(5, hi)
            if any(c.name.startswith("ell does not divide") and not c.passed
                   for c in corollary_conditions(fam.frobenius(k), l).failed(TWO_ELL))]


def test_corollary_exclusions():
    assert _divisibility_flags(4) == [17]
    assert _divisibility_flags(6) == [11, 397]


def test_corollary_partition():
    for ell in primes_in(5, 200):
        report = corollary_conditions(fam.partition(), ell)
        assert report.holds(RAMANUJAN) == (kronecker(-23, ell) == -1)


def test_corollary_nu_and_mock():
    for ell in primes_in(5, 100):
        assert corollary_conditions(fam.mock("nu"), ell).holds() == (ell % 8 in (5, 7))
    for ell in primes_in(5, 60):
        f_ok = any(kronecker(1 - 24 * i, ell) == -1 for i in range(6))
        w_ok = any(kronecker(-3 * i - 2, ell) == -1 for i in range(6))
        assert corollary_conditions(fam.mock("f"), ell).holds() == f_ok
        assert corollary_conditions(fam.mock("omega"), ell).holds() == w_ok


def test_two_ell_examples():
    a = two_ell_analysis(3, 5)
    assert set(a.surviving) == {2, 7} and a.holds
    assert not two_ell_analysis(6, 11).holds


def test_two_ell_k2():
    # 5 divides c-phi_2(3) = 20, so the divisibility exclusion bites at ell = 5
    a = two_ell_analysis(2, 5)
    assert frobenius_coeffs(2, 3)[3] == 20
    assert not a.holds
    assert two_ell_analysis(2, 17).holds
    assert not two_ell_analysis(2, 13).holds  # (2(2-48) | 13) = 1


# -- certificates ---------------------------------------------------------------

def test_certify_partition():
    cert = certify(fam.partition(), partition_coeffs(50), 5, 5)
    assert cert.prohibited_set == {0, 1, 2, 3}
    assert cert.exceptional == [4]
    assert [s.t0 for s in cert.seeds] == [0, 1, 2, 3]


def test_certify_frobenius_pinned_seeds():
    cert = certify(fam.frobenius(3), frobenius_coeffs(3, 60), 10, 5, seeds=[0, 1])
    assert cert.prohibited_set == {0, 1, 3, 4, 5, 6, 8, 9}
    for w in cert.prohibited.values():
        assert sieve_residue(w.t0 % 10, w.d, 10, -3) == w.t


def test_certify_m_one():
    cert = certify(fam.partition(), partition_coeffs(10), 1, 5)
    assert cert.prohibited_set == {0}


def test_certify_bad_pinned_seed():
    with pytest.raises(PreconditionError):
        certify(fam.partition(), partition_coeffs(20), 5, 5, seeds=[4])
    with pytest.raises(PreconditionError):
        certify(fam.mock("f"), generate(fam.mock("f"), 20), 5, 5, seeds=[0])


def test_certify_unseedable_gives_diagnostic():
    zero_tail = generate(fam.parse_family("eta:1^2,2^-1@N=2"), 3)
    cert = certify(fam.parse_family("eta:1^2,2^-1@N=2"), zero_tail, 4, 5)
    assert cert.diagnostics


def test_certify_nu_is_diagnostic_only():
    cert = certify(fam.mock("nu"), generate(fam.mock("nu"), 30), 5, 5)
    assert not cert.prohibited and cert.diagnostics and cert.exceptional == [3]


def test_certificate_json_round_trip():
    cert = certify(fam.mock("omega"), generate(fam.mock("omega"), 500), 40, 5)
    data = json.loads(json.dumps(cert.to_dict()))
    assert set(data) >= {"family", "m", "ell", "seeds", "prohibited", "exceptional",
                         "conditions"}
    assert all(0 <= w["t"] < 40 for w in data["prohibited"])
    back = IncongruenceCertificate.from_dict(data)
    assert back.to_dict() == cert.to_dict()
