import pytest

from incongruence import families as fam
from incongruence.errors import ExhaustedError
from incongruence.generators import (
    DEFINING,
    IDENTITY,
    frobenius_coeffs,
    frobenius_theta,
    generate,
    mock_f_coeffs,
    mock_nu_coeffs,
    mock_omega_coeffs,
    partition_coeffs,
    seed_scan,
)
from incongruence.series import TruncatedSeries, reduce_mod
from incongruence.theta import CONSTANT_TERM, LATTICE_ENUM, constant_term, lattice_enum

import oracles


# -- partitions ---------------------------------------------------------------

def test_partition_examples():
    p = partition_coeffs(100)
    assert p.offset24 == -1
    assert p[0] == 1 and p[4] == 5
    assert p[9] % 5 == 0
    assert p[100] == 190569292


def test_partition_against_enumeration():
    assert list(partition_coeffs(60).coeffs) == [oracles.partition_count(n) for n in range(61)]


def test_partition_modular():
    assert partition_coeffs(300, 7) == reduce_mod(partition_coeffs(300), 7)


# -- theta series ---------------------------------------------------------------

@pytest.mark.parametrize("strategy", [LATTICE_ENUM, CONSTANT_TERM])
def test_theta_examples(strategy):
    assert frobenius_theta(1, 10, strategy=strategy).coeffs == (1,) + (0,) * 10
    two = frobenius_theta(2, 30, strategy=strategy).coeffs
    squares = {n * n for n in range(1, 6)}
    assert two == tuple(1 if n == 0 else 2 if n in squares else 0 for n in range(31))
    assert frobenius_theta(3, 5, strategy=strategy)[1] == 6


@pytest.mark.parametrize("k", [2, 3, 4])
def test_theta_against_direct_enumeration(k):
    T = 24
    want = oracles.quadratic_form_counts(k, T)
    assert lattice_enum(k, T) == want
    assert constant_term(k, T) == want


@pytest.mark.parametrize("k", range(1, 7))
def test_theta_strategies_agree(k):
    assert lattice_enum(k, 300) == constant_term(k, 300)


@pytest.mark.parametrize("k", [3, 7])
def test_theta_modular_matches_exact(k):
    exact = constant_term(k, 200)
    assert constant_term(k, 200, 13) == [c % 13 for c in exact]
    assert lattice_enum(k, 120, 13) == [c % 13 for c in exact[:121]]


def test_theta_rejects_bad_input():
    with pytest.raises(ValueError):
        frobenius_theta(0, 5)
    with pytest.raises(ValueError):
        frobenius_theta(3, 5, strategy="fft")


# -- Frobenius partitions -------------------------------------------------------

def closed_forms(k):
    c2 = k * k * (k * k - 2 * k + 9)
    c3 = k * k * (k**4 - 6 * k**3 + 49 * k * k - 48 * k + 112)
    assert c2 % 4 == 0 and c3 % 36 == 0
    return 1, k * k, c2 // 4, c3 // 36


@pytest.mark.parametrize("k", range(1, 11))
def test_frobenius_closed_forms(k):
    c = frobenius_coeffs(k, 3).coeffs
    want = closed_forms(k)
    # the c(2) form is stated for k >= 2 and the c(3) form for k >= 3
    valid = 2 + (k >= 2) + (k >= 3)
    assert c[:valid] == want[:valid]


def test_frobenius_examples():
    assert frobenius_coeffs(2, 3)[3] % 5 == 0
    assert frobenius_coeffs(4, 2)[2] == 68
    assert frobenius_coeffs(5, 4).offset24 == -5


@pytest.mark.parametrize("k", [2, 3, 4])
def test_frobenius_against_bruteforce(k):
    assert list(frobenius_coeffs(k, 20).coeffs) == oracles.frobenius_bruteforce(k, 20)


def test_cphi1_is_partition():
    assert frobenius_coeffs(1, 2000).coeffs == partition_coeffs(2000).coeffs


def test_frobenius_strategies_agree():
    a = frobenius_coeffs(3, 400, strategy=LATTICE_ENUM)
    b = frobenius_coeffs(3, 400, strategy=CONSTANT_TERM)
    assert a == b


# -- mock theta functions ---------------------------------------------------

def test_mock_f_examples():
    f = mock_f_coeffs(10)
    assert f.offset24 == -1
    assert f.coeffs[:3] == (1, 1, -2)


def test_mock_omega_examples():
    w = mock_omega_coeffs(39)
    assert w.offset24 == 16
    assert w[0] == 1
    assert {t for t in range(40) if w[t] % 5 == 0} == {6, 20, 23, 24, 27, 35}
    assert w[27] % 5 == 0
    assert w[12] % 5 != 0


def test_mock_nu_examples():
    nu = mock_nu_coeffs(20)
    assert nu[0] == 1
    assert nu[8] % 5 == 0


@pytest.mark.parametrize("gen, oracle", [
    (mock_f_coeffs, oracles.mock_f_bruteforce),
    (mock_omega_coeffs, oracles.mock_omega_bruteforce),
    (mock_nu_coeffs, oracles.mock_nu_bruteforce),
])
def test_mock_against_bruteforce(gen, oracle):
    assert list(gen(80).coeffs) == oracle(80)


def test_nu_identity_matches_definition():
    assert mock_nu_coeffs(2000, method=DEFINING) == mock_nu_coeffs(2000, method=IDENTITY)


def test_nu_identity_modular():
    assert mock_nu_coeffs(500, 13, IDENTITY) == mock_nu_coeffs(500, 13, DEFINING)


# -- generic dispatch and exact/modular commutation ---------------------------

SELECTORS = ["p", "cphi:2", "cphi:3", "cphi:5", "mock:f", "mock:omega", "mock:nu",
             "eta:1^2,2^-1@N=2", "eta:2^5,1^-2,4^-2@N=4"]


@pytest.mark.parametrize("selector", SELECTORS)
@pytest.mark.parametrize("ell", [5, 13])
def test_exact_then_reduce_equals_modular(selector, ell):
    family = fam.parse_family(selector)
    exact = generate(family, 1000)
    assert reduce_mod(exact, ell) == generate(family, 1000, ell)
    assert exact.offset24 == family.offset24


def test_eta_family_theta_function():
    # eta(t)^2 / eta(2t) = sum (-1)^n q^(n^2)
    s = generate(fam.parse_family("eta:1^2,2^-1@N=2"), 50)
    want = [0] * 51
    for n in range(-8, 9):
        if n * n <= 50:
            want[n * n] += (-1) ** abs(n)
    assert list(s.coeffs) == want


# -- seeds -------------------------------------------------------------------

def test_seed_scan_examples():
    p = partition_coeffs(30)
    assert seed_scan(p, 5, 5, 0) == 0
    assert seed_scan(p, 5, 5, 4) is None
    assert seed_scan(p, 5, 5, 2) == 2


def test_seed_scan_skips_exact_zeros():
    s = TruncatedSeries.from_coeffs([0, 0, 0, 0, 0, 0, 3, 0, 5], 8)
    assert seed_scan(s, 3, 5, 0) == 6
    assert seed_scan(s, 3, 3, 0) is None
    assert seed_scan(s, 3, 7, 2) == 8
    assert seed_scan(s, 3, 5, 2) is None


def test_seed_scan_exhausted():
    s = TruncatedSeries.from_coeffs([1, 0, 0, 0, 0, 0], 5)
    with pytest.raises(ExhaustedError):
        seed_scan(s, 2, 5, 1)


def test_seed_scan_refuses_modular_input():
    with pytest.raises(ValueError):
        seed_scan(partition_coeffs(10, 5), 5, 5, 0)
    with pytest.raises(ValueError):
        seed_scan(partition_coeffs(10), 5, 5, 5)
