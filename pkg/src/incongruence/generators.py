"""Coefficient generators for every family, plus seed discovery."""

from __future__ import annotations

from .errors import ExhaustedError
from .families import (
    ETA,
    FROBENIUS,
    MOCK_F,
    MOCK_NU,
    MOCK_OMEGA,
    PARTITION,
    FamilySpec,
)
from .series import (
    TruncatedSeries,
    add,
    check_modulus,
    dilate,
    divide,
    eta_quotient,
    mul,
    one,
    scale,
    shift,
)
from .theta import CONSTANT_TERM, LATTICE_ENUM, theta_series

IDENTITY = "identity"
DEFINING = "defining"


def partition_coeffs(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """p(0..trunc) from Euler's pentagonal recurrence; offset -1/24."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    check_modulus(modulus)
    pent = []
    j = 1
    while j * (3 * j - 1) // 2 <= trunc:
        sign = 1 if j % 2 else -1
        pent.append((j * (3 * j - 1) // 2, sign))
        pent.append((j * (3 * j + 1) // 2, sign))
        j += 1
    p = [0] * (trunc + 1)
    p[0] = 1
    for n in range(1, trunc + 1):
        s = 0
        for g, sign in pent:
            if g > n:
                break
            s += p[n - g] if sign > 0 else -p[n - g]
        p[n] = s if modulus is None else s % modulus
    return TruncatedSeries(-1, trunc, modulus, tuple(p))


def frobenius_theta(
    k: int, trunc: int, modulus: int | None = None, strategy: str | None = None
) -> TruncatedSeries:
    """sum over m in Z^(k-1) of q^Q(m); see :mod:`incongruence.theta`."""
    if strategy not in (None, LATTICE_ENUM, CONSTANT_TERM):
        raise ValueError(f"unknown strategy {strategy!r}")
    return theta_series(k, trunc, modulus, strategy)


def frobenius_coeffs(
    k: int, trunc: int, modulus: int | None = None, strategy: str | None = None
) -> TruncatedSeries:
    """c-phi_k(0..trunc): the theta series divided by (q;q)^k, offset -k/24."""
    theta = frobenius_theta(k, trunc, modulus, strategy)
    return mul(theta, eta_quotient([(1, -k)], trunc, modulus))


def _binomial(g: int, sign: int, trunc: int, modulus: int | None):
    """1 + sign*q^g."""
    cs = [0] * (trunc + 1)
    cs[0] = 1
    if g <= trunc:
        cs[g] = sign
    return TruncatedSeries.from_coeffs(cs, trunc, modulus)


def _mock_sum(trunc, modulus, start, exponent, denominators):
    """sum_{n>=start} q^exponent(n) / prod of the binomials listed for n.

    ``denominators(n)`` yields (g, sign) pairs; term n is the running quotient
    of all binomials for indices up to n, so each step costs O(trunc).
    """
    total = None
    running = one(trunc, modulus)
    n = start
    while exponent(n) <= trunc:
        width = trunc - exponent(n)
        running = running.truncate(width)
        for g, sign in denominators(n):
            running = divide(running, _binomial(g, sign, width, modulus))
        term = shift(running, exponent(n), trunc)
        total = term if total is None else add(total, term)
        n += 1
    return total


def mock_f_coeffs(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """Third-order f(q) = 1 + sum_{n>=1} q^(n^2) / ((1+q)...(1+q^n))^2."""
    check_modulus(modulus)
    series = _mock_sum(
        trunc, modulus, 1, lambda n: n * n, lambda n: [(n, 1), (n, 1)]
    )
    base = one(trunc, modulus)
    series = base if series is None else add(base, series)
    return series.with_offset(-1)


def mock_omega_coeffs(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    """Third-order omega(q) = sum_{n>=0} q^(2n^2+2n) / ((1-q)(1-q^3)...(1-q^(2n+1)))^2."""
    check_modulus(modulus)
    series = _mock_sum(
        trunc,
        modulus,
        0,
        lambda n: 2 * n * n + 2 * n,
        lambda n: [(2 * n + 1, -1), (2 * n + 1, -1)],
    )
    return series.with_offset(16)


def mock_nu_coeffs(
    trunc: int, modulus: int | None = None, method: str = DEFINING
) -> TruncatedSeries:
    """nu(q) = sum_{n>=0} q^(n^2+n) / (-q;q^2)_{n+1}.

    ``method="identity"`` goes through omega instead of the defining sum:
    nu(-q) = q*omega(q^2) + (-q^2;q^2)^3 (q^2;q^2), so the odd-index
    coefficients of nu are those of -q*omega(q^2).
    """
    check_modulus(modulus)
    if method == DEFINING:
        return _mock_sum(
            trunc, modulus, 0, lambda n: n * n + n, lambda n: [(2 * n + 1, 1)]
        )
    if method != IDENTITY:
        raise ValueError(f"unknown method {method!r}")
    half = trunc // 2
    omega = mock_omega_coeffs(half, modulus).with_offset(0)
    odd = scale(shift(dilate(omega, 2), 1, trunc), -1)
    # (-q;q)^3 (q;q) = (q^2;q^2)^3 / (q;q)^2
    theta_part = eta_quotient([(2, 3), (1, -2)], half, modulus).with_offset(0)
    even = dilate(theta_part, 2, trunc)
    return add(odd, even)


def generate(
    family: FamilySpec,
    trunc: int,
    modulus: int | None = None,
    strategy: str | None = None,
) -> TruncatedSeries:
    """Coefficients 0..trunc of any family."""
    if family.kind == PARTITION:
        return partition_coeffs(trunc, modulus)
    if family.kind == FROBENIUS:
        return frobenius_coeffs(family.k, trunc, modulus, strategy)
    if family.kind == MOCK_F:
        return mock_f_coeffs(trunc, modulus)
    if family.kind == MOCK_OMEGA:
        return mock_omega_coeffs(trunc, modulus)
    if family.kind == MOCK_NU:
        return mock_nu_coeffs(trunc, modulus)
    if family.kind == ETA:
        return eta_quotient(family.factors, trunc, modulus)
    raise ValueError(f"no generator for {family.kind}")


def seed_scan(coeffs: TruncatedSeries, m: int, ell: int, c: int) -> int | None:
    """Smallest t0 = c (mod m) with a(t0) != 0, if ell does not divide a(t0).

    Returns None when the first nonzero entry of the class is divisible by
    ell. Raises :class:`ExhaustedError` when the class is identically zero up
    to the truncation. Zeros below t0 must be exact, so the series must
    carry exact integer coefficients.
    """
    if coeffs.modulus is not None:
        raise ValueError("seed_scan needs exact coefficients")
    if m < 1 or not 0 <= c < m:
        raise ValueError(f"class {c} is not a residue mod {m}")
    for n in range(c, coeffs.trunc + 1, m):
        a = coeffs.coeffs[n]
        if a:
            return None if a % ell == 0 else n
    raise ExhaustedError(
        f"class {c} mod {m} has no nonzero coefficient up to q^{coeffs.trunc}"
    )
