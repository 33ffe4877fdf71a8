"""Theta series of the form Q(m) = sum m_i^2 + sum_{i<j} m_i m_j on Z^(k-1).

Two independent algorithms:

``lattice_enum``
    Direct enumeration of lattice vectors, using 2Q(m) = sum m_i^2 + (sum m_i)^2
    to bound each coordinate and prune on the partial norm. Exponential in k;
    it serves as the oracle for small k and T.

``constant_term``
    The z^0 coefficient of (sum_j z^j q^(j^2/2))^k, built as k successive
    two-variable products. A vector (j_1..j_k) with sum 0 has
    sum j_i^2 / 2 = Q(j_1..j_(k-1)), so this counts the same vectors.
"""

from __future__ import annotations

import math
from math import isqrt

import numpy as np

from .series import TruncatedSeries, check_modulus

LATTICE_ENUM = "lattice"
CONSTANT_TERM = "constant-term"
STRATEGIES = (LATTICE_ENUM, CONSTANT_TERM)

_INT64_SAFE = 2**62


def _min_square_sum(total: int, parts: int) -> int:
    """Least sum of squares of `parts` integers adding up to `total`."""
    if parts == 0:
        return 0 if total == 0 else math.inf
    q, r = divmod(abs(total), parts)
    return r * (q + 1) ** 2 + (parts - r) * q * q


def _ball_count_bound(dim: int, radius_sq: int) -> float:
    """Upper bound on integer points in a dim-ball of squared radius radius_sq."""
    if dim == 0:
        return 1.0
    r = math.sqrt(radius_sq) + math.sqrt(dim) / 2
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * r**dim


def constant_term(k: int, trunc: int, modulus: int | None = None) -> list[int]:
    """Coefficients 0..trunc of the theta series via the constant-term method.

    Exponents are tracked in half units E = sum j_i^2. Since E has the same
    parity as the z-degree D, a row for degree D stores only E = 2u + (D mod 2),
    indexed by u. After i of the k factors, a monomial of degree D needs at
    least min_square_sum(D, k - i) more half units to return to z^0, so rows
    are cut to the remaining budget and degrees outside it are dropped. The
    product is symmetric in z <-> 1/z, so only D >= 0 is stored.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    check_modulus(modulus)
    budget = 2 * trunc
    jmax = isqrt(budget)

    if modulus is not None or _ball_count_bound(k, budget) < _INT64_SAFE:
        dtype = np.int64
    else:
        dtype = object

    def row_length(D: int, done: int) -> int:
        need = _min_square_sum(D, k - done)
        slack = budget - need - _min_square_sum(D, done)
        if slack < 0:
            return 0
        top = budget - need
        return (top - (D % 2)) // 2 + 1

    state = {0: np.ones(1, dtype=dtype)}
    for done in range(1, k + 1):
        dmax = 0
        while row_length(dmax + 1, done) > 0:
            dmax += 1
        new = {}
        for D in range(dmax + 1):
            length = row_length(D, done)
            if length <= 0:
                continue
            acc = np.zeros(length, dtype=dtype)
            pD = D % 2
            for j in range(-jmax, jmax + 1):
                src = state.get(abs(D - j))
                if src is None:
                    continue
                s = (((D - j) % 2) + j * j - pD) // 2
                if s >= length:
                    continue
                width = min(len(src), length - s)
                acc[s:s + width] += src[:width]
            if modulus is not None:
                acc %= modulus
            new[D] = acc
        state = new

    row = state.get(0, np.zeros(0, dtype=dtype))
    out = [int(x) for x in row[: trunc + 1]]
    out.extend([0] * (trunc + 1 - len(out)))
    return out


def lattice_enum(k: int, trunc: int, modulus: int | None = None) -> list[int]:
    """Coefficients 0..trunc of the theta series by enumerating lattice vectors.

    The first k-2 coordinates are enumerated recursively with the bound
    P + S^2/(r+1) <= 2T (P: partial sum of squares, S: partial sum, r: free
    coordinates left). The last coordinate is handled in numpy batches.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    check_modulus(modulus)
    counts = np.zeros(trunc + 1, dtype=np.int64)
    dim = k - 1
    if dim == 0:
        counts[0] = 1
        return _finish_counts(counts, modulus)

    budget = 2 * trunc
    prefixes_s: list[int] = []
    prefixes_p: list[int] = []

    def walk(depth: int, s: int, p: int) -> None:
        if depth == dim - 1:
            prefixes_s.append(s)
            prefixes_p.append(p)
            return
        free = dim - depth
        # coordinate x joins the prefix; bound the new partial norm
        x = 0
        while True:
            hit = False
            for y in ((x, -x) if x else (0,)):
                ns, np_ = s + y, p + y * y
                if np_ * (free) + ns * ns <= budget * free:
                    walk(depth + 1, ns, np_)
                    hit = True
            if not hit and p + x * x > budget:
                break
            x += 1

    walk(0, 0, 0)

    xmax = isqrt(budget)
    xs = np.arange(-xmax, xmax + 1, dtype=np.int64)
    S = np.asarray(prefixes_s, dtype=np.int64)
    P = np.asarray(prefixes_p, dtype=np.int64)
    chunk = max(1, 2_000_000 // len(xs))
    for start in range(0, len(S), chunk):
        s = S[start:start + chunk, None]
        p = P[start:start + chunk, None]
        twice = p + xs * xs + (s + xs) ** 2
        vals = twice[twice <= budget] // 2
        counts += np.bincount(vals, minlength=trunc + 1)[: trunc + 1]
    return _finish_counts(counts, modulus)


def _finish_counts(counts: np.ndarray, modulus: int | None) -> list[int]:
    out = [int(c) for c in counts]
    if modulus is not None:
        out = [c % modulus for c in out]
    return out


def theta_series(
    k: int, trunc: int, modulus: int | None = None, strategy: str | None = None
) -> TruncatedSeries:
    """Theta series for k colours as a series with zero q-offset.

    With no strategy given, lattice enumeration is used only where it is cheap
    (k <= 3 and trunc < 1000); otherwise the constant-term method runs.
    """
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    if strategy is None:
        strategy = LATTICE_ENUM if k <= 3 and trunc < 1000 else CONSTANT_TERM
    if strategy == LATTICE_ENUM:
        cs = lattice_enum(k, trunc, modulus)
    elif strategy == CONSTANT_TERM:
        cs = constant_term(k, trunc, modulus)
    else:
        raise ValueError(f"unknown theta strategy {strategy!r}")
    return TruncatedSeries.from_coeffs(cs, trunc, modulus)
