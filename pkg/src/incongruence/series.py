"""Truncated q-series with exact or mod-ell integer coefficients.

A :class:`TruncatedSeries` stands for ``q^(offset24/24) * sum_{n<=trunc} c(n) q^n``.
Values are immutable and every operation returns a new series. Operations
never extend precision: a product is truncated at the smaller of the two
operand truncations.

Dense products go through Kronecker substitution (pack the coefficients into
one big integer, multiply, unpack), which is an exact Cauchy product that
lets CPython's big-integer multiplication do the heavy lifting. Operands with
few nonzero terms (Euler products, binomials) take a sparse path instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .arith import is_prime
from .errors import ModulusMismatchError, NonUnitError, TruncationError

MAX_MODULUS = 2**31

# operands with at most this many nonzero terms use the sparse kernels
SPARSE_TERMS = 32


def check_modulus(modulus: int | None) -> None:
    if modulus is None:
        return
    if not isinstance(modulus, int) or not is_prime(modulus):
        raise ValueError(f"modulus must be prime, got {modulus!r}")
    if modulus >= MAX_MODULUS:
        raise ValueError(f"modulus must be below 2^31, got {modulus}")


@dataclass(frozen=True)
class TruncatedSeries:
    offset24: int
    trunc: int
    modulus: int | None
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.trunc < 0:
            raise ValueError("trunc must be non-negative")
        if len(self.coeffs) != self.trunc + 1:
            raise ValueError(
                f"expected {self.trunc + 1} coefficients, got {len(self.coeffs)}"
            )
        check_modulus(self.modulus)
        if self.modulus is not None:
            ell = self.modulus
            if any(c < 0 or c >= ell for c in self.coeffs):
                raise ValueError(f"coefficients must lie in [0, {ell})")

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Iterable[int],
        trunc: int | None = None,
        modulus: int | None = None,
        offset24: int = 0,
    ) -> "TruncatedSeries":
        """Build a series, padding with zeros or cutting to ``trunc``.

        Coefficients are reduced into [0, modulus) when a modulus is given.
        """
        cs = [int(c) for c in coeffs]
        if trunc is None:
            trunc = max(len(cs) - 1, 0)
        if len(cs) > trunc + 1:
            del cs[trunc + 1:]
        else:
            cs.extend([0] * (trunc + 1 - len(cs)))
        if modulus is not None:
            check_modulus(modulus)
            cs = [c % modulus for c in cs]
        return cls(offset24, trunc, modulus, tuple(cs))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return sub(self, other)

    def __pow__(self, e: int) -> "TruncatedSeries":
        return power(self, e)

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(n, c) for n, c in enumerate(self.coeffs) if c]

    def with_offset(self, offset24: int) -> "TruncatedSeries":
        return TruncatedSeries(offset24, self.trunc, self.modulus, self.coeffs)

    def truncate(self, trunc: int) -> "TruncatedSeries":
        if trunc > self.trunc:
            raise TruncationError(
                f"cannot extend a series known to q^{self.trunc} up to q^{trunc}"
            )
        return TruncatedSeries(
            self.offset24, trunc, self.modulus, self.coeffs[: trunc + 1]
        )

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.trunc >= 8 else ""
        mod = "exact" if self.modulus is None else f"mod {self.modulus}"
        return (
            f"TruncatedSeries(offset24={self.offset24}, trunc={self.trunc}, "
            f"{mod}, [{head}{more}])"
        )


def one(trunc: int, modulus: int | None = None) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([1], trunc, modulus)


def monomial(power: int, trunc: int, coeff: int = 1, modulus: int | None = None):
    """``coeff * q^power``, truncated (zero if the power exceeds ``trunc``)."""
    cs = [0] * (trunc + 1)
    if 0 <= power <= trunc:
        cs[power] = coeff
    return TruncatedSeries.from_coeffs(cs, trunc, modulus)


def _same_modulus(a: TruncatedSeries, b: TruncatedSeries) -> int | None:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(
            f"modulus mismatch: {a.modulus!r} vs {b.modulus!r}"
        )
    return a.modulus


def _finish(cs: list[int], trunc: int, modulus: int | None, offset24: int):
    if modulus is not None:
        cs = [c % modulus for c in cs]
    return TruncatedSeries(offset24, trunc, modulus, tuple(cs))


# -- products ---------------------------------------------------------------


def _sparse_product(sparse: list[tuple[int, int]], dense: Sequence[int], n: int):
    """First n coefficients of (sum c q^i over sparse) * dense."""
    out = [0] * n
    for i, c in sparse:
        if i >= n:
            continue
        seg = dense[: n - i]
        j = i + len(seg)
        if c == 1:
            out[i:j] = [x + y for x, y in zip(out[i:j], seg)]
        elif c == -1:
            out[i:j] = [x - y for x, y in zip(out[i:j], seg)]
        else:
            out[i:j] = [x + c * y for x, y in zip(out[i:j], seg)]
    return out


def _pack(cs: Sequence[int], width: int) -> int:
    pos = b"".join((c if c > 0 else 0).to_bytes(width, "little") for c in cs)
    value = int.from_bytes(pos, "little")
    if any(c < 0 for c in cs):
        neg = b"".join((-c if c < 0 else 0).to_bytes(width, "little") for c in cs)
        value -= int.from_bytes(neg, "little")
    return value


def kronecker_product(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First n coefficients of the exact product of two integer polynomials.

    Each polynomial is evaluated at X = 2^(8*width) with a slot width large
    enough that no product coefficient can spill into its neighbour; a bias
    of X/2 in every slot turns signed digits into plain base-X digits.
    """
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return [0] * n
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    if max_a == 0 or max_b == 0:
        return [0] * n
    bound = max_a * max_b * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    slots = len(a) + len(b) - 1
    half = 1 << (8 * width - 1)
    product = _pack(a, width) * _pack(b, width)
    product += int.from_bytes(half.to_bytes(width, "little") * slots, "little")
    raw = product.to_bytes(width * slots, "little")
    m = min(n, slots)
    out = [
        int.from_bytes(raw[i * width:(i + 1) * width], "little") - half
        for i in range(m)
    ]
    out.extend([0] * (n - m))
    return out


def cauchy_product(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Schoolbook Cauchy product; the reference the fast paths are tested against."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _product(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    sa = [(i, c) for i, c in enumerate(a[:n]) if c]
    if len(sa) <= SPARSE_TERMS:
        return _sparse_product(sa, b, n)
    sb = [(i, c) for i, c in enumerate(b[:n]) if c]
    if len(sb) <= SPARSE_TERMS:
        return _sparse_product(sb, a, n)
    return kronecker_product(a, b, n)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    modulus = _same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    cs = _product(a.coeffs, b.coeffs, trunc + 1)
    return _finish(cs, trunc, modulus, a.offset24 + b.offset24)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    modulus = _same_modulus(a, b)
    if a.offset24 != b.offset24:
        raise ValueError("cannot add series with different q-offsets")
    trunc = min(a.trunc, b.trunc)
    cs = [x + y for x, y in zip(a.coeffs[: trunc + 1], b.coeffs)]
    return _finish(cs, trunc, modulus, a.offset24)


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return add(a, scale(b, -1))


def scale(a: TruncatedSeries, c: int) -> TruncatedSeries:
    return _finish([c * x for x in a.coeffs], a.trunc, a.modulus, a.offset24)


def shift(a: TruncatedSeries, s: int, trunc: int) -> TruncatedSeries:
    """``q^s * a`` truncated at ``trunc``; ``a`` must be known to q^(trunc-s)."""
    if s < 0:
        raise ValueError("shift must be non-negative")
    if s > trunc:
        return TruncatedSeries.from_coeffs([], trunc, a.modulus, a.offset24)
    need = trunc - s
    if a.trunc < need:
        raise TruncationError(f"need the series to q^{need}, have q^{a.trunc}")
    cs = (0,) * s + a.coeffs[: need + 1]
    return TruncatedSeries(a.offset24, trunc, a.modulus, cs)


def dilate(a: TruncatedSeries, s: int, trunc: int | None = None) -> TruncatedSeries:
    """Substitute q -> q^s. The result is known to q^(s*a.trunc + s - 1)."""
    if s < 1:
        raise ValueError("dilation factor must be positive")
    full = s * a.trunc + s - 1
    if trunc is None:
        trunc = full
    elif trunc > full:
        raise TruncationError(f"dilated series only known to q^{full}")
    cs = [0] * (trunc + 1)
    for n in range(0, trunc // s + 1):
        cs[n * s] = a.coeffs[n]
    return TruncatedSeries(a.offset24 * s, trunc, a.modulus, tuple(cs))


# -- inversion and powers ---------------------------------------------------


def _unit_inverse(c0: int, modulus: int | None) -> int:
    if modulus is None:
        if c0 not in (1, -1):
            raise NonUnitError(f"constant term {c0} is not +-1")
        return c0
    if c0 % modulus == 0:
        raise NonUnitError(f"constant term is 0 mod {modulus}")
    return pow(c0, -1, modulus)


def _divide_sparse(
    num: Sequence[int],
    den_terms: list[tuple[int, int]],
    inv0: int,
    n: int,
    modulus: int | None,
) -> list[int]:
    """Long division by a series with few nonzero terms (den_terms has g >= 1)."""
    c = list(num[:n]) + [0] * max(0, n - len(num))
    if len(den_terms) == 1 and inv0 == 1:
        # hot case: division by 1 + u*q^g
        (g, u), = den_terms
        if modulus is None:
            for i in range(g, n):
                c[i] -= u * c[i - g]
        else:
            for i in range(g, n):
                c[i] = (c[i] - u * c[i - g]) % modulus
        return c
    for i in range(n):
        s = c[i]
        for g, u in den_terms:
            if g > i:
                break
            s -= u * c[i - g]
        c[i] = s * inv0 if modulus is None else s * inv0 % modulus
    return c


def _newton_inverse(a: Sequence[int], n: int, modulus: int | None) -> list[int]:
    inv0 = _unit_inverse(a[0], modulus)
    b = [inv0]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        ab = kronecker_product(a[:prec], b, prec)
        # b <- b * (2 - a*b)
        ab = [-x for x in ab]
        ab[0] += 2
        b = kronecker_product(b, ab, prec)
        if modulus is not None:
            b = [x % modulus for x in b]
    return b


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse up to truncation; the q-offset negates."""
    inv0 = _unit_inverse(a.coeffs[0], a.modulus)
    n = a.trunc + 1
    terms = [(g, c) for g, c in enumerate(a.coeffs) if c and g]
    if len(terms) <= max(SPARSE_TERMS, 2 * isqrt(n) + 8):
        cs = _divide_sparse([1], terms, inv0, n, a.modulus)
    else:
        cs = _newton_inverse(a.coeffs, n, a.modulus)
    return _finish(cs, a.trunc, a.modulus, -a.offset24)


def divide(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """``a / b`` truncated at the smaller truncation.

    Equal to ``mul(a, invert(b))``; when ``b`` is sparse this is a single pass
    of long division and never materialises the dense inverse.
    """
    modulus = _same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    n = trunc + 1
    terms = [(g, c) for g, c in enumerate(b.coeffs[:n]) if c and g]
    if len(terms) > SPARSE_TERMS:
        return mul(a.truncate(trunc), invert(b.truncate(trunc)))
    inv0 = _unit_inverse(b.coeffs[0], modulus)
    if inv0 != 1:
        terms = [(g, c * inv0) for g, c in terms]
        num = [x * inv0 for x in a.coeffs[:n]]
    else:
        num = a.coeffs[:n]
    cs = _divide_sparse(num, terms, 1, n, modulus)
    return _finish(cs, trunc, modulus, a.offset24 - b.offset24)


def power(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """``a**e`` by binary exponentiation; negative exponents invert first."""
    if e < 0:
        return power(invert(a), -e)
    result = one(a.trunc, a.modulus)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# -- eta products and progressions ------------------------------------------


def pentagonal_terms(trunc: int, step: int = 1) -> list[tuple[int, int]]:
    """Nonzero terms of prod_{n>=1} (1 - q^(step*n)) up to q^trunc.

    Euler's pentagonal number theorem: the product is
    sum_j (-1)^j q^(step * j(3j-1)/2) over all integers j.
    """
    terms = [(0, 1)]
    j = 1
    while True:
        g1 = step * j * (3 * j - 1) // 2
        if g1 > trunc:
            break
        sign = -1 if j % 2 else 1
        terms.append((g1, sign))
        g2 = step * j * (3 * j + 1) // 2
        if g2 <= trunc:
            terms.append((g2, sign))
        j += 1
    return terms


def euler_product(trunc: int, step: int = 1, modulus: int | None = None):
    """prod_{n>=1} (1 - q^(step*n)) with no q-offset."""
    cs = [0] * (trunc + 1)
    for g, s in pentagonal_terms(trunc, step):
        cs[g] = s
    return TruncatedSeries.from_coeffs(cs, trunc, modulus)


def eta_quotient(
    factors: Sequence[tuple[int, int]], trunc: int, modulus: int | None = None
) -> TruncatedSeries:
    """q-expansion of prod_delta eta(delta*tau)^r_delta.

    The offset is sum(delta*r)/24; the coefficient part is the matching
    product of Euler products, each built from the pentagonal theorem.
    """
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    check_modulus(modulus)
    result = one(trunc, modulus)
    offset = 0
    for delta, r in factors:
        if delta <= 0:
            raise ValueError(f"eta factor needs delta >= 1, got {delta}")
        offset += delta * r
        if r == 0:
            continue
        base = euler_product(trunc, delta, modulus)
        if r < 0:
            base = invert(base)
        result = mul(result, power(base, abs(r)))
    return result.with_offset(offset)


@dataclass(frozen=True)
class Progression:
    """Coefficients b(n) = c(m*n + t) together with their exponent bookkeeping."""

    m: int
    t: int
    values: tuple[int, ...]
    offset24: int

    @property
    def exponent_shift(self):
        """The leading exponent (t + offset24/24)/m as an exact fraction."""
        return Fraction(24 * self.t + self.offset24, 24 * self.m)


def extract_progression(a: TruncatedSeries, m: int, t: int) -> Progression:
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 <= t < m:
        raise ValueError(f"t must lie in [0, {m})")
    values = a.coeffs[t::m]
    return Progression(m, t, tuple(values), a.offset24)


def reduce_mod(a: TruncatedSeries, ell: int) -> TruncatedSeries:
    if a.modulus is not None:
        raise ValueError("series is already reduced")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    check_modulus(ell)
    return TruncatedSeries(
        a.offset24, a.trunc, ell, tuple(c % ell for c in a.coeffs)
    )
