"""Incongruence certificates: which progressions a(mn+t) cannot vanish mod ell.

A seed t0 (ell does not divide a(t0), and a(n) = 0 below t0 in its class)
rules out every t of the form

    t = t0*d^2 + B*(d^2 - 1)/24   (mod m),   gcd(d, 6Nm) = 1

for eta-type families. The mock theta functions f and omega use the same
shape with B = -1 and B = 16 (i.e. (2/3)(d^2 - 1)), valid only when a
Legendre condition on t0 holds at some prime dividing m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .arith import is_prime, kronecker, prime_factors
from .errors import ExhaustedError, PreconditionError
from .families import (
    ETA,
    FROBENIUS,
    MOCK_F,
    MOCK_NU,
    MOCK_OMEGA,
    PARTITION,
    FamilySpec,
    parse_family,
)
from .generators import seed_scan
from .series import TruncatedSeries

RAMANUJAN = "ramanujan"  # progressions mod ell
TWO_ELL = "two-ell"  # progressions mod 2*ell (Frobenius only)

_MOCK_FLAVORS = {"f": MOCK_F, "F": MOCK_F, MOCK_F: MOCK_F,
                 "omega": MOCK_OMEGA, "Omega": MOCK_OMEGA, MOCK_OMEGA: MOCK_OMEGA}


# -- d enumeration ----------------------------------------------------------


def d_classes(m: int, coprime_to: int) -> list[int]:
    """Residues c in [1, 24m] that contain integers coprime to ``coprime_to``.

    t depends on d only through d mod 24m. Primes of ``coprime_to`` that do
    not divide 24m can always be dodged inside a class, so only primes
    dividing both moduli constrain c.
    """
    period = 24 * m
    g = 1
    for p in prime_factors(coprime_to):
        if period % p == 0:
            g *= p
    return [c for c in range(1, period + 1) if gcd(c, g) == 1]


def representative(c: int, m: int, coprime_to: int) -> int:
    """Least d = c (mod 24m), d >= 1, with gcd(d, coprime_to) = 1."""
    d = c
    while gcd(d, coprime_to) != 1:
        d += 24 * m
    return d


def _sieve(t0: int, m: int, coprime_to: int, step) -> dict[int, int]:
    out: dict[int, int] = {}
    for c in d_classes(m, coprime_to):
        t = (t0 * c * c + step(c * c)) % m
        if t not in out:
            out[t] = representative(c, m, coprime_to)
    return dict(sorted(out.items()))


def sieve_residue(t0: int, d: int, m: int, B: int) -> int:
    """t0*d^2 + B*(d^2-1)/24 mod m; the division is exact since gcd(d, 6) = 1."""
    sq = d * d
    if (sq - 1) % 24:
        raise ValueError(f"d = {d} is not coprime to 6")
    return (t0 * sq + B * ((sq - 1) // 24)) % m


def prohibited_residues_eta(B: int, N: int, m: int, t0: int) -> dict[int, int]:
    """Map each ruled-out t in [0, m) to a witness d with gcd(d, 6Nm) = 1."""
    if m < 1 or N < 1:
        raise ValueError("m and N must be positive")
    if not 0 <= t0 < m:
        raise ValueError(f"t0 must lie in [0, {m})")
    return _sieve(t0, m, 6 * N * m, lambda sq: B * ((sq - 1) // 24))


def mock_precondition(flavor: str, m: int, t0: int) -> int | None:
    """Smallest odd prime p | m with the flavor's symbol equal to -1, if any."""
    kind = _MOCK_FLAVORS[flavor]
    a = 1 - 24 * t0 if kind == MOCK_F else -3 * t0 - 2
    for p in prime_factors(m):
        if p > 2 and kronecker(a, p) == -1:
            return p
    return None


def prohibited_residues_mock(flavor: str, m: int, t0: int) -> dict[int, int]:
    """Residues ruled out for f ("F") or omega ("Omega") from the seed t0.

    Raises :class:`PreconditionError` unless the Legendre condition holds at
    some odd prime dividing m. Witnesses satisfy gcd(d, 24m) = 1.
    """
    if flavor not in _MOCK_FLAVORS:
        raise ValueError(f"unknown mock flavor {flavor!r}")
    kind = _MOCK_FLAVORS[flavor]
    if m < 1 or not 0 <= t0 < m:
        raise ValueError(f"t0 must lie in [0, {m})")
    if mock_precondition(kind, m, t0) is None:
        expr = f"(1-24*{t0} | p)" if kind == MOCK_F else f"(-3*{t0}-2 | p)"
        raise PreconditionError(
            f"no odd prime p | {m} has {expr} = -1", condition=f"{expr} = -1"
        )
    if kind == MOCK_F:
        step = lambda sq: -((sq - 1) // 24)
    else:
        step = lambda sq: 2 * ((sq - 1) // 3)
    return _sieve(t0, m, 24 * m, step)


# -- exceptional residues and corollary conditions --------------------------


def _as_family(family) -> FamilySpec:
    return parse_family(family) if isinstance(family, str) else family


def exceptional_residue(family, ell: int) -> int:
    """The one residue mod ell that the Ramanujan-type corollaries leave open."""
    family = _as_family(family)
    if not is_prime(ell) or ell < 5:
        raise ValueError(f"need a prime ell >= 5, got {ell}")
    sq = ell * ell
    if family.kind == FROBENIUS and family.k % ell == 0:
        raise ValueError(f"ell = {ell} divides k = {family.k}")
    if family.kind == MOCK_NU:
        return ((sq - 1) // 3) % ell
    if family.kind == MOCK_OMEGA:
        return (-2 * ((1 - sq) // 3)) % ell
    if family.kind == MOCK_F:
        return ((1 - sq) // 24) % ell
    # partition, Frobenius and eta quotients: B(ell^2 - 1)/24
    return (family.B * ((sq - 1) // 24)) % ell


@dataclass(frozen=True)
class Condition:
    name: str
    corollary: str
    value: int | None
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "corollary": self.corollary,
                "value": self.value, "passed": self.passed}


@dataclass
class ConditionReport:
    family: FamilySpec
    ell: int
    conditions: list[Condition] = field(default_factory=list)

    def holds(self, corollary: str = RAMANUJAN) -> bool:
        rows = [c for c in self.conditions if c.corollary == corollary]
        return bool(rows) and all(c.passed for c in rows)

    def failed(self, corollary: str | None = None) -> list[Condition]:
        return [c for c in self.conditions
                if not c.passed and corollary in (None, c.corollary)]


def _symbol(name, corollary, a, ell):
    v = kronecker(a, ell)
    return Condition(name, corollary, v, v == -1)


def _not_divides(name, corollary, a, ell):
    return Condition(name, corollary, a % ell, a % ell != 0)


def frobenius_closed_forms(k: int) -> tuple[int, int, int, int]:
    """c-phi_k(0..3) from their closed forms."""
    c2 = k * k * (k * k - 2 * k + 9)
    c3 = k * k * (k**4 - 6 * k**3 + 49 * k * k - 48 * k + 112)
    assert c2 % 4 == 0 and c3 % 36 == 0
    return 1, k * k, c2 // 4, c3 // 36


def corollary_conditions(family, ell: int) -> ConditionReport:
    """Evaluate every corollary hypothesis that applies to the family at ell."""
    family = _as_family(family)
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    report = ConditionReport(family, ell)
    rows = report.conditions
    big = Condition("ell >= 5", RAMANUJAN, ell, ell >= 5)
    rows.append(big)
    kind = family.kind

    if kind in (PARTITION, ETA):
        B = family.B
        rows.append(_symbol("(B(B+24) | ell) = -1", RAMANUJAN, B * (B + 24), ell))
    elif kind == FROBENIUS:
        k = family.k
        rows.append(_not_divides("ell does not divide k", RAMANUJAN, k, ell))
        rows.append(_symbol("(k(k-24) | ell) = -1", RAMANUJAN, k * (k - 24), ell))
        rows.append(Condition("ell >= 5", TWO_ELL, ell, ell >= 5))
        if k % 2:
            rows.append(_not_divides("ell does not divide k", TWO_ELL, k, ell))
            rows.append(_symbol("(k(k-24) | ell) = -1", TWO_ELL, k * (k - 24), ell))
        else:
            prod = (k * (k * k - 2 * k + 9)
                    * (k**4 - 6 * k**3 + 49 * k * k - 48 * k + 112))
            rows.append(_not_divides(
                "ell does not divide k(k^2-2k+9)(k^4-6k^3+49k^2-48k+112)",
                TWO_ELL, prod, ell))
            rows.append(_symbol("(k(k-48) | ell) = -1", TWO_ELL, k * (k - 48), ell))
            rows.append(_symbol("((24-k)(72-k) | ell) = -1", TWO_ELL,
                                (24 - k) * (72 - k), ell))
    elif kind in (MOCK_F, MOCK_OMEGA):
        if kind == MOCK_F:
            name = "(1-24i | ell) = -1 for some 0 <= i <= 5"
            vals = [1 - 24 * i for i in range(6)]
        else:
            name = "(-3i-2 | ell) = -1 for some 0 <= i <= 5"
            vals = [-3 * i - 2 for i in range(6)]
        hit = next((i for i, a in enumerate(vals) if kronecker(a, ell) == -1), None)
        rows.append(Condition(name, RAMANUJAN, hit, hit is not None))
    elif kind == MOCK_NU:
        rows.append(Condition("ell = 5 or 7 (mod 8)", RAMANUJAN, ell % 8,
                              ell % 8 in (5, 7)))
    return report


@dataclass(frozen=True)
class TwoEllAnalysis:
    k: int
    ell: int
    surviving: tuple[int, ...]
    parity: str
    conditions: tuple[Condition, ...]
    holds: bool


def two_ell_analysis(k: int, ell: int) -> TwoEllAnalysis:
    """Residues mod 2*ell left open for c-phi_k, with the hypotheses checked.

    When ``holds`` is False the surviving pair carries no guarantee.
    """
    report = corollary_conditions(FamilySpec(FROBENIUS, k=k), ell)
    rows = tuple(c for c in report.conditions if c.corollary == TWO_ELL)
    if ell >= 5:
        base = (k * ((1 - ell * ell) // 24)) % (2 * ell)
        surviving = tuple(sorted({base, (base + ell) % (2 * ell)}))
    else:
        surviving = ()
    holds = all(c.passed for c in rows)
    return TwoEllAnalysis(k, ell, surviving, "odd" if k % 2 else "even", rows, holds)


# -- certificates -----------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    residue_class: int
    t0: int
    residue: int  # a(t0) mod ell


@dataclass(frozen=True)
class Witness:
    t: int
    d: int
    t0: int


@dataclass
class IncongruenceCertificate:
    family: FamilySpec
    m: int
    ell: int
    seeds: list[Seed] = field(default_factory=list)
    prohibited: dict[int, Witness] = field(default_factory=dict)
    exceptional: list[int] = field(default_factory=list)
    conditions: list[Condition] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    @property
    def prohibited_set(self) -> set[int]:
        return set(self.prohibited)

    def to_dict(self) -> dict:
        return {
            "family": self.family.selector,
            "m": self.m,
            "ell": self.ell,
            "seeds": [{"class": s.residue_class, "t0": s.t0, "residue": s.residue}
                      for s in self.seeds],
            "prohibited": [{"t": w.t, "witness_d": w.d, "t0": w.t0}
                           for w in sorted(self.prohibited.values(), key=lambda w: w.t)],
            "exceptional": sorted(self.exceptional),
            "conditions": [c.to_dict() for c in self.conditions],
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IncongruenceCertificate":
        return cls(
            family=parse_family(data["family"]),
            m=data["m"],
            ell=data["ell"],
            seeds=[Seed(s["class"], s["t0"], s["residue"]) for s in data["seeds"]],
            prohibited={w["t"]: Witness(w["t"], w["witness_d"], w["t0"])
                        for w in data["prohibited"]},
            exceptional=list(data["exceptional"]),
            conditions=[Condition(c["name"], c["corollary"], c["value"], c["passed"])
                        for c in data["conditions"]],
            diagnostics=list(data.get("diagnostics", [])),
        )


def check_seed(coeffs: TruncatedSeries, m: int, ell: int, t0: int) -> None:
    """Raise PreconditionError unless t0 satisfies the seed hypotheses."""
    if coeffs.modulus is not None:
        raise ValueError("seeds must be checked on exact coefficients")
    if not 0 <= t0 <= coeffs.trunc:
        raise PreconditionError(f"t0 = {t0} lies outside the computed range",
                                condition="t0 within truncation")
    if coeffs[t0] % ell == 0:
        raise PreconditionError(f"ell = {ell} divides a({t0}) = {coeffs[t0]}",
                                condition="ell does not divide a(t0)")
    for n in range(t0 % m, t0, m):
        if coeffs[n]:
            raise PreconditionError(
                f"a({n}) = {coeffs[n]} is nonzero below t0 = {t0} in its class",
                condition="a(n) = 0 for n < t0, n = t0 (mod m)")


def _seed_residues(family: FamilySpec, m: int, t0: int) -> dict[int, int]:
    if family.kind in (MOCK_F, MOCK_OMEGA):
        return prohibited_residues_mock(family.kind, m, t0)
    return prohibited_residues_eta(family.B, family.level, m, t0 % m)


def certify(
    family,
    coeffs: TruncatedSeries,
    m: int,
    ell: int,
    seeds: list[int] | None = None,
) -> IncongruenceCertificate:
    """Assemble the incongruence certificate for (family, m, ell).

    With ``seeds=None`` every class mod m is scanned for its seed; explicit
    seeds are validated and a failing one raises :class:`PreconditionError`.
    """
    family = _as_family(family)
    if m < 1:
        raise ValueError("m must be positive")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    cert = IncongruenceCertificate(family, m, ell)
    pinned = seeds is not None
    mock_fo = family.kind in (MOCK_F, MOCK_OMEGA)

    if family.kind == MOCK_NU:
        cert.diagnostics.append(
            "nu has no seed-based sieve; only the Ramanujan-type corollary applies")
        candidates = []
    elif pinned:
        candidates = []
        for t0 in seeds:
            check_seed(coeffs, m, ell, t0)
            candidates.append(t0)
    else:
        candidates = []
        for c in range(m):
            try:
                t0 = seed_scan(coeffs, m, ell, c)
            except ExhaustedError:
                cert.diagnostics.append(
                    f"class {c}: no nonzero coefficient up to q^{coeffs.trunc}")
                continue
            if t0 is None:
                cert.diagnostics.append(
                    f"class {c}: first nonzero coefficient is divisible by {ell}")
                continue
            candidates.append(t0)

    if mock_fo and ell < 5 and candidates:
        msg = f"mock theta incongruences need ell >= 5, got {ell}"
        if pinned:
            raise PreconditionError(msg, condition="ell >= 5")
        cert.diagnostics.append(msg)
        candidates = []

    for t0 in candidates:
        if mock_fo and t0 >= m:
            msg = f"seed t0 = {t0} is not below m = {m}"
            if pinned:
                raise PreconditionError(msg, condition="t0 in [0, m)")
            cert.diagnostics.append(msg)
            continue
        try:
            found = _seed_residues(family, m, t0)
        except PreconditionError as exc:
            if pinned:
                raise
            cert.diagnostics.append(f"seed t0 = {t0} skipped: {exc}")
            continue
        cert.seeds.append(Seed(t0 % m, t0, coeffs[t0] % ell))
        for t, d in found.items():
            cert.prohibited.setdefault(t, Witness(t, d, t0))

    cert.prohibited = dict(sorted(cert.prohibited.items()))
    if ell >= 5:
        cert.conditions = corollary_conditions(family, ell).conditions
        if m == ell:
            try:
                cert.exceptional = [exceptional_residue(family, ell)]
            except ValueError as exc:
                cert.diagnostics.append(str(exc))
        elif m == 2 * ell and family.kind == FROBENIUS:
            cert.exceptional = list(two_ell_analysis(family.k, ell).surviving)
    if not cert.seeds and family.kind != MOCK_NU:
        cert.diagnostics.append("no residue class could be seeded")
    return cert
