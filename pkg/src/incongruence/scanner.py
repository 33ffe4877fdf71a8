"""Brute-force scans of arithmetic progressions mod ell.

A scan only ever *witnesses* nonvanishing. A class with no witness up to the
depth is reported as a candidate at that depth, which is not a claim that
the congruence holds.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable

from .arith import is_prime
from .errors import TruncationError
from .families import FamilySpec, parse_family
from .series import TruncatedSeries, extract_progression
from .sieve import IncongruenceCertificate

WITNESSED = "witnessed-nonzero"
CANDIDATE = "candidate"

OK = "OK"
WARN = "WARN"
CONTRADICTION = "CONTRADICTION"


@dataclass(frozen=True)
class Status:
    kind: str
    witness_n: int | None = None

    def to_dict(self, t: int) -> dict:
        row = {"t": t, "status": self.kind}
        if self.witness_n is not None:
            row["witness_n"] = self.witness_n
        return row


@dataclass
class ScanReport:
    family: FamilySpec | None
    m: int
    ell: int
    depth: int
    statuses: dict[int, Status] = field(default_factory=dict)

    def candidates(self) -> list[int]:
        return [t for t, s in sorted(self.statuses.items()) if s.kind == CANDIDATE]

    def witnessed(self) -> list[int]:
        return [t for t, s in sorted(self.statuses.items()) if s.kind == WITNESSED]

    def to_dict(self) -> dict:
        return {
            "family": self.family.selector if self.family else None,
            "m": self.m,
            "ell": self.ell,
            "depth": self.depth,
            "statuses": [s.to_dict(t) for t, s in sorted(self.statuses.items())],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScanReport":
        fam = parse_family(data["family"]) if data.get("family") else None
        statuses = {row["t"]: Status(row["status"], row.get("witness_n"))
                    for row in data["statuses"]}
        return cls(fam, data["m"], data["ell"], data["depth"], statuses)

    def to_tsv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
        writer.writerow(["t", "status", "witness_n"])
        for t, s in sorted(self.statuses.items()):
            writer.writerow([t, s.kind, "" if s.witness_n is None else s.witness_n])
        return buf.getvalue()


def _check(coeffs: TruncatedSeries, m: int, ell: int, depth: int) -> None:
    if m < 1:
        raise ValueError("m must be positive")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if coeffs.modulus not in (None, ell):
        raise ValueError(f"coefficients are reduced mod {coeffs.modulus}, not {ell}")
    need = m * depth + m - 1
    if coeffs.trunc < need:
        raise TruncationError(
            f"depth {depth} at m = {m} needs coefficients to q^{need}, "
            f"have q^{coeffs.trunc}")


def _first_nonzero(values, ell: int, depth: int) -> int | None:
    for n, a in enumerate(values[: depth + 1]):
        if a % ell:
            return n
    return None


def scan(
    coeffs: TruncatedSeries,
    m: int,
    ell: int,
    depth: int,
    family: FamilySpec | None = None,
) -> ScanReport:
    """For each t in [0, m): least n <= depth with a(mn+t) != 0 mod ell."""
    _check(coeffs, m, ell, depth)
    report = ScanReport(family, m, ell, depth)
    for t in range(m):
        values = extract_progression(coeffs, m, t).values
        n = _first_nonzero(values, ell, depth)
        report.statuses[t] = Status(CANDIDATE) if n is None else Status(WITNESSED, n)
    return report


@dataclass(frozen=True)
class Verification:
    m: int
    t: int
    ell: int
    depth: int
    first_violation: int | None

    @property
    def passed(self) -> bool:
        return self.first_violation is None

    def to_dict(self) -> dict:
        return {"m": self.m, "t": self.t, "ell": self.ell, "depth": self.depth,
                "passed": self.passed, "first_violation": self.first_violation}


def verify_congruence(
    coeffs: TruncatedSeries, m: int, t: int, ell: int, depth: int
) -> Verification:
    """Check a(mn+t) = 0 (mod ell) for 0 <= n <= depth."""
    _check(coeffs, m, ell, depth)
    if not 0 <= t < m:
        raise ValueError(f"t must lie in [0, {m})")
    values = extract_progression(coeffs, m, t).values
    return Verification(m, t, ell, depth, _first_nonzero(values, ell, depth))


@dataclass
class Reconciliation:
    status: str
    contradictions: list[int] = field(default_factory=list)
    unwitnessed: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"status": self.status, "contradictions": self.contradictions,
                "unwitnessed": self.unwitnessed}


def reconcile(
    report: ScanReport,
    cert: IncongruenceCertificate,
    verified: Iterable[int] = (),
) -> Reconciliation:
    """Cross-check a certificate against a scan.

    ``verified`` lists residues the caller has marked as proven congruences;
    any of them in the prohibited set is a contradiction. Prohibited classes
    without a witness at the scanned depth only raise a warning.
    """
    if (report.m, report.ell) != (cert.m, cert.ell):
        raise ValueError(
            f"scan is for (m={report.m}, ell={report.ell}), "
            f"certificate for (m={cert.m}, ell={cert.ell})")
    if report.family is not None and report.family != cert.family:
        raise ValueError("scan and certificate are for different families")
    prohibited = cert.prohibited_set
    bad = sorted(prohibited & set(verified))
    quiet = sorted(t for t in prohibited
                   if report.statuses.get(t, Status(CANDIDATE)).kind == CANDIDATE)
    if bad:
        return Reconciliation(CONTRADICTION, bad, quiet)
    if quiet:
        return Reconciliation(WARN, [], quiet)
    return Reconciliation(OK)
