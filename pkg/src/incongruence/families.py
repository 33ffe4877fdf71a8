"""Coefficient families and the command-line selector grammar.

Selectors::

    p                      partitions
    cphi:<k>               k-coloured generalized Frobenius partitions
    mock:f | mock:omega | mock:nu
    eta:<d1^r1,d2^r2,...>@N=<level>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

PARTITION = "partition"
FROBENIUS = "frobenius"
MOCK_F = "mock_f"
MOCK_OMEGA = "mock_omega"
MOCK_NU = "mock_nu"
ETA = "eta"

KINDS = (PARTITION, FROBENIUS, MOCK_F, MOCK_OMEGA, MOCK_NU, ETA)
MOCK_KINDS = (MOCK_F, MOCK_OMEGA, MOCK_NU)

# q-offsets (in 1/24 units) of the modular completions' holomorphic parts;
# only reported, never used to index coefficients
_MOCK_OFFSET = {MOCK_F: -1, MOCK_OMEGA: 16, MOCK_NU: 0}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    k: int | None = None
    factors: tuple[tuple[int, int], ...] = field(default=())
    eta_level: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == FROBENIUS and (self.k is None or self.k < 1):
            raise ValueError("Frobenius family needs k >= 1")
        if self.kind == ETA:
            if self.eta_level is None or self.eta_level < 1:
                raise ValueError("eta quotient needs a positive level")
            if any(d < 1 for d, _ in self.factors):
                raise ValueError("eta factors need delta >= 1")

    @property
    def B(self) -> int | None:
        """Exponent offset in units of 1/24 (the power of eta pulled out)."""
        if self.kind == PARTITION:
            return -1
        if self.kind == FROBENIUS:
            return -self.k
        if self.kind == ETA:
            return sum(d * r for d, r in self.factors)
        if self.kind == MOCK_NU:
            return None
        return _MOCK_OFFSET[self.kind]

    @property
    def offset24(self) -> int:
        b = self.B
        return 0 if b is None else b

    @property
    def level(self) -> int:
        if self.kind == FROBENIUS:
            return self.k if self.k % 2 else 2 * self.k
        if self.kind == ETA:
            return self.eta_level
        # mock families: coprimality is imposed against 24m directly
        return 1

    @property
    def is_mock(self) -> bool:
        return self.kind in MOCK_KINDS

    @property
    def selector(self) -> str:
        if self.kind == PARTITION:
            return "p"
        if self.kind == FROBENIUS:
            return f"cphi:{self.k}"
        if self.kind == MOCK_F:
            return "mock:f"
        if self.kind == MOCK_OMEGA:
            return "mock:omega"
        if self.kind == MOCK_NU:
            return "mock:nu"
        body = ",".join(f"{d}^{r}" for d, r in self.factors)
        return f"eta:{body}@N={self.eta_level}"

    def params(self) -> dict:
        if self.kind == FROBENIUS:
            return {"k": self.k}
        if self.kind == ETA:
            return {"factors": [list(f) for f in self.factors], "level": self.eta_level}
        return {}

    def __str__(self) -> str:
        return self.selector


def partition() -> FamilySpec:
    return FamilySpec(PARTITION)


def frobenius(k: int) -> FamilySpec:
    return FamilySpec(FROBENIUS, k=k)


def mock(name: str) -> FamilySpec:
    return FamilySpec({"f": MOCK_F, "omega": MOCK_OMEGA, "nu": MOCK_NU}[name])


def eta(factors, level: int) -> FamilySpec:
    return FamilySpec(ETA, factors=tuple((int(d), int(r)) for d, r in factors),
                      eta_level=level)


_ETA_RE = re.compile(r"^eta:(?P<body>[^@]*)@N=(?P<level>\d+)$")
_FACTOR_RE = re.compile(r"^\s*(\d+)\s*\^\s*(-?\d+)\s*$")


def parse_family(text: str) -> FamilySpec:
    s = text.strip()
    if s == "p":
        return partition()
    if s.startswith("cphi:"):
        try:
            k = int(s[5:])
        except ValueError:
            raise ValueError(f"bad Frobenius selector {text!r}") from None
        return frobenius(k)
    if s in ("mock:f", "mock:omega", "mock:nu"):
        return mock(s[5:])
    m = _ETA_RE.match(s)
    if m:
        factors = []
        body = m.group("body").strip()
        for part in filter(None, (x.strip() for x in body.split(","))):
            fm = _FACTOR_RE.match(part)
            if not fm:
                raise ValueError(f"bad eta factor {part!r} in {text!r}")
            factors.append((int(fm.group(1)), int(fm.group(2))))
        return eta(factors, int(m.group("level")))
    raise ValueError(f"unrecognised family selector {text!r}")


def family_from_params(kind: str, params: dict) -> FamilySpec:
    if kind == FROBENIUS:
        return frobenius(int(params["k"]))
    if kind == ETA:
        return eta(params["factors"], int(params["level"]))
    return FamilySpec(kind)
