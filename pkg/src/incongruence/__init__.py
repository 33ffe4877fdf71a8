"""Coefficients of partition-type q-series and certificates that rule out
Ramanujan-type congruences in arithmetic progressions."""

from .errors import (
    CacheFormatError,
    ExhaustedError,
    IncongruenceError,
    ModulusMismatchError,
    NonUnitError,
    PreconditionError,
    TruncationError,
)
from .families import FamilySpec, parse_family
from .generators import (
    frobenius_coeffs,
    frobenius_theta,
    generate,
    mock_f_coeffs,
    mock_nu_coeffs,
    mock_omega_coeffs,
    partition_coeffs,
    seed_scan,
)
from .scanner import ScanReport, reconcile, scan, verify_congruence
from .series import (
    TruncatedSeries,
    eta_quotient,
    extract_progression,
    invert,
    mul,
    power,
    reduce_mod,
)
from .sieve import (
    IncongruenceCertificate,
    certify,
    corollary_conditions,
    exceptional_residue,
    prohibited_residues_eta,
    prohibited_residues_mock,
    two_ell_analysis,
)
from .arith import kronecker
from .store import CacheEntry, load_cache, save_cache

__version__ = "0.1.0"
