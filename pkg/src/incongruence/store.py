"""On-disk cache of coefficient runs (``.qc`` files).

Line 1 is a JSON header ``{"version", "family", "params", "modulus",
"depth"}``; every following line holds one coefficient in signed decimal.
UTF-8, LF line endings, no trailing whitespace. Files are written to a
temporary sibling and renamed into place.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import CacheFormatError
from .families import FamilySpec, family_from_params
from .series import TruncatedSeries

FORMAT_VERSION = 1
SUFFIX = ".qc"


@dataclass(frozen=True)
class CacheEntry:
    family: FamilySpec
    modulus: int | None
    depth: int
    coeffs: tuple[int, ...]
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if len(self.coeffs) != self.depth + 1:
            raise ValueError("depth must equal the coefficient count minus one")

    @classmethod
    def from_series(cls, family: FamilySpec, series: TruncatedSeries) -> "CacheEntry":
        return cls(family, series.modulus, series.trunc, tuple(series.coeffs))

    def to_series(self) -> TruncatedSeries:
        return TruncatedSeries(self.family.offset24, self.depth, self.modulus,
                               self.coeffs)

    def header(self) -> dict:
        return {
            "version": self.format_version,
            "family": self.family.kind,
            "params": self.family.params(),
            "modulus": self.modulus,
            "depth": self.depth,
        }


def _params_tag(family: FamilySpec) -> str:
    params = family.params()
    if not params:
        return "std"
    if "k" in params:
        return f"k{params['k']}"
    factors = "_".join(f"{d}e{r}" for d, r in params["factors"]) or "none"
    return f"{factors}_N{params['level']}"


def cache_filename(family: FamilySpec, modulus: int | None, depth: int) -> str:
    mod = "exact" if modulus is None else str(modulus)
    return f"{family.kind}-{_params_tag(family)}-m{mod}-d{depth}{SUFFIX}"


def _read_header(path: Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    try:
        header = json.loads(first)
    except json.JSONDecodeError as exc:
        raise CacheFormatError(f"{path}: malformed header") from exc
    if not isinstance(header, dict):
        raise CacheFormatError(f"{path}: header is not an object")
    return header


def save_cache(entry: CacheEntry, path) -> Path:
    path = Path(path)
    if path.exists():
        try:
            existing = _read_header(path).get("version", 0)
        except CacheFormatError:
            existing = 0
        if isinstance(existing, int) and existing > entry.format_version:
            raise CacheFormatError(
                f"{path} has format version {existing}, newer than "
                f"{entry.format_version}; refusing to overwrite")
    lines = [json.dumps(entry.header(), sort_keys=True, separators=(",", ":"))]
    lines.extend(str(c) for c in entry.coeffs)
    payload = "\n".join(lines) + "\n"

    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load_cache(path) -> CacheEntry:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CacheFormatError(f"{path}: empty file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise CacheFormatError(f"{path}: malformed header") from exc
    for key in ("version", "family", "params", "modulus", "depth"):
        if key not in header:
            raise CacheFormatError(f"{path}: header lacks {key!r}")
    if header["version"] != FORMAT_VERSION:
        raise CacheFormatError(
            f"{path}: format version {header['version']}, expected {FORMAT_VERSION}")
    depth = header["depth"]
    body = lines[1:]
    if len(body) != depth + 1:
        raise CacheFormatError(
            f"{path}: header declares depth {depth} but holds {len(body)} coefficients")
    coeffs = []
    for i, line in enumerate(body, start=2):
        try:
            coeffs.append(int(line))
        except ValueError:
            raise CacheFormatError(f"{path}:{i}: malformed line {line!r}") from None
    modulus = header["modulus"]
    if modulus is not None and any(not 0 <= c < modulus for c in coeffs):
        raise CacheFormatError(f"{path}: coefficient outside [0, {modulus})")
    family = family_from_params(header["family"], header["params"])
    return CacheEntry(family, modulus, depth, tuple(coeffs), header["version"])


def find_cached(directory, family: FamilySpec, modulus: int | None, depth: int):
    """Shallowest cached run in ``directory`` reaching ``depth``, or None."""
    directory = Path(directory)
    if not directory.is_dir():
        return None
    mod = "exact" if modulus is None else str(modulus)
    prefix = f"{family.kind}-{_params_tag(family)}-m{mod}-d"
    best = None
    for p in directory.glob(prefix + "*" + SUFFIX):
        tail = p.name[len(prefix):-len(SUFFIX)]
        if tail.isdigit() and int(tail) >= depth:
            if best is None or int(tail) < best[0]:
                best = (int(tail), p)
    return None if best is None else best[1]
