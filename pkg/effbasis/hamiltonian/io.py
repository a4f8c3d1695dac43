"""
Integral file ingestion: FCIDUMP-like text, the equivalent JSON document, and
the per-directory `reference.json` of stored FCI energies.

The FCIDUMP grammar is documented in fixtures/FORMAT.md. In short: a
namelist header `&FCI NORB=..,NELEC=..,MS2=.., ... &END` (or `/`), followed by
records `value i j k l` with 1-based chemist indices:

    i j k l  > 0     two-body (ij|kl), expanded over the 8-fold symmetry
    i j 0 0          one-body h_ij, expanded over i↔j
    i 0 0 0          orbital energy, ignored
    0 0 0 0          constant (nuclear repulsion), at most once
"""

import json
import re
from itertools import product
from pathlib import Path

import numpy as np
from pydantic import BaseModel, Field, ValidationError
from structlog import get_logger

from effbasis.core.config import settings
from effbasis.core.errors import FcidumpParseError, HamiltonianValidationError
from effbasis.hamiltonian.fermion import FermionHamiltonian

logger = get_logger()

_CONFLICT_TOLERANCE = 1e-10
_HEADER_KEY = re.compile(r"([A-Za-z]\w*)\s*=\s*([-+\d,\s]*)")


def _two_body_images(i: int, j: int, k: int, l: int) -> set[tuple[int, int, int, int]]:
    return {
        (i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
        (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i),
    }


def _parse_header(lines: list[str]) -> tuple[dict[str, str], int]:
    """Return header key/values and the index of the first record line."""
    first = next((n for n, raw in enumerate(lines) if raw.strip()), None)
    if first is None or not lines[first].lstrip().upper().startswith("&FCI"):
        raise FcidumpParseError("missing '&FCI' header", line=(first or 0) + 1)
    text = []
    for n, raw in enumerate(lines[first:], start=first):
        stripped = raw.strip()
        upper = stripped.upper()
        end = upper.endswith("&END") or upper == "/" or upper.endswith("/")
        if end:
            stripped = stripped[: -4 if upper.endswith("&END") else -1]
        text.append(stripped.replace("&FCI", "").replace("&fci", ""))
        if end:
            header = " ".join(text)
            values = {m.group(1).upper(): m.group(2).strip().rstrip(",") for m in _HEADER_KEY.finditer(header)}
            return values, n + 1
    raise FcidumpParseError("header is not terminated by '&END' or '/'", line=len(lines))


def _header_int(values: dict[str, str], key: str, line: int, default: int | None = None) -> int:
    if key not in values:
        if default is not None:
            return default
        raise FcidumpParseError(f"header lacks {key}", line=line)
    try:
        return int(values[key].split(",")[0])
    except ValueError as e:
        raise FcidumpParseError(f"header {key}='{values[key]}' is not an integer", line=line) from e


def load_fcidump(path: str | Path) -> FermionHamiltonian:
    """Parse an FCIDUMP-like file into a FermionHamiltonian.

    Raises:
        FcidumpParseError: malformed header/record, index out of range,
            complex value, or two symmetry-equivalent records that disagree.
        HamiltonianValidationError: resulting tensors violate invariants.
    """
    path = Path(path)
    lines = path.read_text().splitlines()
    header, start = _parse_header(lines)
    norb = _header_int(header, "NORB", line=1)
    nelec = _header_int(header, "NELEC", line=1)
    ms2 = _header_int(header, "MS2", line=1, default=0)
    if norb <= 0:
        raise FcidumpParseError(f"NORB={norb} must be positive", line=1)

    h = np.zeros((norb, norb))
    g = np.zeros((norb, norb, norb, norb))
    h_set = np.zeros_like(h, dtype=bool)
    g_set = np.zeros_like(g, dtype=bool)
    constant: float | None = None

    def _assign(tensor, mask, index, value, lineno):
        if mask[index] and abs(tensor[index] - value) > _CONFLICT_TOLERANCE:
            raise FcidumpParseError(
                f"value {value} conflicts with symmetry-equivalent entry {tensor[index]}",
                line=lineno,
            )
        tensor[index] = value
        mask[index] = True

    for lineno, raw in enumerate(lines[start:], start=start + 1):
        tokens = raw.split()
        if not tokens:
            continue
        if len(tokens) != 5:
            raise FcidumpParseError(f"expected 'value i j k l', got '{raw.strip()}'", line=lineno)
        if "(" in tokens[0] or "j" in tokens[0].lower():
            raise FcidumpParseError(f"complex value '{tokens[0]}' is not supported", line=lineno)
        try:
            value = float(tokens[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(t) for t in tokens[1:])
        except ValueError as e:
            raise FcidumpParseError(f"cannot parse record '{raw.strip()}'", line=lineno) from e
        if not np.isfinite(value):
            raise FcidumpParseError(f"non-finite value '{tokens[0]}'", line=lineno)
        for idx in (i, j, k, l):
            if idx < 0 or idx > norb:
                raise FcidumpParseError(f"index {idx} out of range for NORB={norb}", line=lineno)

        if i and j and k and l:
            for image in _two_body_images(i - 1, j - 1, k - 1, l - 1):
                _assign(g, g_set, image, value, lineno)
        elif i and j and not k and not l:
            for image in ((i - 1, j - 1), (j - 1, i - 1)):
                _assign(h, h_set, image, value, lineno)
        elif i and not (j or k or l):
            continue
        elif not (i or j or k or l):
            if constant is not None:
                raise FcidumpParseError("constant record appears twice", line=lineno)
            constant = value
        else:
            raise FcidumpParseError(f"invalid index pattern {i} {j} {k} {l}", line=lineno)

    fh = FermionHamiltonian(
        n_spatial=norb,
        constant=constant or 0.0,
        h=h,
        g=g,
        n_electrons=nelec,
        ms2=ms2,
    )
    logger.debug("fcidump_loaded", path=str(path), norb=norb, nelec=nelec)
    return fh


def write_fcidump(fh: FermionHamiltonian, path: str | Path, tol: float = 1e-15) -> None:
    """Write one record per symmetry-unique entry (16 significant digits)."""
    n = fh.n_spatial
    out = [
        f" &FCI NORB={n},NELEC={fh.n_electrons or 0},MS2={fh.ms2},",
        "  ORBSYM=" + "1," * n,
        "  ISYM=1,",
        " &END",
    ]
    for i, j, k, l in product(range(n), repeat=4):
        if i < j or k < l or (i * n + j) < (k * n + l):
            continue
        if abs(fh.g[i, j, k, l]) > tol:
            out.append(f" {fh.g[i, j, k, l]: .16e} {i + 1:4d} {j + 1:4d} {k + 1:4d} {l + 1:4d}")
    for i in range(n):
        for j in range(i + 1):
            if abs(fh.h[i, j]) > tol:
                out.append(f" {fh.h[i, j]: .16e} {i + 1:4d} {j + 1:4d}    0    0")
    out.append(f" {fh.constant: .16e}    0    0    0    0")
    Path(path).write_text("\n".join(out) + "\n")


class HamiltonianDocument(BaseModel):
    """JSON alternative to FCIDUMP with the same content."""

    n_spatial: int = Field(..., ge=1)
    n_electrons: int | None = None
    ms2: int = 0
    constant: float = 0.0
    h: list[list[float]]
    g: list[list[list[list[float]]]]


def load_hamiltonian_json(path: str | Path) -> FermionHamiltonian:
    path = Path(path)
    try:
        doc = HamiltonianDocument.model_validate_json(path.read_text())
    except ValidationError as e:
        raise HamiltonianValidationError(f"{path}: {e}") from e
    return FermionHamiltonian(
        n_spatial=doc.n_spatial,
        constant=doc.constant,
        h=np.array(doc.h),
        g=np.array(doc.g),
        n_electrons=doc.n_electrons,
        ms2=doc.ms2,
    )


def dump_hamiltonian_json(fh: FermionHamiltonian, path: str | Path) -> None:
    doc = HamiltonianDocument(
        n_spatial=fh.n_spatial,
        n_electrons=fh.n_electrons,
        ms2=fh.ms2,
        constant=fh.constant,
        h=fh.h.tolist(),
        g=fh.g.tolist(),
    )
    Path(path).write_text(doc.model_dump_json(indent=1))


def load_hamiltonian(path: str | Path) -> FermionHamiltonian:
    """Dispatch on suffix: .json → JSON document, anything else → FCIDUMP."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return load_hamiltonian_json(path)
    return load_fcidump(path)


class ReferenceEnergy(BaseModel):
    fci_energy: float
    n_electrons: int
    ms2: int = 0
    note: str = ""


def reference_path(directory: str | Path) -> Path:
    return Path(directory) / settings.REFERENCE_FILE


def load_reference_energies(directory: str | Path) -> dict[str, ReferenceEnergy]:
    """Stored FCI energies keyed by fixture file name; empty when absent."""
    path = reference_path(directory)
    if not path.exists():
        return {}
    raw = json.loads(path.read_text())
    return {name: ReferenceEnergy.model_validate(record) for name, record in raw.items()}


def store_reference_energy(directory: str | Path, name: str, record: ReferenceEnergy) -> None:
    """Merge one record into reference.json, keeping keys sorted."""
    path = reference_path(directory)
    raw = json.loads(path.read_text()) if path.exists() else {}
    raw[name] = record.model_dump()
    path.write_text(json.dumps(dict(sorted(raw.items())), indent=2) + "\n")
