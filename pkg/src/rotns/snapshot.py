"""Binary spectral snapshots.

Layout (little endian):
    magic "CBSV" | version u32 | n u32 | L f64 | nu f64 | omega f64 |
    time_tag f64 | component count u32 | flags u32 (bit0 mean_free,
    bit1 solenoidal) | payload
The payload holds (re, im) f64 pairs per component in row-major wavevector
order with the k3 axis fastest, 2*8*components*n^3 bytes in total.
"""

import struct

import numpy as np

from .spectral import FlowParams, SpectralField, divergence_defect, make_grid

MAGIC = b"CBSV"
VERSION = 1
_HEADER = struct.Struct("<4sIIddddII")

FLAG_MEAN_FREE = 1
FLAG_SOLENOIDAL = 2


def write_snapshot(field: SpectralField, path, params: FlowParams | None = None):
    """Serialize a spectral field; coefficients round-trip bit exactly."""
    nu = params.nu if params else 0.0
    omega = params.omega if params else 0.0
    flags = 0
    if field.mean_free:
        flags |= FLAG_MEAN_FREE
    if field.ncomp == 3 and divergence_defect(field) <= 1e-10:
        flags |= FLAG_SOLENOIDAL
    header = _HEADER.pack(MAGIC, VERSION, field.grid.n, field.grid.L,
                          nu, omega, field.time_tag, field.ncomp, flags)
    payload = np.ascontiguousarray(field.coeffs, dtype="<c16").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def read_snapshot(path) -> SpectralField:
    """Load a spectral field; raises on magic/version/payload mismatch."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise ValueError("payload length mismatch: truncated header")
    magic, version, n, L, _nu, _omega, time_tag, ncomp, _flags = \
        _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError(f"snapshot magic mismatch: {magic!r}")
    if version != VERSION:
        raise ValueError(f"unsupported version {version}")
    expected = 16 * ncomp * n**3
    payload = blob[_HEADER.size:]
    if len(payload) != expected:
        raise ValueError(f"payload length mismatch: got {len(payload)}, "
                         f"expected {expected}")
    grid = make_grid(n, L)
    coeffs = np.frombuffer(payload, dtype="<c16").reshape(ncomp, n, n, n).copy()
    return SpectralField(grid, coeffs, time_tag)


def read_snapshot_meta(path) -> dict:
    """Header fields only (no payload decode)."""
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
    if len(head) < _HEADER.size:
        raise ValueError("payload length mismatch: truncated header")
    magic, version, n, L, nu, omega, time_tag, ncomp, flags = _HEADER.unpack(head)
    if magic != MAGIC:
        raise ValueError(f"snapshot magic mismatch: {magic!r}")
    if version != VERSION:
        raise ValueError(f"unsupported version {version}")
    return {"version": version, "n": n, "L": L, "nu": nu, "omega": omega,
            "time_tag": time_tag, "ncomp": ncomp,
            "mean_free": bool(flags & FLAG_MEAN_FREE),
            "solenoidal": bool(flags & FLAG_SOLENOIDAL)}
