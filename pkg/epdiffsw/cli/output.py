"""
EPDiff-SW - Output Files

diagnostics.csv, 1-D CSV snapshots and the 2-D binary EPDF snapshot format:

    b"EPDF" | int64 LE x4: dim, nx, ny, field count | float64 LE row-major,
    one block of nx*ny values per field
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Tuple

import numpy as np
import pandas as pd
import structlog

from epdiffsw.core.config import settings
from epdiffsw.core.exceptions import SnapshotFormatError
from epdiffsw.integrate import Snapshot
from epdiffsw.schemas import DiagnosticsRecord
from epdiffsw.spectral import Grid

logger = structlog.get_logger()

DIAGNOSTICS_FILENAME = "diagnostics.csv"
DIAGNOSTICS_COLUMNS = [
    "step",
    "t",
    "hamiltonian",
    "mass",
    "momentum_x",
    "momentum_y",
    "max_speed",
    "l2_m",
]
SNAPSHOT_MAGIC = b"EPDF"
HEADER_DTYPE = np.dtype("<i8")
DATA_DTYPE = np.dtype("<f8")


def write_diagnostics(records: Iterable[DiagnosticsRecord], path: Path) -> Path:
    """Write records in step order; undefined quantities become empty cells"""
    rows = [record.model_dump() for record in records]
    frame = pd.DataFrame(rows, columns=DIAGNOSTICS_COLUMNS)
    frame.to_csv(
        path,
        index=False,
        na_rep="",
        float_format=settings.SNAPSHOT_FLOAT_FORMAT,
        lineterminator="\n",
    )
    return Path(path)


def snapshot_path(directory: Path, snapshot: Snapshot, grid: Grid) -> Path:
    suffix = "csv" if grid.dim == 1 else "epdf"
    return Path(directory) / f"snapshot_{snapshot.step:06d}.{suffix}"


def write_snapshot(snapshot: Snapshot, grid: Grid, directory: Path) -> Path:
    """
    Write one snapshot: CSV `x,<fields>` in 1-D, EPDF binary in 2-D

    Returns:
        Path of the written file
    """
    path = snapshot_path(directory, snapshot, grid)
    if grid.dim == 1:
        columns = {"x": grid.coordinates()[0]}
        columns.update({name: f.values for name, f in snapshot.fields.items()})
        pd.DataFrame(columns).to_csv(
            path,
            index=False,
            float_format=settings.SNAPSHOT_FLOAT_FORMAT,
            lineterminator="\n",
        )
    else:
        header = np.array(
            [grid.dim, grid.sizes[0], grid.sizes[1], len(snapshot.fields)], dtype=HEADER_DTYPE
        )
        with open(path, "wb") as handle:
            handle.write(SNAPSHOT_MAGIC)
            handle.write(header.tobytes())
            for f in snapshot.fields.values():
                handle.write(np.ascontiguousarray(f.values, dtype=DATA_DTYPE).tobytes(order="C"))
    logger.debug("snapshot_written", path=str(path), step=snapshot.step)
    return path


@dataclass(frozen=True)
class BinarySnapshot:
    dim: int
    nx: int
    ny: int
    fields: np.ndarray  # (field count, nx, ny)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nx, self.ny)


def read_binary_snapshot(path: Path) -> BinarySnapshot:
    """
    Read an EPDF file written by write_snapshot

    Raises:
        SnapshotFormatError: bad magic, truncated header or payload size mismatch
    """
    raw = Path(path).read_bytes()
    header_size = len(SNAPSHOT_MAGIC) + 4 * HEADER_DTYPE.itemsize
    if raw[: len(SNAPSHOT_MAGIC)] != SNAPSHOT_MAGIC:
        raise SnapshotFormatError(f"{path}: missing EPDF magic bytes")
    if len(raw) < header_size:
        raise SnapshotFormatError(f"{path}: truncated header")

    dim, nx, ny, count = (
        int(v) for v in np.frombuffer(raw, dtype=HEADER_DTYPE, count=4, offset=len(SNAPSHOT_MAGIC))
    )
    expected = header_size + count * nx * ny * DATA_DTYPE.itemsize
    if len(raw) != expected:
        raise SnapshotFormatError(f"{path}: expected {expected} bytes, found {len(raw)}")

    data = np.frombuffer(raw, dtype=DATA_DTYPE, offset=header_size).reshape(count, nx, ny)
    return BinarySnapshot(dim=dim, nx=nx, ny=ny, fields=data.astype(np.float64))
