"""Loading and saving label masks.

Two formats are supported, both byte-exactly specified:

* PGM (portable graymap, types P2 and P5) for 2D masks. The gray value of
  a pixel is its class label; maxval may be up to 65535. P5 samples wider
  than one byte are big-endian, per the PNM convention.
* A raw-volume pair for 3D masks: ``<name>.json`` holding
  ``{"shape": [z, y, x], "dtype": "u8"|"u16", "order": "row-major"}``
  next to ``<name>.raw`` with exactly product(shape) little-endian labels.
"""
from __future__ import annotations

import json
import os

import numpy as np

from .core import LabelMask, make_mask
from .errors import FormatUnsupported, HeaderCorrupt, SizeMismatch

_WHITESPACE = b" \t\n\r\x0b\x0c"


def _pgm_tokens(blob: bytes, count: int, start: int) -> tuple[list[int], int]:
    """Read `count` whitespace-separated ASCII integers, skipping comments."""
    tokens: list[int] = []
    i = start
    n = len(blob)
    while len(tokens) < count:
        while i < n:
            if blob[i] in _WHITESPACE:
                i += 1
            elif blob[i] == 0x23:  # '#' comment runs to end of line
                while i < n and blob[i] != 0x0A:
                    i += 1
            else:
                break
        if i >= n:
            raise HeaderCorrupt("PGM data ended early")
        j = i
        while j < n and blob[j] not in _WHITESPACE and blob[j] != 0x23:
            j += 1
        word = blob[i:j]
        try:
            tokens.append(int(word))
        except ValueError:
            raise HeaderCorrupt(f"expected integer in PGM data, got {word!r}")
        i = j
    return tokens, i


def _load_pgm(blob: bytes, path: str) -> LabelMask:
    magic = blob[:2]
    if magic not in (b"P2", b"P5"):
        raise HeaderCorrupt(f"{path}: not a P2/P5 PGM (magic {magic!r})")
    (width, height, maxval), pos = _pgm_tokens(blob, 3, 2)
    if width < 1 or height < 1:
        raise HeaderCorrupt(f"{path}: non-positive PGM dimensions {width}x{height}")
    if not 1 <= maxval <= 65535:
        raise HeaderCorrupt(f"{path}: PGM maxval {maxval} outside [1, 65535]")
    count = width * height
    if magic == b"P2":
        samples, _ = _pgm_tokens(blob, count, pos)
        data = np.asarray(samples, dtype=np.int64)
    else:
        # single whitespace byte separates the header from the raster
        if pos >= len(blob) or blob[pos] not in _WHITESPACE:
            raise HeaderCorrupt(f"{path}: missing separator before P5 raster")
        raster = blob[pos + 1 :]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(raster) != need:
            raise SizeMismatch(
                f"{path}: P5 raster has {len(raster)} bytes, expected {need}"
            )
        data = np.frombuffer(raster, dtype=dtype).astype(np.int64)
    if data.size and data.max() > maxval:
        raise HeaderCorrupt(
            f"{path}: sample {int(data.max())} exceeds maxval {maxval}"
        )
    if data.size and data.min() < 0:
        raise HeaderCorrupt(f"{path}: negative sample in PGM data")
    return make_mask((height, width), data)


_RAW_DTYPES = {"u8": np.dtype("<u1"), "u16": np.dtype("<u2")}


def _load_raw(sidecar_path: str) -> LabelMask:
    try:
        with open(sidecar_path, "rb") as fh:
            meta = json.load(fh)
    except json.JSONDecodeError as exc:
        raise HeaderCorrupt(f"{sidecar_path}: invalid JSON sidecar: {exc}")
    if not isinstance(meta, dict):
        raise HeaderCorrupt(f"{sidecar_path}: sidecar must be a JSON object")
    for key in ("shape", "dtype", "order"):
        if key not in meta:
            raise HeaderCorrupt(f"{sidecar_path}: sidecar missing field {key!r}")
    shape = meta["shape"]
    if (
        not isinstance(shape, list)
        or len(shape) != 3
        or not all(isinstance(s, int) and s >= 1 for s in shape)
    ):
        raise HeaderCorrupt(
            f"{sidecar_path}: shape must be three positive integers, got {shape!r}"
        )
    if meta["order"] != "row-major":
        raise HeaderCorrupt(
            f"{sidecar_path}: unsupported order {meta['order']!r}"
        )
    dtype = _RAW_DTYPES.get(meta["dtype"])
    if dtype is None:
        raise HeaderCorrupt(
            f"{sidecar_path}: dtype must be 'u8' or 'u16', got {meta['dtype']!r}"
        )
    raw_path = os.path.splitext(sidecar_path)[0] + ".raw"
    if not os.path.exists(raw_path):
        raise FileNotFoundError(raw_path)
    with open(raw_path, "rb") as fh:
        payload = fh.read()
    need = shape[0] * shape[1] * shape[2] * dtype.itemsize
    if len(payload) != need:
        raise SizeMismatch(
            f"{raw_path}: payload has {len(payload)} bytes, expected {need}"
        )
    data = np.frombuffer(payload, dtype=dtype)
    return make_mask(tuple(shape), data)


def load_mask(path: str) -> LabelMask:
    """Load a mask, picking the format from the extension or magic bytes."""
    ext = os.path.splitext(path)[1].lower()
    if ext == ".json":
        return _load_raw(path)
    if ext == ".raw":
        sidecar = os.path.splitext(path)[0] + ".json"
        if not os.path.exists(sidecar):
            raise FileNotFoundError(sidecar)
        return _load_raw(sidecar)
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:2] in (b"P2", b"P5"):
        return _load_pgm(blob, path)
    if ext == ".pgm":
        raise HeaderCorrupt(f"{path}: not a P2/P5 PGM")
    raise FormatUnsupported(f"{path}: unrecognized mask format")


def save_pgm(mask: LabelMask, path: str, ascii_format: bool = False) -> None:
    """Write a 2D mask as P5 (default) or P2 PGM."""
    if mask.rank != 2:
        raise FormatUnsupported("PGM holds 2D masks only")
    height, width = mask.shape
    maxval = max(1, int(mask.values.max()))
    header = f"{'P2' if ascii_format else 'P5'}\n{width} {height}\n{maxval}\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if ascii_format:
            lines = [
                " ".join(str(int(v)) for v in row) for row in mask.values
            ]
            fh.write(("\n".join(lines) + "\n").encode("ascii"))
        else:
            dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
            fh.write(mask.values.astype(dtype).tobytes(order="C"))


def save_raw(mask: LabelMask, base_path: str) -> tuple[str, str]:
    """Write a 3D mask as <base>.json + <base>.raw; returns both paths."""
    if mask.rank != 3:
        raise FormatUnsupported("raw-volume pairs hold 3D masks only")
    base = base_path
    for suffix in (".json", ".raw"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
            break
    dtype_name = "u16" if int(mask.values.max()) > 255 else "u8"
    sidecar_path = base + ".json"
    raw_path = base + ".raw"
    meta = {"shape": list(mask.shape), "dtype": dtype_name, "order": "row-major"}
    with open(sidecar_path, "w", encoding="ascii", newline="") as fh:
        json.dump(meta, fh)
        fh.write("\n")
    with open(raw_path, "wb") as fh:
        fh.write(mask.values.astype(_RAW_DTYPES[dtype_name]).tobytes(order="C"))
    return sidecar_path, raw_path


def save_mask(mask: LabelMask, path: str, ascii_format: bool = False) -> None:
    """Save 2D masks as PGM and 3D masks as a raw-volume pair."""
    if mask.rank == 2:
        save_pgm(mask, path, ascii_format=ascii_format)
    else:
        save_raw(mask, path)
