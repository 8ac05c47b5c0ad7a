"""Reading and writing portable graymap (PGM) images, ASCII and binary.

Images are exchanged with the rest of the package as float arrays
normalized to [0, 1]; files store integer samples up to a maxval of
65535 (16-bit binary samples are big-endian, the convention of the format definition).
Comment lines (leading '#') in the header are preserved on write via
``comments`` so output files can carry their generating configuration.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .core import ConfigurationError


def read_pgm(path: Union[str, Path]) -> tuple[np.ndarray, int]:
    """Read a P2 (ASCII) or P5 (binary) graymap.

    Returns (image, maxval) with the image as floats in [0, 1]
    (sample / maxval).
    """
    data = Path(path).read_bytes()
    if not data[:2] in (b"P2", b"P5"):
        raise ConfigurationError("not a P2/P5 graymap: %s" % path)
    magic = data[:2].decode()

    # Tokenize the header: magic, width, height, maxval.  Comments run
    # from '#' to end of line anywhere in the header.
    pos = 2
    tokens = []
    while len(tokens) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ConfigurationError("truncated graymap header: %s" % path)
        tokens.append(data[start:pos])
    width, height, maxval = (int(t) for t in tokens)
    if not (0 < maxval <= 65535):
        raise ConfigurationError("maxval out of range (1..65535): %d" % maxval)

    if magic == "P2":
        values = np.array(data[pos:].split(), dtype=np.int64)
        if values.size != width * height:
            raise ConfigurationError(
                "expected %d samples, found %d" % (width * height, values.size)
            )
    else:
        pos += 1  # single whitespace byte after maxval
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        count = width * height
        raw = data[pos : pos + count * dtype.itemsize]
        if len(raw) != count * dtype.itemsize:
            raise ConfigurationError("truncated raster in %s" % path)
        values = np.frombuffer(raw, dtype=dtype).astype(np.int64)

    if values.min() < 0 or values.max() > maxval:
        raise ConfigurationError("sample out of range in %s" % path)
    img = values.reshape(height, width).astype(float) / maxval
    return img, maxval


def write_pgm(
    path: Union[str, Path],
    image: np.ndarray,
    maxval: int = 65535,
    binary: bool = True,
    comments: Optional[Iterable[str]] = None,
) -> None:
    """Write a [0, 1] float image as a P5 (or P2) graymap.

    Values are clipped to [0, 1] and rounded to maxval levels; reading
    the file back reproduces the quantized samples exactly.
    """
    image = np.asarray(image, dtype=float)
    if image.ndim != 2:
        raise ConfigurationError("image must be 2-d")
    if not (0 < maxval <= 65535):
        raise ConfigurationError("maxval out of range (1..65535): %d" % maxval)

    samples = np.rint(np.clip(image, 0.0, 1.0) * maxval).astype(np.int64)
    header_lines = ["P5" if binary else "P2"]
    for c in comments or ():
        for line in str(c).splitlines() or [""]:
            header_lines.append("# " + line)
    header_lines.append("%d %d" % (image.shape[1], image.shape[0]))
    header_lines.append("%d" % maxval)
    header = ("\n".join(header_lines) + "\n").encode("ascii")

    path = Path(path)
    if binary:
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        path.write_bytes(header + samples.astype(dtype).tobytes())
    else:
        body = "\n".join(
            " ".join(str(v) for v in row) for row in samples
        )
        path.write_bytes(header + body.encode("ascii") + b"\n")
