"""Minimal deterministic PNG encode/decode (RGB, no ancillary chunks)."""

from __future__ import annotations

import struct
import zlib

_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _chunk(kind: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + kind
        + payload
        + struct.pack(">I", zlib.crc32(kind + payload) & 0xFFFFFFFF)
    )


def encode_rgb(width: int, height: int, rows: bytes) -> bytes:
    """Encode raw RGB bytes (height * width * 3) as a PNG."""
    if len(rows) != width * height * 3:
        raise ValueError("pixel buffer size does not match dimensions")
    ihdr = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    stride = width * 3
    filtered = b"".join(
        b"\x00" + rows[y * stride : (y + 1) * stride] for y in range(height)
    )
    idat = zlib.compress(filtered, 6)
    return _SIGNATURE + _chunk(b"IHDR", ihdr) + _chunk(b"IDAT", idat) + _chunk(b"IEND", b"")


def dimensions(png: bytes) -> tuple[int, int]:
    """Read (width, height) from a PNG header, validating the signature."""
    if len(png) < 24 or png[:8] != _SIGNATURE or png[12:16] != b"IHDR":
        raise ValueError("not a PNG")
    width, height = struct.unpack(">II", png[16:24])
    return width, height
