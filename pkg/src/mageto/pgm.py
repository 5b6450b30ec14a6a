"""Byte-per-pixel greyscale rendering as binary PGM (P5)."""

import math


def to_pgm(data: bytes, width: int = 64) -> bytes:
    if width < 1:
        raise ValueError("width must be >= 1")
    if not data:
        raise ValueError("nothing to render")
    height = math.ceil(len(data) / width)
    body = bytes(data).ljust(width * height, b"\0")
    return f"P5\n{width} {height}\n255\n".encode("ascii") + body


def read_pgm(blob: bytes):
    """Parse a P5 image written by `to_pgm`; returns (width, height, pixels)."""
    magic, dims, maxval, pixels = blob.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError("not an 8-bit binary PGM")
    width, height = map(int, dims.split())
    if len(pixels) != width * height:
        raise ValueError("pixel data does not match header")
    return width, height, pixels
