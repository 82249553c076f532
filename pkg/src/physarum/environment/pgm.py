"""_summary_
Reading and writing of portable graymap (PGM) images, used for nutrient masks
on the way in and for occupancy / partition / field rasters on the way out.

Functions:
    parse_pgm(data: bytes) -> np.ndarray: decodes a P2 (plain) or P5 (binary) image.
    read_pgm(path: str) -> np.ndarray: parse_pgm on the contents of a file.
    encode_pgm(pixels: np.ndarray) -> bytes: P5 encoding, one byte per pixel.
    write_pgm(pixels: np.ndarray, path: str) -> str: writes encode_pgm to disk.
"""

import os
import re
from typing import List, Tuple

import numpy as np

_TOKEN = re.compile(rb'\s*(#[^\n]*\n\s*)*(\S+)')


def _header(data: bytes, count: int) -> Tuple[List[bytes], int]:
    tokens: List[bytes] = []
    pos = 0
    while len(tokens) < count:
        match = _TOKEN.match(data, pos)
        if match is None:
            raise ValueError('truncated PGM header')
        tokens.append(match.group(2))
        pos = match.end()
    return tokens, pos


def parse_pgm(data: bytes) -> np.ndarray:
    """
    Decodes a PGM image.
    Args:
        data (bytes): P2 or P5 file contents; comments are allowed in the header.
    Returns:
        np.ndarray: float array [h, w] of pixel values scaled to 0..255.
    Raises:
        ValueError: unsupported magic number, bad header or short pixel data.
    """
    (magic, width, height, maxval), pos = _header(data, 4)
    w, h, maxv = int(width), int(height), int(maxval)
    if w <= 0 or h <= 0 or not 0 < maxv < 65536:
        raise ValueError(f'bad PGM header: {w}x{h} maxval {maxv}')
    if magic == b'P5':
        pos += 1  # single whitespace byte after maxval
        dtype = np.dtype('>u2') if maxv > 255 else np.dtype(np.uint8)
        needed = w * h * dtype.itemsize
        if len(data) - pos < needed:
            raise ValueError('PGM pixel data is truncated')
        pixels = np.frombuffer(data, dtype=dtype, count=w * h, offset=pos).astype(np.float64)
    elif magic == b'P2':
        values = data[pos:].split()
        if len(values) < w * h:
            raise ValueError('PGM pixel data is truncated')
        pixels = np.array([int(v) for v in values[:w * h]], dtype=np.float64)
    else:
        raise ValueError(f'unsupported PGM magic {magic!r}')
    return pixels.reshape(h, w) * (255.0 / maxv)


def read_pgm(path: str) -> np.ndarray:
    with open(path, 'rb') as handle:
        return parse_pgm(handle.read())


def encode_pgm(pixels: np.ndarray) -> bytes:
    """
    Encodes an [h, w] array as binary PGM with header "P5 w h 255" and one
    unsigned byte per pixel. Values are clipped to 0..255.
    """
    if pixels.ndim != 2:
        raise ValueError(f'expected a 2-D raster, got shape {pixels.shape}')
    h, w = pixels.shape
    body = np.clip(pixels, 0, 255).astype(np.uint8)
    return f'P5 {w} {h} 255\n'.encode('ascii') + body.tobytes()


def write_pgm(pixels: np.ndarray, path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'wb') as handle:
        handle.write(encode_pgm(pixels))
    return path
