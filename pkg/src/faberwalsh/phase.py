"""Phase portraits written as binary PPM images."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

MAX_PIXELS = 4096 * 4096


@dataclass(frozen=True)
class Window:
    """Rectangle ``[x0, x1] x [y0, y1]`` sampled on an ``nx`` by ``ny`` pixel grid."""

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("window needs x0 < x1 and y0 < y1")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("resolution must be positive")
        if self.nx > 4096 or self.ny > 4096:
            raise ValueError("resolution is capped at 4096 x 4096")

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = text.split(",")
        if len(parts) != 6:
            raise ValueError("grid needs x0,x1,y0,y1,nx,ny")
        x0, x1, y0, y1 = map(float, parts[:4])
        return cls(x0, x1, y0, y1, int(parts[4]), int(parts[5]))

    def xs(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx)

    def ys(self) -> np.ndarray:
        # rows run from the top edge downwards
        return np.linspace(self.y1, self.y0, self.ny)

    def row(self, i: int) -> np.ndarray:
        return self.xs() + 1j * self.ys()[i]

    def points(self) -> np.ndarray:
        return self.xs()[None, :] + 1j * self.ys()[:, None]


def thread_count() -> int:
    env = os.environ.get("FW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"FW_THREADS must be an integer, got {env!r}") from None
    return min(8, os.cpu_count() or 1)


def map_rows(func: Callable[[np.ndarray], np.ndarray], window: Window, dtype=float) -> np.ndarray:
    """Evaluate ``func`` row by row over the window; rows are independent and reassembled in order."""
    out = np.empty((window.ny, window.nx), dtype=dtype)

    def work(i):
        out[i] = func(window.row(i))

    threads = thread_count()
    if threads == 1 or window.ny < 2:
        for i in range(window.ny):
            work(i)
    else:
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(work, range(window.ny)))
    return out


def hue_to_rgb(hue: np.ndarray) -> np.ndarray:
    """Full-saturation, full-value HSV colors as 8-bit RGB triples."""
    h6 = (np.asarray(hue, dtype=float) % 1.0) * 6.0
    rgb = np.clip(np.abs(((h6[..., None] + np.array([0.0, 4.0, 2.0])) % 6.0) - 3.0) - 1.0, 0.0, 1.0)
    return np.round(255 * rgb).astype(np.uint8)


def phase_hue(values: np.ndarray) -> np.ndarray:
    return (np.angle(values) + np.pi) / (2 * np.pi)


def phase_portrait(func: Callable[[np.ndarray], np.ndarray], window: Window) -> np.ndarray:
    """``ny x nx x 3`` uint8 image colored by the argument of ``func``."""
    values = map_rows(lambda z: np.asarray(func(z), dtype=complex) * np.ones(z.shape), window, complex)
    return hue_to_rgb(phase_hue(values))


def write_ppm(path, image: np.ndarray) -> None:
    image = np.ascontiguousarray(image, dtype=np.uint8)
    if image.ndim != 3 or image.shape[2] != 3:
        raise ValueError("image must have shape (rows, cols, 3)")
    rows, cols, _ = image.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(image.tobytes())


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    fields, pos = [], 0
    while len(fields) < 4:
        while data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while not data[end:end + 1].isspace():
            end += 1
        fields.append(data[pos:end])
        pos = end
    if fields[0] != b"P6" or int(fields[3]) != 255:
        raise ValueError("not an 8-bit binary PPM")
    cols, rows = int(fields[1]), int(fields[2])
    return np.frombuffer(data[pos + 1: pos + 1 + rows * cols * 3], dtype=np.uint8).reshape(rows, cols, 3)


def border_winding(func: Callable[[np.ndarray], np.ndarray], window: Window, samples_per_side: int = 4096) -> int:
    """Winding number of ``func`` along the window border, i.e. the zero count inside it."""
    t = np.linspace(0.0, 1.0, samples_per_side, endpoint=False)
    x0, x1, y0, y1 = window.x0, window.x1, window.y0, window.y1
    path = np.concatenate([
        x0 + (x1 - x0) * t + 1j * y0,
        x1 + 1j * (y0 + (y1 - y0) * t),
        x1 - (x1 - x0) * t + 1j * y1,
        x0 + 1j * (y1 - (y1 - y0) * t),
    ])
    vals = np.asarray(func(path), dtype=complex)
    if np.min(np.abs(vals)) == 0:
        raise ValueError("function vanishes on the window border")
    steps = np.angle(np.roll(vals, -1) / vals)
    return int(round(steps.sum() / (2 * np.pi)))
