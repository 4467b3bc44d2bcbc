"""Positional encodings and table builders shared across modules.

An element of ``Z_m^d`` with coordinates ``(c_0, ..., c_{d-1})`` is stored
at index ``c_0 + m·c_1 + m²·c_2 + ...``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def index_dtype(n: int) -> np.dtype:
    if n <= 1 << 8:
        return np.dtype(np.uint8)
    if n <= 1 << 16:
        return np.dtype(np.uint16)
    return np.dtype(np.int32)


def positional_digits(indices, orders: Sequence[int]) -> np.ndarray:
    """Little-endian mixed-radix digits of element indices."""
    x = np.asarray(indices, dtype=np.int64)
    out = np.empty(x.shape + (len(orders),), dtype=np.int64)
    for k, b in enumerate(orders):
        out[..., k] = x % b
        x = x // b
    return out


def positional_index(digits, orders: Sequence[int]) -> np.ndarray:
    d = np.asarray(digits, dtype=np.int64)
    idx = np.zeros(d.shape[:-1], dtype=np.int64)
    w = 1
    for k, b in enumerate(orders):
        idx += d[..., k] * w
        w *= b
    return idx


def positional_add_table(m: int, d: int) -> np.ndarray:
    """Addition table of ``Z_m^d`` in little-endian positional encoding."""
    base = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    T = np.zeros((1, 1), dtype=np.int64)
    n = 1
    for _ in range(d):
        # the new digit is the most significant one
        T = (T[None, :, None, :] + n * base[:, None, :, None]).reshape(n * m, n * m)
        n *= m
    return T.astype(index_dtype(n))


def _bilinear_products(m: int, D: int, gamma: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Indices of ``x·y`` for ``x in xs, y in ys`` from structure constants."""
    cx = positional_digits(xs, [m] * D).astype(np.float64)
    cy = positional_digits(ys, [m] * D).astype(np.float64)
    out = np.einsum("xa,yb,abc->xyc", cx, cy, gamma, optimize=True)
    return positional_index(np.rint(out).astype(np.int64) % m, [m] * D)


def _split(D: int) -> tuple[int, int]:
    low = (D + 1) // 2
    return low, D - low


def bilinear_table(m: int, D: int, gamma: np.ndarray) -> np.ndarray:
    """Multiplication table of ``Z_m^D`` under the bilinear product ``gamma``.

    Each element is split as ``x = x_lo + B·x_hi`` over low and high digit
    halves.  The four cross products only depend on half-indices, so they
    are small tables, and their sum is assembled digitwise through the
    half-size addition tables.
    """
    N = m**D
    Dl, Dh = _split(D)
    Bl, Bh = m**Dl, m**Dh
    lo = np.arange(Bl, dtype=np.int64)
    hi = np.arange(Bh, dtype=np.int64) * Bl
    parts = {}
    for name, xs, ys in (("ll", lo, lo), ("lh", lo, hi), ("hl", hi, lo), ("hh", hi, hi)):
        P = _bilinear_products(m, D, gamma, xs, ys)
        parts[name] = (P % Bl, P // Bl)
    add_l = positional_add_table(m, Dl).astype(np.int64)
    add_h = positional_add_table(m, Dh).astype(np.int64) if Dh else np.zeros((1, 1), dtype=np.int64)
    out = np.empty((N, N), dtype=index_dtype(N))
    view = out.reshape(Bh, Bl, Bh, Bl)
    halves = []
    for k, A in ((0, add_l), (1, add_h)):
        ll, lh, hl, hh = (parts[n][k] for n in ("ll", "lh", "hl", "hh"))
        B = A.shape[0]
        # axes (x_lo, y_hi, y_lo); independent of x_hi
        left = A[ll[:, None, :], lh[:, :, None]].astype(np.int32) * B
        # axes (x_hi, y_hi, y_lo)
        right = A[hl[:, None, :], hh[:, :, None]].astype(np.int32)
        halves.append((A.ravel().astype(index_dtype(N)), left, right))
    for xh in range(Bh):
        (Al, ll_, rl_), (Ah, lh_, rh_) = halves
        lo_part = np.take(Al, ll_ + rl_[xh][None])
        hi_part = np.take(Ah, lh_ + rh_[xh][None])
        view[xh] = lo_part + Bl * hi_part.astype(out.dtype)
    return out
