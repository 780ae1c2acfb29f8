"""Bitmap kernels for finite subsets of the square lattice.

The generic set routines in :mod:`cayleyiso.isoperimetry` walk hash sets of
tuples, which is fine up to ~10^5 vertices. Perforated-grid families reach
millions of vertices, so this module redoes the two hot statistics (boundary
size and depth) on a padded boolean array. Results are exact and must agree
with the generic path; the unit tests compare both routes.
"""

from __future__ import annotations

from typing import Iterable, Tuple

import numpy as np


class Bitmap:
    """A set of lattice points stored as a padded boolean grid.

    ``mask[x - x0 + 1, y - y0 + 1]`` is True iff (x, y) is in the set; one
    ring of padding keeps every 4-neighbor of a member inside the array.
    """

    def __init__(self, mask: np.ndarray, origin: Tuple[int, int]):
        self.mask = mask
        self.origin = origin

    @classmethod
    def from_points(cls, points: Iterable[Tuple[int, int]]) -> "Bitmap":
        pts = np.asarray(list(points), dtype=np.int64)
        if pts.size == 0:
            raise ValueError("cannot build a bitmap from an empty point set")
        x0, y0 = pts.min(axis=0)
        x1, y1 = pts.max(axis=0)
        mask = np.zeros((int(x1 - x0) + 3, int(y1 - y0) + 3), dtype=bool)
        mask[pts[:, 0] - x0 + 1, pts[:, 1] - y0 + 1] = True
        return cls(mask, (int(x0), int(y0)))

    def count(self) -> int:
        return int(self.mask.sum())

    def points(self) -> list:
        xs, ys = np.nonzero(self.mask)
        x0, y0 = self.origin
        return [(int(x) + x0 - 1, int(y) + y0 - 1) for x, y in zip(xs, ys)]


def boundary_mask(bm: Bitmap) -> np.ndarray:
    """Mask of the exterior vertex boundary: non-members adjacent to a member."""
    mask = bm.mask
    out = np.zeros_like(mask)
    out[:-1, :] |= mask[1:, :]
    out[1:, :] |= mask[:-1, :]
    out[:, :-1] |= mask[:, 1:]
    out[:, 1:] |= mask[:, :-1]
    out &= ~mask
    return out


def boundary_count(bm: Bitmap) -> int:
    return int(boundary_mask(bm).sum())


def boundary_points(bm: Bitmap) -> list:
    xs, ys = np.nonzero(boundary_mask(bm))
    x0, y0 = bm.origin
    return [(int(x) + x0 - 1, int(y) + y0 - 1) for x, y in zip(xs, ys)]


def _axis_min_transform(d: np.ndarray, axis: int) -> np.ndarray:
    """One separable pass: out[i] = min_j (d[j] + |i - j|) along ``axis``.

    Uses the identity min_{j<=i}(d[j] + i - j) = i + cummin(d[j] - j), so
    each direction is a single vectorized accumulate.
    """
    n = d.shape[axis]
    shape = [1, 1]
    shape[axis] = n
    idx = np.arange(n, dtype=d.dtype).reshape(shape)
    fwd = np.minimum.accumulate(d - idx, axis=axis) + idx
    rev = (slice(None), slice(None, None, -1)) if axis else (slice(None, None, -1),)
    bwd = np.minimum.accumulate((d + idx)[rev], axis=axis)[rev] - idx
    return np.minimum(fwd, bwd)


def depth(bm: Bitmap) -> int:
    """max over members of the lattice distance to the complement.

    Lattice distance is L1, so the distance-to-complement field is the L1
    distance transform of the non-member cells, computed by the separable
    two-axis scan in O(area). The padding ring is non-member, which is
    correct: any complement point beyond the array is strictly farther than
    the ring cell on the same ray.
    """
    free = ~bm.mask
    h, w = free.shape
    inf = np.int32(h + w + 1)
    d = np.where(free, np.int32(0), inf)
    d = _axis_min_transform(d, axis=0)
    d = _axis_min_transform(d, axis=1)
    return int(d[bm.mask].max())


def perforated_block(i: int, k: int) -> Bitmap:
    """The square {0..ki}^2 minus interior pins {(m*i, n*i) : 1 <= m,n <= k-1}.

    Built directly at bitmap resolution so multi-million-vertex instances
    never materialize point lists.
    """
    if i < 1 or k < 1:
        raise ValueError(f"parameters must be >= 1, got i={i}, k={k}")
    side = k * i + 1
    mask = np.zeros((side + 2, side + 2), dtype=bool)
    mask[1 : side + 1, 1 : side + 1] = True
    if k >= 2:
        idx = np.arange(1, k) * i + 1
        mask[np.ix_(idx, idx)] = False
    return Bitmap(mask, (0, 0))
