"""Grid-discretized subsets of R^d with exact rational arithmetic.

A :class:`GridSet` is a finite union of closed axis-aligned cells
``a/q + [0, 1/q]^d`` indexed by integer anchor vectors ``a``.  Closed cells
make every operation here exact: the sum of two closed cells is a closed
block, so Minkowski sums, rational scalings, and convex-combination sums of
grid sets are again grid sets with no boundary bookkeeping.

Anchors are arbitrary-precision Python ints, so far-away translates (needed
by the sharp threshold families) cost nothing but memory.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .rationals import as_fraction

__all__ = [
    "GridSet",
    "WorkspaceOverflowError",
    "volume",
    "refine",
    "translate",
    "scale",
    "scale_axis",
    "minkowski_sum",
    "minkowski_sum_fast",
    "minkowski_sum_auto",
    "scaled_sum",
    "iterated_sum",
    "box",
    "unit_cube",
    "common_resolution",
    "is_subset",
    "same_continuous_set",
    "DEFAULT_MAX_WORKSPACE",
]

# Default cap on dense convolution workspaces (slots); the CLI may override it
# through SUMSETLAB_MAX_CELLS.
DEFAULT_MAX_WORKSPACE = 5_000_000

_INT64_MAX = 2**62  # stay clear of the boundary


class WorkspaceOverflowError(Exception):
    """Dense convolution workspace would exceed the configured cap.

    Callers catch this to fall back to the naive enumeration path.
    """


class GridSet:
    """Immutable union of closed grid cells at resolution 1/q.

    ``cells`` is a frozenset of integer d-tuples.  Internally a set may also
    be held as a packed numpy array (local coordinates plus an offset); the
    frozenset is materialized lazily so huge convolution outputs stay cheap.
    """

    __slots__ = ("dim", "q", "_cellset", "_arr", "_off")

    def __init__(self, dim: int, q: int, cells: Iterable[tuple[int, ...]]):
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        if not isinstance(q, int) or q < 1:
            raise ValueError(f"q must be a positive integer, got {q!r}")
        cellset = frozenset(tuple(int(c) for c in cell) for cell in cells)
        for cell in cellset:
            if len(cell) != dim:
                raise ValueError(f"cell {cell} does not have {dim} components")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_cellset", cellset)
        object.__setattr__(self, "_arr", None)
        object.__setattr__(self, "_off", None)

    def __setattr__(self, name, value):
        raise AttributeError("GridSet is immutable")

    @classmethod
    def _from_local_array(cls, dim: int, q: int, arr: np.ndarray, off: tuple[int, ...]) -> "GridSet":
        """Internal fast constructor: ``arr`` holds unique local int64 anchors,
        true anchors are ``arr[i] + off``."""
        self = object.__new__(cls)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_cellset", None)
        object.__setattr__(self, "_arr", arr)
        object.__setattr__(self, "_off", tuple(int(o) for o in off))
        return self

    @property
    def cells(self) -> frozenset[tuple[int, ...]]:
        if self._cellset is None:
            off = self._off
            cols = [(self._arr[:, i] + off[i]).tolist() if -_INT64_MAX < off[i] < _INT64_MAX
                    else [int(v) + off[i] for v in self._arr[:, i].tolist()]
                    for i in range(self.dim)]
            object.__setattr__(self, "_cellset", frozenset(zip(*cols)) if cols else frozenset())
            object.__setattr__(self, "_arr", None)
            object.__setattr__(self, "_off", None)
        return self._cellset

    @property
    def cell_count(self) -> int:
        if self._cellset is not None:
            return len(self._cellset)
        return int(self._arr.shape[0])

    @property
    def is_empty(self) -> bool:
        return self.cell_count == 0

    def bounding_box(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(min anchor, max anchor) per coordinate; requires a nonempty set."""
        if self.is_empty:
            raise ValueError("empty grid set has no bounding box")
        if self._cellset is None:
            lo = self._arr.min(axis=0)
            hi = self._arr.max(axis=0)
            return (tuple(int(lo[i]) + self._off[i] for i in range(self.dim)),
                    tuple(int(hi[i]) + self._off[i] for i in range(self.dim)))
        mins = [min(c[i] for c in self._cellset) for i in range(self.dim)]
        maxs = [max(c[i] for c in self._cellset) for i in range(self.dim)]
        return tuple(mins), tuple(maxs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSet):
            return NotImplemented
        return self.dim == other.dim and self.q == other.q and self.cells == other.cells

    def __hash__(self) -> int:
        return hash((self.dim, self.q, self.cells))

    def __repr__(self) -> str:
        return f"GridSet(dim={self.dim}, q={self.q}, cells={self.cell_count})"


def volume(s: GridSet) -> Fraction:
    """Exact Lebesgue volume: |cells| / q^d."""
    return Fraction(s.cell_count, s.q**s.dim)


def box(lo: Sequence, hi: Sequence, q: int = 1) -> GridSet:
    """Grid set covering the closed box [lo, hi]; endpoints may be rational.

    The resolution is refined from ``q`` so both corners land on the grid.
    Every side must have positive length.
    """
    lo = [as_fraction(x) for x in lo]
    hi = [as_fraction(x) for x in hi]
    if len(lo) != len(hi) or not lo:
        raise ValueError("box corners must be nonempty vectors of equal length")
    dim = len(lo)
    for a, b in zip(lo, hi):
        if a >= b:
            raise ValueError(f"box side [{a}, {b}] must have positive length")
    qq = q
    for x in lo + hi:
        qq = lcm(qq, x.denominator)
    ranges = [range(int(a * qq), int(b * qq)) for a, b in zip(lo, hi)]
    cells = [()]
    for r in ranges:
        cells = [c + (v,) for c in cells for v in r]
    return GridSet(dim, qq, cells)


def unit_cube(dim: int, q: int = 1) -> GridSet:
    return box([0] * dim, [1] * dim, q)


def refine(s: GridSet, m: int) -> GridSet:
    """Same continuous set at resolution q*m; each cell splits into m^d subcells."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"refinement factor must be a positive integer, got {m!r}")
    if m == 1:
        return s
    offsets = _offset_grid(s.dim, m)
    cells = [tuple(m * a + e for a, e in zip(cell, off)) for cell in s.cells for off in offsets]
    return GridSet(s.dim, s.q * m, cells)


def _offset_grid(dim: int, m: int) -> list[tuple[int, ...]]:
    out = [()]
    for _ in range(dim):
        out = [o + (v,) for o in out for v in range(m)]
    return out


def translate(s: GridSet, v: Sequence) -> GridSet:
    """Exact translation by a rational vector; refines as needed."""
    v = [as_fraction(x) for x in v]
    if len(v) != s.dim:
        raise ValueError("translation vector dimension mismatch")
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    m = lcm(s.q, den) // s.q
    g = refine(s, m)
    shift = [int(x * g.q) for x in v]
    cells = [tuple(a + d for a, d in zip(cell, shift)) for cell in g.cells]
    return GridSet(g.dim, g.q, cells)


def scale(s: GridSet, t) -> GridSet:
    """Exact homothety by a positive rational factor t = p/r.

    A cell of side 1/q scales to a block of side p at resolution q*r, so the
    result is exact and volume scales by t^d.
    """
    t = as_fraction(t)
    if t <= 0:
        raise ValueError(f"scale factor must be positive, got {t}")
    p, r = t.numerator, t.denominator
    if p == 1 and r == 1:
        return s
    anchors = {tuple(p * a for a in cell) for cell in s.cells}
    cells = _dilate(anchors, s.dim, p)
    return GridSet(s.dim, s.q * r, cells)


def scale_axis(s: GridSet, axis: int, t) -> GridSet:
    """Scale a single coordinate (1-based axis) by a positive rational factor.

    Volume scales by t.  Used to rationalize volumes between corpus pairs.
    """
    t = as_fraction(t)
    if t <= 0:
        raise ValueError(f"scale factor must be positive, got {t}")
    if not 1 <= axis <= s.dim:
        raise ValueError(f"axis must be in 1..{s.dim}, got {axis}")
    p, r = t.numerator, t.denominator
    i = axis - 1
    cells = set()
    for cell in s.cells:
        base = p * cell[i]
        for e in range(p):
            cells.add(cell[:i] + (base + e,) + cell[i + 1:])
    other = _offset_grid(s.dim - 1, r)
    out = set()
    for cell in cells:
        rest = cell[:i] + cell[i + 1:]
        for e in other:
            scaled_rest = tuple(r * c + f for c, f in zip(rest, e))
            out.add(scaled_rest[:i] + (cell[i],) + scaled_rest[i:])
    return GridSet(s.dim, s.q * r, out)


def _dilate(anchors: set[tuple[int, ...]], dim: int, width: int) -> set[tuple[int, ...]]:
    """Dilate an anchor set by {0, .., width-1}^d, one axis at a time."""
    cur = set(anchors)
    for i in range(dim):
        grown = set(cur)
        for j in range(1, width):
            grown.update(c[:i] + (c[i] + j,) + c[i + 1:] for c in cur)
        cur = grown
    return cur


def _check_compatible(a: GridSet, b: GridSet) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    if a.q != b.q:
        raise ValueError(f"resolution mismatch: q={a.q} != q={b.q}; refine to a common resolution first")


def minkowski_sum(a: GridSet, b: GridSet) -> GridSet:
    """Exact Minkowski sum of two cell unions at matching resolution.

    Since [0,1/q] + [0,1/q] = [0,2/q], the sum is the anchor sumset dilated
    by {0,1}^d, still at resolution q.
    """
    _check_compatible(a, b)
    if a.is_empty or b.is_empty:
        return GridSet(a.dim, a.q, [])
    bc = list(b.cells)
    sums = set()
    for x in a.cells:
        for y in bc:
            sums.add(tuple(u + v for u, v in zip(x, y)))
    return GridSet(a.dim, a.q, _dilate(sums, a.dim, 2))


def minkowski_sum_fast(a: GridSet, b: GridSet, max_workspace: int | None = None) -> GridSet:
    """Convolution-based Minkowski sum, bit-exact equal to :func:`minkowski_sum`.

    Indicator vectors of the anchor sets are packed into byte-aligned slots of
    one big integer each; their product is the exact integer convolution, whose
    support is the anchor sumset (no floating point anywhere).  Raises
    :class:`WorkspaceOverflowError` when the padded bounding-box product
    exceeds the workspace cap so the caller can fall back to the naive path.
    """
    _check_compatible(a, b)
    if a.is_empty or b.is_empty:
        return GridSet(a.dim, a.q, [])
    cap = DEFAULT_MAX_WORKSPACE if max_workspace is None else max_workspace
    # exact integer extents first: far-apart components must signal fallback
    # before any fixed-width array is built
    lo_a, hi_a = a.bounding_box()
    lo_b, hi_b = b.bounding_box()
    ext = [(hi_a[i] - lo_a[i]) + (hi_b[i] - lo_b[i]) + 1 for i in range(a.dim)]
    slots = 1
    for e in ext:
        slots *= e
    if slots > cap:
        raise WorkspaceOverflowError(
            f"convolution workspace of {slots} slots exceeds the cap of {cap}")
    arr_a, off_a = _local_coords(a, lo_a)
    arr_b, off_b = _local_coords(b, lo_b)
    support = _conv_support(arr_a, arr_b, ext, min(a.cell_count, b.cell_count))
    dil = _dilate_np(support, 2)
    coords = np.argwhere(dil)
    off = tuple(off_a[i] + off_b[i] for i in range(a.dim))
    return GridSet._from_local_array(a.dim, a.q, coords, off)


def _conv_support(arr_a: np.ndarray, arr_b: np.ndarray, ext: Sequence[int],
                  maxcoef: int) -> np.ndarray:
    """Support of the integer convolution of two anchor indicator arrays.

    Anchors are packed into byte-aligned slots of one big integer each; the
    product's nonzero slots are exactly the anchor sumset (coefficients are
    pair counts bounded by maxcoef, so slots never carry).
    """
    dim = arr_a.shape[1]
    slots = 1
    for e in ext:
        slots *= e
    slot_bytes = (maxcoef.bit_length() + 8) // 8
    strides = [0] * dim
    acc = 1
    for i in range(dim - 1, -1, -1):
        strides[i] = acc
        acc *= ext[i]
    za = _pack(arr_a, strides, slots, slot_bytes)
    zb = _pack(arr_b, strides, slots, slot_bytes)
    raw = int(za * zb).to_bytes(2 * slots * slot_bytes, "little")
    buf = np.frombuffer(raw, dtype=np.uint8)[: slots * slot_bytes]
    return buf.reshape(slots, slot_bytes).any(axis=1).reshape(tuple(ext))


def _dilate_np(support: np.ndarray, width: int) -> np.ndarray:
    """Dilate a boolean anchor array by {0, .., width-1}^d."""
    dim = support.ndim
    ext = support.shape
    dil = np.zeros(tuple(e + width - 1 for e in ext), dtype=bool)
    dil[tuple(slice(0, e) for e in ext)] = support
    for i in range(dim):
        acc = dil.copy()
        for j in range(1, width):
            shifted = np.zeros_like(dil)
            dst = tuple(slice(j, None) if k == i else slice(None) for k in range(dim))
            src = tuple(slice(0, dil.shape[k] - j) if k == i else slice(None)
                        for k in range(dim))
            shifted[dst] = dil[src]
            acc |= shifted
        dil = acc
    return dil


def _local_coords(s: GridSet, lo: tuple[int, ...]) -> tuple[np.ndarray, tuple[int, ...]]:
    """Local int64 coordinates relative to the given (exact) minimum corner."""
    if s._arr is not None:
        arr = s._arr
        mins = arr.min(axis=0)
        if mins.any():
            arr = arr - mins
        return arr, tuple(int(m) + o for m, o in zip(mins, s._off))
    cells = s.cells
    arr = np.array([[c[i] - lo[i] for i in range(s.dim)] for c in cells], dtype=np.int64)
    return arr, tuple(lo)


def _pack(arr: np.ndarray, strides: Sequence[int], slots: int, slot_bytes: int):
    import gmpy2

    flat = np.zeros(arr.shape[0], dtype=np.int64)
    for i, st in enumerate(strides):
        flat += arr[:, i] * st
    buf = np.zeros(slots * slot_bytes, dtype=np.uint8)
    buf[flat * slot_bytes] = 1
    return gmpy2.mpz(int.from_bytes(buf.tobytes(), "little"))


def minkowski_sum_auto(a: GridSet, b: GridSet, max_workspace: int | None = None) -> GridSet:
    """Fast path when the workspace fits, naive enumeration otherwise."""
    try:
        return minkowski_sum_fast(a, b, max_workspace=max_workspace)
    except WorkspaceOverflowError:
        return minkowski_sum(a, b)


def common_resolution(a: GridSet, b: GridSet) -> tuple[GridSet, GridSet]:
    qq = lcm(a.q, b.q)
    return refine(a, qq // a.q), refine(b, qq // b.q)


def scaled_sum(a: GridSet, b: GridSet, t) -> GridSet:
    """Exact convex-combination sum tA + (1-t)B for rational t in (0, 1).

    With t = p/r, a scaled a-cell is a side-p block and a scaled b-cell a
    side-(r-p) block at resolution q*r; their sum is a side-r block, so the
    result is the scaled anchor sumset dilated by {0, .., r-1}^d.  Large
    instances run through the exact integer convolution; the result is
    identical either way.
    """
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"t must lie strictly between 0 and 1, got {t}")
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    a, b = common_resolution(a, b)
    if a.is_empty or b.is_empty:
        raise ValueError("scaled_sum requires nonempty sets")
    p, r = t.numerator, t.denominator
    s = r - p
    if a.cell_count * b.cell_count > 4096:
        try:
            return _scaled_sum_conv(a, b, p, r)
        except WorkspaceOverflowError:
            pass
    bc = list(b.cells)
    sums = set()
    for x in a.cells:
        px = tuple(p * u for u in x)
        for y in bc:
            sums.add(tuple(u + s * v for u, v in zip(px, y)))
    return GridSet(a.dim, a.q * r, _dilate(sums, a.dim, r))


def _scaled_sum_conv(a: GridSet, b: GridSet, p: int, r: int,
                     max_workspace: int | None = None) -> GridSet:
    """Convolution path for scaled_sum on anchor sets scaled by p and r - p."""
    s = r - p
    cap = DEFAULT_MAX_WORKSPACE if max_workspace is None else max_workspace
    lo_a, hi_a = a.bounding_box()
    lo_b, hi_b = b.bounding_box()
    ext = [p * (hi_a[i] - lo_a[i]) + s * (hi_b[i] - lo_b[i]) + 1 for i in range(a.dim)]
    slots = 1
    for e in ext:
        slots *= e
    if slots > cap:
        raise WorkspaceOverflowError(
            f"convolution workspace of {slots} slots exceeds the cap of {cap}")
    arr_a, off_a = _local_coords(a, lo_a)
    arr_b, off_b = _local_coords(b, lo_b)
    support = _conv_support(arr_a * p, arr_b * s, ext,
                            min(a.cell_count, b.cell_count))
    dil = _dilate_np(support, r)
    coords = np.argwhere(dil)
    off = tuple(p * off_a[i] + s * off_b[i] for i in range(a.dim))
    return GridSet._from_local_array(a.dim, a.q * r, coords, off)


def iterated_sum(a: GridSet, k: int) -> GridSet:
    """k-fold iterated Minkowski sum; k = 1 returns the input."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    out = a
    for _ in range(k - 1):
        out = minkowski_sum_auto(out, a)
    return out


def is_subset(inner: GridSet, outer: GridSet) -> bool:
    """Exact containment of the continuous sets (refines to a common grid)."""
    if inner.dim != outer.dim:
        raise ValueError("dimension mismatch")
    x, y = common_resolution(inner, outer)
    return x.cells <= y.cells


def same_continuous_set(a: GridSet, b: GridSet) -> bool:
    """True iff both represent the same continuous union of cells."""
    if a.dim != b.dim:
        return False
    x, y = common_resolution(a, b)
    return x.cells == y.cells
