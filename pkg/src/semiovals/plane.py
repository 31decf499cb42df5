"""Incidence structure of PG(2,Q) with Q = q^2.

Points and lines are homogeneous triples over GF(q^2), normalized so the
first nonzero coordinate is 1; both carry canonical indices:

    (1:y:z) -> Q*code(y) + code(z)      indices 0 .. Q^2-1
    (0:1:z) -> Q^2 + code(z)            indices Q^2 .. Q^2+Q-1
    (0:0:1) -> Q^2 + Q                  last index

Lines use the same scheme on their coefficient triples.  Enumeration is
streaming: nothing plane-sized is ever materialized except on request for
small planes (full incidence matrix, used as an independent test oracle).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EqualPointsError
from .gf import Field

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class ProjPoint:
    triple: Triple
    index: int


@dataclass(frozen=True)
class ProjLine:
    triple: Triple
    index: int


class Plane:
    """PG(2,q^2) over a Field context."""

    def __init__(self, field: Field):
        self.field = field
        self.order = field.q2
        self.n_points = self.order**2 + self.order + 1
        self.n_lines = self.n_points
        self._incidence = None

    # ---- normalization and indexing ---------------------------------------

    def normalize(self, t: Triple) -> Triple:
        f = self.field
        x0, x1, x2 = t
        if x0 != 0:
            s = f.inv(x0)
            return (1, f.mul(x1, s), f.mul(x2, s))
        if x1 != 0:
            return (0, 1, f.mul(x2, f.inv(x1)))
        if x2 != 0:
            return (0, 0, 1)
        raise ValueError("zero triple is not projective")

    def index_of(self, t: Triple) -> int:
        Q = self.order
        x0, x1, x2 = self.normalize(t)
        if x0 == 1:
            return Q * x1 + x2
        if x1 == 1:
            return Q * Q + x2
        return Q * Q + Q

    def triple_of(self, idx: int) -> Triple:
        Q = self.order
        if idx < Q * Q:
            return (1, idx // Q, idx % Q)
        if idx < Q * Q + Q:
            return (0, 1, idx - Q * Q)
        if idx == Q * Q + Q:
            return (0, 0, 1)
        raise IndexError(f"point index {idx} out of range")

    def point(self, t: Triple) -> ProjPoint:
        n = self.normalize(t)
        return ProjPoint(n, self.index_of(n))

    def point_at(self, idx: int) -> ProjPoint:
        return ProjPoint(self.triple_of(idx), idx)

    def line(self, t: Triple) -> ProjLine:
        n = self.normalize(t)
        return ProjLine(n, self.index_of(n))

    def line_at(self, idx: int) -> ProjLine:
        return ProjLine(self.triple_of(idx), idx)

    # ---- incidence ---------------------------------------------------------

    def incident(self, point: Triple | ProjPoint, line: Triple | ProjLine) -> bool:
        p = point.triple if isinstance(point, ProjPoint) else point
        a = line.triple if isinstance(line, ProjLine) else line
        f = self.field
        s = f.add(f.add(f.mul(a[0], p[0]), f.mul(a[1], p[1])), f.mul(a[2], p[2]))
        return s == 0

    def line_through(self, P, Q) -> ProjLine:
        """The unique line through two distinct points (cross product)."""
        p = P.triple if isinstance(P, ProjPoint) else self.normalize(P)
        q = Q.triple if isinstance(Q, ProjPoint) else self.normalize(Q)
        f = self.field
        a0 = f.sub(f.mul(p[1], q[2]), f.mul(p[2], q[1]))
        a1 = f.sub(f.mul(p[2], q[0]), f.mul(p[0], q[2]))
        a2 = f.sub(f.mul(p[0], q[1]), f.mul(p[1], q[0]))
        if a0 == 0 and a1 == 0 and a2 == 0:
            raise EqualPointsError(f"points {p} and {q} coincide")
        return self.line((a0, a1, a2))

    def meet(self, l1: ProjLine, l2: ProjLine) -> ProjPoint:
        """Intersection point of two distinct lines (dual cross product)."""
        line = self.line_through(ProjPoint(l1.triple, l1.index), ProjPoint(l2.triple, l2.index))
        return ProjPoint(line.triple, line.index)

    def _two_points_on(self, a: Triple) -> tuple[Triple, Triple]:
        f = self.field
        a0, a1, a2 = a
        if a2 != 0:
            s = f.inv(a2)
            return (1, 0, f.neg(f.mul(a0, s))), (0, 1, f.neg(f.mul(a1, s)))
        if a1 != 0:
            return (1, f.neg(f.mul(a0, f.inv(a1))), 0), (0, 0, 1)
        # line X0 = 0
        return (0, 1, 0), (0, 0, 1)

    def points_on_line(self, line: ProjLine | Triple):
        """Yield the q^2+1 points of a line in increasing canonical index."""
        a = line.triple if isinstance(line, ProjLine) else self.normalize(line)
        f = self.field
        p, r = self._two_points_on(a)
        pts = [self.index_of(p)]
        for lam in range(self.order):
            t = (
                f.add(r[0], f.mul(lam, p[0])),
                f.add(r[1], f.mul(lam, p[1])),
                f.add(r[2], f.mul(lam, p[2])),
            )
            pts.append(self.index_of(t))
        pts.sort()
        for idx in pts:
            yield self.point_at(idx)

    def lines_through_point(self, point: ProjPoint | Triple):
        """Yield the q^2+1 lines through a point in increasing line index."""
        p = point.triple if isinstance(point, ProjPoint) else self.normalize(point)
        # duality: line coefficients through p = points on the "line" p
        for dual in self.points_on_line(self.line(p)):
            yield ProjLine(dual.triple, dual.index)

    # ---- vector kernels ----------------------------------------------------

    def triples_array(self, indices) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Coordinate arrays (X0, X1, X2) for an array of canonical indices."""
        Q = self.order
        idx = np.asarray(indices, dtype=np.int64)
        x0 = np.zeros(idx.shape, dtype=np.int32)
        x1 = np.zeros(idx.shape, dtype=np.int32)
        x2 = np.zeros(idx.shape, dtype=np.int32)
        aff = idx < Q * Q
        x0[aff] = 1
        x1[aff] = idx[aff] // Q
        x2[aff] = idx[aff] % Q
        mid = (idx >= Q * Q) & (idx < Q * Q + Q)
        x1[mid] = 1
        x2[mid] = idx[mid] - Q * Q
        last = idx == Q * Q + Q
        x2[last] = 1
        return x0, x1, x2

    def vindex(self, x0, x1, x2) -> np.ndarray:
        """Canonical indices of (not necessarily normalized) triples."""
        f = self.field
        Q = self.order
        x0 = np.asarray(x0, dtype=np.int32)
        x1 = np.asarray(x1, dtype=np.int32)
        x2 = np.asarray(x2, dtype=np.int32)
        out = np.empty(x0.shape, dtype=np.int64)
        m0 = x0 != 0
        if m0.any():
            s = f.vinv(x0[m0])
            out[m0] = Q * f.vmul(x1[m0], s).astype(np.int64) + f.vmul(x2[m0], s)
        m1 = ~m0 & (x1 != 0)
        if m1.any():
            s = f.vinv(x1[m1])
            out[m1] = Q * Q + f.vmul(x2[m1], s)
        m2 = ~m0 & ~m1
        if m2.any():
            if (x2[m2] == 0).any():
                raise ValueError("zero triple in vindex")
            out[m2] = Q * Q + Q
        return out

    def vline_through(self, p: Triple, x0, x1, x2) -> np.ndarray:
        """Line indices from the fixed point p to an array of points."""
        f = self.field
        p0, p1, p2 = p
        a0 = f.vsub(f.vmul(np.full_like(x1, p1), x2), f.vmul(np.full_like(x1, p2), x1))
        a1 = f.vsub(f.vmul(np.full_like(x0, p2), x0), f.vmul(np.full_like(x0, p0), x2))
        a2 = f.vsub(f.vmul(np.full_like(x0, p0), x1), f.vmul(np.full_like(x0, p1), x0))
        if ((a0 == 0) & (a1 == 0) & (a2 == 0)).any():
            raise EqualPointsError("duplicate point in vline_through")
        return self.vindex(a0, a1, a2)

    def apply_matrix(self, mat, indices) -> np.ndarray:
        """Image point indices under the projectivity given by a 3x3 matrix."""
        f = self.field
        x0, x1, x2 = self.triples_array(indices)
        rows = []
        for r in range(3):
            acc = f.vmul(np.full_like(x0, mat[r][0]), x0)
            acc = f.vadd(acc, f.vmul(np.full_like(x1, mat[r][1]), x1))
            acc = f.vadd(acc, f.vmul(np.full_like(x2, mat[r][2]), x2))
            rows.append(acc)
        return self.vindex(rows[0], rows[1], rows[2])

    # ---- full incidence (small planes only; test oracle) -------------------

    def incidence_matrix(self) -> np.ndarray:
        """Boolean lines x points incidence; only for q^2 <= 169."""
        if self.order > 169:
            raise MemoryError("full incidence is only kept for q^2 <= 169")
        if self._incidence is None:
            inc = np.zeros((self.n_lines, self.n_points), dtype=bool)
            for li in range(self.n_lines):
                for pt in self.points_on_line(self.line_at(li)):
                    inc[li, pt.index] = True
            self._incidence = inc
        return self._incidence


class PointSet:
    """Dense bitset of point indices, tagged with its domain.

    Domain "plane" indexes canonical plane points; domain "curve" indexes
    curve-local positions of a specific Hermitian model (carried as q +
    frame so that mismatched sets cannot be combined silently).
    """

    __slots__ = ("domain", "q", "frame", "mask", "_card")

    def __init__(self, domain: str, q: int, size: int, frame: str | None = None):
        if domain not in ("plane", "curve"):
            raise ValueError(f"bad domain {domain!r}")
        self.domain = domain
        self.q = q
        self.frame = frame
        self.mask = np.zeros(size, dtype=bool)
        self._card: int | None = 0

    @classmethod
    def from_indices(cls, indices, domain: str, q: int, size: int, frame: str | None = None) -> "PointSet":
        ps = cls(domain, q, size, frame)
        idx = np.asarray(list(indices), dtype=np.int64)
        if idx.size:
            if idx.min() < 0 or idx.max() >= size:
                raise IndexError("point index out of range for domain")
            ps.mask[idx] = True
        ps._card = None
        return ps

    @classmethod
    def from_mask(cls, mask: np.ndarray, domain: str, q: int, frame: str | None = None) -> "PointSet":
        ps = cls(domain, q, mask.size, frame)
        ps.mask = mask.astype(bool, copy=True)
        ps._card = None
        return ps

    def _compatible(self, other: "PointSet"):
        if (self.domain, self.q, self.frame, self.mask.size) != (
            other.domain,
            other.q,
            other.frame,
            other.mask.size,
        ):
            raise ValueError(
                f"domain mismatch: {self.domain}/q={self.q}/{self.frame} vs "
                f"{other.domain}/q={other.q}/{other.frame}"
            )

    def _wrap(self, mask: np.ndarray) -> "PointSet":
        return PointSet.from_mask(mask, self.domain, self.q, self.frame)

    def union(self, other: "PointSet") -> "PointSet":
        self._compatible(other)
        return self._wrap(self.mask | other.mask)

    def intersection(self, other: "PointSet") -> "PointSet":
        self._compatible(other)
        return self._wrap(self.mask & other.mask)

    def difference(self, other: "PointSet") -> "PointSet":
        self._compatible(other)
        return self._wrap(self.mask & ~other.mask)

    def symmetric_difference(self, other: "PointSet") -> "PointSet":
        self._compatible(other)
        return self._wrap(self.mask ^ other.mask)

    def issubset(self, other: "PointSet") -> bool:
        self._compatible(other)
        return bool((self.mask & ~other.mask).sum() == 0)

    def with_indices(self, indices) -> "PointSet":
        out = self._wrap(self.mask)
        out.mask[np.asarray(list(indices), dtype=np.int64)] = True
        out._card = None
        return out

    def without_indices(self, indices) -> "PointSet":
        out = self._wrap(self.mask)
        out.mask[np.asarray(list(indices), dtype=np.int64)] = False
        out._card = None
        return out

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        if self._card is None:
            self._card = int(self.mask.sum())
        return self._card

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask[idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.q == other.q
            and self.frame == other.frame
            and self.mask.size == other.mask.size
            and bool((self.mask == other.mask).all())
        )

    def __repr__(self) -> str:
        tag = self.domain if self.frame is None else f"{self.domain}:{self.frame}"
        return f"PointSet({tag}, q={self.q}, n={len(self)})"

    def to_json(self, context=None) -> dict:
        """Serialize with indices plus (when a context is given) triples.

        ``context`` is a Plane for plane-domain sets or a HermitianModel for
        curve-domain sets; coordinates are the authoritative content, the
        indices a cache validated on load.
        """
        data: dict = {
            "domain": self.domain,
            "q": self.q,
            "indices": [int(i) for i in self.indices()],
        }
        if self.frame is not None:
            data["frame"] = self.frame
        if context is not None:
            if self.domain == "plane":
                data["triples"] = [list(context.triple_of(int(i))) for i in self.indices()]
            else:
                data["triples"] = [
                    list(context.plane.triple_of(int(context.plane_index(int(i)))))
                    for i in self.indices()
                ]
        return data

    @classmethod
    def from_json(cls, data: dict, context=None) -> "PointSet":
        domain = data["domain"]
        q = data["q"]
        frame = data.get("frame")
        indices = list(data["indices"])
        if context is None:
            raise ValueError("a Plane or HermitianModel context is required to load")
        if domain == "plane":
            size = context.n_points
            if "triples" in data:
                recomputed = [context.index_of(tuple(t)) for t in data["triples"]]
                if sorted(recomputed) != sorted(indices):
                    raise ValueError("cached indices disagree with coordinates")
                indices = recomputed
            return cls.from_indices(indices, "plane", q, size)
        size = context.n_curve_points
        if "triples" in data:
            recomputed = [
                context.local_index(context.plane.index_of(tuple(t))) for t in data["triples"]
            ]
            if sorted(recomputed) != sorted(indices):
                raise ValueError("cached indices disagree with coordinates")
            indices = recomputed
        return cls.from_indices(indices, "curve", q, size, frame=frame or context.frame)
