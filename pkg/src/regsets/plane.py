"""Indexed model of PG(2,Q) and its affine part.

Point indexing (Q = field order, N = Q^2 + Q + 1 points):

* affine points (x, y) = (x : y : 1) at index x*Q + y (row-major in x, y);
* directions (1 : d : 0) at index Q^2 + d — the ideal point of slope-d lines;
* the vertical direction (0 : 1 : 0), written (inf), last at index Q^2 + Q.

Lines are indexed by the dual layout: y = m*x + d at index m*Q + d, the
vertical x = a at index Q^2 + a, and the line at infinity [0:0:1] last.
Coordinate triples of points and lines are normalized the same way: last
nonzero slot scaled to 1 in the order z, then x (for lines: c, then a).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .galois import GaloisField, create_field


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class PlanePoint:
    x: int
    y: int
    z: int
    index: int


@dataclass(frozen=True)
class PlaneLine:
    a: int
    b: int
    c: int
    index: int


class Plane:
    """PG(2,Q) over a GaloisField: incidence, pencils and parallel classes.

    Lines are never stored; incidence is evaluated from the indices, so the
    memory footprint stays at O(Q^2) bits per point set.
    """

    def __init__(self, field: GaloisField):
        self.field = field
        self.q = field.order
        self.n_points = self.q * self.q + self.q + 1
        self.n_lines = self.n_points
        self.infinity = self.n_points - 1          # the point (0:1:0)
        self.line_infinity = self.n_lines - 1      # the line  [0:0:1]

    # ------------------------------------------------------------------
    # points
    # ------------------------------------------------------------------
    def point_index(self, x: int, y: int, z: int) -> int:
        F = self.field
        if z != 0:
            zi = F.inv(z)
            return F.mul(x, zi) * self.q + F.mul(y, zi)
        if x != 0:
            return self.q * self.q + F.div(y, x)
        if y == 0:
            raise GeometryError("(0:0:0) is not a projective point")
        return self.infinity

    def point(self, index: int) -> PlanePoint:
        q = self.q
        if index < q * q:
            return PlanePoint(index // q, index % q, 1, index)
        if index < q * q + q:
            return PlanePoint(1, index - q * q, 0, index)
        if index == self.infinity:
            return PlanePoint(0, 1, 0, index)
        raise GeometryError(f"point index {index} out of range")

    # ------------------------------------------------------------------
    # lines
    # ------------------------------------------------------------------
    def line_index(self, a: int, b: int, c: int) -> int:
        """Index of the line a*x + b*y + c*z = 0."""
        F = self.field
        if b != 0:
            bi = F.inv(b)
            m = F.neg(F.mul(a, bi))
            d = F.neg(F.mul(c, bi))
            return m * self.q + d
        if a != 0:
            return self.q * self.q + F.neg(F.div(c, a))
        if c == 0:
            raise GeometryError("[0:0:0] is not a line")
        return self.line_infinity

    def line(self, index: int) -> PlaneLine:
        """Normalized dual triple of the line with this index."""
        q = self.q
        F = self.field
        if index < q * q:
            m, d = divmod(index, q)
            a, b, c = m, F.neg(1), d  # y = m*x + d
        elif index < q * q + q:
            a, b, c = 1, 0, F.neg(index - q * q)  # x = alpha
        elif index == self.line_infinity:
            a, b, c = 0, 0, 1
        else:
            raise GeometryError(f"line index {index} out of range")
        if c != 0:
            ci = F.inv(c)
            a, b, c = F.mul(a, ci), F.mul(b, ci), 1
        elif a != 0:
            ai = F.inv(a)
            a, b, c = 1, F.mul(b, ai), 0
        return PlaneLine(a, b, c, index)

    # ------------------------------------------------------------------
    # incidence
    # ------------------------------------------------------------------
    def incident(self, point_index: int, line_index: int) -> bool:
        q = self.q
        F = self.field
        if line_index < q * q:
            m, d = divmod(line_index, q)
            if point_index < q * q:
                x, y = divmod(point_index, q)
                return y == F.add(F.mul(m, x), d)
            if point_index < q * q + q:
                return point_index - q * q == m
            return False
        if line_index < q * q + q:
            alpha = line_index - q * q
            if point_index < q * q:
                return point_index // q == alpha
            return point_index == self.infinity
        return point_index >= q * q

    def line_through(self, p: int, r: int) -> int:
        """Index of the unique line through two distinct points."""
        if p == r:
            raise GeometryError("two distinct points are required")
        q = self.q
        F = self.field
        p_aff, r_aff = p < q * q, r < q * q
        if p_aff and r_aff:
            x1, y1 = divmod(p, q)
            x2, y2 = divmod(r, q)
            if x1 == x2:
                return q * q + x1
            m = F.div(F.sub(y2, y1), F.sub(x2, x1))
            return m * q + F.sub(y1, F.mul(m, x1))
        if not p_aff and not r_aff:
            return self.line_infinity
        if r_aff:
            p, r = r, p
        x1, y1 = divmod(p, q)
        if r == self.infinity:
            return q * q + x1
        m = r - q * q
        return m * q + F.sub(y1, F.mul(m, x1))

    def points_on_line(self, line_index: int) -> list[int]:
        """The Q+1 points of the line, ascending index order."""
        q = self.q
        F = self.field
        if line_index < q * q:
            m, d = divmod(line_index, q)
            pts = [x * q + F.add(F.mul(m, x), d) for x in range(q)]
            pts.append(q * q + m)
        elif line_index < q * q + q:
            alpha = line_index - q * q
            pts = [alpha * q + y for y in range(q)]
            pts.append(self.infinity)
        elif line_index == self.line_infinity:
            pts = list(range(q * q, self.n_points))
        else:
            raise GeometryError(f"line index {line_index} out of range")
        return pts

    def pencil(self, point_index: int) -> list[int]:
        """The Q+1 lines through the point, ascending index order."""
        q = self.q
        F = self.field
        if point_index < q * q:
            x, y = divmod(point_index, q)
            lines = [m * q + F.sub(y, F.mul(m, x)) for m in range(q)]
            lines.append(q * q + x)
            return lines
        if point_index < q * q + q:
            m = point_index - q * q
            return list(range(m * q, m * q + q)) + [self.line_infinity]
        if point_index == self.infinity:
            return list(range(q * q, self.n_lines))
        raise GeometryError(f"point index {point_index} out of range")

    def pencil_array(self, point_index: int) -> np.ndarray:
        """Vectorized pencil (unordered beyond construction order)."""
        q = self.q
        F = self.field
        if point_index < q * q:
            x, y = divmod(point_index, q)
            slopes = np.arange(q, dtype=np.int64)
            d = F.sub_v(np.full(q, y, dtype=np.int64), F.mul_v(slopes, np.full(q, x, dtype=np.int64)))
            return np.concatenate([slopes * q + d, [q * q + x]])
        return np.asarray(self.pencil(point_index), dtype=np.int64)

    def parallel_class(self, direction_index: int) -> list[int]:
        """The Q affine lines through an ideal point (its pencil minus l_inf)."""
        if direction_index < self.q * self.q:
            raise GeometryError("parallel classes are indexed by ideal points")
        return self.pencil(direction_index)[:-1]


_PLANE_CACHE: dict[GaloisField, Plane] = {}


def plane_over(field: GaloisField) -> Plane:
    if field not in _PLANE_CACHE:
        _PLANE_CACHE[field] = Plane(field)
    return _PLANE_CACHE[field]


class PointSet:
    """A set of points of PG(2,Q): field context, membership bitmap, label.

    The bitmap is write-once in practice: builders fill it, everything else
    reads it.  `family` carries construction metadata used by the code and
    census checkers; it is not persisted to files.
    """

    def __init__(self, field: GaloisField, members=None, label: str = "",
                 family: dict | None = None, frame: tuple[int, int] | None = None):
        self.field = field
        self.plane = plane_over(field)
        n = self.plane.n_points
        if members is None:
            self.members = np.zeros(n, dtype=bool)
        else:
            members = np.asarray(members)
            if members.dtype == bool:
                if members.shape != (n,):
                    raise GeometryError(f"bitmap must have length {n}")
                self.members = members.copy()
            else:
                self.members = np.zeros(n, dtype=bool)
                idx = members.astype(np.int64)
                if idx.size and (idx.min() < 0 or idx.max() >= n):
                    raise GeometryError("point index out of range")
                self.members[idx] = True
        self.label = label
        self.family = family
        self.frame = frame

    @property
    def size(self) -> int:
        return int(self.members.sum())

    def __len__(self):
        return self.size

    def __contains__(self, index: int) -> bool:
        return bool(self.members[index])

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and self.field == other.field
            and bool(np.array_equal(self.members, other.members))
        )

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    def affine_grid(self) -> np.ndarray:
        """Q x Q uint8 matrix G with G[x, y] = 1 iff (x, y) is a member."""
        q = self.plane.q
        return self.members[: q * q].reshape(q, q).astype(np.uint8)

    def direction_mask(self) -> np.ndarray:
        q = self.plane.q
        return self.members[q * q: q * q + q].copy()

    @property
    def has_infinity(self) -> bool:
        return bool(self.members[-1])

    def line_size(self, line_index: int) -> int:
        return int(self.members[self.plane.points_on_line(line_index)].sum())

    # ------------------------------------------------------------------
    # serialization: versioned line-oriented text, plus a JSON mirror
    # ------------------------------------------------------------------
    FORMAT_TAG = "PSET1"

    def to_text(self) -> str:
        F = self.field
        mod = ",".join(str(c) for c in F.modulus)
        label = self.label.replace("\n", " ")
        head = f"{self.FORMAT_TAG} {F.p} {F.n} {mod} {F.order} {label}"
        body = "\n".join(str(int(i)) for i in self.indices())
        return head + "\n" + body + ("\n" if body else "")

    def to_json(self) -> dict:
        F = self.field
        return {
            "format": self.FORMAT_TAG,
            "p": F.p,
            "n": F.n,
            "modulus": list(F.modulus),
            "Q": F.order,
            "label": self.label,
            "members": [int(i) for i in self.indices()],
        }

    def save(self, path: str) -> None:
        if str(path).endswith(".json"):
            with open(path, "w") as fh:
                json.dump(self.to_json(), fh, sort_keys=True)
                fh.write("\n")
        else:
            with open(path, "w") as fh:
                fh.write(self.to_text())

    @classmethod
    def from_text(cls, text: str) -> "PointSet":
        lines = text.splitlines()
        if not lines:
            raise GeometryError("empty point-set file")
        head = lines[0].split(" ", 4)
        if head[0] != cls.FORMAT_TAG or len(head) < 5:
            raise GeometryError(f"unrecognized point-set header: {lines[0]!r}")
        p, n = int(head[1]), int(head[2])
        modulus = tuple(int(c) for c in head[3].split(","))
        field = create_field(p, n)
        if field.modulus != modulus:
            raise GeometryError("file modulus does not match the canonical field")
        rest = head[4].split(" ", 1)
        if int(rest[0]) != field.order:
            raise GeometryError("field order mismatch in header")
        label = rest[1] if len(rest) > 1 else ""
        idx = np.array([int(s) for s in lines[1:] if s.strip()], dtype=np.int64)
        return cls(field, idx, label=label)

    @classmethod
    def from_json(cls, payload: dict) -> "PointSet":
        field = create_field(int(payload["p"]), int(payload["n"]))
        if list(field.modulus) != list(payload["modulus"]):
            raise GeometryError("file modulus does not match the canonical field")
        return cls(field, np.asarray(payload["members"], dtype=np.int64),
                   label=payload.get("label", ""))

    @classmethod
    def load(cls, path: str) -> "PointSet":
        with open(path) as fh:
            text = fh.read()
        if str(path).endswith(".json"):
            return cls.from_json(json.loads(text))
        return cls.from_text(text)
