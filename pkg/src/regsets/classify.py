"""Line-intersection enumeration and affine/pointed-type verdicts.

A set X is classified against a frame (P0, l0) with P0 in X and l0 a
tangent at P0:

(i)   every line missing P0 meets X in one of the affine types m_i
      (the report returns the realized sizes as the type list);
(ii)  regularity: each point of l0 other than P0 sees the same multiset
      of secant sizes over its remaining pencil;
(iii) pointed: the lines through P0 other than l0 all have one size t+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import isqrt

import numpy as np

from . import kernels
from .plane import GeometryError, PointSet


class ClassifyError(ValueError):
    pass


@dataclass
class IntersectionEnumerator:
    """Sizes |X meet l| for every line l, with per-parallel-class views.

    line_sizes is indexed by line index; by_direction[d] gives the counts
    {size: number of lines} over the parallel class of the ideal point d
    (slopes 0..Q-1, then the vertical direction last).
    """

    set_size: int
    q: int
    line_sizes: np.ndarray = dc_field(repr=False)

    @property
    def n_lines(self) -> int:
        return self.q * self.q + self.q + 1

    @cached_property
    def global_counts(self) -> dict[int, int]:
        sizes, counts = np.unique(self.line_sizes, return_counts=True)
        return {int(s): int(c) for s, c in zip(sizes, counts)}

    @cached_property
    def by_direction(self) -> list[dict[int, int]]:
        q = self.q
        out = []
        for d in range(q):
            sizes, counts = np.unique(self.line_sizes[d * q:(d + 1) * q], return_counts=True)
            out.append({int(s): int(c) for s, c in zip(sizes, counts)})
        sizes, counts = np.unique(self.line_sizes[q * q: q * q + q], return_counts=True)
        out.append({int(s): int(c) for s, c in zip(sizes, counts)})
        return out

    @property
    def infinity_size(self) -> int:
        return int(self.line_sizes[-1])

    def validate(self) -> "IntersectionEnumerator":
        """Exact double-counting identities; raises on any mismatch."""
        n, k = self.n_lines, self.set_size
        sizes = self.line_sizes.astype(np.int64)
        if sizes.shape[0] != n:
            raise ClassifyError("line size vector has the wrong length")
        s1 = int(sizes.sum())
        s2 = int((sizes * (sizes - 1)).sum())
        if s1 != k * (self.q + 1):
            raise ClassifyError(f"sum(i*e_i) = {s1} != |X|(Q+1) = {k * (self.q + 1)}")
        if s2 != k * (k - 1):
            raise ClassifyError(f"sum(i(i-1)e_i) = {s2} != |X|(|X|-1) = {k * (k - 1)}")
        return self

    def to_dict(self, with_directions: bool = False) -> dict:
        out = {
            "set_size": self.set_size,
            "Q": self.q,
            "counts": {str(k): v for k, v in sorted(self.global_counts.items())},
            "infinity_size": self.infinity_size,
        }
        if with_directions:
            out["by_direction"] = [
                {str(k): v for k, v in sorted(d.items())} for d in self.by_direction
            ]
        return out


def enumerate_intersections(X: PointSet, workers: int = 1) -> IntersectionEnumerator:
    """Exact |X meet l| for all Q^2+Q+1 lines, via the counting kernel."""
    pl = X.plane
    q = pl.q
    F = X.field
    grid = X.affine_grid()
    dirs = X.direction_mask().astype(np.int32)
    inf = 1 if X.has_infinity else 0

    counts = kernels.affine_secant_counts(grid, F.add_table(), F.mul_table(), workers=workers)
    line_sizes = np.empty(pl.n_lines, dtype=np.int32)
    line_sizes[: q * q] = (counts + dirs[:, None]).ravel()
    line_sizes[q * q: q * q + q] = grid.sum(axis=1, dtype=np.int32) + inf
    line_sizes[-1] = int(dirs.sum()) + inf
    enum = IntersectionEnumerator(set_size=X.size, q=q, line_sizes=line_sizes)
    return enum.validate()


@dataclass
class TypeReport:
    """Verdicts for the affine/pointed type conditions at one frame."""

    frame: tuple[int, int]                 # (P0 point index, l0 line index)
    affine_types: list[int]                # realized sizes over lines missing P0
    is_affine_type: bool
    is_regular_affine: bool
    is_pointed: bool
    is_regular_pointed: bool
    t: int | None                          # lines through P0 (except l0) are (t+1)-secants

    @property
    def pointed_params(self) -> str | None:
        if not self.is_pointed:
            return None
        return f"[{self.t}; {', '.join(str(m) for m in self.affine_types)}]"

    def to_dict(self) -> dict:
        return {
            "frame": {"P0": self.frame[0], "l0": self.frame[1]},
            "affine_types": self.affine_types,
            "t": self.t,
            "is_affine_type": self.is_affine_type,
            "is_regular_affine": self.is_regular_affine,
            "is_pointed": self.is_pointed,
            "is_regular_pointed": self.is_regular_pointed,
            "pointed_params": self.pointed_params,
        }


def classify(X: PointSet, p0: int, l0: int,
             enum: IntersectionEnumerator | None = None) -> TypeReport:
    """Classify X against the frame (P0, l0); l0 must be tangent at P0."""
    pl = X.plane
    if p0 not in X:
        raise ClassifyError("P0 is not a member of the set")
    if not pl.incident(p0, l0):
        raise ClassifyError("l0 does not pass through P0")
    if enum is None:
        enum = enumerate_intersections(X)
    sizes = enum.line_sizes
    if sizes[l0] != 1:
        raise ClassifyError(f"l0 meets the set in {int(sizes[l0])} points, not tangent")

    pencil0 = pl.pencil_array(p0)
    # (i): realized sizes over lines not through P0
    total = np.bincount(sizes, minlength=int(sizes.max()) + 1)
    through = np.bincount(sizes[pencil0], minlength=total.shape[0])
    affine_types = [int(s) for s in np.flatnonzero(total - through)]

    # (iii): all lines through P0 except l0 share one size t+1
    other = sizes[pencil0[pencil0 != l0]]
    t = int(other[0]) - 1 if other.size and np.all(other == other[0]) else None
    is_pointed = t is not None and t > 0

    # (ii): equal sorted size multisets over the remaining pencil of each
    # point of l0 \ {P0}
    regular = True
    ref = None
    for pt in pl.points_on_line(l0):
        if pt == p0:
            continue
        pencil = pl.pencil_array(pt)
        ms = np.sort(sizes[pencil[pencil != l0]])
        if ref is None:
            ref = ms
        elif not np.array_equal(ref, ms):
            regular = False
            break

    return TypeReport(
        frame=(int(p0), int(l0)),
        affine_types=affine_types,
        is_affine_type=True,
        is_regular_affine=regular,
        is_pointed=is_pointed,
        is_regular_pointed=regular and is_pointed,
        t=t,
    )


def auto_classify(X: PointSet, enum: IntersectionEnumerator | None = None) -> list[TypeReport]:
    """Classify X at every frame (member point with a tangent, tangent line),
    ordered by point index then line index.  Empty when X has no tangent."""
    if enum is None:
        enum = enumerate_intersections(X)
    sizes = enum.line_sizes
    reports = []
    for p0 in X.indices():
        pencil = np.sort(X.plane.pencil_array(int(p0)))
        for l0 in pencil[sizes[pencil] == 1]:
            reports.append(classify(X, int(p0), int(l0), enum))
    return reports


def is_unital(X: PointSet, enum: IntersectionEnumerator | None = None) -> bool:
    """True iff |X| = q^3 + 1 over GF(q^2) and every line is a 1- or
    (q+1)-secant."""
    Q = X.field.order
    q = isqrt(Q)
    if q * q != Q or X.size != q**3 + 1:
        return False
    if enum is None:
        enum = enumerate_intersections(X)
    return set(enum.global_counts) <= {1, q + 1}


@dataclass
class CensusReport:
    """Per-direction tallies of a lifted set against the claimed counts."""

    ok: bool
    covered_directions: int
    expected_covered: int
    claim1_ok: bool          # covered: empty-line count and per-type secants
    claim2_ok: bool          # uncovered: tangent and empty-line counts
    sum_rule_ok: bool        # sum_i A_{i,d} = q for covered directions
    divisibility: dict | None  # non-vertical k-secant totals mod q^(2h-1), s = h-1 only
    details: list[dict] = dc_field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "covered_directions": self.covered_directions,
            "expected_covered": self.expected_covered,
            "claim1_ok": self.claim1_ok,
            "claim2_ok": self.claim2_ok,
            "sum_rule_ok": self.sum_rule_ok,
            "divisibility": self.divisibility,
        }


def direction_census(X: PointSet, base: PointSet, workers: int = 1) -> CensusReport:
    """Check a lifted set X against the per-direction counting claims.

    `base` is the set that was lifted (its affine part is what matters);
    X.family must carry the lift parameters written by the lift builder.
    """
    fam = X.family or {}
    if fam.get("kind") != "lift":
        raise ClassifyError("direction census requires a lift-constructed set")
    q = fam["q"]
    h = fam["h"]
    s = fam["s"]
    span = set(fam["span"])
    embedded = list(fam["embedded"])

    big = X.field
    qh = big.order
    base_grid = base.affine_grid()
    bF = base.field
    base_counts = kernels.affine_secant_counts(base_grid, bF.add_table(), bF.mul_table(),
                                               workers=workers)
    base_size = int(base_grid.sum())

    big_counts = kernels.affine_secant_counts(X.affine_grid(), big.add_table(),
                                              big.mul_table(), workers=workers)

    # decompose each covered direction d = d0 + d1, d0 in GF(q), d1 in span(I)
    d0_of = {}
    for i, e in enumerate(embedded):
        for d1 in span:
            d0_of[big.add(e, d1)] = i
    expected_covered = q ** (s + 1)

    claim1_ok = claim2_ok = sum_ok = True
    covered_seen = 0
    details = []
    for d in range(qh):
        hist = np.bincount(big_counts[d], minlength=qh + 1)
        row = {"direction": d}
        if d in d0_of:
            covered_seen += 1
            base_hist = np.bincount(base_counts[d0_of[d]], minlength=q + 1)
            row["covered"] = True
            row["empty"] = int(hist[0])
            # case-(i) lines miss the set; the rest keep the base sizes m_i
            # (only vertical sizes scale), with multiplicity q^s * A_{i,d}
            expect = np.zeros(qh + 1, dtype=np.int64)
            expect[0] = qh - q ** (s + 1)
            for m_i in np.flatnonzero(base_hist):
                expect[int(m_i)] += q**s * int(base_hist[m_i])
            ok_here = bool(np.array_equal(hist, expect))
            claim1_ok &= ok_here
            sum_ok &= int(base_hist.sum()) == q
            row["ok"] = ok_here
        else:
            row["covered"] = False
            ok_here = (int(hist[1]) == q**s * base_size
                       and int(hist[0]) == qh - q**s * base_size
                       and int(hist.sum()) == int(hist[0]) + int(hist[1]))
            claim2_ok &= ok_here
            row["ok"] = ok_here
        details.append(row)

    divis = None
    if s == h - 1:
        mod = q ** (2 * h - 1)
        totals = np.bincount(big_counts.ravel(), minlength=qh + 1)
        bad = {int(k): int(totals[k]) for k in np.flatnonzero(totals % mod)}
        divis = {"modulus": mod, "ok": not bad, "violations": bad}

    ok = (claim1_ok and claim2_ok and sum_ok and covered_seen == expected_covered
          and (divis is None or divis["ok"]))
    return CensusReport(
        ok=ok,
        covered_directions=covered_seen,
        expected_covered=expected_covered,
        claim1_ok=claim1_ok,
        claim2_ok=claim2_ok,
        sum_rule_ok=sum_ok,
        divisibility=divis,
        details=details,
    )
