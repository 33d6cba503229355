"""Builders for the point-set families and the curve intersection counter.

All sets live in the plane over the given field and use the frame
conventions of the plane module: the distinguished point defaults to the
vertical direction (inf) with the line at infinity as tangent, except for
the oval-derived sets, which are re-based at the smallest-index oval point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import kernels
from .galois import GaloisField, create_field
from .plane import GeometryError, PointSet, plane_over


@dataclass(frozen=True)
class AdditiveMap:
    """f(x) = sum_j coeffs[j] * x**(p**j): additive by shape.

    coeffs has one entry per power p^j, j < n, over GF(p^n).
    """

    coeffs: tuple[int, ...]

    def values(self, F: GaloisField) -> np.ndarray:
        if len(self.coeffs) != F.n:
            raise GeometryError(f"additive map needs {F.n} coefficients over this field")
        out = np.zeros(F.order, dtype=np.int64)
        for j, c in enumerate(self.coeffs):
            if c:
                out = F.add_v(out, F.mul_v(np.int64(c), F.frobenius_vector(j)))
        return out

    @classmethod
    def zero(cls, F: GaloisField) -> "AdditiveMap":
        return cls(coeffs=(0,) * F.n)


@dataclass(frozen=True)
class GeneralMap:
    """Arbitrary univariate polynomial map, low-degree coefficients first."""

    poly: tuple[int, ...]

    def values(self, F: GaloisField) -> np.ndarray:
        if len(self.poly) > F.order:
            raise GeometryError("polynomial degree must stay below the field order")
        x = np.arange(F.order, dtype=np.int64)
        out = np.zeros(F.order, dtype=np.int64)
        for c in reversed(self.poly):
            out = F.add_v(F.mul_v(out, x), np.full(F.order, c, dtype=np.int64))
        return out


@dataclass(frozen=True)
class CurveParams:
    """Parameters (a, m, d) of the curve y = a*x^sqrt(q) + m*x + d, a != 0."""

    a: int
    m: int
    d: int

    def __post_init__(self):
        if self.a == 0:
            raise GeometryError("curve parameter a must be nonzero")


def _even_split(F: GaloisField) -> int:
    """Sub-degree e with GF(q) = GF(p^e) inside GF(q^2) = F; requires even n."""
    if F.n % 2:
        raise GeometryError("a field of square order q^2 is required (even degree)")
    return F.n // 2


def _sqrt_exponent(F: GaloisField) -> int:
    """j such that p^j = sqrt(q) for F = GF(q^2) with q square."""
    e = _even_split(F)
    if e % 2:
        raise GeometryError("q must itself be a square (degree divisible by 4)")
    return e // 2


def trace_norm_set(F: GaloisField, f: AdditiveMap | GeneralMap | None = None,
                   label: str | None = None) -> PointSet:
    """Affine points with tr(y + f(x)) = norm(x), plus the point (inf).

    tr and norm map GF(q^2) onto GF(q); each vertical line carries exactly q
    affine members because y -> tr(y) is q-to-1, so the set has q^3+1 points.
    """
    e = _even_split(F)
    if f is None:
        f = AdditiveMap.zero(F)
    tr = F.trace_vector(e)
    nrm = F.norm_vector(e)
    target = F.sub_v(nrm, tr[f.values(F)])  # per x: required value of tr(y)
    grid = (tr[None, :] == target[:, None])
    q2 = F.order
    members = np.zeros(q2 * q2 + q2 + 1, dtype=bool)
    members[: q2 * q2] = grid.ravel()
    members[-1] = True
    q = F.p**e
    additive = isinstance(f, AdditiveMap)
    family = {"kind": "trace_norm", "q": q} if additive else None
    if label is None:
        label = f"trace-norm set over GF({q2}), f={f!r}"
    pl = plane_over(F)
    return PointSet(F, members, label=label, family=family,
                    frame=(pl.infinity, pl.line_infinity))


def gamma_a(F: GaloisField, a: int, label: str | None = None) -> PointSet:
    """The trace-norm set with f(x) = a * x^sqrt(q); requires q square, a != 0."""
    if a == 0:
        raise GeometryError("gamma_a requires a != 0")
    j = _sqrt_exponent(F)
    coeffs = [0] * F.n
    coeffs[j] = a
    q = F.p ** (F.n // 2)
    X = trace_norm_set(F, AdditiveMap(tuple(coeffs)),
                       label=label or f"gamma set over GF({F.order}), a={a}")
    X.family = {"kind": "trace_norm", "q": q, "a": a, "sqrt_q": F.p**j}
    return X


def hermitian_unital(F: GaloisField, label: str | None = None) -> PointSet:
    """Points of y^q + y = x^(q+1) plus (inf): the classical unital."""
    e = _even_split(F)
    q = F.p**e
    return trace_norm_set(F, AdditiveMap.zero(F),
                          label=label or f"hermitian unital over GF({F.order}), q={q}")


def hermitian_intersection_count(F: GaloisField, params: CurveParams) -> int:
    """Number of affine points shared by y^q + y = x^(q+1) and
    y = a*x^sqrt(q) + m*x + d: the x with tr(a*x^sqrt(q) + m*x + d) = norm(x)."""
    j = _sqrt_exponent(F)
    e = F.n // 2
    tr = F.trace_vector(e)
    nrm = F.norm_vector(e)
    x = np.arange(F.order, dtype=np.int64)
    inner = F.add_v(F.add_v(F.mul_v(np.int64(params.a), F.frobenius_vector(j)),
                            F.mul_v(np.int64(params.m), x)),
                    np.full(F.order, params.d, dtype=np.int64))
    return int(np.count_nonzero(tr[inner] == nrm))


def touching_union(F: GaloisField, B, label: str | None = None) -> PointSet:
    """Union over b in B of the conics y = x^2 + b, all touching at (inf).

    Every conic contributes its q affine points plus the common point (inf),
    so vertical lines meet the union in |B| + 1 points.  Requires q odd.
    """
    if F.p == 2:
        raise GeometryError("touching conics require odd order")
    B = sorted(set(int(b) for b in B))
    if not B:
        raise GeometryError("B must be nonempty")
    q = F.order
    x = np.arange(q, dtype=np.int64)
    sq = F.mul_v(x, x)
    members = np.zeros(q * q + q + 1, dtype=bool)
    for b in B:
        y = F.add_v(sq, np.full(q, b, dtype=np.int64))
        members[x * q + y] = True
    members[-1] = True
    pl = plane_over(F)
    return PointSet(F, members, label=label or f"touching-conic union over GF({q}), B={B}",
                    family={"kind": "regular_pointed", "Q": q},
                    frame=(pl.infinity, pl.line_infinity))


def interior_square_classes(F: GaloisField) -> tuple[list[int], list[int]]:
    """Partition of GF(q)* into the b with (x, x^2+b) interior / exterior to
    the conic y = x^2; a point off the conic lies on 2*#roots(t^2-2xt+y)
    tangents, so the split is decided by whether -4b is a nonzero square."""
    interior, exterior = [], []
    m4 = F.neg(4 % F.p)
    for b in range(1, F.order):
        (exterior if F.is_square(F.mul(m4, b)) else interior).append(b)
    return interior, exterior


def oval_set(F: GaloisField, variant: int, label: str | None = None) -> PointSet:
    """Interior/exterior point sets of the conic oval y = x^2 (q odd).

    Interior points lie on no tangent of the oval, exterior points on two
    (computed by counting tangents through every point).  Variants:

    1: interior plus one oval point          2: exterior plus one oval point
    3: interior plus the whole oval          4: exterior plus the whole oval

    The adjoined oval point P0 is the one of smallest index and the frame is
    re-based to (P0, tangent at P0).  Exterior points sitting on that tangent
    are left out, otherwise the tangent would not stay a tangent of the set.
    """
    if F.p == 2:
        raise GeometryError("ovals with interior/exterior split require odd order")
    if variant not in (1, 2, 3, 4):
        raise GeometryError("variant must be 1..4")
    pl = plane_over(F)
    q = F.order
    x = np.arange(q, dtype=np.int64)
    sq = F.mul_v(x, x)
    conic = np.zeros(pl.n_points, dtype=bool)
    conic[x * q + sq] = True
    conic[pl.infinity] = True

    tangent_count = np.zeros(pl.n_points, dtype=np.int16)
    tangent_lines = []
    for x0 in range(q):
        # tangent at (x0, x0^2): y = 2*x0*x - x0^2
        m = F.mul(2 % F.p, x0)
        line = m * q + F.neg(int(sq[x0]))
        tangent_lines.append(line)
        tangent_count[pl.points_on_line(line)] += 1
    tangent_lines.append(pl.line_infinity)
    tangent_count[pl.points_on_line(pl.line_infinity)] += 1

    interior = (tangent_count == 0) & ~conic
    exterior = (tangent_count == 2) & ~conic

    p0 = int(np.flatnonzero(conic)[0])
    l0 = tangent_lines[p0 // q] if p0 < q * q else pl.line_infinity
    on_l0 = np.zeros(pl.n_points, dtype=bool)
    on_l0[pl.points_on_line(l0)] = True

    members = (interior if variant in (1, 3) else exterior & ~on_l0).copy()
    if variant in (1, 2):
        members[p0] = True
    else:
        members |= conic
    return PointSet(F, members,
                    label=label or f"oval variant {variant} over GF({q})",
                    family={"kind": "regular_pointed", "Q": q},
                    frame=(p0, int(l0)))


def default_lift_basis(tower, s: int) -> list[int]:
    """Greedy basis for the lift: smallest-index elements of the big field
    whose span stays disjoint from the embedded GF(q)*."""
    big = tower.sup
    q = tower.sub.order
    h = big.n // tower.sub.n
    if not (1 <= s <= h - 1):
        raise GeometryError(f"need 1 <= s <= h-1 = {h - 1}")
    image = tower.image_mask
    basis: list[int] = []
    span = np.zeros(big.order, dtype=bool)
    span[0] = True
    coeffs = tower.table  # embedded copies of the GF(q) scalars
    for e in range(1, big.order):
        if span[e]:
            continue
        mults = big.mul_v(coeffs, np.int64(e))
        new_span = span.copy()
        for base_pt in np.flatnonzero(span):
            new_span[big.add_v(mults, np.int64(base_pt))] = True
        if np.any(new_span & image & (np.arange(big.order) != 0)):
            continue
        basis.append(e)
        span = new_span
        if len(basis) == s:
            return basis
    raise GeometryError("no valid basis found")  # pragma: no cover


def _span_of(tower, basis: list[int]) -> np.ndarray:
    big = tower.sup
    span = np.array([0], dtype=np.int64)
    for e in basis:
        mults = big.mul_v(tower.table, np.int64(e))
        span = np.unique(big.add_v(span[:, None], mults[None, :]).ravel())
    return span


def lift(S: PointSet, h: int, basis: list[int] | None = None,
         s: int | None = None, label: str | None = None) -> PointSet:
    """Spread the affine part of S across cosets of a subspace of GF(q^h).

    Every affine point (x, y) of S becomes the q^s points (x, y+i) with i in
    the span of the basis, inside the plane over GF(q^h); the point (inf) is
    dropped from S and re-added to the result.  The basis must be linearly
    independent over GF(q) with span meeting GF(q) only in 0.
    """
    F = S.field
    if h < 2:
        raise GeometryError("h must be at least 2")
    if np.any(S.direction_mask()):
        raise GeometryError("the base set may contain no ideal point except (inf)")
    big = create_field(F.p, F.n * h)
    tower = big.subfield(F.n)
    if basis is None:
        if s is None:
            raise GeometryError("give either a basis or a dimension s")
        basis = default_lift_basis(tower, s)
    s = len(basis)
    if s > h - 1:
        raise GeometryError(f"subspace dimension {s} exceeds h-1 = {h - 1}")
    span = _span_of(tower, basis)
    if span.shape[0] != F.order**s:
        raise GeometryError("basis is linearly dependent over GF(q)")
    in_gfq = tower.image_mask[span]
    if np.count_nonzero(in_gfq & (span != 0)):
        raise GeometryError("span intersects GF(q) nontrivially")

    q = F.order
    qh = big.order
    idx = S.indices()
    xs, ys = np.divmod(idx[idx < q * q], q)  # affine part only; (inf) re-added below
    ex = tower.embed_v(xs)
    ey = tower.embed_v(ys)
    members = np.zeros(qh * qh + qh + 1, dtype=bool)
    for i in span:
        members[ex * qh + big.add_v(ey, np.int64(i))] = True
    members[-1] = True

    # base pointed parameter, when every base vertical has one affine count
    vert = S.affine_grid().sum(axis=1)
    t = int(vert[0]) if np.all(vert == vert[0]) else None

    pl = plane_over(big)
    X = PointSet(big, members,
                 label=label or (f"lift of [{S.label}] to GF({qh}), s={s}, "
                                 f"(inf) dropped and re-added"),
                 family={
                     "kind": "lift",
                     "q": q,
                     "h": h,
                     "s": s,
                     "t": t,
                     "basis": [int(b) for b in basis],
                     "span": [int(v) for v in span],
                     "embedded": [int(v) for v in tower.table],
                     "base_size": int(xs.shape[0]),
                 },
                 frame=(pl.infinity, pl.line_infinity))
    return X


def complement(X: PointSet, label: str | None = None) -> PointSet:
    """Affine complement plus (inf); requires (inf) in X and l_inf tangent."""
    if not X.has_infinity:
        raise GeometryError("complement requires (inf) to be a member")
    if np.any(X.direction_mask()):
        raise GeometryError("complement requires the line at infinity to be tangent")
    q = X.plane.q
    members = np.zeros_like(X.members)
    members[: q * q] = ~X.members[: q * q]
    members[-1] = True
    fam = None
    if X.family and X.family.get("kind") in ("regular_pointed", "trace_norm"):
        fam = {"kind": "regular_pointed", "Q": q}
    return PointSet(X.field, members,
                    label=label or f"complement of [{X.label}]",
                    family=fam,
                    frame=(X.plane.infinity, X.plane.line_infinity))
