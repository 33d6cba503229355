"""Projective linear codes of point sets: generator matrix, weight
enumerator by two independent routes, divisibility, and modular reductions.

The code of a spanning set X has the normalized coordinates of the members
as generator columns (ascending point index, so matrices are reproducible
byte for byte).  Weights come either from the intersection enumerator
(A_{|X|-i} gains (Q-1) * e_i) or from brute-force enumeration of all Q^3
messages; the two must agree exactly wherever the brute force is feasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import reduce
from math import gcd, isqrt

import numpy as np

from . import kernels
from .classify import IntersectionEnumerator, enumerate_intersections
from .plane import GeometryError, PointSet

EXHAUSTIVE_CAP = 1 << 24  # highest Q^3 the brute-force weight route accepts


class CodeError(ValueError):
    pass


@dataclass
class GeneratorMatrix:
    """3 x |X| matrix whose column j holds the coordinates of the j-th member."""

    field_order: int
    point_indices: np.ndarray = dc_field(repr=False)
    rows: np.ndarray = dc_field(repr=False)  # (3, n) int32 element indices

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def to_text(self) -> str:
        head = f"GEN {self.field_order} {self.n}"
        body = "\n".join(" ".join(str(int(v)) for v in row) for row in self.rows)
        return head + "\n" + body + "\n"


def code_from_set(X: PointSet) -> GeneratorMatrix:
    """Generator matrix of the projective code of X; X must span the plane."""
    idx = X.indices()
    if idx.shape[0] < 3:
        raise CodeError("at least three points are needed")
    pl = X.plane
    pts = [pl.point(int(i)) for i in idx]
    rows = np.array([[p.x for p in pts], [p.y for p in pts], [p.z for p in pts]],
                    dtype=np.int32)
    # rank check: find a member off the line through the first two
    base_line = pl.line_through(int(idx[0]), int(idx[1]))
    if all(pl.incident(int(i), base_line) for i in idx):
        raise CodeError("the set is collinear (rank 2), no plane code")
    return GeneratorMatrix(field_order=X.field.order, point_indices=idx, rows=rows)


@dataclass
class WeightEnumerator:
    """Map weight -> codeword count for a 3-dimensional code of length n."""

    n: int
    field_order: int
    coeffs: dict[int, int]

    def validate(self) -> "WeightEnumerator":
        if self.coeffs.get(0, 0) != 1:
            raise CodeError("A_0 must be 1")
        total = sum(self.coeffs.values())
        if total != self.field_order**3:
            raise CodeError(f"codeword count {total} != Q^3")
        if any(w < 0 or w > self.n for w in self.coeffs):
            raise CodeError("weight outside [0, n]")
        return self

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, a in self.coeffs.items() if w and a)

    @property
    def min_distance(self) -> int:
        return self.nonzero_weights[0]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "Q": self.field_order,
            "coeffs": {str(w): int(a) for w, a in sorted(self.coeffs.items())},
        }


def weights_from_enumerator(X: PointSet, enum: IntersectionEnumerator) -> WeightEnumerator:
    """Geometric route: every line of intersection size i contributes Q-1
    codewords of weight |X| - i."""
    q = X.field.order
    n = X.size
    coeffs = {0: 1}
    for i, e_i in enum.global_counts.items():
        coeffs[n - i] = coeffs.get(n - i, 0) + (q - 1) * e_i
    return WeightEnumerator(n=n, field_order=q, coeffs=coeffs).validate()


def weights_exhaustive(G: GeneratorMatrix) -> WeightEnumerator:
    """Brute-force route: weight of every one of the Q^3 message triples."""
    q = G.field_order
    if q**3 > EXHAUSTIVE_CAP:
        raise CodeError(f"Q^3 = {q**3} exceeds the brute-force cap {EXHAUSTIVE_CAP}")
    from .galois import field_of_order

    F = field_of_order(q)
    hist = kernels.codeword_weight_hist(G.rows[0], G.rows[1], G.rows[2],
                                        F.add_table(), F.mul_table())
    coeffs = {int(w): int(c) for w, c in enumerate(hist) if c}
    return WeightEnumerator(n=G.n, field_order=q, coeffs=coeffs).validate()


def divisibility(W: WeightEnumerator) -> int:
    """gcd of the nonzero weights that occur."""
    return reduce(gcd, W.nonzero_weights, 0)


def reduce_mod(W: WeightEnumerator, modulus: int) -> dict:
    """Coefficients of the weight enumerator reduced mod `modulus`.

    Returns both the nonnegative residues and a signed form (smallest
    absolute value representative) for easy visual comparison.
    """
    if modulus < 2:
        raise CodeError("modulus must be at least 2")
    coeffs = {}
    signed = {}
    for w, a in sorted(W.coeffs.items()):
        r = a % modulus
        if r:
            coeffs[w] = r
            signed[w] = r - modulus if r > modulus // 2 else r
    return {"modulus": modulus, "coeffs": coeffs, "signed": signed}


def dual_distance_exhaustive(G: GeneratorMatrix, cap: int = 40) -> int | None:
    """Smallest number of linearly dependent columns (2 or 3), by direct
    search; None when n exceeds the cap.  Projective sets give >= 3."""
    if G.n > cap:
        return None
    from .galois import field_of_order

    F = field_of_order(G.field_order)
    cols = G.rows.T
    n = G.n

    def dep2(u, v):
        # proportional columns?
        for k in range(3):
            if (u[k] == 0) != (v[k] == 0):
                return False
        nz = [k for k in range(3) if u[k]]
        if not nz:
            return True
        r = F.div(int(v[nz[0]]), int(u[nz[0]]))
        return all(int(v[k]) == F.mul(r, int(u[k])) for k in range(3))

    for i in range(n):
        for j in range(i + 1, n):
            if dep2(cols[i], cols[j]):
                return 2
    for i in range(n):
        for j in range(i + 1, n):
            # lambda*ci + mu*cj spans the plane <ci, cj>; a third column is
            # dependent iff it lies on the dual line ci x cj
            u, v = cols[i], cols[j]
            a = F.sub(F.mul(int(u[1]), int(v[2])), F.mul(int(u[2]), int(v[1])))
            b = F.sub(F.mul(int(u[2]), int(v[0])), F.mul(int(u[0]), int(v[2])))
            c = F.sub(F.mul(int(u[0]), int(v[1])), F.mul(int(u[1]), int(v[0])))
            for k in range(j + 1, n):
                w = cols[k]
                s = F.add(F.add(F.mul(a, int(w[0])), F.mul(b, int(w[1]))),
                          F.mul(c, int(w[2])))
                if s == 0:
                    return 3
    return None


@dataclass
class CodeReport:
    n: int
    k: int
    d_min: int
    field_order: int
    weight_list: list[int]
    divisor: int
    dual_params: tuple[int, int]
    dual_distance: int | None
    weights: WeightEnumerator = dc_field(repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d_min": self.d_min,
            "Q": self.field_order,
            "weight_list": self.weight_list,
            "divisor": self.divisor,
            "dual_params": list(self.dual_params),
            "dual_distance": self.dual_distance,
            "weights": self.weights.to_dict(),
        }


def code_report(X: PointSet, enum: IntersectionEnumerator | None = None,
                exhaustive_check: bool = False) -> CodeReport:
    """Full report for the projective code of X.

    With exhaustive_check (and Q^3 under the cap) the brute-force weight
    route runs too and any disagreement with the geometric route raises.
    """
    G = code_from_set(X)
    if enum is None:
        enum = enumerate_intersections(X)
    W = weights_from_enumerator(X, enum)
    if exhaustive_check:
        W2 = weights_exhaustive(G)
        if W2.coeffs != W.coeffs:
            raise CodeError("weight routes disagree: "
                            f"{W.to_dict()} vs {W2.to_dict()}")
    d_min = X.size - max(i for i in enum.global_counts)
    if d_min != W.min_distance:
        raise CodeError("minimum distance mismatch between routes")
    return CodeReport(
        n=W.n,
        k=3,
        d_min=d_min,
        field_order=X.field.order,
        weight_list=W.nonzero_weights,
        divisor=divisibility(W),
        dual_params=(W.n, W.n - 3),
        dual_distance=dual_distance_exhaustive(G),
        weights=W,
    )


def enumerator_divisibility_check(X: PointSet, enum: IntersectionEnumerator,
                                  family: dict | None = None) -> dict:
    """Congruence checklist for the e_i of a tagged construction family.

    regular_pointed: e_1 == 1 (mod Q), every other e_i == 0 (mod Q);
    trace_norm:      modulus q^3, e_1 == 1, e_{q+1} == q^2, others 0;
    lift:            modulus q^(2s+1), e_{q^s t + 1} == q exactly,
                     e_1 == q^h - q + 1, others 0.
    """
    fam = family or X.family
    if not fam or "kind" not in fam:
        raise CodeError("the set carries no construction family tag")
    kind = fam["kind"]
    checks = []

    def record(i, wanted, modulus, exact=False):
        actual = enum.global_counts.get(i, 0)
        ok = actual == wanted if exact else actual % modulus == wanted % modulus
        checks.append({"i": int(i), "actual": int(actual), "wanted": int(wanted),
                       "modulus": None if exact else int(modulus), "ok": bool(ok)})

    if kind == "regular_pointed":
        modulus = fam.get("Q", X.field.order)
        for i in sorted(enum.global_counts):
            record(i, 1 if i == 1 else 0, modulus)
    elif kind == "trace_norm":
        q = fam["q"]
        modulus = q**3
        special = {1: 1, q + 1: q * q}
        for i in sorted(set(enum.global_counts) | set(special)):
            record(i, special.get(i, 0), modulus)
    elif kind == "lift":
        q, h, s, t = fam["q"], fam["h"], fam["s"], fam["t"]
        if t is None:
            raise CodeError("lift family lacks the base pointed parameter t")
        modulus = q ** (2 * s + 1)
        record(q**s * t + 1, q, modulus, exact=True)
        for i in sorted(enum.global_counts):
            if i == q**s * t + 1:
                continue
            record(i, q**h - q + 1 if i == 1 else 0, modulus)
    else:
        raise CodeError(f"unknown construction family {kind!r}")
    return {"family": kind, "ok": all(c["ok"] for c in checks), "checks": checks}


def expected_reduction_regular_pointed(Q: int, size: int) -> dict:
    """Reduction mod Q of the weight enumerator of a regular pointed set:
    1 + (Q-1) x^(|X|-1), the signed form 1 - x^(|X|-1)."""
    return {0: 1, size - 1: Q - 1}


def expected_reduction_trace_norm(q: int) -> dict:
    """Reduction mod q^3 for trace-norm sets: 1 + (q^3-q^2) x^(q^3-q)
    + (q^2-1) x^(q^3), signed 1 - q^2 x^(q^3-q) + (q^2-1) x^(q^3)."""
    return {0: 1, q**3 - q: q**3 - q * q, q**3: q * q - 1}


def expected_reduction_lift(q: int, h: int, s: int, t: int) -> dict:
    """Reduction mod q^(2s+1) for lifted sets: 1 + (q^(h+1)-q) x^(t q^s (q-1))
    + (q - 1 - q^(h+1)) x^(t q^(s+1)) in nonnegative residues."""
    modulus = q ** (2 * s + 1)
    out = {0: 1}
    out[t * q**s * (q - 1)] = (q ** (h + 1) - q) % modulus
    w2 = t * q ** (s + 1)
    out[w2] = (out.get(w2, 0) + (-q ** (h + 1) + q - 1)) % modulus
    return {w: c for w, c in out.items() if c}
