import numpy as np
import pytest
from hypothesis import given, strategies as st

from regsets.galois import GaloisField, create_field, field_of_order


# ----------------------------------------------------------------------
# modulus selection
# ----------------------------------------------------------------------
def test_gf2_trivial():
    F = create_field(2, 1)
    assert F.modulus == (1, 1)  # x + 1
    assert F.add(1, 1) == 0 and F.mul(1, 1) == 1


def test_gf4_unique_primitive_quadratic():
    assert create_field(2, 2).modulus == (1, 1, 1)  # x^2 + x + 1


def _poly_mul_mod3(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % 3
    return out


def _poly_mod(a, f):
    a = list(a)
    while len(a) >= len(f) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(f):
            break
        lead = a[-1]
        shift = len(a) - len(f)
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - lead * c) % 3
        while a and a[-1] == 0:
            a.pop()
    return a + [0] * (len(f) - 1 - len(a))


def _oracle_smallest_primitive_quartic_gf3():
    """Independent search: irreducibility by trial division, then the order
    of x must be exactly 80."""
    quartics = []
    for enc in range(81):
        c = [(enc // 3**i) % 3 for i in range(4)]
        quartics.append(c + [1])

    linears = [[c, 1] for c in range(3)]
    quadratics = [[c0, c1, 1] for c0 in range(3) for c1 in range(3)]

    def divides(d, f):
        # does d divide f over GF(3)?
        rem = list(f)
        while len(rem) >= len(d) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(d):
                break
            lead = rem[-1]
            shift = len(rem) - len(d)
            for i, c in enumerate(d):
                rem[shift + i] = (rem[shift + i] - lead * c) % 3
        return not any(rem)

    for f in quartics:
        if any(divides(d, f) for d in linears):
            continue
        if any(divides(d, f) for d in quadratics if not all(v == 0 for v in d[:2])):
            continue
        # irreducible; order of x
        x = [0, 1]
        cur = list(x)
        order = None
        for k in range(1, 82):
            if cur == [1, 0, 0, 0]:
                order = k
                break
            cur = _poly_mod(_poly_mul_mod3(cur, x), f)
        if order == 80:
            return tuple(f)
    raise AssertionError("no primitive quartic found")


def test_gf81_smallest_primitive_quartic_matches_oracle():
    assert create_field(3, 4).modulus == _oracle_smallest_primitive_quartic_gf3()


def test_create_field_deterministic_and_cached():
    assert create_field(5, 2) is create_field(5, 2)
    a = GaloisField(5, 2)
    b = GaloisField(5, 2)
    assert a.modulus == b.modulus and a.generator == b.generator


def test_create_field_errors():
    with pytest.raises(ValueError):
        create_field(4, 2)  # not prime
    with pytest.raises(ValueError):
        create_field(2, 0)
    with pytest.raises(ValueError):
        create_field(2, 9)
    with pytest.raises(ValueError):
        GaloisField(1031, 2)  # order above the 2^20 bound


def test_generator_order():
    for p, n in [(2, 3), (3, 2), (5, 1), (7, 1), (2, 4)]:
        F = create_field(p, n)
        g = F.generator
        seen = set()
        val = 1
        for _ in range(F.order - 1):
            val = F.mul(val, g)
            seen.add(val)
        assert len(seen) == F.order - 1 and val == 1


# ----------------------------------------------------------------------
# field axioms
# ----------------------------------------------------------------------
@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3), (5, 1)])
def test_axioms_exhaustive(p, n):
    F = create_field(p, n)
    q = F.order
    els = range(q)
    for a in els:
        assert F.add(a, 0) == a and F.mul(a, 1) == a and F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(F.add(a, b), b) == a
    for a in els:
        for b in els:
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_inv_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        create_field(3, 2).inv(0)


def test_pow_examples():
    F16 = create_field(2, 4)
    g = F16.generator
    assert F16.inv(F16.pow(g, 5)) == F16.pow(g, 10)
    assert F16.pow(g, -1) == F16.inv(g)
    F9 = create_field(3, 2)
    assert F9.pow(F9.generator, 8) == 1
    assert F9.pow(0, 0) == 1 and F9.pow(0, 3) == 0


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_axioms_sampled_gf64(a, b, c):
    F = create_field(2, 6)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


# ----------------------------------------------------------------------
# frobenius, trace, norm
# ----------------------------------------------------------------------
def test_frobenius():
    F4 = create_field(2, 2)
    w = F4.generator
    assert F4.frobenius(0, 1) == 0
    assert F4.frobenius(w, 1) == F4.mul(w, w)
    F81 = create_field(3, 4)
    for e in range(81):
        assert F81.frobenius(e, 4) == e  # p^n fixes everything
    # additivity of x -> x^p
    for a in range(81):
        for b in range(0, 81, 7):
            assert F81.frobenius(F81.add(a, b)) == F81.add(F81.frobenius(a), F81.frobenius(b))


def test_trace_gf4_to_gf2():
    F = create_field(2, 2)
    w = F.generator
    assert F.rel_trace(1, 1) == 0  # 1 + 1
    assert F.rel_trace(w, 1) == 1  # w + w^2 = 1 from the modulus


@pytest.mark.parametrize("p,n,m", [(2, 2, 1), (3, 2, 1), (2, 4, 2), (3, 4, 2), (2, 6, 3)])
def test_trace_uniform_fibers(p, n, m):
    F = create_field(p, n)
    tr = F.trace_vector(m)
    values, counts = np.unique(tr, return_counts=True)
    assert len(values) == p**m  # surjective onto the subfield
    assert np.all(counts == p ** (n - m))  # uniform fiber size
    # additivity, exhaustively
    for a in range(0, F.order, max(1, F.order // 40)):
        for b in range(0, F.order, max(1, F.order // 40)):
            assert F.rel_trace(F.add(a, b), m) == F.add(F.rel_trace(a, m), F.rel_trace(b, m))


def test_trace_subfield_membership():
    F = create_field(3, 4)
    tr = F.trace_vector(2)
    frob = F.frobenius_vector(2)
    assert np.all(frob[tr] == tr)  # values fixed by x -> x^(p^m)


def test_norm_gf4():
    F = create_field(2, 2)
    assert F.rel_norm(0, 1) == 0 and F.rel_norm(1, 1) == 1
    assert F.rel_norm(F.generator, 1) == 1  # w^3


def test_norm_multiplicative_and_fibers():
    F = create_field(3, 2)
    for a in range(9):
        for b in range(9):
            assert F.rel_norm(F.mul(a, b), 1) == F.mul(F.rel_norm(a, 1), F.rel_norm(b, 1))
    nrm = F.norm_vector(1)
    values, counts = np.unique(nrm[1:], return_counts=True)
    assert list(values) == [1, 2] and list(counts) == [4, 4]  # 4-to-1 onto GF(3)*


def test_rel_trace_bad_subdegree():
    with pytest.raises(ValueError):
        create_field(2, 4).rel_trace(1, 3)


# ----------------------------------------------------------------------
# squares
# ----------------------------------------------------------------------
def test_is_square():
    F9 = create_field(3, 2)
    assert F9.is_square(0)
    assert not F9.is_square(F9.generator)
    squares = {F9.mul(a, a) for a in range(9)}
    assert all(F9.is_square(s) for s in squares)
    assert sum(F9.is_square(a) for a in range(1, 9)) == 4  # two classes of size 4
    F25 = create_field(5, 2)
    assert F25.is_square(F25.pow(F25.generator, 2))
    F16 = create_field(2, 4)
    assert all(F16.is_square(a) for a in range(16))  # char 2: squaring is onto


# ----------------------------------------------------------------------
# towers
# ----------------------------------------------------------------------
def test_tower_prime_subfield_is_canonical():
    F = create_field(3, 4)
    tm = F.subfield(1)
    assert list(tm.table) == [0, 1, 2]


@pytest.mark.parametrize("p,n,m", [(2, 4, 2), (3, 4, 2), (2, 6, 2), (2, 6, 3), (3, 2, 1)])
def test_tower_homomorphism_exhaustive(p, n, m):
    F = create_field(p, n)
    tm = F.subfield(m)
    S = tm.sub
    assert tm.embed(0) == 0 and tm.embed(1) == 1
    for a in range(S.order):
        for b in range(S.order):
            assert tm.embed(S.add(a, b)) == F.add(tm.embed(a), tm.embed(b))
            assert tm.embed(S.mul(a, b)) == F.mul(tm.embed(a), tm.embed(b))
    # image = fixed points of x -> x^(p^m)
    frob = F.frobenius_vector(m)
    fixed = {int(i) for i in range(F.order) if frob[i] == i}
    assert {int(v) for v in tm.table} == fixed
    # injective
    assert len({int(v) for v in tm.table}) == S.order


def test_field_of_order():
    assert field_of_order(81) is create_field(3, 4)
    assert field_of_order(7) is create_field(7, 1)
    with pytest.raises(ValueError):
        field_of_order(12)


def test_vector_ops_match_scalar():
    F = create_field(5, 2)
    rng = np.random.default_rng(7)
    a = rng.integers(0, 25, 40)
    b = rng.integers(0, 25, 40)
    assert all(int(v) == F.add(int(x), int(y)) for v, x, y in zip(F.add_v(a, b), a, b))
    assert all(int(v) == F.mul(int(x), int(y)) for v, x, y in zip(F.mul_v(a, b), a, b))
    assert all(int(v) == F.sub(int(x), int(y)) for v, x, y in zip(F.sub_v(a, b), a, b))
    add_t, mul_t = F.add_table(), F.mul_table()
    assert add_t[3, 4] == F.add(3, 4) and mul_t[7, 9] == F.mul(7, 9)
    assert F.sub_table()[7, 9] == F.sub(7, 9)
