"""Integral data, Frobenius systems, Nakayama automorphisms, and the S^4
identity, checked against hand-computed and brute-force oracles."""

import dataclasses
import random
import zlib
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfrob.algebra import StructureAlgebra
from hopfrob.catalog import entry, names
from hopfrob.errors import InvalidInputError
from hopfrob.frobenius import (
    ComparisonResult,
    IntegralData,
    antipode_shift_check,
    build_integral_data,
    compare_systems,
    dual_frobenius_check,
    dual_integrals,
    frobenius_system_from_norm,
    modular_inverse,
    nakayama_closed_form,
    orders,
    transform_by_antipode,
    translate_system,
    verify_radford,
)
from hopfrob.hopfcore import (
    HopfAlgebra,
    act_right,
    convolution,
    dual_left_integral_space,
    eval_cov,
    left_integral_space,
    right_integral_space,
)
from hopfrob.linalg import Matrix, basis_vec
from hopfrob.scalars import GF, QQ

ALL_KEYS = names()


def _rand_scalar(field, rng):
    if field is QQ:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return field.normalize(rng.randrange(field.characteristic))


def _rand_nonzero(field, rng):
    while True:
        c = _rand_scalar(field, rng)
        if c != field.zero():
            return c


# -- hand oracle: the four-dimensional self-dual example ---------------------------

# basis (1, g, x, gx); all values below verified by hand from the relations
# g^2 = 1, x^2 = 0, xg = -gx, D(x) = x@1 + g@x.


def test_sweedler_integral_hand_values():
    H = entry("sweedler").hopf
    data = build_integral_data(H)
    zero, one = Fraction(0), Fraction(1)
    assert data.psi == (zero, zero, zero, one)  # delta at gx
    assert data.norm == (zero, zero, one, one)  # x + gx
    assert data.modular_fn == (one, -one, zero, zero)  # m(g) = -1
    assert data.modular_elt == (zero, one, zero, zero)  # b = g


def test_sweedler_dual_right_integral_differs_from_left():
    H = entry("sweedler").hopf
    left, right = dual_integrals(H)
    assert len(left) == 1 and len(right) == 1
    assert left[0] == (0, 0, 0, Fraction(1))
    assert right[0] == (0, 0, Fraction(1), 0)  # delta at x
    assert left[0] != right[0]


def test_sweedler_dual_bases_explicit():
    H = entry("sweedler").hopf
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    e = [H.alg.basis_vector(i) for i in range(4)]
    neg_x = tuple(-c for c in e[2])
    # coproduct pairs of N = x + gx, sorted by index: (1,gx), (g,x), (x,1), (gx,g)
    assert sys.xs == (e[3], e[2], e[0], e[1])
    assert sys.ys == (e[0], e[1], e[3], neg_x)  # Sbar of 1, g, x, gx


def test_sweedler_nakayama_matrix():
    H = entry("sweedler").hopf
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    one = Fraction(1)
    want = Matrix.from_columns(
        QQ,
        [
            (one, 0, 0, 0),
            (0, -one, 0, 0),  # nu(g) = -g
            (0, 0, -one, 0),  # nu(x) = -x
            (0, 0, 0, one),  # nu(gx) = gx
        ],
    )
    assert sys.nakayama == want


def test_sweedler_transformed_functional_is_right_integral():
    H = entry("sweedler").hopf
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    t = transform_by_antipode(H, sys)
    _, right = dual_integrals(H)
    assert t.psi == right[0]  # psi o Sbar = delta at x


# -- brute-force oracle: modular pair on the q-deformed families -------------------


def _taft_characters(field, n, dim):
    """All characters of the q-deformed algebra: omega^n = 1 on the
    group-like generator, zero on the nilpotent part."""
    chars = []
    p = field.characteristic
    for w in range(1, p):
        if pow(w, n, p) != 1:
            continue
        chi = [field.zero()] * dim
        for i in range(n):
            chi[i * n] = field.normalize(pow(w, i, p))
        chars.append((w, tuple(chi)))
    return chars


@pytest.mark.parametrize("key,n,q", [("taft-3-7-2", 3, 2), ("taft-4-5-2", 4, 2)])
def test_taft_modular_pair_by_exhaustion(key, n, q):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)

    (T,) = left_integral_space(H)
    matches = []
    for w, chi in _taft_characters(field, n, H.dim):
        if all(
            H.alg.multiply(T, H.alg.basis_vector(j))
            == tuple(field.normalize(chi[j] * c) for c in T)
            for j in range(H.dim)
        ):
            matches.append((w, chi))
    assert len(matches) == 1
    w, chi = matches[0]
    assert data.modular_fn == chi
    assert field.normalize(w * q) == field.one()  # m(g) is the inverse deformation

    (psi,) = dual_left_integral_space(H)
    grouplike_hits = []
    for t in range(n):
        b = H.alg.basis_vector(t * n)
        if all(
            convolution(H, psi, basis_vec(field, H.dim, i))
            == tuple(field.normalize(b[i] * c) for c in psi)
            for i in range(H.dim)
        ):
            grouplike_hits.append(t)
    assert grouplike_hits == [1]  # b = g, found by exhaustion
    assert data.modular_elt == H.alg.basis_vector(n)


# -- group algebras are unimodular with trivial modular pair ------------------------


@pytest.mark.parametrize("key", ["qc2", "qc3", "f5c5", "qs3"])
def test_group_algebra_modular_pair_trivial(key):
    H = entry(key).hopf
    data = build_integral_data(H)
    assert data.modular_fn == H.counit
    assert data.modular_elt == H.unit
    left, right = dual_integrals(H)
    assert left[0] == right[0]


# -- defining identities, re-derived in the test ------------------------------------


@pytest.mark.parametrize("key", ALL_KEYS)
def test_integral_identities_recomputed(key):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)
    rng = random.Random(101)
    # f * psi = f(1) psi for random functionals f
    for _ in range(3):
        f = tuple(_rand_scalar(field, rng) for _ in range(H.dim))
        lhs = convolution(H, f, data.psi)
        scale = eval_cov(field, f, H.unit)
        assert lhs == tuple(field.normalize(scale * c) for c in data.psi)
    # psi(a N) = eps(a) and a N = eps(a) N on the basis
    for i in range(H.dim):
        a = H.alg.basis_vector(i)
        prod = H.alg.multiply(a, data.norm)
        assert eval_cov(field, data.psi, prod) == H.counit[i]
        assert prod == tuple(field.normalize(H.counit[i] * c) for c in data.norm)


@pytest.mark.parametrize("key", ALL_KEYS)
def test_dual_basis_identities_recomputed(key):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    rng = random.Random(202)
    for _ in range(4):
        a = tuple(_rand_scalar(field, rng) for _ in range(H.dim))
        acc1 = (field.zero(),) * H.dim
        acc2 = (field.zero(),) * H.dim
        for x, y in zip(sys.xs, sys.ys):
            c1 = eval_cov(field, sys.psi, H.alg.multiply(a, x))
            acc1 = tuple(p + c1 * q for p, q in zip(acc1, y))
            c2 = eval_cov(field, sys.psi, H.alg.multiply(y, a))
            acc2 = tuple(p + c2 * q for p, q in zip(acc2, x))
        assert tuple(field.normalize(v) for v in acc1) == tuple(a)
        assert tuple(field.normalize(v) for v in acc2) == tuple(a)


@pytest.mark.parametrize("key", ALL_KEYS)
def test_system_scalars_frozen_to_one(key):
    H = entry(key).hopf
    sys = frobenius_system_from_norm(H, build_integral_data(H))
    assert sys.chi == H.field.one()
    assert sys.gamma == H.field.one()
    assert len(sys.xs) == len(sys.ys)


# -- Nakayama automorphism -----------------------------------------------------------


@pytest.mark.parametrize("key", ALL_KEYS)
def test_nakayama_closed_form_matches_solved(key):
    H = entry(key).hopf
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    assert nakayama_closed_form(H, data) == sys.nakayama


@pytest.mark.parametrize("key", ALL_KEYS)
def test_nakayama_sends_left_integrals_to_right_integrals(key):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    w = sys.nakayama.apply(data.norm)
    assert any(c != field.zero() for c in w)
    for j in range(H.dim):
        prod = H.alg.multiply(w, H.alg.basis_vector(j))
        assert prod == tuple(field.normalize(H.counit[j] * c) for c in w)
    (r,) = right_integral_space(H)
    pivot = next(t for t, c in enumerate(r) if c != field.zero())
    scale = field.normalize(w[pivot] * field.inv(r[pivot]))
    assert scale != field.zero()
    assert w == tuple(field.normalize(scale * c) for c in r)
    # scalar action on the left integrals themselves iff unimodular
    unimodular = data.modular_fn == H.counit
    assert (left_integral_space(H) == right_integral_space(H)) == unimodular
    if unimodular:
        pivot = next(t for t, c in enumerate(data.norm) if c != field.zero())
        c = field.normalize(w[pivot] * field.inv(data.norm[pivot]))
        assert c != field.zero()
        assert w == tuple(field.normalize(c * v) for v in data.norm)


@pytest.mark.parametrize("key", ALL_KEYS)
def test_orders_divide_dimension_bounds(key):
    H = entry(key).hopf
    data = build_integral_data(H)
    o = orders(H, data)
    assert o.antipode_order is not None and o.antipode_divides
    assert o.nakayama_order is not None and o.nakayama_divides
    assert o.antipode_sq_order is not None
    assert (4 * H.dim) % o.antipode_order == 0
    assert (2 * H.dim) % o.nakayama_order == 0


@settings(max_examples=25, deadline=None)
@given(
    a=st.tuples(*[st.integers(0, 6)] * 9),
    x=st.tuples(*[st.integers(0, 6)] * 9),
)
def test_nakayama_swaps_functional_arguments(a, x):
    H = entry("taft-3-7-2").hopf
    field = H.field
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    av = tuple(field.normalize(c) for c in a)
    xv = tuple(field.normalize(c) for c in x)
    lhs = eval_cov(field, sys.psi, H.alg.multiply(xv, av))
    rhs = eval_cov(field, sys.psi, H.alg.multiply(sys.nakayama.apply(av), xv))
    assert lhs == rhs


# -- rescaling the functional --------------------------------------------------------


@pytest.mark.parametrize("key", ALL_KEYS)
def test_rescaled_functional_same_modular_data(key):
    H = entry(key).hopf
    field = H.field
    base = build_integral_data(H)
    rng = random.Random(zlib.crc32(key.encode()))
    for _ in range(3):
        c = _rand_nonzero(field, rng)
        scaled = build_integral_data(
            H, tuple(field.normalize(c * v) for v in base.psi)
        )
        cinv = field.inv(c)
        assert scaled.norm == tuple(field.normalize(cinv * v) for v in base.norm)
        assert scaled.modular_fn == base.modular_fn
        assert scaled.modular_elt == base.modular_elt
        sys = frobenius_system_from_norm(H, scaled)
        assert sys.nakayama == frobenius_system_from_norm(H, base).nakayama


def test_non_integral_functional_rejected():
    H = entry("sweedler").hopf
    with pytest.raises(InvalidInputError):
        build_integral_data(H, H.counit)
    with pytest.raises(InvalidInputError):
        build_integral_data(H, (Fraction(0),) * 4)


def test_degenerate_pairing_rejected():
    # x^2 = 0 with x formally group-like: the evaluation pairing against the
    # unique integral functional is degenerate, so no norm exists
    alg = StructureAlgebra.from_sparse(
        QQ, 2, {(0, 0): ((0, Fraction(1)),), (0, 1): ((1, Fraction(1),),),
                (1, 0): ((1, Fraction(1)),)},
        (Fraction(1), Fraction(0)), ("1", "x"))
    comul = {0: ((0, 0, Fraction(1)),), 1: ((1, 1, Fraction(1)),)}
    fake = HopfAlgebra(alg, comul, (Fraction(1), Fraction(1)), Matrix.identity(QQ, 2))
    with pytest.raises(InvalidInputError, match="not Frobenius"):
        build_integral_data(fake, (Fraction(1), Fraction(0)))


# -- comparison and the antipode transform -------------------------------------------


@pytest.mark.parametrize("key", ALL_KEYS)
def test_translate_then_compare_recovers_element(key):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    rng = random.Random(zlib.crc32(key.encode()) ^ 1)
    found = 0
    while found < 2:
        d = tuple(_rand_scalar(field, rng) for _ in range(H.dim))
        try:
            moved = translate_system(H, sys, d)
        except InvalidInputError:
            continue
        found += 1
        cmp = compare_systems(H, sys, moved)
        assert cmp.report.passed
        assert cmp.derivative == tuple(field.normalize(c) for c in d)
        assert H.alg.multiply(cmp.derivative, cmp.derivative_inv) == H.unit


@pytest.mark.parametrize("key", ALL_KEYS)
def test_antipode_transform_derivative_is_modular_element(key):
    H = entry(key).hopf
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    moved = transform_by_antipode(H, sys)
    cmp = compare_systems(H, sys, moved)
    assert isinstance(cmp, ComparisonResult)
    assert cmp.report.passed
    assert cmp.derivative == data.modular_elt


@pytest.mark.parametrize("key", ALL_KEYS)
def test_antipode_transform_nakayama_closed_form(key):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    moved = transform_by_antipode(H, sys)
    s2 = H.antipode.pow_(2)
    cols = [
        act_right(H, s2.col(j), data.modular_fn) for j in range(H.dim)
    ]
    assert moved.nakayama == Matrix.from_columns(field, cols)


@pytest.mark.parametrize("key", ALL_KEYS)
def test_antipode_shift_check_passes(key):
    H = entry(key).hopf
    rep = antipode_shift_check(H, build_integral_data(H))
    assert rep.passed, str(rep)


def test_incomparable_systems_rejected():
    H = entry("qc2").hopf
    data = build_integral_data(H)
    sys = frobenius_system_from_norm(H, data)
    broken = dataclasses.replace(sys, psi=(Fraction(0), Fraction(0)))
    with pytest.raises(InvalidInputError, match="not comparable"):
        compare_systems(H, sys, broken)


# -- the modular pair and the fourth antipode power ----------------------------------


@pytest.mark.parametrize("key", ALL_KEYS)
def test_modular_function_convolution_inverse(key):
    H = entry(key).hopf
    field = H.field
    data = build_integral_data(H)
    m = data.modular_fn
    m_inv = modular_inverse(H, m)
    assert convolution(H, m, m_inv) == H.counit
    assert convolution(H, m_inv, m) == H.counit
    # composing with the square of the antipode fixes the character
    assert H.antipode.pow_(2).transpose().apply(m) == m


@pytest.mark.parametrize("key", ALL_KEYS)
def test_modular_element_fixed_by_antipode_square(key):
    H = entry(key).hopf
    data = build_integral_data(H)
    b = data.modular_elt
    assert H.antipode.pow_(2).apply(b) == b
    assert H.alg.multiply(b, H.antipode.apply(b)) == H.unit


@pytest.mark.parametrize("key", ALL_KEYS)
def test_radford_identity(key):
    H = entry(key).hopf
    rep = verify_radford(H, build_integral_data(H))
    assert rep.passed, str(rep)
    assert len(rep.items) == H.dim


@pytest.mark.parametrize("key", ALL_KEYS)
def test_dual_frobenius_structure(key):
    H = entry(key).hopf
    rep = dual_frobenius_check(H, build_integral_data(H))
    assert rep.passed, str(rep)
    titles = [it.name for it in rep.items]
    assert "modular function of the dual equals b" in titles
