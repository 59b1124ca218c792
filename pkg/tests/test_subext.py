"""Subalgebra pairs: relative twist, conditional expectation, module transport.

Oracle values worked by hand:
  - QC2 in the 4-dim algebra: beta(g) = -g, expectation E(x) = 1, E(gx) = -g,
    bimodule solution space of dimension 2, free rank 2 with basis {1, x}.
  - F7C3 in taft(3,7,2): beta(g) = 2g (order 3), free rank 3.
  - QC2 in QS3 (both unimodular): beta = id.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import embedding_of, subpair_of
from hopfrob.catalog import entry
from hopfrob.errors import InvalidInputError
from hopfrob.linalg import Matrix, basis_vec, canonical_basis, matrix_order
from hopfrob.subext import (
    KModule,
    SubalgebraEmbedding,
    beta_frobenius_structure,
    check_expectation_bimodule,
    check_module,
    coinduced_module,
    extension_identities_hold,
    extension_report,
    free_module_basis,
    identity_embedding,
    induced_module,
    induction_coinduction_check,
    module_act,
    regular_module,
    relative_nakayama,
    right_linear_maps,
    trivial_module,
    twisted_bimodule_maps,
    verify_embedding,
)

PAIRS = ("qc2-sweedler", "f7c3-taft", "qc2-qs3")


def _rand_vec(field, dim, rng):
    if field.characteristic == 0:
        return tuple(field.from_int(rng.randint(-5, 5)) for _ in range(dim))
    return tuple(field.normalize(rng.randrange(field.characteristic)) for _ in range(dim))


# -- embeddings ------------------------------------------------------------------


@pytest.mark.parametrize("key", PAIRS)
def test_catalog_pairs_embed(key):
    rep = verify_embedding(embedding_of(key))
    assert rep.passed, "\n".join(rep.summary_lines())


def test_identity_embedding_passes():
    rep = verify_embedding(identity_embedding(entry("sweedler").hopf))
    assert rep.passed


def test_negated_generator_is_not_an_embedding():
    K = entry("qc2").hopf
    H = entry("sweedler").hopf
    F = H.field
    neg_g = tuple(F.normalize(-c) for c in basis_vec(F, 4, 1))
    bad = SubalgebraEmbedding(K, H, Matrix.from_columns(F, [basis_vec(F, 4, 0), neg_g]))
    rep = verify_embedding(bad)
    assert not rep.passed
    failed = {it.name for it in rep.failures()}
    assert "counit is compatible" in failed
    assert "comultiplication is compatible" in failed
    # the sign cancels in products, so the purely algebraic items still hold
    assert "multiplication is preserved" not in failed
    assert "unit is preserved" not in failed


def test_noninjective_inclusion_rejected():
    K = entry("qc2").hopf
    H = entry("sweedler").hopf
    col = basis_vec(H.field, 4, 0)
    with pytest.raises(InvalidInputError, match="injective"):
        SubalgebraEmbedding(K, H, Matrix.from_columns(H.field, [col, col]))


def test_shape_and_field_mismatch_rejected():
    K = entry("qc2").hopf
    H = entry("sweedler").hopf
    with pytest.raises(InvalidInputError, match="must be"):
        SubalgebraEmbedding(K, H, Matrix.identity(H.field, 4))
    with pytest.raises(InvalidInputError, match="fields differ"):
        SubalgebraEmbedding(entry("f7c3").hopf, H, Matrix.zeros(H.field, 4, 3))


def test_relative_nakayama_requires_an_embedding():
    K = entry("qc2").hopf
    H = entry("sweedler").hopf
    F = H.field
    neg_g = tuple(F.normalize(-c) for c in basis_vec(F, 4, 1))
    bad = SubalgebraEmbedding(K, H, Matrix.from_columns(F, [basis_vec(F, 4, 0), neg_g]))
    with pytest.raises(InvalidInputError, match="not a Hopf subalgebra"):
        relative_nakayama(bad)


# -- relative twist --------------------------------------------------------------


def test_twist_negates_g_on_the_sweedler_pair():
    emb, beta, _ = subpair_of("qc2-sweedler")
    F = emb.K.field
    assert beta == Matrix.from_rows(F, [[1, 0], [0, -1]])


def test_twist_is_identity_when_both_factors_are_unimodular():
    _, beta, _ = subpair_of("qc2-qs3")
    assert beta.is_identity()


def test_twist_on_the_taft_pair_has_order_three():
    emb, beta, _ = subpair_of("f7c3-taft")
    F = emb.K.field
    # beta(g^a) = 2^a g^a: the inverse modular function of the ambient
    # algebra restricted to the group of group-likes
    assert beta == Matrix.from_rows(F, [[1, 0, 0], [0, 2, 0], [0, 0, 4]])
    assert matrix_order(beta, 6) == 3


def test_twist_of_the_trivial_pair_is_identity():
    emb = identity_embedding(entry("sweedler").hopf)
    assert relative_nakayama(emb).is_identity()


# -- conditional expectation -----------------------------------------------------


def test_solution_space_dimensions():
    # QC2 in H4: E(1) = E(g) = 0 forced, E(x) free in K, E(gx) determined
    assert subpair_of("qc2-sweedler")[2].solution_dim == 2
    assert subpair_of("f7c3-taft")[2].solution_dim == 3
    assert subpair_of("qc2-qs3")[2].solution_dim == 4
    emb = identity_embedding(entry("sweedler").hopf)
    data = beta_frobenius_structure(emb, relative_nakayama(emb))
    # endomaps of the algebra as a bimodule over itself = its center
    assert data.solution_dim == 1
    assert data.E.is_identity()


def test_expectation_matrix_on_the_sweedler_pair():
    emb, _, data = subpair_of("qc2-sweedler")
    F = emb.K.field
    assert data.E == Matrix.from_rows(F, [[0, 0, 1, 0], [0, 0, 0, -1]])


def test_expectation_kills_the_group_part_on_the_taft_pair():
    emb, _, data = subpair_of("f7c3-taft")
    # only the top x-degree survives: E(g^a x^2) != 0, lower degrees vanish
    for a in range(3):
        for j in range(2):
            assert data.E.col(3 * a + j) == (0, 0, 0)
        assert data.E.col(3 * a + 2) != (0, 0, 0)


@pytest.mark.parametrize("key", PAIRS)
def test_bimodule_law_holds(key):
    emb, _, data = subpair_of(key)
    ok, detail = check_expectation_bimodule(emb, data)
    assert ok, detail


@pytest.mark.parametrize("key", PAIRS)
def test_dual_bases_reconstruct_both_sides(key):
    emb, _, data = subpair_of(key)
    ok, detail = extension_identities_hold(emb, data)
    assert ok, detail


@pytest.mark.parametrize("key", PAIRS)
def test_reconstruction_on_random_vectors(key):
    emb, _, data = subpair_of(key)
    H, iota = emb.H, emb.iota
    field = H.field
    beta_inv = data.beta.inverse()
    rng = random.Random(20210 + len(key))
    for _ in range(3):
        x = _rand_vec(field, H.dim, rng)
        lhs = tuple(field.zero() for _ in range(H.dim))
        mirror = lhs
        for u, v in zip(data.us, data.vs):
            vx = H.alg.multiply(v, x)
            lhs = tuple(
                field.normalize(a + b)
                for a, b in zip(lhs, H.alg.multiply(u, iota.apply(data.E.apply(vx))))
            )
            xu = H.alg.multiply(x, u)
            mirror = tuple(
                field.normalize(a + b)
                for a, b in zip(
                    mirror,
                    H.alg.multiply(iota.apply(beta_inv.apply(data.E.apply(xu))), v),
                )
            )
        assert lhs == x
        assert mirror == x


def test_degenerate_candidate_is_detectable():
    # over the sweedler pair the candidate E(x) = 1+g, E(gx) = -g-1 pairs to
    # a rank-deficient evaluation map; the selected first candidate does not
    emb, beta, data = subpair_of("qc2-sweedler")
    H = emb.H
    field = H.field
    sols = twisted_bimodule_maps(emb, beta)
    assert len(sols) == 2

    def pairing_rank(E):
        cols = []
        for i in range(H.dim):
            m = E.mul(H.alg.left_mult_matrix(H.alg.basis_vector(i)))
            cols.append(tuple(x for row in m.rows for x in row))
        return Matrix.from_columns(field, cols).rank()

    assert pairing_rank(sols[0].add(sols[1])) < H.dim
    assert pairing_rank(data.E) == H.dim


@pytest.mark.parametrize("key", PAIRS)
def test_right_linear_map_space_has_ambient_dimension(key):
    emb = embedding_of(key)
    assert len(right_linear_maps(emb)) == emb.H.dim


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=9, max_size=9))
def test_expectation_is_left_twisted_linear_on_taft(coords):
    emb, _, data = subpair_of("f7c3-taft")
    K, H, iota = emb.K, emb.H, emb.iota
    field = H.field
    x = tuple(field.normalize(c) for c in coords)
    g = K.alg.basis_vector(1)
    lhs = data.E.apply(H.alg.multiply(iota.apply(g), x))
    rhs = K.alg.multiply(data.beta.col(1), data.E.apply(x))
    assert lhs == rhs


# -- freeness --------------------------------------------------------------------


@pytest.mark.parametrize(
    "key,rank", [("qc2-sweedler", 2), ("f7c3-taft", 3), ("qc2-qs3", 3)]
)
def test_free_module_rank(key, rank):
    emb = embedding_of(key)
    for side in ("right", "left"):
        basis = free_module_basis(emb, side)
        assert len(basis) == rank
        orbit = []
        for h in basis:
            for s in range(emb.K.dim):
                pair = (h, emb.iota.col(s)) if side == "right" else (emb.iota.col(s), h)
                orbit.append(emb.H.alg.multiply(*pair))
        assert Matrix.from_columns(emb.H.field, orbit).rank() == emb.H.dim


def test_free_module_basis_of_trivial_pair():
    emb = identity_embedding(entry("sweedler").hopf)
    assert free_module_basis(emb) == (emb.H.unit,)


def test_free_module_basis_rejects_bad_side():
    with pytest.raises(InvalidInputError, match="side"):
        free_module_basis(embedding_of("qc2-sweedler"), "middle")


# -- modules over the subalgebra -------------------------------------------------


def test_module_validation_rejects_junk():
    K = entry("qc2").hopf
    F = K.field
    eye = Matrix.identity(F, 1)
    with pytest.raises(InvalidInputError, match="action matrices"):
        check_module(K, KModule(F, 1, (eye,)))
    with pytest.raises(InvalidInputError, match="shape"):
        check_module(K, KModule(F, 1, (eye, Matrix.identity(F, 2))))
    with pytest.raises(InvalidInputError, match="unit"):
        check_module(K, KModule(F, 1, (eye.scale(F.from_int(2)), eye)))
    # g would act with square 4 instead of 1
    with pytest.raises(InvalidInputError, match="associativity"):
        check_module(K, KModule(F, 1, (eye, eye.scale(F.from_int(2)))))


def test_regular_module_action_matches_products():
    K = entry("f7c3").hopf
    M = regular_module(K)
    check_module(K, M)
    rng = random.Random(7)
    a = _rand_vec(K.field, K.dim, rng)
    b = _rand_vec(K.field, K.dim, rng)
    assert module_act(M, a, b) == K.alg.multiply(a, b)


def _modules_for(key):
    emb = embedding_of(key)
    K = emb.K
    F = K.field
    mods = [trivial_module(K), regular_module(K)]
    if key == "qc2-sweedler":
        mods.append(KModule(F, 1, (Matrix.identity(F, 1), Matrix(F, ((F.from_int(-1),),)))))
    else:
        mods.append(
            KModule(
                F,
                2,
                (
                    Matrix.identity(F, 2),
                    Matrix.from_rows(F, [[2, 0], [0, 4]]),
                    Matrix.from_rows(F, [[4, 0], [0, 2]]),
                ),
            )
        )
    return mods


@pytest.mark.parametrize("key", ("qc2-sweedler", "f7c3-taft"))
@pytest.mark.parametrize("slot", (0, 1, 2))
def test_induction_equals_coinduction(key, slot):
    emb, _, data = subpair_of(key)
    M = _modules_for(key)[slot]
    rep = induction_coinduction_check(emb, data, M)
    assert rep.passed, "\n".join(rep.summary_lines())


def test_trivial_module_transport_dimensions():
    emb, _, data = subpair_of("qc2-sweedler")
    M = trivial_module(emb.K)
    ind = induced_module(emb, M)
    coi = coinduced_module(emb, data.beta, M)
    assert ind.dim == 2
    assert coi.dim == 2


def test_regular_module_induces_the_ambient_algebra():
    emb, _, data = subpair_of("f7c3-taft")
    K, H, iota = emb.K, emb.H, emb.iota
    field = H.field
    ind = induced_module(emb, regular_module(K))
    assert ind.dim == H.dim
    # k (x) h  |->  iota(k) h  intertwines the induced action with right
    # multiplication and is invertible
    cols = []
    for j in range(ind.dim):
        lift = ind.section.col(j)
        acc = tuple(field.zero() for _ in range(H.dim))
        for pos, c in enumerate(lift):
            if c == field.zero():
                continue
            alpha, i = divmod(pos, H.dim)
            w = H.alg.multiply(iota.col(alpha), H.alg.basis_vector(i))
            acc = tuple(field.normalize(a + c * b) for a, b in zip(acc, w))
        cols.append(acc)
    phi = Matrix.from_columns(field, cols)
    phi.inverse()
    for t in range(H.dim):
        rm = H.alg.right_mult_matrix(H.alg.basis_vector(t))
        assert phi.mul(ind.action[t]) == rm.mul(phi)


def test_transport_check_rejects_non_modules():
    emb, _, data = subpair_of("qc2-sweedler")
    F = emb.K.field
    eye = Matrix.identity(F, 1)
    broken = KModule(F, 1, (eye, eye.scale(F.from_int(3))))
    with pytest.raises(InvalidInputError, match="associativity"):
        induction_coinduction_check(emb, data, broken)


# -- end to end ------------------------------------------------------------------


@pytest.mark.parametrize("key", PAIRS)
def test_extension_report_passes(key):
    rep = extension_report(embedding_of(key))
    assert rep.passed, "\n".join(rep.summary_lines())
    names = [it.name for it in rep.items]
    assert "two computations of the relative twist agree" in names
    assert "ambient algebra is free over the subalgebra" in names
