"""Integrals, norms, Frobenius systems, Nakayama automorphisms, modular
functions, and the S^4 conjugation identity.

Conventions, fixed package-wide:
  * psi is the canonical echelon generator of the left integrals in H*,
    left unnormalized; every derived quantity except the norm is invariant
    under rescaling psi (tested).
  * Gram matrix G[i][k] = psi(e_i e_k); the left norm solves G N = counit.
  * modular_fn is the character m with N a = m(a) N; modular_elt is the
    group-like b with psi * f = f(b) psi in the convolution algebra.
  * the translate of a functional by an element d is (psi d)(x) = psi(d x).
  * convolution inverses of characters are taken as composition with S,
    never solved for.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import is_augmentation
from .errors import InternalCheckError, InvalidInputError, SingularError
from .hopfcore import (
    HopfAlgebra,
    act_left,
    act_right,
    convolution,
    dual_hopf,
    dual_left_integral_space,
    eval_cov,
    is_grouplike,
    left_integral_space,
    pairing_matrix,
)
from .linalg import Matrix, basis_vec, is_zero_vec, iterated_kernel_sparse, matrix_order
from .report import Report


@dataclass(frozen=True)
class IntegralData:
    """psi: generator of the left integrals in H*; norm: its left norm N;
    modular_fn: the character m with N a = m(a) N; modular_elt: the
    group-like b with psi * f = f(b) psi."""

    psi: tuple
    norm: tuple
    modular_fn: tuple
    modular_elt: tuple


@dataclass(frozen=True)
class FrobeniusSystem:
    """Frobenius homomorphism psi with dual bases xs, ys and Nakayama
    automorphism: sum_i psi(a x_i) y_i = a = sum_i x_i psi(y_i a) and
    psi(x a) = psi(nu(a) x).  chi and gamma are the invertible-module
    scalars of the general theory, frozen to 1 over a field."""

    psi: tuple
    xs: tuple
    ys: tuple
    nakayama: Matrix
    chi: object
    gamma: object


@dataclass(frozen=True)
class ComparisonResult:
    derivative: tuple
    derivative_inv: tuple
    report: Report


@dataclass(frozen=True)
class OrderData:
    antipode_order: Optional[int]
    nakayama_order: Optional[int]
    antipode_sq_order: Optional[int]
    antipode_divides: bool
    nakayama_divides: bool


# -- integrals and the norm ------------------------------------------------------


def dual_integrals(H: HopfAlgebra) -> tuple:
    """Canonical bases of the left and the right integrals in H*."""
    left = dual_left_integral_space(H)

    buckets: dict = {i: [] for i in range(H.dim)}
    for k in range(H.dim):
        for u, v, c in H.comul.get(k, ()):
            buckets[v].append((k, u, c))

    def constraints():
        for i in range(H.dim):
            sp: dict = {}
            for k, u, c in buckets[i]:
                sp[(k, u)] = sp.get((k, u), H.field.zero()) + c
            u_i = H.unit[i]
            for d in range(H.dim):
                sp[(d, d)] = sp.get((d, d), H.field.zero()) - u_i
            yield sp

    right = iterated_kernel_sparse(H.field, H.dim, constraints())
    if len(left) != 1 or len(right) != 1:
        raise InvalidInputError(
            f"integral spaces not rank one (left {len(left)}, right {len(right)})"
        )
    return left, right


def _proportionality(field, w: Sequence, v: Sequence):
    """Scalar c with w = c v, or None.  v must be nonzero."""
    pivot = next((t for t, x in enumerate(v) if x != field.zero()), None)
    if pivot is None:
        return None
    c = field.normalize(w[pivot] * field.inv(v[pivot]))
    if tuple(field.normalize(c * x) for x in v) != tuple(field.normalize(x) for x in w):
        return None
    return c


def build_integral_data(H: HopfAlgebra, psi: Optional[Sequence] = None) -> IntegralData:
    """psi (canonical unless supplied), its left norm, and both modular
    functions, with every defining identity re-checked before returning."""
    field = H.field
    if psi is None:
        (psi,) = dual_left_integral_space(H)
    else:
        psi = tuple(field.normalize(c) for c in psi)
        for j in range(H.dim):
            lam = convolution(H, basis_vec(field, H.dim, j), psi)
            want = tuple(field.normalize(H.unit[j] * c) for c in psi)
            if lam != want:
                raise InvalidInputError("supplied functional is not a left integral")
        if is_zero_vec(field, psi):
            raise InvalidInputError("supplied functional is zero")

    gram = pairing_matrix(H, psi)
    norm = gram.solve(H.counit)
    if norm is None or gram.rank() < H.dim:
        raise InvalidInputError("Gram matrix singular: algebra is not Frobenius")

    # m from N a = m(a) N
    m = []
    for j in range(H.dim):
        w = H.alg.multiply(norm, H.alg.basis_vector(j))
        c = _proportionality(field, w, norm)
        if c is None:
            raise InternalCheckError(f"N e_{j} is not proportional to N")
        m.append(c)
    m = tuple(m)

    # b from psi * f = f(b) psi
    b = []
    for i in range(H.dim):
        w = convolution(H, psi, basis_vec(field, H.dim, i))
        c = _proportionality(field, w, psi)
        if c is None:
            raise InternalCheckError(f"psi * e^{i} is not proportional to psi")
        b.append(c)
    b = tuple(b)

    result = IntegralData(psi, norm, m, b)
    _check_integral_data(H, result)
    return result


def _check_integral_data(H: HopfAlgebra, data: IntegralData) -> None:
    field = H.field
    psi, norm, m, b = data.psi, data.norm, data.modular_fn, data.modular_elt
    for i in range(H.dim):
        e = H.alg.basis_vector(i)
        # psi(e_i N) = eps(e_i)
        if eval_cov(field, psi, H.alg.multiply(e, norm)) != H.counit[i]:
            raise InternalCheckError("norm identity psi(a N) = eps(a) fails")
        # e_i N = eps(e_i) N
        want = tuple(field.normalize(H.counit[i] * c) for c in norm)
        if H.alg.multiply(e, norm) != want:
            raise InternalCheckError("norm is not a left integral")
        # N e_i = m(e_i) N
        want = tuple(field.normalize(m[i] * c) for c in norm)
        if H.alg.multiply(norm, e) != want:
            raise InternalCheckError("modular function identity fails")
    if not is_augmentation(H.alg, m):
        raise InternalCheckError("modular function is not a character")
    if not is_grouplike(H, b):
        raise InternalCheckError("dual modular element is not group-like")


# -- Frobenius system --------------------------------------------------------------


def dual_basis_identities_hold(alg, psi, xs, ys):
    """Both defining identities, checked on every basis vector; returns
    (ok, first failing detail)."""
    field = alg.field
    for t in range(alg.dim):
        a = alg.basis_vector(t)
        acc1 = [field.zero()] * alg.dim
        acc2 = [field.zero()] * alg.dim
        for x, y in zip(xs, ys):
            c1 = eval_cov(field, psi, alg.multiply(a, x))
            if c1 != field.zero():
                acc1 = [p + c1 * q for p, q in zip(acc1, y)]
            c2 = eval_cov(field, psi, alg.multiply(y, a))
            if c2 != field.zero():
                acc2 = [p + c2 * q for p, q in zip(acc2, x)]
        if tuple(field.normalize(v) for v in acc1) != a:
            return False, f"sum psi(a x_i) y_i != a at basis {t}"
        if tuple(field.normalize(v) for v in acc2) != a:
            return False, f"sum x_i psi(y_i a) != a at basis {t}"
    return True, ""


def frobenius_system_from_norm(H: HopfAlgebra, data: IntegralData) -> FrobeniusSystem:
    """Dual bases read off the coproduct of the norm, Nakayama solved from
    the Gram matrix; all identities verified before returning."""
    field = H.field
    sbar = H.antipode_inv()
    xs, ys = [], []
    for (j, k), c in sorted(H.delta_vec(data.norm).items()):
        xs.append(tuple(field.normalize(c * v) for v in basis_vec(field, H.dim, k)))
        ys.append(sbar.col(j))
    ok, detail = dual_basis_identities_hold(H.alg, data.psi, xs, ys)
    if not ok:
        raise InternalCheckError(f"dual basis identities fail: {detail}")

    gram = pairing_matrix(H, data.psi)
    nu = gram.transpose().solve_matrix(gram)
    if nu is None:
        raise InvalidInputError("Gram matrix singular: algebra is not Frobenius")
    _check_automorphism(H, nu)
    one = field.one()
    return FrobeniusSystem(data.psi, tuple(xs), tuple(ys), nu, one, one)


def _check_automorphism(H: HopfAlgebra, nu: Matrix) -> None:
    field = H.field
    try:
        nu.inverse()
    except SingularError as exc:
        raise InternalCheckError("Nakayama matrix is singular") from exc
    if nu.apply(H.unit) != H.unit:
        raise InternalCheckError("Nakayama does not fix the identity")
    for i in range(H.dim):
        vi = nu.col(i)
        for j in range(H.dim):
            prod = H.alg.multiply(vi, nu.col(j))
            want = nu.apply(
                tuple(
                    field.normalize(c)
                    for c in _row_as_vec(field, H.dim, H.alg.mul.get((i, j), ()))
                )
            )
            if prod != want:
                raise InternalCheckError(
                    f"Nakayama is not multiplicative at pair {(i, j)}"
                )


def _row_as_vec(field, dim, row):
    v = [field.zero()] * dim
    for k, c in row:
        v[k] = c
    return tuple(v)


def nakayama_closed_form(H: HopfAlgebra, data: IntegralData) -> Matrix:
    """Matrix of a -> Sbar^2(m ⇀ a); the two factor orders must agree."""
    field = H.field
    sbar2 = H.antipode_inv().pow_(2)
    cols_a = []
    cols_b = []
    for j in range(H.dim):
        e = H.alg.basis_vector(j)
        cols_a.append(sbar2.apply(act_left(H, data.modular_fn, e)))
        cols_b.append(act_left(H, data.modular_fn, sbar2.apply(e)))
    A = Matrix.from_columns(field, cols_a)
    B = Matrix.from_columns(field, cols_b)
    if A != B:
        raise InternalCheckError(
            "the two factorizations of the Nakayama closed form disagree"
        )
    return A


# -- system comparison and transformation -------------------------------------------


def translate_system(H: HopfAlgebra, sys: FrobeniusSystem, d: Sequence) -> FrobeniusSystem:
    """The system for the translated functional (psi d)(x) = psi(d x):
    same xs, ys replaced by d^{-1} y_i, Nakayama conjugated by d."""
    field = H.field
    L = H.alg.left_mult_matrix(d)
    try:
        Linv = L.inverse()
    except SingularError as exc:
        raise InvalidInputError("translation element is not invertible") from exc
    d_inv = Linv.apply(H.unit)
    psi2 = tuple(
        eval_cov(field, sys.psi, H.alg.multiply(d, H.alg.basis_vector(t)))
        for t in range(H.dim)
    )
    ys2 = tuple(H.alg.multiply(d_inv, y) for y in sys.ys)
    R = H.alg.right_mult_matrix(d)
    nu2 = R.mul(Linv).mul(sys.nakayama)
    ok, detail = dual_basis_identities_hold(H.alg, psi2, sys.xs, ys2)
    if not ok:
        raise InternalCheckError(f"translated system invalid: {detail}")
    return FrobeniusSystem(psi2, sys.xs, ys2, nu2, sys.chi, sys.gamma)


def compare_systems(
    H: HopfAlgebra, sys: FrobeniusSystem, sys2: FrobeniusSystem
) -> ComparisonResult:
    """Recover the invertible derivative d with psi' = psi d, and verify the
    dual bases and Nakayama transforms it induces."""
    field = H.field
    gram = pairing_matrix(H, sys.psi)
    d = gram.transpose().solve(sys2.psi)
    if d is None:
        raise InvalidInputError("systems not comparable: no derivative solves psi' = psi d")
    L = H.alg.left_mult_matrix(d)
    try:
        Linv = L.inverse()
    except SingularError as exc:
        raise InvalidInputError("systems not comparable: derivative not invertible") from exc
    d_inv = Linv.apply(H.unit)

    rep = Report("system comparison")
    psi_d = tuple(
        eval_cov(field, sys.psi, H.alg.multiply(d, H.alg.basis_vector(t)))
        for t in range(H.dim)
    )
    rep.add("functional translates by the derivative", psi_d == sys2.psi)

    z = field.zero()
    t_new: dict = {}
    for x, y in zip(sys2.xs, sys2.ys):
        for a, ca in enumerate(x):
            if ca == z:
                continue
            for bb, cb in enumerate(y):
                if cb == z:
                    continue
                t_new[(a, bb)] = t_new.get((a, bb), z) + ca * cb
    t_old: dict = {}
    for x, y in zip(sys.xs, sys.ys):
        dy = H.alg.multiply(d_inv, y)
        for a, ca in enumerate(x):
            if ca == z:
                continue
            for bb, cb in enumerate(dy):
                if cb == z:
                    continue
                t_old[(a, bb)] = t_old.get((a, bb), z) + ca * cb
    clean = lambda t: {
        k: c for k, c in ((k, field.normalize(v)) for k, v in t.items()) if c != z
    }
    rep.add("dual basis tensors match", clean(t_new) == clean(t_old))

    R = H.alg.right_mult_matrix(d)
    rep.add(
        "Nakayama conjugates by the derivative",
        sys2.nakayama == R.mul(Linv).mul(sys.nakayama),
    )
    return ComparisonResult(d, d_inv, rep)


def transform_by_antipode(H: HopfAlgebra, sys: FrobeniusSystem) -> FrobeniusSystem:
    """The system (psi o Sbar, {S(y_i)}, {S(x_i)}, S o nu^{-1} o Sbar)."""
    field = H.field
    sbar = H.antipode_inv()
    psi2 = sbar.transpose().apply(sys.psi)
    xs2 = tuple(H.antipode.apply(y) for y in sys.ys)
    ys2 = tuple(H.antipode.apply(x) for x in sys.xs)
    nu2 = H.antipode.mul(sys.nakayama.inverse()).mul(sbar)
    ok, detail = dual_basis_identities_hold(H.alg, psi2, xs2, ys2)
    if not ok:
        raise InternalCheckError(f"antipode transform invalid: {detail}")
    # the transformed functional behaves like a right integral:
    # sum psi2(x_(1)) x_(2) = psi2(x) 1
    for i in range(H.dim):
        acc = [field.zero()] * H.dim
        for j, k, c in H.comul.get(i, ()):
            acc[k] = acc[k] + c * psi2[j]
        want = tuple(field.normalize(psi2[i] * u) for u in H.unit)
        if tuple(field.normalize(v) for v in acc) != want:
            raise InternalCheckError(
                "transformed functional fails the right-integral equation"
            )
    return FrobeniusSystem(psi2, xs2, ys2, nu2, sys.chi, sys.gamma)


# -- named verification bundles -------------------------------------------------------


def antipode_shift_check(H: HopfAlgebra, data: IntegralData) -> Report:
    """psi o Sbar equals the translate psi b, and psi(Sbar(N)) = 1."""
    field = H.field
    rep = Report("antipode shift of the integral")
    sbar = H.antipode_inv()
    lhs = sbar.transpose().apply(data.psi)
    rhs = tuple(
        eval_cov(field, data.psi, H.alg.multiply(data.modular_elt, H.alg.basis_vector(t)))
        for t in range(H.dim)
    )
    rep.add("functional composed with inverse antipode equals its b-translate", lhs == rhs)
    rep.add(
        "normalization psi(Sbar(N)) = 1",
        eval_cov(field, data.psi, sbar.apply(data.norm)) == field.one(),
    )
    return rep


def modular_inverse(H: HopfAlgebra, m: Sequence) -> tuple:
    """Convolution inverse of a character: composition with the antipode."""
    return H.antipode.transpose().apply(m)


def verify_radford(H: HopfAlgebra, data: IntegralData) -> Report:
    """S^4(a) = b^{-1} (m ⇀ a ↼ m^{-1}) b on every basis vector."""
    field = H.field
    rep = Report("fourth antipode power as modular conjugation")
    s4 = H.antipode.pow_(4)
    m = data.modular_fn
    m_inv = modular_inverse(H, m)
    b = data.modular_elt
    Lb = H.alg.left_mult_matrix(b)
    try:
        b_inv = Lb.inverse().apply(H.unit)
    except SingularError:
        rep.add("b invertible", False)
        return rep
    for i in range(H.dim):
        a = H.alg.basis_vector(i)
        mid = act_right(H, act_left(H, m, a), m_inv)
        rhs = H.alg.multiply(b_inv, H.alg.multiply(mid, b))
        rep.add(
            f"basis {H.basis_names[i]}",
            s4.col(i) == rhs,
            "" if s4.col(i) == rhs else "S^4 disagrees with the conjugated action",
        )
    return rep


def orders(H: HopfAlgebra, data: IntegralData) -> OrderData:
    nu = frobenius_system_from_norm(H, data).nakayama
    cap_s = 4 * H.dim
    cap_nu = 2 * H.dim
    ord_s = matrix_order(H.antipode, cap_s)
    ord_nu = matrix_order(nu, cap_nu)
    ord_s2 = matrix_order(H.antipode.pow_(2), cap_s)
    return OrderData(
        ord_s,
        ord_nu,
        ord_s2,
        ord_s is not None and cap_s % ord_s == 0,
        ord_nu is not None and cap_nu % ord_nu == 0,
    )


def dual_frobenius_check(H: HopfAlgebra, data: IntegralData) -> Report:
    """The dual-side consequences of the integral data:
      (a) evaluation at N is a Frobenius homomorphism for H* with dual bases
          read off the coproduct of psi;
      (b) psi ⇀ N = 1;
      (c) the antipode of H* computed from (psi, N) equals transpose(S);
      (d) every left integral T in H satisfies T = psi(T) N;
      (e) the left integrals of H are spanned by N;
      (f) the modular function of H* equals the modular element b of H.
    """
    field = H.field
    rep = Report("dual Frobenius structure")
    K = dual_hopf(H)

    n_cov = data.norm  # evaluation at N, as a covector on H*
    sbar_k = K.antipode_inv()
    xs, ys = [], []
    for (j, k), c in sorted(K.delta_vec(data.psi).items()):
        xs.append(
            tuple(field.normalize(c * v) for v in basis_vec(field, K.dim, k))
        )
        ys.append(sbar_k.col(j))
    ok, detail = dual_basis_identities_hold(K.alg, n_cov, xs, ys)
    rep.add("norm evaluation is Frobenius for the dual", ok, detail)

    one_vec = act_left(H, data.psi, data.norm)
    rep.add("psi ⇀ N = 1", one_vec == H.unit)

    cols = []
    dpsi = sorted(K.delta_vec(data.psi).items())
    for a in range(H.dim):
        f = basis_vec(field, H.dim, a)
        out = [field.zero()] * H.dim
        for (j, k), c in dpsi:
            val = eval_cov(
                field, convolution(H, f, basis_vec(field, H.dim, k)), data.norm
            )
            if val != field.zero():
                out[j] = out[j] + c * val
        cols.append(tuple(field.normalize(v) for v in out))
    dual_s = Matrix.from_columns(field, cols)
    rep.add(
        "dual antipode from the integral pair equals transpose(S)",
        dual_s == H.antipode.transpose(),
    )

    ints = left_integral_space(H)
    ok_d = True
    for T in ints:
        want = tuple(
            field.normalize(eval_cov(field, data.psi, T) * c) for c in data.norm
        )
        if tuple(T) != want:
            ok_d = False
    rep.add("left integrals reproduce as psi(T) N", ok_d)

    span_ok = len(ints) == 1 and _proportionality(field, data.norm, ints[0]) not in (
        None,
        field.zero(),
    )
    rep.add("left integral space is spanned by N", span_ok)

    dual_data = build_integral_data(K)
    rep.add(
        "modular function of the dual equals b",
        dual_data.modular_fn == data.modular_elt,
    )
    return rep
