"""Drinfeld double D(H): the dual with opposite coproduct tensored with H,
multiplication by the straightening rule, assembled entirely from structure
constants.

Basis order: pair (a, i) with a indexing the dual factor and i indexing H,
flattened row-major as a*dim(H) + i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import StructureAlgebra
from .errors import InternalCheckError
from .hopfcore import (
    HopfAlgebra,
    convolution,
    dual_left_integral_space,
    left_integral_space,
)
from .linalg import Matrix, basis_vec
from .report import Report


@dataclass(frozen=True)
class DoubleReport:
    double: HopfAlgebra
    report: Report
    dual_integral_dim: int
    integral_dim: int
    unimodular: bool


def _delta2(H: HopfAlgebra, i: int):
    """Triples (r, s, t, c) of the twice-iterated coproduct of e_i."""
    field = H.field
    out: dict = {}
    for r, m, c1 in H.comul.get(i, ()):
        for s, t, c2 in H.comul.get(m, ()):
            key = (r, s, t)
            out[key] = out.get(key, field.zero()) + c1 * c2
    return [
        (r, s, t, c)
        for (r, s, t), c in out.items()
        if field.normalize(c) != field.zero()
    ]


def _sandwich_table(H: HopfAlgebra):
    """pe2[(u, w)][b] = [(v, c), ...] with c the e_b-coefficient of
    e_u e_v e_w."""
    field = H.field
    zero = field.zero()
    table: dict = {}
    for u in range(H.dim):
        for v in range(H.dim):
            uv = H.alg.mul.get((u, v), ())
            for w in range(H.dim):
                acc: dict = {}
                for k, c in uv:
                    for b, c2 in H.alg.mul.get((k, w), ()):
                        acc[b] = acc.get(b, zero) + c * c2
                for b, c in acc.items():
                    c = field.normalize(c)
                    if c != zero:
                        table.setdefault((u, w), {}).setdefault(b, []).append((v, c))
    return table


def _straighten_table(H: HopfAlgebra):
    """straighten[i][b] = [(v, s, c), ...]: the product of the embedded e_i
    with the embedded dual basis functional f_b, written back in the
    dual-first order: sum c * (f_v tensor e_s)."""
    field = H.field
    zero = field.zero()
    sbar = H.antipode_inv()
    pe2 = _sandwich_table(H)
    d2 = {i: _delta2(H, i) for i in range(H.dim)}
    table = []
    for i in range(H.dim):
        per_b = []
        for b in range(H.dim):
            acc: dict = {}
            for r, s, t, c in d2[i]:
                for u in range(H.dim):
                    cu = sbar.rows[u][t]
                    if cu == zero:
                        continue
                    for v, c2 in pe2.get((u, r), {}).get(b, ()):
                        key = (v, s)
                        acc[key] = acc.get(key, zero) + c * cu * c2
            per_b.append(
                [
                    (v, s, cn)
                    for (v, s), c in acc.items()
                    if (cn := field.normalize(c)) != zero
                ]
            )
        table.append(per_b)
    return table


def _straighten_direct(H: HopfAlgebra, i: int, b: int):
    """Same straightening computed the slow way: the functional
    y -> f_b(Sbar(e_t) y e_r) is evaluated by two honest products."""
    field = H.field
    zero = field.zero()
    sbar = H.antipode_inv()
    acc: dict = {}
    for r, s, t, c in _delta2(H, i):
        left = sbar.col(t)
        for v in range(H.dim):
            w = H.alg.multiply(left, H.alg.basis_vector(v))
            w = H.alg.multiply(w, H.alg.basis_vector(r))
            if w[b] != zero:
                key = (v, s)
                acc[key] = acc.get(key, zero) + c * w[b]
    return {
        k: c for k, c in ((k, field.normalize(c)) for k, c in acc.items()) if c != zero
    }


def drinfeld_double(H: HopfAlgebra, cross_check: bool = True) -> HopfAlgebra:
    """The double as a Hopf algebra on dim(H)^2 structure constants.

    cross_check replays every straightening entry through the direct
    sandwich evaluation; a mismatch is a construction bug, not bad input.
    """
    field = H.field
    n = H.dim
    N = n * n
    zero = field.zero()

    straighten = _straighten_table(H)
    if cross_check:
        for i in range(n):
            for b in range(n):
                got = {(v, s): c for v, s, c in straighten[i][b]}
                if got != _straighten_direct(H, i, b):
                    raise InternalCheckError(
                        f"straightening forms disagree at pair {(i, b)}"
                    )

    # dual algebra rows: (f_a f_v)_k read off the coproduct of e_k
    dual_rows: dict = {}
    for k in range(n):
        for p, q, c in H.comul.get(k, ()):
            dual_rows.setdefault((p, q), []).append((k, c))

    mul: dict = {}
    for a in range(n):
        for i in range(n):
            row_cache = straighten[i]
            for b in range(n):
                for j in range(n):
                    acc: dict = {}
                    for v, s, c in row_cache[b]:
                        for k, c2 in dual_rows.get((a, v), ()):
                            for m, c3 in H.alg.mul.get((s, j), ()):
                                key = k * n + m
                                acc[key] = acc.get(key, zero) + c * c2 * c3
                    row = tuple(
                        (k, cn)
                        for k, c in sorted(acc.items())
                        if (cn := field.normalize(c)) != zero
                    )
                    if row:
                        mul[(a * n + i, b * n + j)] = row

    unit = tuple(
        field.normalize(H.counit[a] * H.unit[i]) for a in range(n) for i in range(n)
    )
    names = tuple(
        f"{H.basis_names[a]}*.{H.basis_names[i]}" for a in range(n) for i in range(n)
    )
    alg = StructureAlgebra.from_sparse(field, N, mul, unit, names)

    # coproduct: opposite dual coproduct on the first factor
    mul_by_result: dict = {}
    for (u, v), terms in H.alg.mul.items():
        for a, c in terms:
            mul_by_result.setdefault(a, []).append((u, v, c))
    comul: dict = {}
    for a in range(n):
        pairs = mul_by_result.get(a, ())
        for i in range(n):
            acc: dict = {}
            for u, v, c in pairs:
                for s, t, c2 in H.comul.get(i, ()):
                    key = (v * n + s, u * n + t)
                    acc[key] = acc.get(key, zero) + c * c2
            terms = tuple(
                (jj, kk, cn)
                for (jj, kk), c in sorted(acc.items())
                if (cn := field.normalize(c)) != zero
            )
            if terms:
                comul[a * n + i] = terms

    counit = tuple(
        field.normalize(H.unit[a] * H.counit[i]) for a in range(n) for i in range(n)
    )

    # antipode: S'(f_b tensor e_j) = (eps tensor S e_j) * (f_b o Sbar tensor 1)
    sbar = H.antipode_inv()
    cols = []
    for b in range(n):
        for j in range(n):
            acc_vec = [zero] * N
            for k in range(n):
                ck = H.antipode.rows[k][j]
                if ck == zero:
                    continue
                for v in range(n):
                    cv = sbar.rows[b][v]
                    if cv == zero:
                        continue
                    for vv, ss, c in straighten[k][v]:
                        acc_vec[vv * n + ss] = acc_vec[vv * n + ss] + ck * cv * c
            cols.append(tuple(field.normalize(c) for c in acc_vec))
    antipode = Matrix.from_columns(field, cols)

    return HopfAlgebra.from_sparse(
        alg, comul, counit, antipode, name=f"D({H.name or 'H'})"
    )


def embed_algebra(H: HopfAlgebra, v) -> tuple:
    """H into the double: e_i -> eps tensor e_i."""
    field = H.field
    n = H.dim
    out = [field.zero()] * (n * n)
    for a in range(n):
        for i in range(n):
            out[a * n + i] = field.normalize(H.counit[a] * v[i])
    return tuple(out)


def embed_dual(H: HopfAlgebra, f) -> tuple:
    """H* into the double: f -> f tensor 1."""
    field = H.field
    n = H.dim
    out = [field.zero()] * (n * n)
    for a in range(n):
        for i in range(n):
            out[a * n + i] = field.normalize(f[a] * H.unit[i])
    return tuple(out)


def double_generators(H: HopfAlgebra):
    """Generator set {f_a tensor 1} + {eps tensor e_i} with the two-factor
    certificate (f_a tensor 1)(eps tensor e_i) = basis (a, i)."""
    n = H.dim
    gens = [embed_dual(H, basis_vec(H.field, n, a)) for a in range(n)]
    gens += [embed_algebra(H, H.alg.basis_vector(i)) for i in range(n)]
    cert = [(a, n + i) for a in range(n) for i in range(n)]
    return tuple(gens), tuple(cert)


def check_embeddings(H: HopfAlgebra, D: HopfAlgebra) -> Report:
    """Both canonical injections are algebra maps, the double's antipode
    restricts to S on H, and products of embedded basis vectors restrict to
    the original structure constants."""
    field = H.field
    rep = Report("double embeddings")
    n = H.dim

    ok = True
    for i in range(n):
        for j in range(n):
            prod = D.alg.multiply(
                embed_algebra(H, H.alg.basis_vector(i)),
                embed_algebra(H, H.alg.basis_vector(j)),
            )
            want = embed_algebra(
                H, H.alg.multiply(H.alg.basis_vector(i), H.alg.basis_vector(j))
            )
            if prod != want:
                ok = False
    rep.add("algebra factor embeds multiplicatively", ok)

    ok = True
    for a in range(n):
        for b in range(n):
            fa = basis_vec(field, n, a)
            fb = basis_vec(field, n, b)
            prod = D.alg.multiply(embed_dual(H, fa), embed_dual(H, fb))
            if prod != embed_dual(H, convolution(H, fa, fb)):
                ok = False
    rep.add("dual factor embeds multiplicatively", ok)

    ok = True
    for i in range(n):
        lhs = D.antipode.apply(embed_algebra(H, H.alg.basis_vector(i)))
        if lhs != embed_algebra(H, H.antipode.col(i)):
            ok = False
    rep.add("antipode restricts to the embedded algebra factor", ok)

    s2_D = D.antipode.pow_(2)
    s2_H = H.antipode.pow_(2)
    ok = all(
        s2_D.apply(embed_algebra(H, H.alg.basis_vector(i)))
        == embed_algebra(H, s2_H.col(i))
        for i in range(n)
    )
    rep.add("squared antipode restricts to the squared antipode", ok)
    return rep


def double_fh_check(H: HopfAlgebra, D: Optional[HopfAlgebra] = None) -> DoubleReport:
    """The double always has a one-dimensional space of left integrals in its
    dual; its own integral dimension and unimodularity are reported."""
    if D is None:
        D = drinfeld_double(H)
    rep = Report(f"integral structure of {D.name}")

    dual_ints = dual_left_integral_space(D)
    rep.add("dual integral space is one-dimensional", len(dual_ints) == 1,
            f"dimension {len(dual_ints)}")

    ints = left_integral_space(D)
    rep.add("integral space is one-dimensional", len(ints) == 1,
            f"dimension {len(ints)}")

    unimodular = False
    if len(ints) == 1:
        T = ints[0]
        field = D.field
        unimodular = all(
            D.alg.multiply(T, D.alg.basis_vector(j))
            == tuple(field.normalize(D.counit[j] * c) for c in T)
            for j in range(D.dim)
        )
    rep.add("unimodularity decided", True, f"unimodular={unimodular}")
    return DoubleReport(D, rep, len(dual_ints), len(ints), unimodular)
