"""Shared per-session caches so expensive objects (doubles and their axiom
reports) are built exactly once across test modules."""

import functools

from hopfrob.catalog import entry
from hopfrob.double import double_generators, drinfeld_double
from hopfrob.frobenius import build_integral_data, frobenius_system_from_norm
from hopfrob.hopfcore import verify_hopf
from hopfrob.linalg import Matrix, basis_vec
from hopfrob.subext import (
    SubalgebraEmbedding,
    beta_frobenius_structure,
    relative_nakayama,
)


@functools.lru_cache(maxsize=None)
def double_of(key: str):
    return drinfeld_double(entry(key).hopf)


@functools.lru_cache(maxsize=None)
def double_report_of(key: str):
    """(double, axiom report); the report uses the generator-certified
    strategy automatically once the dimension warrants it."""
    H = entry(key).hopf
    D = double_of(key)
    gens, cert = double_generators(H)
    return D, verify_hopf(D, generators=gens, certificate=cert)


@functools.lru_cache(maxsize=None)
def integral_of(key: str):
    H = entry(key).hopf
    data = build_integral_data(H)
    return H, data, frobenius_system_from_norm(H, data)


_SUBPAIRS = {
    # group-like generators sit at every n-th index of the Taft basis
    "qc2-sweedler": ("qc2", "sweedler", (0, 1)),
    "f7c3-taft": ("f7c3", "taft-3-7-2", (0, 3, 6)),
    "qc2-qs3": ("qc2", "qs3", (0, 1)),
}


@functools.lru_cache(maxsize=None)
def embedding_of(key: str) -> SubalgebraEmbedding:
    kkey, hkey, positions = _SUBPAIRS[key]
    K, H = entry(kkey).hopf, entry(hkey).hopf
    cols = [basis_vec(H.field, H.dim, i) for i in positions]
    return SubalgebraEmbedding(K, H, Matrix.from_columns(H.field, cols))


@functools.lru_cache(maxsize=None)
def subpair_of(key: str):
    """(embedding, relative twist, certified extension data)."""
    emb = embedding_of(key)
    beta = relative_nakayama(emb)
    return emb, beta, beta_frobenius_structure(emb, beta)
