"""Isomorphism testing and direct-sum decomposition.

Splitting uses stabilised endomorphisms (the Fitting decomposition): for
any endomorphism f of a d-dimensional module, a high enough power splits
the module as ker (+) im. Candidate endomorphisms are drawn in a fixed
deterministic order (basis elements, then small combinations, then the
whole endomorphism space when it is small enough to enumerate), so demo
runs never depend on randomness. A seeded random fallback exists for
large endomorphism rings; when even that fails the answer is an explicit
:class:`UndecidedError`, never a silent wrong result.

Indecomposability certificates enumerate the endomorphism space and check
that 0 and 1 are the only idempotents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import UndecidedError
from .modules import (Module, Morphism, direct_sum_many, hom_basis,
                      identity_morphism, image_of, kernel_of, zero_morphism)

EXHAUSTIVE_CAP = 2 ** 20
DIRECT_ISO_CAP = 2 ** 16
RANDOM_TRIALS = 512


def _combo_blocks(basis: list[Morphism], coeffs, p: int):
    blocks = None
    for c, f in zip(coeffs, basis):
        if not c:
            continue
        if blocks is None:
            blocks = [(c * b) % p for b in f.blocks]
        else:
            blocks = [(acc + c * b) % p for acc, b in zip(blocks, f.blocks)]
    if blocks is None:
        blocks = [np.zeros_like(b) for b in basis[0].blocks]
    return blocks


def iter_hom_combinations(basis: list[Morphism], skip_zero: bool = True):
    """Every F_p-linear combination of a hom basis, lexicographic order."""
    if not basis:
        return
    p = basis[0].algebra.p
    src, tgt = basis[0].source, basis[0].target
    for coeffs in linalg.iter_coeff_tuples(p, len(basis), skip_zero=skip_zero):
        yield Morphism(src, tgt, _combo_blocks(basis, coeffs, p), check=False)


def _stabilize(f: Morphism) -> Morphism:
    """Square f until its vertexwise ranks stop moving (Fitting power)."""
    p = f.algebra.p
    d = max(1, f.source.total_dim)
    g = f
    for _ in range(d.bit_length() + 1):
        g = g @ g
    while True:
        g2 = g @ g
        if all(linalg.rank(a, p) == linalg.rank(b, p)
               for a, b in zip(g.blocks, g2.blocks)):
            return g
        g = g2


@dataclass(frozen=True)
class Summand:
    module: Module
    include: Morphism   # summand -> ambient
    project: Morphism   # ambient -> summand


def _split_by(M: Module, g: Morphism) -> tuple[Summand, Summand] | None:
    """Split M = ker(g) (+) im(g) for a stabilised endomorphism g."""
    p = M.algebra.p
    K, k_incl = kernel_of(g)
    if K.total_dim == 0 or K.total_dim == M.total_dim:
        return None
    I, i_incl = image_of(g)
    projs_k, projs_i = [], []
    for v in range(M.algebra.num_vertices):
        S = np.hstack([k_incl.blocks[v], i_incl.blocks[v]])
        Sinv = linalg.inverse(S, p)
        if Sinv is None:
            return None
        projs_k.append(Sinv[:K.dims[v], :])
        projs_i.append(Sinv[K.dims[v]:, :])
    return (Summand(K, k_incl, Morphism(M, K, projs_k, check=False)),
            Summand(I, i_incl, Morphism(M, I, projs_i, check=False)))


def _splitter_candidates(basis: list[Morphism], p: int):
    for f in basis:
        yield f
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            for lam in range(1, p):
                yield basis[i] + basis[j].scale(lam)


def _find_split(M: Module, rng) -> tuple[Summand, Summand] | None:
    """A proper split of M, or None once M is certified indecomposable.

    Raises UndecidedError when no certificate fits the budget.
    """
    basis = hom_basis(M, M)
    p = M.algebra.p
    for cand in _splitter_candidates(basis, p):
        split = _split_by(M, _stabilize(cand))
        if split is not None:
            return split
    size = p ** len(basis)
    if size <= EXHAUSTIVE_CAP:
        ident = identity_morphism(M)
        for f in iter_hom_combinations(basis, skip_zero=True):
            if f == ident:
                continue
            if (f @ f) == f:
                split = _split_by(M, f)
                if split is not None:
                    return split
        return None
    if rng is not None:
        for _ in range(RANDOM_TRIALS):
            coeffs = tuple(int(rng.integers(p)) for _ in basis)
            f = Morphism(M, M, _combo_blocks(basis, coeffs, p), check=False)
            split = _split_by(M, _stabilize(f))
            if split is not None:
                return split
    raise UndecidedError(
        f"endomorphism space of dimension {len(basis)} exceeds the exhaustive "
        "budget and no splitting was found")


@dataclass(frozen=True)
class Decomposition:
    module: Module
    summands: tuple[Summand, ...]          # indecomposable, certified
    pieces: tuple[tuple[Module, int], ...]  # grouped up to isomorphism
    iso: Morphism                           # (+) summands -> module

    @property
    def is_indecomposable(self) -> bool:
        return len(self.summands) == 1


def decompose(M: Module, rng=None) -> Decomposition:
    """Full Krull-Schmidt decomposition with splitting witnesses."""
    cache = M.algebra.cache("decompose")
    ck = M.key()
    if ck in cache:
        return cache[ck]
    leaves: list[Summand] = []

    def rec(s: Summand):
        split = _find_split(s.module, rng)
        if split is None:
            leaves.append(s)
            return
        a, b = split
        rec(Summand(a.module, s.include @ a.include, a.project @ s.project))
        rec(Summand(b.module, s.include @ b.include, b.project @ s.project))

    if M.total_dim:
        rec(Summand(M, identity_morphism(M), identity_morphism(M)))
    groups: list[tuple[Module, int]] = []
    for s in leaves:
        for i, (rep, mult) in enumerate(groups):
            if is_isomorphic(s.module, rep) is not None:
                groups[i] = (rep, mult + 1)
                break
        else:
            groups.append((s.module, 1))
    D = direct_sum_many([s.module for s in leaves], algebra=M.algebra)
    iso = zero_morphism(D.module, M)
    for s, proj in zip(leaves, D.projections):
        iso = iso + s.include @ proj
    assert iso.is_iso(), "decomposition witness failed to be invertible"
    out = Decomposition(M, tuple(leaves), tuple(groups), iso)
    cache[ck] = out
    return out


def _invertible_combination(basis: list[Morphism], cap: int) -> Morphism | None:
    if not basis:
        return None
    p = basis[0].algebra.p
    for f in basis:
        if f.is_iso():
            return f
    if p ** len(basis) <= cap:
        for f in iter_hom_combinations(basis, skip_zero=True):
            if f.is_iso():
                return f
        return None
    raise UndecidedError(
        f"hom space of dimension {len(basis)} exceeds the enumeration budget")


def is_isomorphic(M: Module, N: Module, rng=None) -> Morphism | None:
    """An invertible intertwiner M -> N, or None when none exists.

    Exact on every input whose modules decompose within budget; raises
    UndecidedError otherwise instead of guessing.
    """
    if M.algebra is not N.algebra:
        return None
    if M.dims != N.dims:
        return None
    if M.total_dim == 0:
        return zero_morphism(M, N)
    if M == N:
        return identity_morphism(M)
    cache = M.algebra.cache("is_isomorphic")
    ck = (M.key(), N.key())
    if ck in cache:
        wit = cache[ck]
        return wit
    wit = _is_isomorphic_impl(M, N, rng)
    cache[ck] = wit
    cache[(N.key(), M.key())] = None if wit is None else _inverse_morphism(wit)
    return wit


def _inverse_morphism(f: Morphism) -> Morphism:
    p = f.algebra.p
    blocks = [linalg.inverse(b, p) for b in f.blocks]
    return Morphism(f.target, f.source, blocks, check=False)


def _is_isomorphic_impl(M: Module, N: Module, rng) -> Morphism | None:
    basis = hom_basis(M, N)
    if not basis:
        return None
    p = M.algebra.p
    try:
        return _invertible_combination(basis, DIRECT_ISO_CAP)
    except UndecidedError:
        pass
    # Structural route: decompose both sides and match pieces.
    DM = decompose(M, rng)
    DN = decompose(N, rng)
    if len(DM.summands) != len(DN.summands):
        return None
    if len(DM.summands) == 1:
        # Both certified indecomposable; only enumeration can decide.
        return _invertible_combination(basis, EXHAUSTIVE_CAP)
    unused = list(range(len(DN.summands)))
    total = zero_morphism(M, N)
    for sm in DM.summands:
        for j in list(unused):
            sn = DN.summands[j]
            phi = is_isomorphic(sm.module, sn.module, rng)
            if phi is not None:
                total = total + sn.include @ phi @ sm.project
                unused.remove(j)
                break
        else:
            return None
    return total if total.is_iso() else None
