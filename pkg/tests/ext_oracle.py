"""Independent brute-force oracle for Ext^1 dimensions.

Counts Baer equivalence classes of short exact sequences N >--> E -->> M
directly. Any such sequence is equivalent to one in standard form: the
space at each vertex is N_v (+) M_v, the mono and epi are the canonical
inclusion and projection, and each arrow acts by a block triangular
matrix [[N_a, c_a], [0, M_a]]. The oracle enumerates every connecting
family c, keeps those whose total action satisfies the algebra relations
(checked by constructing the representation, nothing homological), and
groups the survivors by the existence of a middle map commuting with both
end identities. The class count is a power of p and its logarithm is the
Ext dimension.

No projective presentations, syzygies or cocycle spaces are used here;
only module validation and linear solving.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from hoveyforge import (InvalidModuleError, Module, Morphism,
                        ShortExactSequence, ses_validate)
from hoveyforge.modules import solve_for_morphism


def _standard_form_candidates(M: Module, N: Module):
    """Every block-triangular middle representation, valid or not."""
    alg = M.algebra
    p = alg.p
    dims = [n + m for n, m in zip(N.dims, M.dims)]
    slots = []
    for i in range(len(alg.arrows)):
        s, t = alg.arrow_source(i), alg.arrow_target(i)
        slots.append((N.dims[t], M.dims[s]))
    total_entries = sum(r * c for r, c in slots)
    for entries in itertools.product(range(p), repeat=total_entries):
        action = []
        pos = 0
        for i, (r, c) in enumerate(slots):
            s, t = alg.arrow_source(i), alg.arrow_target(i)
            block = np.zeros((dims[t], dims[s]), dtype=np.int64)
            block[:N.dims[t], :N.dims[s]] = N.action[i]
            block[N.dims[t]:, N.dims[s]:] = M.action[i]
            chunk = np.array(entries[pos:pos + r * c], dtype=np.int64)
            pos += r * c
            block[:N.dims[t], N.dims[s]:] = chunk.reshape(r, c)
            action.append(block)
        yield dims, action


def _standard_ses(M: Module, N: Module, E: Module) -> ShortExactSequence:
    alg = M.algebra
    mono_blocks, epi_blocks = [], []
    for v in range(alg.num_vertices):
        n, m = N.dims[v], M.dims[v]
        inc = np.zeros((n + m, n), dtype=np.int64)
        inc[:n, :] = np.eye(n, dtype=np.int64)
        prj = np.zeros((m, n + m), dtype=np.int64)
        prj[:, n:] = np.eye(m, dtype=np.int64)
        mono_blocks.append(inc)
        epi_blocks.append(prj)
    return ses_validate(Morphism(N, E, mono_blocks), Morphism(E, M, epi_blocks))


def baer_equivalent(S1: ShortExactSequence, S2: ShortExactSequence) -> bool:
    """A middle map commuting with both end identities; iso by five lemma."""
    phi = solve_for_morphism(
        S1.middle, S2.middle,
        [("right", S1.mono, S2.mono), ("left", S2.epi, S1.epi)])
    return phi is not None


def brute_force_ext_dim(M: Module, N: Module) -> int:
    """The number p^d of Baer classes of extensions of M by N, as d."""
    p = M.algebra.p
    representatives: list[ShortExactSequence] = []
    for dims, action in _standard_form_candidates(M, N):
        try:
            E = Module(M.algebra, dims, action)
        except InvalidModuleError:
            continue
        S = _standard_ses(M, N, E)
        if not any(baer_equivalent(S, R) for R in representatives):
            representatives.append(S)
    count = len(representatives)
    d = round(math.log(count, p)) if count > 1 else 0
    assert p ** d == count, f"class count {count} is not a power of {p}"
    return d


def full_enumeration_ext_dim_one_vertex(M: Module, N: Module) -> int:
    """Cross-check for one-vertex algebras: enumerate every middle action,
    every compatible mono/epi pair, and group all resulting sequences."""
    alg = M.algebra
    assert alg.num_vertices == 1 and len(alg.arrows) == 1
    p = alg.p
    d = M.dims[0] + N.dims[0]
    representatives: list[ShortExactSequence] = []
    for entries in itertools.product(range(p), repeat=d * d):
        action = [np.array(entries, dtype=np.int64).reshape(d, d)]
        try:
            E = Module(alg, (d,), action)
        except InvalidModuleError:
            continue
        from hoveyforge import hom_basis
        from hoveyforge.decomp import iter_hom_combinations
        monos = [f for f in iter_hom_combinations(hom_basis(N, E))
                 if f.is_mono()] if N.total_dim else []
        for mono in monos:
            for epi in iter_hom_combinations(hom_basis(E, M)):
                if not epi.is_epi() or not (epi @ mono).is_zero:
                    continue
                try:
                    S = ses_validate(mono, epi)
                except Exception:
                    continue
                if not any(baer_equivalent(S, R) for R in representatives):
                    representatives.append(S)
    count = len(representatives)
    dd = round(math.log(count, p)) if count > 1 else 0
    assert p ** dd == count
    return dd
