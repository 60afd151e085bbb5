"""Projective presentations, Ext spaces, and diagram constructions.

Ext^1(M, N) is computed from a projective presentation: it is the
cokernel of the restriction map Hom(P0, N) -> Hom(syzygy(M), N). Classes
are realised as explicit short exact sequences by pushing the presentation
out along a representing cocycle, and arbitrary sequences are classified
back by lifting the cover through their epi. Ext^2 uses one syzygy shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import ObstructionError, PreconditionError
from .modules import (Module, Morphism, ShortExactSequence, _vec, direct_sum,
                      direct_sum_many, dual_module, dual_morphism,
                      factor_through_mono, hom_basis, induced_from_pushout,
                      induced_into_pullback, kernel_of, path_action,
                      projective_module, pushout, pullback, ses_validate,
                      solve_for_morphism, zero_morphism)


# -- projective covers and presentations --------------------------------------


def radical_inclusion(M: Module) -> tuple[Module, Morphism]:
    """The radical submodule: the sum of all arrow images."""
    alg = M.algebra
    p = alg.p
    blocks = []
    for v in range(alg.num_vertices):
        incoming = [M.action[i] for i in range(len(alg.arrows))
                    if alg.arrow_target(i) == v]
        stacked = (np.hstack(incoming) if incoming
                   else linalg.zeros(M.dims[v], 0))
        blocks.append(linalg.column_space_basis(stacked, p))
    dims = [b.shape[1] for b in blocks]
    action = []
    for i in range(len(alg.arrows)):
        s, t = alg.arrow_source(i), alg.arrow_target(i)
        sol = linalg.solve_matrix(blocks[t], (M.action[i] @ blocks[s]) % p, p)
        assert sol is not None
        action.append(sol)
    R = Module(alg, dims, action, check=False)
    return R, Morphism(R, M, blocks)


def top_generators(M: Module) -> list[tuple[int, np.ndarray]]:
    """(vertex, column vector) generators lifting a basis of M / rad M."""
    alg = M.algebra
    p = alg.p
    gens = []
    for v in range(alg.num_vertices):
        incoming = [M.action[i] for i in range(len(alg.arrows))
                    if alg.arrow_target(i) == v]
        stacked = (np.hstack(incoming) if incoming
                   else linalg.zeros(M.dims[v], 0))
        _, _, chosen = linalg.quotient_projection(stacked, p)
        for c in chosen:
            e = linalg.zeros(M.dims[v], 1)
            e[c, 0] = 1
            gens.append((v, e))
    return gens


def projective_cover(M: Module) -> tuple[Module, Morphism]:
    """The minimal projective epi onto M, built from its top."""
    alg = M.algebra
    p = alg.p
    gens = top_generators(M)
    summands = [projective_module(alg, alg.vertices[v]) for v, _ in gens]
    D = direct_sum_many(summands, algebra=alg)
    blocks = [linalg.zeros(M.dims[w], D.module.dims[w])
              for w in range(alg.num_vertices)]
    offsets = [0] * alg.num_vertices
    for (v, gen), P in zip(gens, summands):
        paths = [(d, q) for d, q in alg.basis_paths()
                 if alg._generic_source(q) == v]
        local = [0] * alg.num_vertices
        for _, q in paths:
            w = alg._generic_target(q)
            col = _path_on_vector(M, q, gen)
            blocks[w][:, offsets[w] + local[w]] = col[:, 0]
            local[w] += 1
        for w in range(alg.num_vertices):
            offsets[w] += P.dims[w]
    cover = Morphism(D.module, M, blocks)
    assert cover.is_epi(), "projective cover failed to surject"
    return D.module, cover


def _path_on_vector(M: Module, path, vec: np.ndarray) -> np.ndarray:
    if len(path) == 1 and path[0] < 0:
        return vec
    return (path_action(M, path) @ vec) % M.algebra.p


@dataclass(frozen=True)
class Presentation:
    module: Module
    p0: Module
    cover: Morphism        # P0 -->> M
    syzygy: Module
    syzygy_incl: Morphism  # syzygy >--> P0
    p1: Module
    d1: Morphism           # P1 -> P0, covering the syzygy


def projective_presentation(M: Module) -> Presentation:
    """P1 -> P0 -->> M with P0 a projective cover and P1 covering the syzygy."""
    cache = M.algebra.cache("presentation")
    ck = M.key()
    if ck in cache:
        return cache[ck]
    p0, cover = projective_cover(M)
    omega, incl = kernel_of(cover)
    p1, cover1 = projective_cover(omega)
    pres = Presentation(M, p0, cover, omega, incl, p1, incl @ cover1)
    cache[ck] = pres
    return pres


def syzygy(M: Module) -> Module:
    return projective_presentation(M).syzygy


def cosyzygy(M: Module) -> Module:
    return dual_module(syzygy(dual_module(M)))


def injective_envelope_ses(M: Module) -> ShortExactSequence:
    """M >--> E(M) -->> cosyzygy(M), by dualising a projective cover."""
    pres = projective_presentation(dual_module(M))
    return ses_validate(dual_morphism(pres.cover), dual_morphism(pres.syzygy_incl))


def is_projective(M: Module) -> bool:
    return syzygy(M).total_dim == 0


def is_injective(M: Module) -> bool:
    return syzygy(dual_module(M)).total_dim == 0


# -- Ext spaces ----------------------------------------------------------------


@dataclass(frozen=True)
class ExtSpace:
    """Ext^1(source, target) with an explicit cocycle basis.

    Cocycles live in Hom(syzygy(source), target); the basis spans a
    complement of the restrictions of Hom(P0, target).
    """

    source: Module
    target: Module
    presentation: Presentation
    hom_omega: tuple[Morphism, ...]
    _hom_matrix: np.ndarray   # columns: vectorised hom_omega
    _proj: np.ndarray         # quotient coordinates on Hom(omega, N)
    basis: tuple[Morphism, ...]
    dimension: int

    def element(self, coords) -> "ExtClass":
        coords = tuple(int(c) % self.source.algebra.p for c in coords)
        if len(coords) != self.dimension:
            raise PreconditionError("coordinate length differs from Ext dimension")
        return ExtClass(self, coords)

    def zero(self) -> "ExtClass":
        return ExtClass(self, (0,) * self.dimension)

    def classes(self):
        p = self.source.algebra.p
        for coords in linalg.iter_coeff_tuples(p, self.dimension):
            yield ExtClass(self, coords)

    def class_of_cocycle(self, c: Morphism) -> "ExtClass":
        p = self.source.algebra.p
        if self.dimension == 0:
            return self.zero()
        x = linalg.linear_solve(self._hom_matrix, _vec(c.blocks), p)
        assert x is not None, "cocycle outside Hom(omega, N) (internal error)"
        return ExtClass(self, tuple(int(v) for v in (self._proj @ x) % p))


@dataclass(frozen=True)
class ExtClass:
    space: ExtSpace
    coords: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def cocycle(self) -> Morphism:
        c = zero_morphism(self.space.presentation.syzygy, self.space.target)
        for a, f in zip(self.coords, self.space.basis):
            if a:
                c = c + f.scale(a)
        return c

    def __repr__(self):
        return f"ExtClass{self.coords}"


def ext1(M: Module, N: Module) -> ExtSpace:
    """Ext^1(M, N) by presentation; polynomial in the dimensions."""
    if M.algebra is not N.algebra:
        raise PreconditionError("Ext between modules over different algebras")
    cache = M.algebra.cache("ext1")
    ck = (M.key(), N.key())
    if ck in cache:
        return cache[ck]
    p = M.algebra.p
    pres = projective_presentation(M)
    hom_omega = hom_basis(pres.syzygy, N)
    h = len(hom_omega)
    if h == 0:
        space = ExtSpace(M, N, pres, (), linalg.zeros(0, 0),
                         linalg.zeros(0, 0), (), 0)
        cache[ck] = space
        return space
    H = np.stack([_vec(f.blocks) for f in hom_omega], axis=1)
    restricted = []
    for g in hom_basis(pres.p0, N):
        r = g @ pres.syzygy_incl
        coords = linalg.linear_solve(H, _vec(r.blocks), p)
        assert coords is not None
        restricted.append(coords)
    image = (np.stack(restricted, axis=1) if restricted
             else linalg.zeros(h, 0))
    proj, _, chosen = linalg.quotient_projection(image, p)
    basis = tuple(hom_omega[i] for i in chosen)
    space = ExtSpace(M, N, pres, tuple(hom_omega), H, proj, basis, len(chosen))
    cache[ck] = space
    return space


def ext_dim(M: Module, N: Module, n: int) -> int:
    """dim Ext^n for n in {1, 2}; n = 2 goes through one syzygy shift."""
    if n == 1:
        return ext1(M, N).dimension
    if n == 2:
        return ext1(syzygy(M), N).dimension
    raise PreconditionError("only Ext^1 and Ext^2 are supported")


# -- realisation and transport -------------------------------------------------


@dataclass(frozen=True)
class CommutingSquare:
    """A square with top: A->B, left: A->C, right: B->D, bottom: C->D."""

    top: Morphism
    left: Morphism
    right: Morphism
    bottom: Morphism

    def commutes(self) -> bool:
        return (self.right @ self.top) == (self.bottom @ self.left)


def realize_extension(cls: ExtClass) -> ShortExactSequence:
    """An explicit sequence N >--> E -->> M in the given class."""
    return realize_extension_with_square(cls)[0]


def realize_extension_with_square(cls: ExtClass):
    """Realisation plus the defining pushout square (a pushout of a mono)."""
    pres = cls.space.presentation
    N = cls.space.target
    c = cls.cocycle()
    po = pushout(pres.syzygy_incl, c)
    mono = po.from_right
    epi = induced_from_pushout(po, pres.cover, zero_morphism(N, cls.space.source))
    ses = ses_validate(mono, epi)
    square = CommutingSquare(top=pres.syzygy_incl, left=c,
                             right=po.from_left, bottom=po.from_right)
    return ses, square


def extension_class(S: ShortExactSequence, space: ExtSpace | None = None) -> ExtClass:
    """The Ext class of a short exact sequence."""
    if space is None:
        space = ext1(S.quotient, S.kernel)
    pres = space.presentation
    lift = solve_for_morphism(pres.p0, S.middle, [("left", S.epi, pres.cover)])
    assert lift is not None, "projective failed to lift (internal error)"
    c = factor_through_mono(S.mono, lift @ pres.syzygy_incl)
    return space.class_of_cocycle(c)


@dataclass(frozen=True)
class TransportedExtension:
    ses: ShortExactSequence
    square: CommutingSquare
    middle_map: Morphism


def pullback_extension(S: ShortExactSequence, f: Morphism) -> TransportedExtension:
    """Base change along f into the quotient term; kernel term unchanged."""
    if f.target != S.quotient:
        raise PreconditionError("map must land in the quotient term")
    pb = pullback(S.epi, f)
    mono = induced_into_pullback(pb, S.mono, zero_morphism(S.kernel, f.source))
    ses = ses_validate(mono, pb.to_right)
    square = CommutingSquare(top=pb.to_left, left=pb.to_right,
                             right=S.epi, bottom=f)
    return TransportedExtension(ses, square, pb.to_left)


def pushout_extension(S: ShortExactSequence, g: Morphism) -> TransportedExtension:
    """Cobase change along g out of the kernel term; quotient unchanged."""
    if g.source != S.kernel:
        raise PreconditionError("map must start at the kernel term")
    po = pushout(S.mono, g)
    epi = induced_from_pushout(po, S.epi, zero_morphism(g.target, S.quotient))
    ses = ses_validate(po.from_right, epi)
    square = CommutingSquare(top=S.mono, left=g,
                             right=po.from_left, bottom=po.from_right)
    return TransportedExtension(ses, square, po.from_left)


def sequences_equivalent(S1: ShortExactSequence, S2: ShortExactSequence) -> bool:
    """Equivalence via a middle map commuting with both ends.

    Any such map is an isomorphism (five lemma), so existence suffices.
    """
    if S1.kernel != S2.kernel or S1.quotient != S2.quotient:
        return False
    phi = solve_for_morphism(
        S1.middle, S2.middle,
        [("right", S1.mono, S2.mono), ("left", S2.epi, S1.epi)])
    return phi is not None


def lift_through_epi(p: Morphism, f: Morphism) -> Morphism | None:
    """l with p o l = f, or None when the Ext obstruction is nonzero."""
    if not p.is_epi():
        raise PreconditionError("lifting target map must be an epi")
    if f.target != p.target:
        raise PreconditionError("maps must share their target")
    return solve_for_morphism(f.source, p.source, [("left", p, f)])


def bicartesian_check(square: CommutingSquare) -> bool:
    """True when the commuting square is both a pullback and a pushout."""
    if not square.commutes():
        raise PreconditionError("square does not commute")
    p = square.top.algebra.p
    D = direct_sum(square.top.target, square.left.target)
    u = D.inclusions[0] @ square.top + D.inclusions[1] @ square.left
    w = square.right @ D.projections[0] - square.bottom @ D.projections[1]
    if not u.is_mono() or not w.is_epi():
        return False
    for v in range(u.algebra.num_vertices):
        ru = linalg.rank(u.blocks[v], p)
        nw = w.source.dims[v] - linalg.rank(w.blocks[v], p)
        if ru != nw:
            return False
    return True


# -- the horseshoe construction --------------------------------------------


@dataclass(frozen=True)
class ThreeByThree:
    """A 3x3 commuting grid with exact rows and columns."""

    rows: tuple[ShortExactSequence, ShortExactSequence, ShortExactSequence]
    columns: tuple[ShortExactSequence, ShortExactSequence, ShortExactSequence]

    @property
    def grid(self):
        r1, r2, r3 = self.rows
        return ((r1.kernel, r1.middle, r1.quotient),
                (r2.kernel, r2.middle, r2.quotient),
                (r3.kernel, r3.middle, r3.quotient))

    def squares(self) -> tuple[CommutingSquare, ...]:
        r1, r2, r3 = self.rows
        c1, c2, c3 = self.columns
        return (
            CommutingSquare(r1.mono, c1.mono, c2.mono, r2.mono),
            CommutingSquare(r1.epi, c2.mono, c3.mono, r2.epi),
            CommutingSquare(r2.mono, c1.epi, c2.epi, r3.mono),
            CommutingSquare(r2.epi, c2.epi, c3.epi, r3.epi),
        )

    def validate(self) -> bool:
        for ses in (*self.rows, *self.columns):
            ses_validate(ses.mono, ses.epi)
        return all(sq.commutes() for sq in self.squares())


def horseshoe(bottom: ShortExactSequence, left: ShortExactSequence,
              right: ShortExactSequence) -> ThreeByThree:
    """Combine covers of the ends of ``bottom`` into a cover of its middle.

    ``left`` covers the kernel term and ``right`` covers the quotient term.
    The middle column has middle ``left.middle (+) right.middle`` with the
    map [include o cover, lift]; a failed lift raises ObstructionError
    carrying the nonzero Ext class that blocks it.
    """
    if left.quotient != bottom.kernel:
        raise PreconditionError("left column must cover the kernel term")
    if right.quotient != bottom.quotient:
        raise PreconditionError("right column must cover the quotient term")
    lift = lift_through_epi(bottom.epi, right.epi)
    if lift is None:
        obstruction = extension_class(pullback_extension(bottom, right.epi).ses)
        raise ObstructionError(
            "no lift of the quotient cover through the base epi", obstruction)
    D = direct_sum(left.middle, right.middle)
    m = (bottom.mono @ left.epi @ D.projections[0]) + (lift @ D.projections[1])
    K, k_incl = kernel_of(m)
    alpha = factor_through_mono(k_incl, D.inclusions[0] @ left.mono)
    beta = factor_through_mono(right.mono, D.projections[1] @ k_incl)
    top_row = ses_validate(alpha, beta)
    mid_row = ses_validate(D.inclusions[0], D.projections[1])
    mid_col = ses_validate(k_incl, m)
    grid = ThreeByThree(rows=(top_row, mid_row, bottom),
                        columns=(left, mid_col, right))
    assert grid.validate(), "horseshoe grid failed validation"
    return grid
