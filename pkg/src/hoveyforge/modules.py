"""Representations of a bound quiver algebra and their exact structure.

A :class:`Module` assigns a dimension to each vertex and a matrix to each
arrow (target-dim x source-dim); a :class:`Morphism` is a vertex-indexed
family of matrices intertwining the two actions. All values are immutable
after construction, all operations are pure, and kernels / cokernels pick
their bases by echelon pivots so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Algebra
from .exceptions import ExactnessError, InvalidModuleError, PreconditionError


def _lock(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


class Module:
    """A finite-dimensional representation of a quiver with relations."""

    __slots__ = ("algebra", "dims", "action", "_key")

    def __init__(self, algebra: Algebra, dims, action, check: bool = True):
        self.algebra = algebra
        self.dims: tuple[int, ...] = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.num_vertices:
            raise InvalidModuleError("dimension vector length mismatch")
        if any(d < 0 for d in self.dims):
            raise InvalidModuleError("negative dimension")
        p = algebra.p
        mats = []
        for i, a in enumerate(algebra.arrows):
            m = np.asarray(action[i], dtype=np.int64) % p
            want = (self.dims[algebra.arrow_target(i)],
                    self.dims[algebra.arrow_source(i)])
            if m.size == 0 and 0 in want:
                m = m.reshape(want)
            if m.shape != want:
                raise InvalidModuleError(
                    f"arrow {a.name}: matrix shape {m.shape}, expected {want}")
            mats.append(_lock(m))
        self.action: tuple[np.ndarray, ...] = tuple(mats)
        self._key = None
        if check:
            for rel in algebra.relations:
                acc = None
                for coeff, path in rel:
                    term = (coeff * path_action(self, path)) % p
                    acc = term if acc is None else (acc + term) % p
                if acc is not None and acc.any():
                    raise InvalidModuleError(
                        "relation does not vanish on the action: "
                        + algebra.relation_display(rel),
                        relation=rel,
                    )

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self):
        """Hashable structural identity, used for memoisation."""
        if self._key is None:
            self._key = (id(self.algebra), self.dims,
                         b"".join(m.tobytes() for m in self.action))
        return self._key

    def __eq__(self, other):
        return (isinstance(other, Module) and self.algebra is other.algebra
                and self.dims == other.dims
                and all(np.array_equal(a, b)
                        for a, b in zip(self.action, other.action)))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Module(dims={self.dims})"


def validate_module(algebra: Algebra, dims, action) -> Module:
    """Public constructor that verifies shapes and relation vanishing."""
    return Module(algebra, dims, action)


def path_action(M: Module, path: tuple[int, ...]) -> np.ndarray:
    """The matrix of a path acting on M (source vertex to target vertex)."""
    p = M.algebra.p
    out = linalg.eye(M.dims[M.algebra.path_source(path)])
    for a in path:
        out = (M.action[a] @ out) % p
    return out


def zero_module(algebra: Algebra) -> Module:
    dims = (0,) * algebra.num_vertices
    action = [linalg.zeros(0, 0) for _ in algebra.arrows]
    return Module(algebra, dims, action, check=False)


def simple_module(algebra: Algebra, vertex: str) -> Module:
    v = algebra.vertex_index[vertex]
    dims = tuple(1 if i == v else 0 for i in range(algebra.num_vertices))
    action = [linalg.zeros(dims[algebra.arrow_target(i)],
                           dims[algebra.arrow_source(i)])
              for i in range(len(algebra.arrows))]
    return Module(algebra, dims, action, check=False)


def projective_module(algebra: Algebra, vertex: str) -> Module:
    """The indecomposable projective at a vertex: paths out of it, mod relations."""
    v = algebra.vertex_index[vertex]
    basis = [(d, q) for d, q in algebra.basis_paths()
             if algebra._generic_source(q) == v]
    by_vertex: list[list[tuple[int, ...]]] = [[] for _ in algebra.vertices]
    local: dict[tuple[int, ...], int] = {}
    for _, q in basis:
        w = algebra._generic_target(q)
        local[q] = len(by_vertex[w])
        by_vertex[w].append(q)
    dims = tuple(len(b) for b in by_vertex)
    action = []
    for i in range(len(algebra.arrows)):
        s, t = algebra.arrow_source(i), algebra.arrow_target(i)
        m = linalg.zeros(dims[t], dims[s])
        for col, q in enumerate(by_vertex[s]):
            for rpath, coeff in algebra.reduce_path(algebra._extend(q, i)):
                m[local[rpath], col] = coeff
        action.append(m)
    return Module(algebra, dims, action)


def dual_module(M: Module) -> Module:
    """The vector-space dual, a module over the opposite algebra."""
    op = M.algebra.opposite()
    action = [M.action[i].T for i in range(len(op.arrows))]
    return Module(op, M.dims, action)


def injective_module(algebra: Algebra, vertex: str) -> Module:
    return dual_module(projective_module(algebra.opposite(), vertex))


class Morphism:
    """An intertwiner between two modules over the same algebra."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Module, target: Module, blocks, check: bool = True):
        if source.algebra is not target.algebra:
            raise PreconditionError("morphism endpoints over different algebras")
        self.source = source
        self.target = target
        p = source.algebra.p
        mats = []
        for v in range(source.algebra.num_vertices):
            b = np.asarray(blocks[v], dtype=np.int64) % p
            want = (target.dims[v], source.dims[v])
            if b.size == 0 and 0 in want:
                b = b.reshape(want)
            if b.shape != want:
                raise PreconditionError(
                    f"block at vertex {v} has shape {b.shape}, expected {want}")
            mats.append(_lock(b))
        self.blocks: tuple[np.ndarray, ...] = tuple(mats)
        if check:
            alg = source.algebra
            for i in range(len(alg.arrows)):
                s, t = alg.arrow_source(i), alg.arrow_target(i)
                lhs = (self.blocks[t] @ source.action[i]) % p
                rhs = (target.action[i] @ self.blocks[s]) % p
                if not np.array_equal(lhs, rhs):
                    raise PreconditionError(
                        f"blocks do not intertwine arrow {alg.arrows[i].name}")

    @property
    def algebra(self) -> Algebra:
        return self.source.algebra

    def compose(self, other: "Morphism") -> "Morphism":
        """self after other (self о other)."""
        if other.target != self.source:
            raise PreconditionError("composition endpoints do not match")
        p = self.algebra.p
        return Morphism(other.source, self.target,
                        [(a @ b) % p for a, b in zip(self.blocks, other.blocks)],
                        check=False)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.compose(other)

    def __add__(self, other: "Morphism") -> "Morphism":
        if other.source != self.source or other.target != self.target:
            raise PreconditionError("sum of morphisms with different endpoints")
        p = self.algebra.p
        return Morphism(self.source, self.target,
                        [(a + b) % p for a, b in zip(self.blocks, other.blocks)],
                        check=False)

    def __neg__(self) -> "Morphism":
        p = self.algebra.p
        return Morphism(self.source, self.target,
                        [(-b) % p for b in self.blocks], check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, c: int) -> "Morphism":
        p = self.algebra.p
        return Morphism(self.source, self.target,
                        [(c * b) % p for b in self.blocks], check=False)

    @property
    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)

    def is_mono(self) -> bool:
        p = self.algebra.p
        return all(linalg.rank(b, p) == self.source.dims[v]
                   for v, b in enumerate(self.blocks))

    def is_epi(self) -> bool:
        p = self.algebra.p
        return all(linalg.rank(b, p) == self.target.dims[v]
                   for v, b in enumerate(self.blocks))

    def is_iso(self) -> bool:
        return (self.source.dims == self.target.dims) and self.is_mono()

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.source == other.source
                and self.target == other.target
                and all(np.array_equal(a, b)
                        for a, b in zip(self.blocks, other.blocks)))

    def __hash__(self):
        return hash((self.source.key(), self.target.key(),
                     b"".join(b.tobytes() for b in self.blocks)))

    def __repr__(self):
        return f"Morphism({self.source.dims} -> {self.target.dims})"


def identity_morphism(M: Module) -> Morphism:
    return Morphism(M, M, [linalg.eye(d) for d in M.dims], check=False)


def zero_morphism(source: Module, target: Module) -> Morphism:
    return Morphism(source, target,
                    [linalg.zeros(target.dims[v], source.dims[v])
                     for v in range(source.algebra.num_vertices)],
                    check=False)


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual_module(f.target), dual_module(f.source),
                    [b.T for b in f.blocks])


# -- hom spaces and linear solving over morphisms ---------------------------


def _slot_layout(M: Module, N: Module):
    sizes = [N.dims[v] * M.dims[v] for v in range(M.algebra.num_vertices)]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    return sizes, offsets, int(offsets[-1])


def _hom_constraints(M: Module, N: Module) -> np.ndarray:
    """Rows of the linear system cutting out Hom(M, N) inside prod Hom(M_v, N_v)."""
    alg = M.algebra
    sizes, off, total = _slot_layout(M, N)
    rows = []
    for i in range(len(alg.arrows)):
        s, t = alg.arrow_source(i), alg.arrow_target(i)
        neq = N.dims[t] * M.dims[s]
        if neq == 0:
            continue
        row = linalg.zeros(neq, total)
        if sizes[t]:
            row[:, off[t]:off[t] + sizes[t]] = np.kron(
                linalg.eye(N.dims[t]), M.action[i].T)
        if sizes[s]:
            row[:, off[s]:off[s] + sizes[s]] -= np.kron(
                N.action[i], linalg.eye(M.dims[s]))
        rows.append(row % alg.p)
    return np.vstack(rows) if rows else linalg.zeros(0, total)


def _morphism_from_vec(M: Module, N: Module, x: np.ndarray) -> Morphism:
    _, off, _ = _slot_layout(M, N)
    blocks = []
    for v in range(M.algebra.num_vertices):
        blocks.append(x[off[v]:off[v + 1]].reshape(N.dims[v], M.dims[v]))
    return Morphism(M, N, blocks, check=False)


def _vec(f_blocks) -> np.ndarray:
    return (np.concatenate([b.reshape(-1) for b in f_blocks])
            if f_blocks else np.zeros(0, dtype=np.int64))


def hom_basis(M: Module, N: Module) -> list[Morphism]:
    """A deterministic basis of the intertwiner space Hom(M, N)."""
    if M.algebra is not N.algebra:
        raise PreconditionError("hom between modules over different algebras")
    cache = M.algebra.cache("hom_basis")
    ck = (M.key(), N.key())
    if ck in cache:
        return cache[ck]
    _, _, total = _slot_layout(M, N)
    if total == 0:
        cache[ck] = []
        return []
    K = linalg.kernel_basis(_hom_constraints(M, N), M.algebra.p)
    out = [_morphism_from_vec(M, N, K[:, j]) for j in range(K.shape[1])]
    cache[ck] = out
    return out


def solve_for_morphism(source: Module, target: Module, equations) -> Morphism | None:
    """Find an intertwiner f subject to linear composition constraints.

    ``equations`` is a list of ("left", g, rhs) meaning g o f = rhs, or
    ("right", h, rhs) meaning f o h = rhs. Returns one solution (free
    coordinates zero) or None when the system is inconsistent.
    """
    alg = source.algebra
    p = alg.p
    sizes, off, total = _slot_layout(source, target)
    A_rows = [_hom_constraints(source, target)]
    b_rows = [np.zeros(A_rows[0].shape[0], dtype=np.int64)]
    for kind, g, rhs in equations:
        for v in range(alg.num_vertices):
            if kind == "left":
                # g_v f_v = rhs_v
                neq = g.target.dims[v] * source.dims[v]
                if neq == 0:
                    continue
                row = linalg.zeros(neq, total)
                if sizes[v]:
                    row[:, off[v]:off[v + 1]] = np.kron(
                        g.blocks[v], linalg.eye(source.dims[v]))
            else:
                # f_v h_v = rhs_v
                neq = target.dims[v] * g.source.dims[v]
                if neq == 0:
                    continue
                row = linalg.zeros(neq, total)
                if sizes[v]:
                    row[:, off[v]:off[v + 1]] = np.kron(
                        linalg.eye(target.dims[v]), g.blocks[v].T)
            A_rows.append(row % p)
            b_rows.append(rhs.blocks[v].reshape(-1))
    A = np.vstack(A_rows)
    b = np.concatenate(b_rows)
    if total == 0:
        if b.any():
            return None
        return zero_morphism(source, target)
    x = linalg.linear_solve(A, b, p)
    return None if x is None else _morphism_from_vec(source, target, x)


# -- kernels, cokernels, images ---------------------------------------------


def kernel_of(f: Morphism) -> tuple[Module, Morphism]:
    """The kernel submodule with its inclusion into the source."""
    alg = f.algebra
    p = alg.p
    bases = [linalg.kernel_basis(b, p) for b in f.blocks]
    dims = [b.shape[1] for b in bases]
    action = []
    for i in range(len(alg.arrows)):
        s, t = alg.arrow_source(i), alg.arrow_target(i)
        rhs = (f.source.action[i] @ bases[s]) % p
        sol = linalg.solve_matrix(bases[t], rhs, p)
        assert sol is not None, "kernel is not arrow-stable (internal error)"
        action.append(sol)
    K = Module(alg, dims, action, check=False)
    return K, Morphism(K, f.source, bases)


def cokernel_of(f: Morphism) -> tuple[Module, Morphism]:
    """The cokernel quotient with its projection from the target."""
    alg = f.algebra
    p = alg.p
    projs, sections = [], []
    for b in f.blocks:
        proj, section, _ = linalg.quotient_projection(b, p)
        projs.append(proj)
        sections.append(section)
    dims = [pr.shape[0] for pr in projs]
    action = []
    for i in range(len(alg.arrows)):
        s, t = alg.arrow_source(i), alg.arrow_target(i)
        action.append((projs[t] @ f.target.action[i] @ sections[s]) % p)
    C = Module(alg, dims, action, check=False)
    return C, Morphism(f.target, C, projs)


def image_of(f: Morphism) -> tuple[Module, Morphism]:
    """The image submodule with its inclusion into the target."""
    alg = f.algebra
    p = alg.p
    bases = [linalg.column_space_basis(b, p) for b in f.blocks]
    dims = [b.shape[1] for b in bases]
    action = []
    for i in range(len(alg.arrows)):
        s, t = alg.arrow_source(i), alg.arrow_target(i)
        rhs = (f.target.action[i] @ bases[s]) % p
        sol = linalg.solve_matrix(bases[t], rhs, p)
        assert sol is not None
        action.append(sol)
    I = Module(alg, dims, action, check=False)
    return I, Morphism(I, f.target, bases)


def factor_through_cokernel(f: Morphism, g: Morphism,
                            cokernel: tuple[Module, Morphism] | None = None) -> Morphism:
    """Given g with g o f = 0, the induced map coker(f) -> g.target."""
    if g.source != f.target:
        raise PreconditionError("g must start at the target of f")
    if not (g @ f).is_zero:
        raise PreconditionError("g o f is not zero")
    C, epi = cokernel if cokernel is not None else cokernel_of(f)
    t = solve_for_morphism(C, g.target, [("right", epi, g)])
    assert t is not None, "cokernel universal property failed (internal error)"
    return t


def factor_through_mono(m: Morphism, g: Morphism) -> Morphism:
    """Given mono m and g with image inside im(m), the map c with m o c = g."""
    c = solve_for_morphism(g.source, m.source, [("left", m, g)])
    if c is None:
        raise PreconditionError("map does not factor through the mono")
    return c


# -- direct sums, pullbacks, pushouts ----------------------------------------


@dataclass(frozen=True)
class DirectSum:
    module: Module
    inclusions: tuple[Morphism, ...]
    projections: tuple[Morphism, ...]


def direct_sum_many(summands: list[Module], algebra: Algebra | None = None) -> DirectSum:
    """Block-diagonal sum of any number of modules (possibly none)."""
    if algebra is None:
        if not summands:
            raise PreconditionError("empty sum needs an explicit algebra")
        algebra = summands[0].algebra
    nv = algebra.num_vertices
    dims = [sum(m.dims[v] for m in summands) for v in range(nv)]
    action = []
    for i in range(len(algebra.arrows)):
        s, t = algebra.arrow_source(i), algebra.arrow_target(i)
        m = linalg.zeros(dims[t], dims[s])
        ro = co = 0
        for sm in summands:
            m[ro:ro + sm.dims[t], co:co + sm.dims[s]] = sm.action[i]
            ro += sm.dims[t]
            co += sm.dims[s]
        action.append(m)
    total = Module(algebra, dims, action, check=False)
    incls, projs = [], []
    offsets = [0] * nv
    for sm in summands:
        iblocks, pblocks = [], []
        for v in range(nv):
            inc = linalg.zeros(dims[v], sm.dims[v])
            prj = linalg.zeros(sm.dims[v], dims[v])
            o = offsets[v]
            inc[o:o + sm.dims[v], :] = linalg.eye(sm.dims[v])
            prj[:, o:o + sm.dims[v]] = linalg.eye(sm.dims[v])
            iblocks.append(inc)
            pblocks.append(prj)
            offsets[v] = o + sm.dims[v]
        incls.append(Morphism(sm, total, iblocks, check=False))
        projs.append(Morphism(total, sm, pblocks, check=False))
    return DirectSum(total, tuple(incls), tuple(projs))


def direct_sum(M: Module, N: Module) -> DirectSum:
    return direct_sum_many([M, N])


@dataclass(frozen=True)
class Pullback:
    module: Module
    to_left: Morphism    # P -> X
    to_right: Morphism   # P -> Y
    _incl: Morphism      # P -> X (+) Y
    _sum: DirectSum


def pullback(f: Morphism, g: Morphism) -> Pullback:
    """Fibre product of f: X -> Z and g: Y -> Z, with its two projections."""
    if f.target != g.target:
        raise PreconditionError("pullback needs a shared target")
    D = direct_sum(f.source, g.source)
    h = f @ D.projections[0] - g @ D.projections[1]
    P, incl = kernel_of(h)
    return Pullback(P, D.projections[0] @ incl, D.projections[1] @ incl, incl, D)


def induced_into_pullback(pb: Pullback, u: Morphism, v: Morphism) -> Morphism:
    """The unique T -> P with to_left o it = u and to_right o it = v."""
    cand = pb._sum.inclusions[0] @ u + pb._sum.inclusions[1] @ v
    return factor_through_mono(pb._incl, cand)


@dataclass(frozen=True)
class Pushout:
    module: Module
    from_left: Morphism   # X -> P
    from_right: Morphism  # Y -> P
    _epi: Morphism        # X (+) Y -> P
    _sum: DirectSum
    _h: Morphism          # Z -> X (+) Y (defining map)


def pushout(f: Morphism, g: Morphism) -> Pushout:
    """Cofibre coproduct of f: Z -> X and g: Z -> Y, with its two legs."""
    if f.source != g.source:
        raise PreconditionError("pushout needs a shared source")
    D = direct_sum(f.target, g.target)
    h = D.inclusions[0] @ f - D.inclusions[1] @ g
    P, epi = cokernel_of(h)
    return Pushout(P, epi @ D.inclusions[0], epi @ D.inclusions[1], epi, D, h)


def induced_from_pushout(po: Pushout, u: Morphism, v: Morphism) -> Morphism:
    """The unique P -> T with it o from_left = u and it o from_right = v."""
    cand = u @ po._sum.projections[0] + v @ po._sum.projections[1]
    return factor_through_cokernel(po._h, cand, cokernel=(po.module, po._epi))


def split_mono_retraction(i: Morphism) -> Morphism | None:
    """A retraction r with r o i = id, or None when i is not a split mono."""
    return solve_for_morphism(i.target, i.source,
                              [("right", i, identity_morphism(i.source))])


# -- short exact sequences ----------------------------------------------------


class ShortExactSequence:
    """A validated pair kernel >--> middle -->> quotient."""

    __slots__ = ("mono", "epi")

    def __init__(self, mono: Morphism, epi: Morphism):
        self.mono = mono
        self.epi = epi

    @property
    def kernel(self) -> Module:
        return self.mono.source

    @property
    def middle(self) -> Module:
        return self.mono.target

    @property
    def quotient(self) -> Module:
        return self.epi.target

    def __eq__(self, other):
        return (isinstance(other, ShortExactSequence)
                and self.mono == other.mono and self.epi == other.epi)

    def __repr__(self):
        return (f"SES({self.kernel.dims} >--> {self.middle.dims} "
                f"-->> {self.quotient.dims})")


def ses_validate(mono: Morphism, epi: Morphism) -> ShortExactSequence:
    """Check every exactness invariant and return the validated sequence."""
    if mono.target != epi.source:
        raise ExactnessError("composability", "mono target differs from epi source")
    p = mono.algebra.p
    for v, b in enumerate(mono.blocks):
        if linalg.rank(b, p) != mono.source.dims[v]:
            raise ExactnessError("mono", f"kernel nonzero at vertex {v}")
    for v, b in enumerate(epi.blocks):
        if linalg.rank(b, p) != epi.target.dims[v]:
            raise ExactnessError("epi", f"cokernel nonzero at vertex {v}")
    if not (epi @ mono).is_zero:
        raise ExactnessError("composite", "epi o mono is not zero")
    if mono.source.total_dim + epi.target.total_dim != mono.target.total_dim:
        raise ExactnessError("dimensions", "dim middle != dim kernel + dim quotient")
    for v in range(mono.algebra.num_vertices):
        if (linalg.rank(mono.blocks[v], p)
                != mono.target.dims[v] - linalg.rank(epi.blocks[v], p)):
            raise ExactnessError("exactness", f"im(mono) != ker(epi) at vertex {v}")
    return ShortExactSequence(mono, epi)


def split_ses(A: Module, C: Module) -> ShortExactSequence:
    """The split sequence A >--> A (+) C -->> C."""
    D = direct_sum(A, C)
    return ShortExactSequence(D.inclusions[0], D.projections[1])


def dual_ses(S: ShortExactSequence) -> ShortExactSequence:
    """Duality flips a sequence: quotient* >--> middle* -->> kernel*."""
    return ses_validate(dual_morphism(S.epi), dual_morphism(S.mono))
