"""Quivers with relations over a prime field.

An :class:`Algebra` is presented by a quiver (named vertices and arrows)
and a list of relations, each a linear combination of parallel paths of
length at least two. Paths are written in diagrammatic order: the path
``(a, b)`` means "first traverse a, then b" and requires
``target(a) == source(b)``.

The basis of the quotient algebra is computed degree by degree in the
path grading. This requires every relation to be length-homogeneous
(all terms of one relation have the same length); that keeps the ideal
graded, so truncating at the first vanishing degree is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .exceptions import SpecError

_PATH_COUNT_CAP = 100_000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Bounds:
    """Search limits: catalog dimension, closure rounds, witness dimension.

    ``max_witness_dim`` of None means "3 x largest catalog dimension",
    resolved once the catalog is known.
    """

    max_dim: int = 12
    max_iter: int = 64
    max_witness_dim: int | None = None

    def __post_init__(self):
        if self.max_dim <= 0 or self.max_iter <= 0:
            raise SpecError("bounds must be positive")
        if self.max_witness_dim is not None and self.max_witness_dim <= 0:
            raise SpecError("max_witness_dim must be positive")


# A relation is a tuple of (coefficient, path) terms; paths are tuples of
# arrow indices in diagrammatic order.
RelationTerm = tuple[int, tuple[int, ...]]
Relation = tuple[RelationTerm, ...]


@dataclass
class _DegreeData:
    paths: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    proj: np.ndarray          # quotient coordinates for this degree
    chosen: list[int]         # local indices of basis paths


class Algebra:
    """A finite-dimensional quotient of a path algebra over GF(p)."""

    def __init__(self, p: int, vertices, arrows, relations, bounds: Bounds | None = None):
        if not linalg.is_prime(p):
            raise SpecError(f"modulus {p} is not prime")
        self.p = p
        self.vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecError("duplicate vertex names")
        if not self.vertices:
            raise SpecError("an algebra needs at least one vertex")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: tuple[Arrow, ...] = tuple(arrows)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SpecError("duplicate arrow names")
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        for a in self.arrows:
            if a.source not in self.vertex_index or a.target not in self.vertex_index:
                raise SpecError(f"arrow {a.name} has a dangling endpoint")
        self.relations: tuple[Relation, ...] = tuple(
            self._check_relation(r) for r in relations
        )
        self.bounds = bounds or Bounds()
        self._caches: dict[str, dict] = {}
        self._degrees: list[_DegreeData] | None = None
        self._opposite: Algebra | None = None

    # -- structural helpers -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def arrow_source(self, i: int) -> int:
        return self.vertex_index[self.arrows[i].source]

    def arrow_target(self, i: int) -> int:
        return self.vertex_index[self.arrows[i].target]

    def path_source(self, path: tuple[int, ...]) -> int:
        return self.arrow_source(path[0])

    def path_target(self, path: tuple[int, ...]) -> int:
        return self.arrow_target(path[-1])

    def _check_relation(self, rel) -> Relation:
        terms = []
        for coeff, path in rel:
            coeff = int(coeff) % self.p
            path = tuple(path)
            if len(path) < 2:
                raise SpecError("relation paths must have length >= 2")
            for a in path:
                if not 0 <= a < len(self.arrows):
                    raise SpecError("relation uses an unknown arrow")
            for a, b in zip(path, path[1:]):
                if self.arrow_target(a) != self.arrow_source(b):
                    raise SpecError(
                        "relation path is not composable: "
                        f"{self.arrows[a].name} then {self.arrows[b].name}"
                    )
            if coeff:
                terms.append((coeff, path))
        if not terms:
            raise SpecError("relation vanishes identically mod p")
        src = self.path_source(terms[0][1])
        tgt = self.path_target(terms[0][1])
        for _, path in terms[1:]:
            if self.path_source(path) != src or self.path_target(path) != tgt:
                raise SpecError("relation mixes non-parallel paths")
        return tuple(terms)

    def relation_display(self, rel: Relation) -> str:
        return " + ".join(
            f"{c}*" * (c != 1) + ".".join(self.arrows[a].name for a in path)
            for c, path in rel
        )

    # -- path basis ----------------------------------------------------------

    def _ensure_basis(self) -> list[_DegreeData]:
        if self._degrees is not None:
            return self._degrees
        for rel in self.relations:
            lengths = {len(path) for _, path in rel}
            if len(lengths) != 1:
                raise SpecError(
                    "relations mixing path lengths are not supported for "
                    "basis construction: " + self.relation_display(rel)
                )
        degrees: list[_DegreeData] = []
        # Degree 0: the trivial path at each vertex, encoded as (-1 - v,).
        triv = [(-1 - v,) for v in range(self.num_vertices)]
        degrees.append(
            _DegreeData(triv, {q: i for i, q in enumerate(triv)},
                        linalg.eye(self.num_vertices), list(range(self.num_vertices)))
        )
        d = 1
        while True:
            prev = degrees[d - 1].paths
            paths: list[tuple[int, ...]] = []
            for q in prev:
                tgt = self._generic_target(q)
                for ai, a in enumerate(self.arrows):
                    if self.vertex_index[a.source] == tgt:
                        paths.append(self._extend(q, ai))
            if not paths:
                break
            if len(paths) > _PATH_COUNT_CAP:
                raise SpecError("path count explosion; algebra too large")
            index = {q: i for i, q in enumerate(paths)}
            cols = []
            for rel in self.relations:
                L = len(rel[0][1])
                if L > d:
                    continue
                rsrc = self.path_source(rel[0][1])
                rtgt = self.path_target(rel[0][1])
                for dl in range(d - L + 1):
                    dr = d - L - dl
                    lefts = [q for q in degrees[dl].paths
                             if self._generic_target(q) == rsrc]
                    rights = [w for w in degrees[dr].paths
                              if self._generic_source(w) == rtgt]
                    for q in lefts:
                        for w in rights:
                            v = linalg.zeros(len(paths), 1)
                            for coeff, term in rel:
                                full = self._concat(q, term, w)
                                v[index[full], 0] = (v[index[full], 0] + coeff) % self.p
                            cols.append(v)
            K = np.hstack(cols) if cols else linalg.zeros(len(paths), 0)
            proj, _, chosen = linalg.quotient_projection(K, self.p)
            degrees.append(_DegreeData(paths, index, proj, chosen))
            if not chosen:
                break
            d += 1
            if d > self.bounds.max_iter:
                raise SpecError(
                    "algebra is not finite-dimensional within max_iter degrees"
                )
        self._degrees = degrees
        return degrees

    @staticmethod
    def _is_trivial(q: tuple[int, ...]) -> bool:
        return len(q) == 1 and q[0] < 0

    def _generic_source(self, q: tuple[int, ...]) -> int:
        return -1 - q[0] if q[0] < 0 else self.arrow_source(q[0])

    def _generic_target(self, q: tuple[int, ...]) -> int:
        return -1 - q[-1] if q[-1] < 0 else self.arrow_target(q[-1])

    @staticmethod
    def _strip(q: tuple[int, ...]) -> tuple[int, ...]:
        return () if (len(q) == 1 and q[0] < 0) else q

    def _extend(self, q: tuple[int, ...], arrow: int) -> tuple[int, ...]:
        return self._strip(q) + (arrow,)

    def _concat(self, q, term, w) -> tuple[int, ...]:
        return self._strip(q) + term + self._strip(w)

    @property
    def dimension(self) -> int:
        return sum(len(dd.chosen) for dd in self._ensure_basis())

    def basis_paths(self) -> list[tuple[int, tuple[int, ...]]]:
        """All basis paths as (degree, path) in degree-then-position order."""
        out = []
        for d, dd in enumerate(self._ensure_basis()):
            for i in dd.chosen:
                out.append((d, dd.paths[i]))
        return out

    def reduce_path(self, path: tuple[int, ...]) -> list[tuple[tuple[int, ...], int]]:
        """Express the class of ``path`` over the degree-d basis paths.

        Returns (basis path, coefficient) pairs; empty when the class is 0.
        """
        degrees = self._ensure_basis()
        d = len(path) if not self._is_trivial(path) else 0
        if d >= len(degrees):
            return []
        dd = degrees[d]
        coords = dd.proj[:, dd.index[path]]
        return [(dd.paths[dd.chosen[i]], int(c))
                for i, c in enumerate(coords) if c]

    # -- opposite algebra ----------------------------------------------------

    def opposite(self) -> "Algebra":
        """The opposite algebra; involutive, and the cache makes op(op(A)) be A."""
        if self._opposite is None:
            arrows = [Arrow(a.name, a.target, a.source) for a in self.arrows]
            rels = [
                tuple((c, tuple(reversed(path))) for c, path in rel)
                for rel in self.relations
            ]
            op = Algebra(self.p, self.vertices, arrows, rels, self.bounds)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def cache(self, name: str) -> dict:
        return self._caches.setdefault(name, {})

    def __repr__(self):
        return (f"Algebra(p={self.p}, vertices={list(self.vertices)}, "
                f"arrows={[a.name for a in self.arrows]}, "
                f"relations={len(self.relations)})")


def validate_algebra(spec: dict) -> Algebra:
    """Build an :class:`Algebra` from its JSON-style description.

    Expected keys: ``prime``, ``vertices``, ``arrows`` (name/from/to),
    ``relations`` (lists of ``{coeff, path}`` terms over arrow names) and
    optional ``bounds``.
    """
    if not isinstance(spec, dict):
        raise SpecError("algebra spec must be an object")
    if "prime" not in spec:
        raise SpecError("missing 'prime'")
    try:
        p = int(spec["prime"])
    except (TypeError, ValueError):
        raise SpecError("'prime' must be an integer") from None
    vertices = spec.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise SpecError("'vertices' must be a list of strings")
    arrows = []
    for i, a in enumerate(spec.get("arrows", [])):
        try:
            arrows.append(Arrow(str(a["name"]), str(a["from"]), str(a["to"])))
        except (KeyError, TypeError):
            raise SpecError(f"arrow #{i} needs 'name', 'from' and 'to'") from None
    name_to_idx = {a.name: i for i, a in enumerate(arrows)}
    relations = []
    for i, rel in enumerate(spec.get("relations", [])):
        terms = []
        for t in rel:
            try:
                coeff = int(t["coeff"])
                path_names = list(t["path"])
            except (KeyError, TypeError, ValueError):
                raise SpecError(f"relation #{i} has a malformed term") from None
            for nm in path_names:
                if nm not in name_to_idx:
                    raise SpecError(f"relation #{i} uses unknown arrow '{nm}'")
            terms.append((coeff, tuple(name_to_idx[nm] for nm in path_names)))
        relations.append(tuple(terms))
    bspec = spec.get("bounds", {})
    if not isinstance(bspec, dict):
        raise SpecError("'bounds' must be an object")
    known = {"max_dim", "max_iter", "max_witness_dim"}
    unknown = set(bspec) - known
    if unknown:
        raise SpecError(f"unknown bounds keys: {sorted(unknown)}")
    bounds = Bounds(
        max_dim=int(bspec.get("max_dim", Bounds.max_dim)),
        max_iter=int(bspec.get("max_iter", Bounds.max_iter)),
        max_witness_dim=(int(bspec["max_witness_dim"])
                         if bspec.get("max_witness_dim") is not None else None),
    )
    return Algebra(p, vertices, arrows, relations, bounds)


def algebra_to_dict(alg: Algebra) -> dict:
    """Round-trip inverse of :func:`validate_algebra`."""
    return {
        "prime": alg.p,
        "vertices": list(alg.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target}
                   for a in alg.arrows],
        "relations": [
            [{"coeff": c, "path": [alg.arrows[i].name for i in path]}
             for c, path in rel]
            for rel in alg.relations
        ],
        "bounds": {
            "max_dim": alg.bounds.max_dim,
            "max_iter": alg.bounds.max_iter,
            "max_witness_dim": alg.bounds.max_witness_dim,
        },
    }
