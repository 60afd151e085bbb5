"""JSON-able dictionaries for modules, morphisms and sequences.

Dimensions are keyed by vertex name, actions and blocks by arrow or
vertex name, matrices as row-major nested integer lists. Deserialised
sequences are re-validated so a report never round-trips into an
unchecked witness.
"""

from __future__ import annotations

from .algebra import Algebra
from .exceptions import SpecError
from .modules import Module, Morphism, ShortExactSequence, ses_validate


def module_to_dict(M: Module) -> dict:
    alg = M.algebra
    return {
        "dims": {v: int(d) for v, d in zip(alg.vertices, M.dims)},
        "action": {a.name: M.action[i].tolist()
                   for i, a in enumerate(alg.arrows)},
    }


def module_from_dict(alg: Algebra, d: dict) -> Module:
    try:
        dims = [int(d["dims"][v]) for v in alg.vertices]
    except (KeyError, TypeError) as e:
        raise SpecError(f"module spec is missing dimensions: {e}") from None
    action = []
    for i, a in enumerate(alg.arrows):
        try:
            mat = d["action"][a.name]
        except (KeyError, TypeError):
            raise SpecError(f"module spec is missing arrow '{a.name}'") from None
        rows = dims[alg.arrow_target(i)]
        cols = dims[alg.arrow_source(i)]
        if rows * cols == 0:
            mat = [[0] * cols for _ in range(rows)]
        action.append(mat)
    return Module(alg, dims, action)


def morphism_to_dict(f: Morphism) -> dict:
    alg = f.algebra
    return {
        "source": module_to_dict(f.source),
        "target": module_to_dict(f.target),
        "blocks": {v: f.blocks[i].tolist()
                   for i, v in enumerate(alg.vertices)},
    }


def morphism_from_dict(alg: Algebra, d: dict) -> Morphism:
    src = module_from_dict(alg, d["source"])
    tgt = module_from_dict(alg, d["target"])
    blocks = []
    for i, v in enumerate(alg.vertices):
        try:
            b = d["blocks"][v]
        except (KeyError, TypeError):
            raise SpecError(f"morphism spec is missing vertex '{v}'") from None
        if tgt.dims[i] * src.dims[i] == 0:
            b = [[0] * src.dims[i] for _ in range(tgt.dims[i])]
        blocks.append(b)
    return Morphism(src, tgt, blocks)


def ses_to_dict(S: ShortExactSequence) -> dict:
    return {"mono": morphism_to_dict(S.mono), "epi": morphism_to_dict(S.epi)}


def ses_from_dict(alg: Algebra, d: dict) -> ShortExactSequence:
    return ses_validate(morphism_from_dict(alg, d["mono"]),
                        morphism_from_dict(alg, d["epi"]))
