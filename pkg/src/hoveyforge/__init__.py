"""hovey-forge: exact construction and certification of Hovey triples.

The package works with finite-dimensional representations of a quiver
with relations over a prime field. From two complete hereditary cotorsion
pairs satisfying the two compatibility conditions it computes the thick
class of trivial objects by bounded witness search, machine-checks every
property a Hovey triple must satisfy, and reports the evidence.
"""

from .algebra import Algebra, Arrow, Bounds, algebra_to_dict, validate_algebra
from .catalog import (Catalog, CotorsionPair, ObjectClass, build_catalog,
                      build_cotorsion_pair, class_membership, left_orthogonal,
                      object_class, right_orthogonal, special_precover,
                      special_preenvelope, verify_cotorsion_pair,
                      verify_hereditary)
from .decomp import Decomposition, decompose, is_isomorphic
from .demos import DEMO_NAMES, demo_spec
from .exceptions import (DescriptionMismatchError, ExactnessError,
                         HoveyForgeError, InvalidModuleError, ObstructionError,
                         PreconditionError, SpecError, UndecidedError)
from .homological import (CommutingSquare, ExtClass, ExtSpace, Presentation,
                          ThreeByThree, TransportedExtension, bicartesian_check,
                          cosyzygy, ext1, ext_dim, extension_class, horseshoe,
                          injective_envelope_ses, is_injective, is_projective,
                          lift_through_epi, projective_presentation,
                          pullback_extension, pushout_extension,
                          realize_extension, realize_extension_with_square,
                          sequences_equivalent, syzygy)
from .hovey import (BuildOutcome, HoveyTriple, MorphismClassification,
                    build_hovey_triple, check_compatibility, classify_morphism,
                    compute_trivial_class, coresolution_to_resolution,
                    coresolution_witness, resolution_to_coresolution,
                    resolution_witness, verify_identities, verify_thickness)
from .linalg import kernel_basis, linear_solve
from .modules import (DirectSum, Morphism, Module, Pullback, Pushout,
                      ShortExactSequence, cokernel_of, direct_sum,
                      direct_sum_many, dual_module, dual_morphism,
                      factor_through_cokernel, factor_through_mono, hom_basis,
                      identity_morphism, injective_module, kernel_of,
                      path_action, projective_module, pullback, pushout,
                      ses_validate, simple_module, split_mono_retraction,
                      split_ses, validate_module, zero_module, zero_morphism)

__version__ = "0.1.0"
