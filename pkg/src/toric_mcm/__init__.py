"""Local cohomology and rank-one maximal Cohen-Macaulay modules over affine toric rings."""

from .errors import (DimensionMismatch, InvalidGenerator, NotFullDimensional, NotPrimitive,
                     NotStrictlyConvex, RedundantRay, ToricError, TooManyRays, ValidationError)
from .lattice_geometry import Cone, Face, FaceLattice, face_lattice, minimal_face, star, validate_cone
from .simplicial import (QQ, CochainComplex, CohomologyDims, FieldSpec, SimplicialComplex,
                         augmented_cochain, reduced_cohomology_dims, relative_cohomology_dims,
                         restrict)
from .toric_data import MAXIMAL, Divisor, MonomialIdeal, SupportSet, cosupport, sigma_m, support
from .feasibility import (FeasibilityVerdict, InequalitySystem, Status, integer_feasible,
                          real_feasible, recession_dim)
from .chambers import ChamberReport, chamber_system, classify_chamber, cones_intersect, enumerate_chambers
from .cohomology_engine import (CohomologyReport, McmCertificate, McmEnumeration, SingularitySets,
                                canonical_class, depth, graded_local_cohomology, local_piece,
                                mcm_check, mcm_enumerate, singularity_sets)

__version__ = "0.1.0"
