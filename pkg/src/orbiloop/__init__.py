"""String-topology rings of finite quotients [M/G].

Given the loop homology ring A of M (catalog data), a finite group G acting
through a path-connected group, and a field k with char(k) not dividing |G|,
the orbifold loop homology ring is A (x) Z(k[G]) once the action of the
ambient group's loops is trivial.  This package builds the finite algebraic
model behind that statement, checks it exhaustively in degree windows, and
decides the hypotheses from catalog data.
"""

from .field import Field, Scalar, arithmetic
from .groups import (FiniteGroup, build_from_permutations, build_matrix_group,
                     conjugacy_classes, named_group)
from .group_algebra import (CenterAlgebra, GroupAlgebraElement, center_brute_force,
                            class_constants, class_sums)
from .graded import (GradedAlgebra, GradedElement, GradedPresentation, poincare_series,
                     tensor, validate_presentation)
from .sectors import (QuotientElement, SectorElement, SectorModel, TransferUnavailableError,
                      conjugation_action, invariant_basis, orbifold_product, projection_p,
                      sector_product, tensor_iso_phi, transfer_mu, verify_theorem)
from .catalog import Catalog, default_catalog
from .conditions import (OrbifoldProblem, OrbifoldReport, assemble, check_coprime,
                         check_trivial_action, tncz_lookup)

__version__ = "0.1.0"
