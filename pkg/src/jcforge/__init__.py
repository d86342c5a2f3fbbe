"""jcforge: exact classification and construction of commuting
semisimple + nilpotent matrix splittings over Q, GF(p) and GF(p)(t),
including the imperfect-field cases where existence can fail and
decompositions come in higher-dimensional families."""

from . import _backend
from .errors import JCForgeError
from .fields import (FieldSpec, arith, characteristic, inv, parse_element,
                     prime_field, rational_functions, rationals, render_element)
from .poly import (Poly, derivative, eval_at_matrix, gcd, insep_degree,
                   is_irreducible, parse_poly_text, poly_arith, render_poly)
from .linalg import (Mat, PolyMat, char_matrix, commutant_dim, companion,
                     frobenius_normal_form, kernel_dim, mat_inverse,
                     minimal_polynomial, parse_matrix_text, rank,
                     render_matrix, smith_invariant_factors,
                     solve_conjugation_space)
from .partitions import (Partition, enumerate_preimages, existence_check,
                         has_multiple_preimages, jc_dimension, mult_of,
                         parse_partition, partitions_of, splice,
                         standard_preimage, weight, zeta_apply, zeta_generator)
from .jc import (ClassificationReport, JCDecomp, PrimaryEndo, admissible_types,
                 build_C, build_J, classification_table, decompose, inv_of,
                 random_decomposition, typ_of, validate_primary, verify_decomp)

__version__ = "0.1.0"

#: True when the compiled kernel extension is in use.
compiled_kernels = _backend.HAVE_FAST
