"""Orientability, spin structures and Stiefel-Whitney data of real Bott
manifolds, computed from their Bott matrices.

The package decides orientability and spin three independent ways (row
arithmetic, digraph combinatorics, two-row reduction), expands the full
mod-2 cohomology ring as a square-free monomial algebra to serve as the
brute-force oracle, and sweeps whole dimensions to cross-validate them.
"""

from .cohomology import (
    CohomologyRing,
    RingElement,
    SWProfile,
    graded_dimension,
    monomial_degree,
    monomial_str,
    multiply,
    reduce_power_product,
    reduce_square,
    sw_number,
    sw_partitions,
    total_sw_class,
    w1_formula,
    wk_recursive,
)
from .criteria import (
    PairTerms,
    PairWitness,
    RowWitness,
    SpinVerdict,
    fibre_chain_verdicts,
    is_orientable,
    is_spin,
    is_spin_general,
    pair_terms,
    spin_by_pairs,
    w_top_minus_one,
)
from .digraph import BottDigraph, build_digraph, common_out, digraph_spin, export_dot
from .enumeration import (
    SweepReport,
    VerificationReport,
    enumerate_all,
    evaluate_matrix,
    matrix_from_index,
    matrix_index,
    sweep,
    verify_fixture_suite,
    verify_representatives,
)
from .errors import (
    BadPartition,
    BottError,
    CyclicDigraph,
    DiagonalNonzero,
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    NonBinary,
    NonSquare,
)
from .fixtures import orientable_not_spin_family
from .matrix import (
    BottMatrix,
    GeneralBottMatrix,
    Permutation,
    conjugate,
    delete_leading,
    leading_submatrix,
    load_matrix,
    matrix_from_json,
    normalize,
    parse_matrix,
    row_pair_matrix,
)

__version__ = "0.1.0"
