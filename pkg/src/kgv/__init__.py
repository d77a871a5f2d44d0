"""Exact class-number counting and bound verification for linear group actions."""

from .bounds import (
    BoundReport,
    ExtraspecialCase,
    aux_class_bounds,
    case_chain,
    case_report,
    d_constants,
    exceptional_pairs_scan,
    extraspecial_bound,
    g_order_bound,
    imprimitive_bound,
    metacyclic_bound,
    scan_section5,
    section5_bound,
)
from .brute_force import (
    MetacyclicSpec,
    jordan_block_orbit_count,
    jordan_class_datum,
    kgv_count,
    load_generator_file,
    metacyclic_enumerate,
    metacyclic_matrix_group,
    normalizer_in_gl,
    type_histogram,
    verify_metacyclic_theorem,
    verify_small_lemmas,
)
from .element_counts import (
    ClassDatum,
    CountTable,
    element_count_for_label,
    family_count,
    fg_unipotent_count,
    section3_table,
    total_class_sum,
    validate_class_datum,
    wall_count,
)
from .group_orders import GroupLabel, classical_order
from .intmath import pow_frac_ceil
from .matgroup import FiniteMatrixGroup, closure, general_linear_group, matrix_space, symplectic_group
from .orbit_bounds import RdimProfile, d1, d2, eigen_dim_bound, max_multiplicity, rdim_case
from .partitions import Partition, SignedPartition, dual, enumerate_partitions, stats, validate_signed
from .polyfield import FiniteField, MonicPoly, enumerate_irreducibles, make_field, reciprocal_conjugate, zsigmondy

__version__ = "0.1.0"
