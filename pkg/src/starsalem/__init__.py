"""Coxeter polynomials of star-like trees: exact cyclotomic/Salem
factorization, certified order/degree/multiplicity bounds, and
dominant-root convergence experiments."""

from .intpoly import IntPoly, NotDivisible, NEG_INF
from .cyclotomic import CyclotomicTable, cyclotomic_poly, default_table, euler_phi, phi_sum
from .coxeter import (
    ArityError,
    BlockDecomposition,
    InternalInconsistency,
    OrderError,
    StarTree,
    coxeter_polynomial,
    limit_polynomial,
    mbonacci_poly,
    p_polynomial,
    qrs_blocks,
    spectral_radius,
)
from .factorize import (
    CYCLOTOMIC_ONLY,
    OUTSIDE_HYPOTHESES,
    QUADRATIC_PISOT,
    SALEM,
    CertificationError,
    ClassificationError,
    CoxeterFactorization,
    MultiplicityBoundTrace,
    extract_cyclotomic,
    factor_coxeter,
    first_cyclotomic_divisor,
    multiplicity_bound,
    order_bound,
    salem_degree_lower_bound,
    verify_mann,
    verify_order_bound,
)
from .roots import (
    ConvergenceRecord,
    NoSignChange,
    NonConvergence,
    RootCertificate,
    aberth_roots,
    certify_tree,
    converge_general,
    converge_mbonacci,
    dominant_root,
    fraction_to_decimal,
    unit_circle_residual,
)
from .scan import PeriodicityViolation, ScanRecord, grid_verify, periodicity_scan

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "NotDivisible",
    "NEG_INF",
    "CyclotomicTable",
    "cyclotomic_poly",
    "default_table",
    "euler_phi",
    "phi_sum",
    "ArityError",
    "BlockDecomposition",
    "InternalInconsistency",
    "OrderError",
    "StarTree",
    "coxeter_polynomial",
    "limit_polynomial",
    "mbonacci_poly",
    "p_polynomial",
    "qrs_blocks",
    "spectral_radius",
    "SALEM",
    "QUADRATIC_PISOT",
    "CYCLOTOMIC_ONLY",
    "OUTSIDE_HYPOTHESES",
    "CertificationError",
    "ClassificationError",
    "CoxeterFactorization",
    "MultiplicityBoundTrace",
    "extract_cyclotomic",
    "factor_coxeter",
    "first_cyclotomic_divisor",
    "multiplicity_bound",
    "order_bound",
    "salem_degree_lower_bound",
    "verify_mann",
    "verify_order_bound",
    "ConvergenceRecord",
    "NoSignChange",
    "NonConvergence",
    "RootCertificate",
    "aberth_roots",
    "certify_tree",
    "converge_general",
    "converge_mbonacci",
    "dominant_root",
    "fraction_to_decimal",
    "unit_circle_residual",
    "PeriodicityViolation",
    "ScanRecord",
    "grid_verify",
    "periodicity_scan",
]
