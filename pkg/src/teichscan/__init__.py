"""Exact computational algebra for stretch-factor scans over fibered cones.

The package factors integer specializations of multivariate Laurent
polynomials, certifies their dominant roots and Mahler measures, decides
totally-real trace fields exactly, and reports whole-cone scans as
CSV/JSON/SVG.
"""

from .conelattice import (
    ConeSpec,
    UnboundedSliceError,
    contains,
    enumerate_primitive,
    is_primitive,
    subcone_margin,
    thurston_norm,
)
from .factorint import Factorization, factor, is_irreducible
from .groupring import CohomClass, DimensionMismatch, MultiLaurentPoly, \
    multiply, specialize, term_count
from .pipeline import (
    ClassReport,
    InternalVerificationError,
    LEHMER_POLY,
    NotInConeError,
    NotPrimitiveError,
    ScanReport,
    analyze_class,
    lehmer_flag,
    ray_sequence,
    scan,
    schinzel_check,
    stretch_factor,
    totally_real_trace_field,
)
from .reportio import PlotStyle, decimal_str, from_json, render_svg, to_csv, to_json
from .rootbox import (
    CERT_RATIO,
    DEFAULT_PRECISION_CEILING,
    MeasureInterval,
    NoPerronRootError,
    PrecisionCeilingError,
    RootEnclosure,
    complex_enclosures,
    count_unimodular,
    isolate_real_roots,
    mahler_measure,
    mahler_split,
    perron_root,
)
from .unipoly import (
    ExactDivisionError,
    IntPoly,
    RationalInterval,
    content_and_primitive,
    cyclotomic_poly,
    descartes_bound,
    exact_div,
    gcd,
    is_cyclotomic,
    reciprocal_type,
    squarefree_part,
    sturm_count,
    trace_transform,
)

__version__ = "0.1.0"
