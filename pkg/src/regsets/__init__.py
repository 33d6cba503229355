"""Point sets of small Desarguesian planes with prescribed line-intersection
behaviour, and the projective linear codes they span."""

from .galois import GaloisField, TowerMap, create_field, field_of_order
from .plane import GeometryError, Plane, PlaneLine, PlanePoint, PointSet, plane_over
from .constructions import (
    AdditiveMap,
    CurveParams,
    GeneralMap,
    complement,
    gamma_a,
    hermitian_intersection_count,
    hermitian_unital,
    interior_square_classes,
    lift,
    oval_set,
    touching_union,
    trace_norm_set,
)
from .classify import (
    ClassifyError,
    IntersectionEnumerator,
    TypeReport,
    auto_classify,
    classify,
    direction_census,
    enumerate_intersections,
    is_unital,
)
from .codes import (
    CodeError,
    CodeReport,
    GeneratorMatrix,
    WeightEnumerator,
    code_from_set,
    code_report,
    divisibility,
    enumerator_divisibility_check,
    reduce_mod,
    weights_exhaustive,
    weights_from_enumerator,
)

__version__ = "0.1.0"
