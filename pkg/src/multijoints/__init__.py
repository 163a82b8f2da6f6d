"""Exact multijoint laboratory for lines and parametrised curves in R^3."""
from .core_geom import (Dir3, Line3, Point3, Relation, canonicalize_line, line_intersect,
                        line_through, point_on_line, span3)
from .curvegeom import (AlgebraicPoint, CurveFamilies, ParamCurve, curve_curve_intersections,
                        curve_j_threshold, curve_multijoints, self_crossings, tangent_dirs_at)
from .errors import (BisectionFailed, EmptyThresholdSet, GenericityFailure, LineNotInZeroSet,
                     MultijointError, NotZeroDimensional, SearchBudgetExceeded, UndecidedPredicate,
                     ValidationError, ZeroDirection, ZeroPolynomial)
from .incidence import (IncidenceStructure, LineFamilies, SamplingReport, ThresholdQuery,
                        build_incidences, has_transversal_subcollections, is_multijoint,
                        is_transversal, j_threshold, multijoints, multiplicity, subsample_reduction)
from .partition import (CellLabel, DegreeSchedule, ON_Z, Partition, augment_with_cube, bisect_sets,
                        cell_histogram, cell_label, gk_partition, veronese_lift)
from .polyalg import TriPoly, UniPoly

__version__ = "0.1.0"
