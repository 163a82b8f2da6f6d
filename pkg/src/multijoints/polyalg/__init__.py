"""Exact polynomial algebra over Q."""
from .algebraic import RealAlgebraic
from .tripoly import (GradientTriple, TriPoly, exact_div, gradient, poly_gcd3, product,
                      restrict_to_curve, restrict_to_line, square_free_part)
from .unipoly import (SturmSequence, UniPoly, bivariate_resultant, isolate_real_roots,
                      poly_gcd, resultant, squarefree_part, sturm_distinct_real_roots)
from .zeroset import (CONTAINED, Contained, Count, critical_line_census, is_critical_line,
                      is_critical_point, line_zero_set_incidences)

__all__ = [
    "CONTAINED", "Contained", "Count", "GradientTriple", "RealAlgebraic", "SturmSequence",
    "TriPoly", "UniPoly", "bivariate_resultant", "critical_line_census", "exact_div",
    "gradient", "is_critical_line", "is_critical_point", "isolate_real_roots",
    "line_zero_set_incidences", "poly_gcd", "poly_gcd3", "product", "restrict_to_curve",
    "restrict_to_line", "resultant", "square_free_part", "squarefree_part",
    "sturm_distinct_real_roots",
]
