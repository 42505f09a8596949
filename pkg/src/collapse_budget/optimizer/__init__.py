from .testable import (
    LAMBDA_REL_WIDTH,
    RADIUS_WINDOW,
    TESTABLE_COLUMNS,
    BisectionResult,
    OptimizeSpec,
    RatioProbe,
    TestableBound,
    bisect_lambda,
    min_lambda_at_geometry,
    min_testable_lambda,
    ratio_statistic,
    testable_range_curve,
    testable_table,
)

__all__ = [
    "BisectionResult",
    "LAMBDA_REL_WIDTH",
    "OptimizeSpec",
    "RADIUS_WINDOW",
    "RatioProbe",
    "TESTABLE_COLUMNS",
    "TestableBound",
    "bisect_lambda",
    "min_lambda_at_geometry",
    "min_testable_lambda",
    "ratio_statistic",
    "testable_range_curve",
    "testable_table",
]
