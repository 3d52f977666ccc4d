"""Python bindings for the qbsd forecasting library."""

from ._qbsd import (
    Granularity,
    ParseError,
    QbsdError,
    RollingForecaster,
    Scheme,
    dataset_names,
    evaluate,
    evaluate_dataset,
    forecast_from_subset,
    generate_synthetic,
    percentile,
    quartiles,
    residuals,
    savgol_coefficients,
    smooth,
    wilcoxon,
)

__all__ = [
    "Granularity",
    "ParseError",
    "QbsdError",
    "RollingForecaster",
    "Scheme",
    "dataset_names",
    "evaluate",
    "evaluate_dataset",
    "forecast_from_subset",
    "generate_synthetic",
    "percentile",
    "quartiles",
    "residuals",
    "savgol_coefficients",
    "smooth",
    "wilcoxon",
]
