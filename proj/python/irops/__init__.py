"""Flight disruption feature engineering, embedding and feature selection."""

from ._core import (
    ConditioningError,
    ConfigError,
    ConvergenceError,
    DimensionError,
    DomainError,
    EmptyInputError,
    GprModel,
    IropsError,
    NotFoundError,
    SchemaError,
    engineer,
    fit_yeo_johnson_lambda,
    gpr_fit,
    matern32,
    mi_ksg,
    pca,
    report,
    run,
    sme_qq,
    synth_csv,
    tsne,
    vincenty,
    yeo_johnson,
    yeo_johnson_inverse,
)

__all__ = [name for name in dir() if not name.startswith("_")]
