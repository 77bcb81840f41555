"""SVMs for additive models: composable sum kernels, Lipschitz-loss
training on weighted discrete measures, and robustness diagnostics."""

try:
    from ._addsvm import *  # noqa: F401,F403 (installed package layout)
except ImportError:
    from _addsvm import *  # noqa: F401,F403 (bare build tree on sys.path)

__all__ = [
    "BiasCurve",
    "BiasRow",
    "BifResult",
    "DiscreteMeasure",
    "HElement",
    "KernelBlock",
    "KernelSpec",
    "LossSpec",
    "SvmModel",
    "TrainReport",
    "bias_check",
    "bif_finite_diff",
    "bif_pinball_closed",
    "eval_kernel",
    "gen_sim",
    "gram",
    "h_subtract",
    "kkt_residual",
    "lambda_schedule",
    "load_model",
    "sup_norm_bound",
    "train",
    "true_f",
    "tv_norm_diff",
]
