"""Wave-RVFL: randomized networks with a bounded, smooth training loss.

Thin wrapper over the C++ core. All heavy lifting (feature maps, wave loss,
closed-form ridge solutions, Adam training, rank statistics) happens in
compiled code; this package only re-exports it.
"""

from ._core import (
    FeatureMap,
    Model,
    TrainResult,
    accuracy,
    apply_activation,
    average_ranks,
    fit_elm,
    fit_rvfl,
    friedman_test,
    gaussian_noise,
    init_feature_map,
    kfold_assignments,
    label_flip,
    objective,
    objective_gradient,
    solve_ridge,
    square_loss,
    train_wave_rvfl,
    wave_loss,
    wave_loss_dv,
    win_tie_loss,
)

__all__ = [
    "FeatureMap",
    "Model",
    "TrainResult",
    "accuracy",
    "apply_activation",
    "average_ranks",
    "fit_elm",
    "fit_rvfl",
    "friedman_test",
    "gaussian_noise",
    "init_feature_map",
    "kfold_assignments",
    "label_flip",
    "objective",
    "objective_gradient",
    "solve_ridge",
    "square_loss",
    "train_wave_rvfl",
    "wave_loss",
    "wave_loss_dv",
    "win_tie_loss",
]

__version__ = "0.1.0"
