"""Python bindings for the rssmeet simulation and analysis library."""

from ._core import (
    Arm,
    ChannelParams,
    ConfigError,
    LogBase,
    PolicyKind,
    TaylorForm,
    bounds_table,
    closest_player_prob,
    closest_player_prob_bound,
    drift_parameter,
    figure1_table,
    greedy_meeting_bound,
    metric_m,
    prob_positive,
    q_function,
    reward_distribution,
    roptimal_meeting_bound,
    run_experiment,
    run_trial,
)

__all__ = [
    "Arm",
    "ChannelParams",
    "ConfigError",
    "LogBase",
    "PolicyKind",
    "TaylorForm",
    "bounds_table",
    "closest_player_prob",
    "closest_player_prob_bound",
    "drift_parameter",
    "figure1_table",
    "greedy_meeting_bound",
    "metric_m",
    "prob_positive",
    "q_function",
    "reward_distribution",
    "roptimal_meeting_bound",
    "run_experiment",
    "run_trial",
]
