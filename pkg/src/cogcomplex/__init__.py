"""Lifespan computational-complexity simulator and calibration toolkit."""

from ._backend import BACKEND
from .calibration import (
    Calibration,
    CalibrationTargets,
    RootFindConfig,
    calibrate,
    calibrate_cognition,
    calibrate_growth,
    calibrate_weakening_tau,
    equivalent_age,
    find_intersection,
    find_peak,
)
from .cognition import (
    CognitionParams,
    cognitive_depth,
    cognitive_depth_raw,
    knowledge,
    register_knowledge_model,
)
from .combinatorics import StateHistogram, enumerate_states, states_with_n_firing, total_states
from .complexity import (
    DEFAULT_H,
    DoubleExponential,
    GrowthParams,
    LinearExponent,
    base_log2,
    neuron_count,
    neuron_count_derivative,
)
from .scenarios import (
    Scenario,
    SuddenLoss,
    SustainedLoss,
    Trajectory,
    damage_factor,
    effective_neurons,
    log2_complexity,
    simulate,
    validate_scenario,
)

__version__ = "0.1.0"
