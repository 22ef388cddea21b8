"""Agent-based simulator of collective decision-making with emotion-
modulated recruitment and cross-inhibition, plus a mean-field reference
integrator and a replication/metrics harness."""

from .config import ExperimentConfig, load_config
from .dynamics import (
    SimResult,
    StepEvents,
    apply_contagion,
    inhibition_rate,
    recruitment_rate,
    run_sim,
    step,
)
from .harness import run_condition, run_replications, write_outputs
from .meanfield import (
    MeanFieldParams,
    MeanFieldState,
    bee_rhs,
    integrate,
    symmetric_equilibrium,
)
from .metrics import (
    ConditionSummary,
    RunSummary,
    Trajectory,
    aggregate,
    auc_difference,
    consensus_time,
    emotional_trajectory,
    half_life,
    summarize_run,
    winner,
)
from .model import (
    Agent,
    DecisionState,
    EmotionState,
    GridDims,
    GroupEmotionSpec,
    InitSpec,
    ModelParams,
    Population,
    dump_grid,
    fractions,
    init_population,
    neighbors,
    sample_truncated_normal,
)
from .scenarios import (
    Condition,
    ScenarioDefaults,
    scenario1_conditions,
    scenario2_conditions,
    scenario3_condition,
)

__version__ = "0.1.0"
