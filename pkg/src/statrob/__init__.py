"""Statistical robustness verification.

Estimates the probability that a neural-network property is violated under
an input distribution, replacing the binary SAT/UNSAT verdict with a graded
metric. Rare violation events are handled by adaptive multilevel splitting
with Metropolis rejuvenation; a naive Monte Carlo baseline and analytic
oracle problems validate the estimates.
"""

from .errors import ConfigError, DivergedRunError, LoadError, StatrobError
from .estimator import (
    AmlsConfig,
    AmlsResult,
    ChainPopulation,
    NaiveMcResult,
    adapt_proposal,
    amls_run,
    mh_sweep,
    naive_mc,
    quantile_index,
    resample_survivors,
    update_level,
)
from .jobs import emit_counterexamples, export_schemas, run_job
from .models import InputModel, StandardNormal, UniformBox, UniformLinfBall
from .network import (
    DenseLayer,
    Network,
    ReluLayer,
    load_network,
    random_network,
    save_network,
)
from .oracles import (
    OracleProblem,
    gaussian_halfspace_tail,
    impossible_event,
    irwin_hall_tail,
    named_oracles,
)
from .properties import (
    AdversarialMargin,
    BuiltinProperty,
    LinearThreshold,
    MaxOfLinear,
    Property,
    builtin_property,
    infer_true_class,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialMargin",
    "AmlsConfig",
    "AmlsResult",
    "BuiltinProperty",
    "ChainPopulation",
    "ConfigError",
    "DenseLayer",
    "DivergedRunError",
    "InputModel",
    "LinearThreshold",
    "LoadError",
    "MaxOfLinear",
    "NaiveMcResult",
    "Network",
    "OracleProblem",
    "Property",
    "ReluLayer",
    "StandardNormal",
    "StatrobError",
    "UniformBox",
    "UniformLinfBall",
    "adapt_proposal",
    "amls_run",
    "builtin_property",
    "emit_counterexamples",
    "export_schemas",
    "gaussian_halfspace_tail",
    "impossible_event",
    "infer_true_class",
    "irwin_hall_tail",
    "load_network",
    "mh_sweep",
    "naive_mc",
    "named_oracles",
    "quantile_index",
    "random_network",
    "resample_survivors",
    "run_job",
    "save_network",
    "update_level",
]
