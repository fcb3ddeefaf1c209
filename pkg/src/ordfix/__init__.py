"""ordfix: fixed-point theory made checkable on finite ordered metric spaces.

Build a space with :func:`make_space` or :func:`line_space`, pick a
:class:`SelfMap`, then ask the contraction, Picard and theorem modules
about it. The chain metric (:func:`chain_metric`) turns an ordered
contraction into a plain one.
"""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .space import (
    DEFAULT_TOL,
    FiniteMetric,
    Norm,
    OrderedMetricSpace,
    OrderKind,
    OrderRelation,
    SelfMap,
    close_order,
    comparable,
    line_space,
    make_space,
    metric_from_embedding,
    order_from_matrix,
    validate_metric,
)
from .chain import (
    ChainComponents,
    ChainMetric,
    ComparabilityGraph,
    brute_force_chain_metric,
    chain_components,
    chain_metric,
    comparability_graph,
)
from .contraction import (
    ContractionKind,
    ContractionReport,
    Monotonicity,
    StepFunction,
    Witness,
    check_conditional_F_contractive,
    check_property_P,
    check_weak_conditional_G_contractive,
    comparison_profile,
    global_contraction_factor,
    is_comparability_increasing,
    is_monotone,
    minimal_alpha,
    ordered_contraction_factor,
    recheck_witness,
    suzuki_F,
    suzuki_G,
)
from .picard import (
    Cycle,
    OperatorClassification,
    PicardResult,
    check_a06,
    check_ao_self_closed,
    classify_ordered,
    classify_plain,
    fixed_points,
    picard_orbit,
)
from .lab import (
    GeneratorConfig,
    HypothesisReport,
    Instance,
    SearchWitness,
    TheoremCheck,
    generate_instance,
    reduce_to_banach,
    search_counterexamples,
    validate_theorem1,
    validate_theorem2,
    validate_theorem5,
)
