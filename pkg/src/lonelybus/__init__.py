"""Lonely passengers: exact occupancy laws, dominance in the number of buses,
and exhaustive checks of the reassignment-coupling argument."""

__version__ = "0.1.0"

from .events import (  # noqa: E402
    EventFlagsT1,
    EventFlagsT2,
    classify_theorem1,
    classify_theorem2,
    first_nonlonely_index,
    index_set_P,
)
from .exact import (  # noqa: E402
    DominanceReport,
    LonelyPmf,
    dominance_report,
    exact_pmf,
    expected_lonely,
    singleton_ways,
    tail_prob,
)
from .model import (  # noqa: E402
    Configuration,
    ContractError,
    EnumerationCapError,
    InputError,
    Params,
    enumerate_configurations,
    lonely_count,
    occupancy_from_assignment,
    reassign,
)
from .montecarlo import Estimate, estimate_tail, sample_lonely_count  # noqa: E402
from .verify import (  # noqa: E402
    VerificationReport,
    association_expand,
    association_invert,
    bijection_backward,
    bijection_forward,
    verify_theorem1,
    verify_theorem2,
)
