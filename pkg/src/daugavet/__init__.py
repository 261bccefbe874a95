"""Finite verification of the Daugavet equation ``||I + T|| = 1 + ||T||`` for
kernel operators on C(S)."""

__version__ = "0.1.0"

from .scalars import DEFAULT_TOL, ComplexRational, InputError, Surd  # noqa: E402
from .measure import (  # noqa: E402
    DiscreteSpace,
    SignedMeasure,
    add_scaled,
    atom,
    dirac,
    measure,
    total_variation,
    tv_excluding,
    zero_measure,
)
from .operator import (  # noqa: E402
    KernelOperator,
    apply,
    compose,
    identity,
    identity_plus,
    kernel,
    sup_operator_norm,
    transpose,
    with_scalar,
    zero_operator,
)
from .daugavet import (  # noqa: E402
    DaugavetReport,
    RowStat,
    SizeError,
    brute_force_norm,
    check_double_star,
    check_star,
    complex_sweep_max,
    daugavet_report,
    defect_upper_bound,
    grid_sweep_max,
    norm_id_plus_scaled,
)
from .expression import parse_expression  # noqa: E402
from .models import (  # noqa: E402
    Atomic,
    AtomList,
    C0Factored,
    Density,
    DensityMeasure,
    RankOne,
    discretize,
    random_kernel,
    zero_atom_points,
)
from .asymptotic import dual_study, refinement_study  # noqa: E402
from .foias import KernelOracle, escalate, mock_oracle, oracle_from_spec, verify_chain  # noqa: E402
from .search import SearchConfig, exhaustive_scan, search_counterexamples  # noqa: E402
