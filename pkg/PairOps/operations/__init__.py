from .base import PairOperation, SubmoduleSelector, SELECTORS, identity_operation, zero_interior, full_closure
from .builders import (
    gamma,
    make_be,
    make_bf,
    make_custom_table,
    make_frobenius_closure,
    make_module_closure,
    make_trace,
    rho,
)
from .combinators import cohereditary_version, finitistic, hereditary_version, join, meet
from .catalogue import duality_catalogue, module_catalogue
from .properties import check_properties, check_selector_properties, compare_dual_reports
