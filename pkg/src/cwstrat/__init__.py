"""Canonical stratification of finite regular CW complexes.

Computes, for a finite regular CW complex over a prime field GF(p), the
coarsest stratification into cohomology manifolds whose strata are unions of
cells: every cell receives a canonical codimension, cells group into strata,
and the frontier partial order among strata is reported.
"""

from .complex import (
    CWComplex,
    LiveMask,
    ValidationReport,
    build_from_cw,
    build_from_simplices,
    load_complex,
    parse_simplices,
    upset,
    validate,
)
from .engines import HAVE_COMPILED, available_engines, get_engine
from .errors import (
    InvariantViolationError,
    MalformedInputError,
    PreconditionError,
    ValidationFailure,
)
from .field import SparseMatrix, cohomology_dims, rank
from .localcohom import CochainComplex, diff_complex, is_delta, star_complex
from .strata import (
    Stratification,
    components,
    from_document,
    frontier,
    has_morphism,
    same_stratum,
)
from .stratcast import StratState, initial_state, iterate, run

__version__ = "0.1.0"


def canonical_stratification(cx, p=2, workers=None, engine=None):
    """Run the full pipeline: codimensions, strata, frontier.

    Returns ``(state, stratification)``.
    """
    state = run(cx, p=p, workers=workers, engine=engine)
    strat = frontier(cx, components(cx, state.codim))
    return state, strat
