"""Spectral extremal problems for spanning subgraphs: graphs, eigensolvers, bounds, search and diagnostics."""

from __future__ import annotations

__version__ = "0.1.0"

from .bounds import (
    clique_vector_check,
    double_eigenvector_identity,
    feng_yu_bound,
    hong_nikiforov_bound,
    motzkin_straus_check,
    q_test_vector_bound,
    wilf_bound,
)
from .canon import canonical_form
from .embed import FactorQuery, contains_spanning, contains_spanning_bruteforce, has_factor
from .errors import *  # noqa: F401,F403
from .families import (
    CliqueFactor,
    Custom,
    CyclePower,
    ExtremalH,
    PerfectMatching,
    Turan,
    extremal_h,
    parse_family,
)
from .generate import generate_graphs
from .graph import Graph, graph6_decode, graph6_encode
from .lemmas import (
    CliqueFactorCase,
    CyclePowerCase,
    FactorCase,
    check_adjacency_chain,
    check_q_chain,
    verify_corollary,
)
from .search import Objective, SearchOutcome, search_extremal
from .spectra import (
    ADJACENCY,
    SIGNLESS_LAPLACIAN,
    MatrixKind,
    SolverSettings,
    alpha_kind,
    dominant_eigenpair,
    q_index,
    spectral_radius,
)
