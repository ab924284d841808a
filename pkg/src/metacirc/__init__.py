"""Metacirculant graphs and the self-dual additive GF(4) codes they generate."""

from __future__ import annotations

import os

import numba

# TBB is often missing; workqueue is always available and fine for prange
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER = "workqueue"

from .addcode import (  # noqa: E402
    AdditiveCode,
    BudgetExceeded,
    TypeClass,
    WeightDistribution,
    classify_type,
    code_from_graph,
    is_symplectic_self_dual,
    low_support_min_weight,
    min_distance,
    weight_distribution,
)
from .algebra import F4Vector, gf4_mul, symplectic_form, trace_hermitian  # noqa: E402
from .invariants import GraphInvariants, graph_invariants  # noqa: E402
from .metacirculant import (  # noqa: E402
    BitGraph,
    InvalidSpecError,
    MetacirculantSpec,
    build_circulant,
    build_graph,
    circulant_isomorphism_guaranteed,
    is_multipartite,
    validate_spec,
    valence,
)
from .quantum import QuantumParams, derive_table78, from_self_dual_code, propagate  # noqa: E402
from .search import (  # noqa: E402
    SearchHit,
    SearchTask,
    class_by_enumerator,
    enumerate_specs,
    exhaustive_search,
    random_search,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveCode",
    "BitGraph",
    "BudgetExceeded",
    "F4Vector",
    "GraphInvariants",
    "InvalidSpecError",
    "MetacirculantSpec",
    "QuantumParams",
    "SearchHit",
    "SearchTask",
    "TypeClass",
    "WeightDistribution",
    "build_circulant",
    "build_graph",
    "circulant_isomorphism_guaranteed",
    "class_by_enumerator",
    "classify_type",
    "code_from_graph",
    "derive_table78",
    "enumerate_specs",
    "exhaustive_search",
    "from_self_dual_code",
    "gf4_mul",
    "graph_invariants",
    "is_multipartite",
    "is_symplectic_self_dual",
    "low_support_min_weight",
    "min_distance",
    "propagate",
    "random_search",
    "symplectic_form",
    "trace_hermitian",
    "valence",
    "validate_spec",
    "weight_distribution",
]
