"""Isoperimetric ratios of convex polytopes, Steiner symmetrization and
certified interval bounds."""

from ._core import (
    BudgetExceeded,
    CertificationFailed,
    DegenerateInput,
    DomainError,
    Error,
    InvalidApexPair,
    NotOctahedralType,
    ParseError,
    Polytope,
    bipyramid_symmetral,
    branch_and_bound,
    certify_distanceest,
    certify_mutant6,
    certify_volumeest,
    convex_hull,
    enclose_strange5,
    eval_G,
    find_apex_pair,
    feasible,
    insphere,
    isoperimetric_ratio,
    jensen_bound,
    load_polytope,
    octahedral_pipeline,
    realize,
    steiner_symmetral,
    strange5_ratio,
    strange_G,
    strange_S,
    strange_V,
    surface_area,
    volume,
)

__all__ = [name for name in dir() if not name.startswith("_")]
