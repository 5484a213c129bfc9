"""Shared fixtures: the worked example projects and random generators."""

from __future__ import annotations

import random

import pytest

from reqprio.model import (ConstraintKind, DimensionSource, EvaluationSet,
                           InterestDimension, PrecedenceConstraint, Project,
                           Requirement, Stakeholder)

MANUAL_DIMS = [InterestDimension(d, d, DimensionSource.MANUAL)
               for d in ("profit", "risk", "effort")]


def manual_project(evals_by_stakeholder, weights_by_stakeholder,
                   expertise_by_stakeholder=None, dependencies=()):
    """Build a project from {sid: {rid: {dim: value}}} evaluations."""
    expertise_by_stakeholder = expertise_by_stakeholder or {}
    req_ids = sorted({rid for by_req in evals_by_stakeholder.values()
                      for rid in by_req})
    entries = {}
    for sid, by_req in evals_by_stakeholder.items():
        for rid, by_dim in by_req.items():
            for did, value in by_dim.items():
                entries[(did, rid, sid)] = float(value)
    return Project(
        requirements=tuple(Requirement(id=rid) for rid in req_ids),
        stakeholders=tuple(
            Stakeholder(id=sid, dimension_weights=weights,
                        dimension_expertise=expertise_by_stakeholder.get(sid, {}))
            for sid, weights in weights_by_stakeholder.items()),
        dimensions=tuple(MANUAL_DIMS),
        evaluations=EvaluationSet(entries),
        dependencies=tuple(dependencies),
    )


@pytest.fixture
def single_user_project():
    """Tables I/II: one stakeholder, static weights."""
    evals = {"s1": {
        "r1": {"profit": 10, "risk": 7, "effort": 2},
        "r2": {"profit": 5, "risk": 2, "effort": 3},
        "r3": {"profit": 4, "risk": 8, "effort": 7},
    }}
    weights = {"s1": {"profit": 0.3, "risk": 0.5, "effort": 0.2}}
    return manual_project(evals, weights)


GROUP_EVALS = {
    "s1": {"r1": {"profit": 5, "risk": 3, "effort": 2},
           "r2": {"profit": 5, "risk": 2, "effort": 3},
           "r3": {"profit": 2, "risk": 3, "effort": 5}},
    "s2": {"r1": {"profit": 2, "risk": 3, "effort": 3},
           "r2": {"profit": 1, "risk": 5, "effort": 4},
           "r3": {"profit": 2, "risk": 2, "effort": 6}},
    "s3": {"r1": {"profit": 2, "risk": 4, "effort": 2},
           "r2": {"profit": 2, "risk": 6, "effort": 2},
           "r3": {"profit": 6, "risk": 2, "effort": 2}},
}

GROUP_WEIGHTS = {
    "s1": {"profit": 0.5, "risk": 0.3, "effort": 0.2},
    "s2": {"profit": 0.3, "risk": 0.6, "effort": 0.1},
    "s3": {"profit": 0.6, "risk": 0.3, "effort": 0.1},
}


@pytest.fixture
def group_project():
    """Tables IV/V: three stakeholders evaluating three requirements."""
    return manual_project(GROUP_EVALS, GROUP_WEIGHTS)


@pytest.fixture
def oss_project():
    """Tables VII/VIII: tracker metrics plus supplied per-requirement
    weights for stakeholder s1."""
    dims = tuple(InterestDimension(d, d, DimensionSource.METRIC)
                 for d in ("cc", "gerrit", "blocker", "comments"))
    reqs = (
        Requirement(id="r1", metrics={"cc": 5, "gerrit": 3, "blocker": 2,
                                      "comments": 2}),
        Requirement(id="r2", metrics={"cc": 2, "gerrit": 3, "blocker": 3,
                                      "comments": 3}),
        Requirement(id="r3", metrics={"cc": 2, "gerrit": 4, "blocker": 2,
                                      "comments": 2}),
    )
    s1 = Stakeholder(id="s1", requirement_weights={"r1": 0.5, "r2": 0.3,
                                                   "r3": 0.2})
    return Project(requirements=reqs, stakeholders=(s1,), dimensions=dims)


def dep(before, after, label):
    return PrecedenceConstraint(before=before, after=after,
                                kind=ConstraintKind.DEP, label=label)


@pytest.fixture
def section4_project():
    """Six requirements with descending utilities r1..r6 and the two fixed
    dependencies r3 < r1, r3 < r2."""
    evals = {"s1": {f"r{i}": {"profit": 7 - i, "risk": 0, "effort": 0}
                    for i in range(1, 7)}}
    weights = {"s1": {"profit": 1.0, "risk": 0.0, "effort": 0.0}}
    return manual_project(evals, weights,
                          dependencies=[dep("r3", "r1", "dep1"),
                                        dep("r3", "r2", "dep2")])


def random_manual_project(rng: random.Random, max_requirements=5,
                          max_stakeholders=4, max_dimensions=4,
                          with_dependencies=False) -> Project:
    """Dense random project that always passes validation."""
    n_req = rng.randint(1, max_requirements)
    n_stk = rng.randint(1, max_stakeholders)
    n_dim = rng.randint(1, max_dimensions)
    req_ids = [f"r{i}" for i in range(1, n_req + 1)]
    dim_ids = [f"d{i}" for i in range(1, n_dim + 1)]
    stakeholders = []
    for j in range(1, n_stk + 1):
        raw = [rng.random() + 0.05 for _ in dim_ids]
        total = sum(raw)
        weights = {d: w / total for d, w in zip(dim_ids, raw)}
        # exact sum-to-1 under float: pin the last weight
        weights[dim_ids[-1]] = 1.0 - sum(weights[d] for d in dim_ids[:-1])
        expertise = {d: rng.random() for d in dim_ids if rng.random() < 0.5}
        stakeholders.append(Stakeholder(id=f"s{j}", dimension_weights=weights,
                                        dimension_expertise=expertise))
    entries = {}
    for d in dim_ids:
        for r in req_ids:
            for s in stakeholders:
                entries[(d, r, s.id)] = round(rng.uniform(0, 10), 3)
    dependencies = []
    if with_dependencies and n_req >= 2:
        for k in range(rng.randint(0, 3)):
            a, b = rng.sample(req_ids, 2)
            dependencies.append(dep(a, b, f"dep{k + 1}"))
    return Project(
        requirements=tuple(Requirement(id=r) for r in req_ids),
        stakeholders=tuple(stakeholders),
        dimensions=tuple(InterestDimension(d, d, DimensionSource.MANUAL)
                         for d in dim_ids),
        evaluations=EvaluationSet(entries),
        dependencies=tuple(dependencies),
    )


def random_ordering_instance(rng: random.Random, max_requirements=6,
                             max_p=5, max_dep=4):
    """Random requirement set with DEP edges and a P chain prefix.

    Returns (requirement_ids, dep_constraints, p_constraints).
    """
    n = rng.randint(2, max_requirements)
    req_ids = [f"r{i}" for i in range(1, n + 1)]
    order = req_ids[:]
    rng.shuffle(order)
    m = rng.randint(0, min(max_p, n - 1))
    p = [PrecedenceConstraint(order[i], order[i + 1], ConstraintKind.PRIO,
                              f"p{i + 1}") for i in range(m)]
    deps = []
    for k in range(rng.randint(0, max_dep)):
        a, b = rng.sample(req_ids, 2)
        deps.append(dep(a, b, f"dep{k + 1}"))
    return req_ids, deps, p
