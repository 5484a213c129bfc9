import random

import pytest

from reqprio.deps import (Diagnosis, OrderingProblem, blocking_factor,
                          diagnoses, is_consistent, minimal_conflicts,
                          problem_from_ranking, ranking_to_constraints,
                          repair)
from reqprio.errors import CyclicDependencies, InvalidDiagnosis
from reqprio.model import ConstraintKind, PrecedenceConstraint
from reqprio.utility import rank

from conftest import dep, random_ordering_instance
from oracles import (brute_minimal_conflicts, brute_minimal_diagnoses,
                     brute_minimal_hitting_sets, consistent_by_permutation)


def prio(before, after, label):
    return PrecedenceConstraint(before, after, ConstraintKind.PRIO, label)


def make_problem(req_ids, dep_list, p_list):
    return OrderingProblem(requirements=frozenset(req_ids),
                           dependencies=tuple(dep_list),
                           prioritization=tuple(p_list))


@pytest.fixture
def paper_problem():
    """DEP = {r3<r1, r3<r2}, P = chain over r1..r6."""
    req_ids = [f"r{i}" for i in range(1, 7)]
    deps = [dep("r3", "r1", "dep1"), dep("r3", "r2", "dep2")]
    p = [prio(f"r{i}", f"r{i + 1}", f"p{i}") for i in range(1, 6)]
    return make_problem(req_ids, deps, p)


def labels(sets):
    return {tuple(sorted(c.label for c in s)) for s in sets}


# --- ranking_to_constraints --------------------------------------------------

def test_chain_from_small_ranking():
    chain = ranking_to_constraints(rank({"r1": 3.0, "r2": 2.0, "r3": 1.0}))
    assert [(c.before, c.after, c.label) for c in chain] == \
        [("r1", "r2", "p1"), ("r2", "r3", "p2")]
    assert all(c.kind == ConstraintKind.PRIO for c in chain)


def test_chain_six_requirements():
    utilities = {f"r{i}": float(7 - i) for i in range(1, 7)}
    chain = ranking_to_constraints(rank(utilities))
    assert len(chain) == 5
    assert chain[-1].label == "p5"
    assert (chain[-1].before, chain[-1].after) == ("r5", "r6")


def test_chain_single_requirement():
    assert ranking_to_constraints(rank({"r1": 1.0})) == []


# --- is_consistent -----------------------------------------------------------

def test_paper_problem_inconsistent(paper_problem):
    assert is_consistent(paper_problem) is False


def test_empty_active_with_acyclic_dep(paper_problem):
    assert is_consistent(paper_problem, active=[]) is True


def test_consistency_matches_permutation_oracle():
    rng = random.Random(123)
    for _ in range(300):
        req_ids, dep_list, p_list = random_ordering_instance(rng)
        problem = make_problem(req_ids, dep_list, p_list)
        edges = [(c.before, c.after) for c in dep_list + p_list]
        assert is_consistent(problem) == \
            consistent_by_permutation(req_ids, edges)


# --- minimal_conflicts --------------------------------------------------------

def test_paper_conflicts(paper_problem):
    assert labels(minimal_conflicts(paper_problem)) == {("p2",)}


def test_consistent_problem_has_no_conflicts():
    problem = make_problem(["r1", "r2"], [dep("r1", "r2", "dep1")],
                           [prio("r1", "r2", "p1")])
    assert minimal_conflicts(problem) == set()


def test_two_element_conflict():
    problem = make_problem(["r1", "r2", "r3"], [dep("r3", "r1", "dep1")],
                           [prio("r1", "r2", "p1"), prio("r2", "r3", "p2")])
    assert labels(minimal_conflicts(problem)) == {("p1", "p2")}


# --- diagnoses ------------------------------------------------------------------

def test_paper_diagnoses(paper_problem):
    assert [d.labels() for d in diagnoses(paper_problem)] == [["p2"]]


def test_consistent_problem_has_no_diagnoses():
    problem = make_problem(["r1", "r2"], [], [prio("r1", "r2", "p1")])
    assert diagnoses(problem) == []


def test_disjoint_singleton_conflicts_merge_into_one_diagnosis():
    problem = make_problem(
        ["r1", "r2", "r3", "r4"],
        [dep("r2", "r1", "dep1"), dep("r4", "r3", "dep2")],
        [prio("r1", "r2", "p1"), prio("r2", "r4", "p2"),
         prio("r3", "r4", "p3")])
    assert labels(minimal_conflicts(problem)) == {("p1",), ("p3",)}
    assert [d.labels() for d in diagnoses(problem)] == [["p1", "p3"]]


def test_diagnoses_k_limits_count():
    problem = make_problem(
        ["r1", "r2", "r3"], [dep("r3", "r1", "dep1")],
        [prio("r1", "r2", "p1"), prio("r2", "r3", "p2")])
    # conflict {p1, p2} -> two singleton diagnoses
    assert [d.labels() for d in diagnoses(problem)] == [["p1"], ["p2"]]
    assert [d.labels() for d in diagnoses(problem, k=1)] == [["p1"]]


def test_cardinality_then_label_order():
    # two conflicts sharing no element force multi-element diagnoses
    problem = make_problem(
        ["r1", "r2", "r3", "r4"],
        [dep("r2", "r1", "dep1"), dep("r4", "r3", "dep2")],
        [prio("r1", "r2", "p1"), prio("r3", "r4", "p2")])
    assert [d.labels() for d in diagnoses(problem)] == [["p1", "p2"]]


# --- oracle equivalence ------------------------------------------------------

def test_conflicts_and_diagnoses_match_brute_force():
    rng = random.Random(777)
    checked = 0
    for _ in range(250):
        req_ids, dep_list, p_list = random_ordering_instance(rng)
        problem = make_problem(req_ids, dep_list, p_list)
        dep_edges = [(c.before, c.after) for c in dep_list]
        p_edges = {c.label: (c.before, c.after) for c in p_list}
        if not consistent_by_permutation(req_ids, dep_edges):
            with pytest.raises(CyclicDependencies):
                diagnoses(problem)
            continue
        expected_conflicts = brute_minimal_conflicts(req_ids, dep_edges, p_edges)
        expected_diagnoses = brute_minimal_diagnoses(req_ids, dep_edges, p_edges)
        got_conflicts = {frozenset(c.label for c in s)
                         for s in minimal_conflicts(problem)}
        got_diagnoses = {frozenset(d.labels()) for d in diagnoses(problem)}
        assert got_conflicts == expected_conflicts
        assert got_diagnoses == expected_diagnoses
        # duality: every diagnosis hits every conflict
        for diag in got_diagnoses:
            assert all(diag & conflict for conflict in got_conflicts)
        checked += 1
    assert checked >= 100


def test_diagnoses_equal_hitting_sets_of_conflicts():
    rng = random.Random(31)
    for _ in range(100):
        req_ids, dep_list, p_list = random_ordering_instance(rng)
        problem = make_problem(req_ids, dep_list, p_list)
        dep_edges = [(c.before, c.after) for c in dep_list]
        if not consistent_by_permutation(req_ids, dep_edges):
            continue
        conflicts = [frozenset(c.label for c in s)
                     for s in minimal_conflicts(problem)]
        if not conflicts:
            continue
        expected = brute_minimal_hitting_sets(conflicts)
        got = {frozenset(d.labels()) for d in diagnoses(problem)}
        assert got == expected


# --- repair -------------------------------------------------------------------

def test_paper_repair(paper_problem):
    utilities = {f"r{i}": float(7 - i) for i in range(1, 7)}
    diag = diagnoses(paper_problem)[0]
    result = repair(paper_problem, diag, utilities)
    assert result.replacement_order == ("r3", "r1", "r2", "r4", "r5", "r6")
    pos = {rid: i for i, rid in enumerate(result.replacement_order)}
    kept = [c for c in paper_problem.prioritization
            if c not in diag.constraints]
    for c in list(paper_problem.dependencies) + kept:
        assert pos[c.before] < pos[c.after]
    assert [(f.before, f.after) for f in result.flipped_constraints] == \
        [("r3", "r2")]


def test_repair_noop_on_consistent_problem():
    problem = make_problem(["r1", "r2", "r3"], [],
                           [prio("r1", "r2", "p1"), prio("r2", "r3", "p2")])
    utilities = {"r1": 3.0, "r2": 2.0, "r3": 1.0}
    result = repair(problem, Diagnosis(frozenset()), utilities)
    assert result.replacement_order == ("r1", "r2", "r3")
    assert result.flipped_constraints == ()


def test_repair_orders_by_utility_without_constraints():
    problem = make_problem(["a", "b", "c"], [], [])
    result = repair(problem, Diagnosis(frozenset()),
                    {"a": 1.0, "b": 3.0, "c": 2.0})
    assert result.replacement_order == ("b", "c", "a")


def test_repair_rejects_non_restoring_diagnosis(paper_problem):
    with pytest.raises(InvalidDiagnosis):
        repair(paper_problem, Diagnosis(frozenset({paper_problem.prioritization[0]})),
               {})


def test_repair_validity_random():
    rng = random.Random(909)
    checked = 0
    for _ in range(300):
        req_ids, dep_list, p_list = random_ordering_instance(rng)
        problem = make_problem(req_ids, dep_list, p_list)
        dep_edges = [(c.before, c.after) for c in dep_list]
        if not consistent_by_permutation(req_ids, dep_edges):
            continue
        utilities = {rid: rng.random() for rid in req_ids}
        for diag in diagnoses(problem):
            result = repair(problem, diag, utilities)
            pos = {rid: i for i, rid in enumerate(result.replacement_order)}
            kept = [c for c in problem.prioritization
                    if c not in diag.constraints]
            for c in list(problem.dependencies) + kept:
                assert pos[c.before] < pos[c.after]
            checked += 1
    assert checked >= 50


# --- blocking factor ----------------------------------------------------------

def test_blocking_factor_paper_example():
    deps = [dep("r3", "r1", "dep1"), dep("r3", "r2", "dep2")]
    assert blocking_factor(deps, "r3") == 2
    assert blocking_factor(deps, "r1") == 0


def test_blocking_factor_transitive_chain():
    deps = [dep("a", "b", "dep1"), dep("b", "c", "dep2")]
    assert blocking_factor(deps, "a") == 2
    assert blocking_factor(deps, "b") == 1
    assert blocking_factor(deps, "c") == 0


def test_blocking_factor_cyclic_dep_raises():
    deps = [dep("a", "b", "dep1"), dep("b", "a", "dep2")]
    with pytest.raises(CyclicDependencies) as exc:
        blocking_factor(deps, "a")
    assert set(exc.value.cycle) == {"a", "b"}


def test_blocking_factor_monotone_under_new_edges():
    rng = random.Random(1717)
    for _ in range(100):
        req_ids = [f"r{i}" for i in range(1, rng.randint(3, 7))]
        # build an acyclic DEP from a hidden order
        hidden = req_ids[:]
        rng.shuffle(hidden)
        pos = {r: i for i, r in enumerate(hidden)}
        edges = []
        for k in range(rng.randint(0, 5)):
            a, b = rng.sample(req_ids, 2)
            if pos[a] < pos[b]:
                edges.append(dep(a, b, f"dep{k}"))
        candidates = [(a, b) for a in req_ids for b in req_ids
                      if a != b and pos[a] < pos[b]]
        if not candidates:
            continue
        a, b = rng.choice(candidates)
        before = {r: blocking_factor(edges, r) for r in req_ids}
        grown = edges + [dep(a, b, "extra")]
        for r in req_ids:
            assert blocking_factor(grown, r) >= before[r]
