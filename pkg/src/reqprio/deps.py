"""Dependency handling: consistency checking, minimal conflicts, minimal
diagnoses, repair orders and blocking factors.

Fixed dependencies (DEP) are background knowledge and never relaxed;
only prioritization-derived constraints (P) appear in conflicts and
diagnoses. A set of strict precedence constraints is satisfiable exactly
when its digraph is acyclic, so consistency checks are cycle checks.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CyclicDependencies, InvalidDiagnosis
from .model import ConstraintKind, PrecedenceConstraint, Ranking


@dataclass(frozen=True)
class OrderingProblem:
    """Requirements plus fixed dependencies and a prioritization chain."""

    requirements: frozenset[str]
    dependencies: tuple[PrecedenceConstraint, ...]
    prioritization: tuple[PrecedenceConstraint, ...]

    def constraint_by_label(self, label: str) -> Optional[PrecedenceConstraint]:
        return next((p for p in self.prioritization if p.label == label), None)


def ranking_to_constraints(ranking: Ranking) -> list[PrecedenceConstraint]:
    """Chain of adjacent-pair constraints over the ranking order,
    labeled p1..p(n-1)."""
    order = ranking.order
    return [
        PrecedenceConstraint(before=order[i], after=order[i + 1],
                             kind=ConstraintKind.PRIO, label=f"p{i + 1}")
        for i in range(len(order) - 1)
    ]


def problem_from_ranking(ranking: Ranking,
                         dependencies: Iterable[PrecedenceConstraint],
                         ) -> OrderingProblem:
    return OrderingProblem(
        requirements=frozenset(ranking.order),
        dependencies=tuple(dependencies),
        prioritization=tuple(ranking_to_constraints(ranking)),
    )


def _find_cycle(edges: Iterable[tuple[str, str]]) -> Optional[list[str]]:
    """Return one cycle as a node list, or None if the digraph is acyclic."""
    graph: dict[str, list[str]] = {}
    for a, b in edges:
        graph.setdefault(a, []).append(b)
        graph.setdefault(b, [])
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {node: WHITE for node in graph}
    parent: dict[str, str] = {}
    for root in graph:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(graph[root]))]
        color[root] = GRAY
        while stack:
            node, children = stack[-1]
            advanced = False
            for child in children:
                if color[child] == GRAY:
                    cycle = [child, node]
                    cur = node
                    while cur != child:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return cycle[:-1]
                if color[child] == WHITE:
                    color[child] = GRAY
                    parent[child] = node
                    stack.append((child, iter(graph[child])))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return None


def _edges(constraints: Iterable[PrecedenceConstraint]):
    return [(c.before, c.after) for c in constraints]


def is_consistent(problem: OrderingProblem,
                  active: Optional[Iterable[PrecedenceConstraint]] = None,
                  ) -> bool:
    """True iff some total order satisfies DEP plus the active subset of P."""
    if active is None:
        active = problem.prioritization
    return _find_cycle(_edges(problem.dependencies) + _edges(active)) is None


def check_dependencies_acyclic(problem: OrderingProblem) -> None:
    cycle = _find_cycle(_edges(problem.dependencies))
    if cycle is not None:
        raise CyclicDependencies(
            "fixed dependencies form a cycle: " + " < ".join(cycle + [cycle[0]]),
            cycle=cycle)


def _quickxplain(problem: OrderingProblem,
                 candidates: Sequence[PrecedenceConstraint],
                 ) -> list[PrecedenceConstraint]:
    """One minimal conflict among ``candidates`` (DEP is background);
    assumes DEP together with all candidates is inconsistent."""

    def recurse(background, delta, soft):
        if delta and not is_consistent(problem, background):
            return []
        if len(soft) == 1:
            return list(soft)
        half = len(soft) // 2
        first, second = soft[:half], soft[half:]
        d2 = recurse(background + first, first, second)
        d1 = recurse(background + d2, d2, first)
        return d1 + d2

    return recurse([], [], list(candidates))


def _conflict_oracle(problem: OrderingProblem):
    """Memoizing oracle: given a candidate subset of P, return a minimal
    conflict within it, or None when consistent with DEP."""
    known: list[frozenset] = []

    def oracle(candidates: Sequence[PrecedenceConstraint]):
        cand_set = frozenset(candidates)
        for conflict in known:
            if conflict <= cand_set:
                return conflict
        if is_consistent(problem, candidates):
            return None
        conflict = frozenset(_quickxplain(problem, candidates))
        known.append(conflict)
        return conflict

    return oracle


def _label_key(constraints: Iterable[PrecedenceConstraint]):
    return sorted(c.label for c in constraints)


def _hitting_sets(problem: OrderingProblem, oracle, limit: Optional[int] = None,
                  ) -> list[frozenset]:
    """Breadth-first hitting-set tree over on-demand conflicts.

    Returns minimal hitting sets (diagnoses) in cardinality-ascending,
    then lexicographic-label order.
    """
    universe = list(problem.prioritization)
    root_conflict = oracle(universe)
    if root_conflict is None:
        return []
    results: list[frozenset] = []
    seen: set[frozenset] = set()
    queue: list[tuple[int, list[str], frozenset]] = []

    def push(removed: frozenset):
        heapq.heappush(queue, (len(removed), _label_key(removed), removed))

    push(frozenset())
    while queue:
        size, _, removed = heapq.heappop(queue)
        if removed in seen:
            continue
        seen.add(removed)
        # prune: a superset of a found diagnosis is never minimal
        if any(diag <= removed for diag in results):
            continue
        remaining = [p for p in universe if p not in removed]
        conflict = oracle(remaining)
        if conflict is None:
            results.append(removed)
            if limit is not None and len(results) >= limit:
                break
            continue
        for constraint in sorted(conflict, key=lambda c: c.label):
            push(removed | {constraint})
    return results


@dataclass(frozen=True)
class Diagnosis:
    """Minimal set of prioritization constraints whose deletion restores
    consistency with the fixed dependencies."""

    constraints: frozenset[PrecedenceConstraint]

    def labels(self) -> list[str]:
        return _label_key(self.constraints)


@dataclass(frozen=True)
class ConflictSet:
    """Minimal subset of prioritization constraints that is inconsistent
    together with the fixed dependencies."""

    constraints: frozenset[PrecedenceConstraint]

    def labels(self) -> list[str]:
        return _label_key(self.constraints)


def diagnoses(problem: OrderingProblem, k: Optional[int] = None,
              ) -> list[Diagnosis]:
    """At most k minimal diagnoses, smallest-cardinality first."""
    if k is not None and k < 1:
        raise ValueError("k must be >= 1")
    check_dependencies_acyclic(problem)
    oracle = _conflict_oracle(problem)
    return [Diagnosis(hs) for hs in _hitting_sets(problem, oracle, limit=k)]


def _minimal_transversals(families: Sequence[frozenset]) -> list[frozenset]:
    """All minimal hitting sets of an explicit set family (hypergraph
    transversals), by incremental intersection-product with pruning."""
    partial: list[frozenset] = [frozenset()]
    for family in families:
        nxt: list[frozenset] = []
        for t in partial:
            if t & family:
                nxt.append(t)
            else:
                nxt.extend(t | {x} for x in family)
        # drop non-minimal candidates
        nxt.sort(key=len)
        kept: list[frozenset] = []
        for t in nxt:
            if not any(k <= t for k in kept):
                kept.append(t)
        partial = kept
    return partial


def minimal_conflicts(problem: OrderingProblem) -> set[frozenset]:
    """All minimal conflict sets (subsets of P inconsistent with DEP).

    Computed as the transversal dual of the complete diagnosis set:
    minimal conflicts are exactly the minimal hitting sets of all
    minimal diagnoses, and vice versa.
    """
    check_dependencies_acyclic(problem)
    all_diagnoses = diagnoses(problem)
    if not all_diagnoses:
        return set()
    return set(_minimal_transversals([d.constraints for d in all_diagnoses]))


@dataclass(frozen=True)
class Repair:
    diagnosis: Diagnosis
    replacement_order: tuple[str, ...]
    flipped_constraints: tuple[PrecedenceConstraint, ...] = ()


def repair(problem: OrderingProblem, diagnosis: Diagnosis,
           utilities: Mapping[str, float]) -> Repair:
    """Concrete consistent replacement order after deleting the diagnosis.

    Topological order over DEP plus the kept P constraints; whenever
    several requirements are simultaneously available, higher utility
    goes first (ties broken by ascending id). Deleted constraints whose
    inversion holds in the result are reported as flips.
    """
    kept = [p for p in problem.prioritization
            if p not in diagnosis.constraints]
    active = list(problem.dependencies) + kept
    if _find_cycle(_edges(active)) is not None:
        raise InvalidDiagnosis(
            "deleting {" + ", ".join(diagnosis.labels())
            + "} does not restore consistency",
            diagnosis=diagnosis.labels())

    successors: dict[str, set[str]] = {r: set() for r in problem.requirements}
    indegree: dict[str, int] = {r: 0 for r in problem.requirements}
    for a, b in _edges(active):
        if b not in successors[a]:
            successors[a].add(b)
            indegree[b] += 1

    def priority(rid: str):
        return (-utilities.get(rid, 0.0), rid)

    available = [priority(r) + (r,) for r, deg in indegree.items() if deg == 0]
    heapq.heapify(available)
    order: list[str] = []
    while available:
        *_, rid = heapq.heappop(available)
        order.append(rid)
        for succ in successors[rid]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                heapq.heappush(available, priority(succ) + (succ,))

    position = {rid: i for i, rid in enumerate(order)}
    flips = tuple(
        PrecedenceConstraint(before=p.after, after=p.before,
                             kind=ConstraintKind.PRIO,
                             label=f"{p.label}_flipped")
        for p in sorted(diagnosis.constraints, key=lambda c: c.label)
        if position[p.after] < position[p.before]
    )
    return Repair(diagnosis=diagnosis, replacement_order=tuple(order),
                  flipped_constraints=flips)


def blocking_factor(dependencies: Iterable[PrecedenceConstraint],
                    requirement_id: str) -> int:
    """Number of requirements transitively blocked by ``requirement_id``
    (reachable along must-precede edges)."""
    deps = list(dependencies)
    cycle = _find_cycle(_edges(deps))
    if cycle is not None:
        raise CyclicDependencies(
            "dependencies form a cycle: " + " < ".join(cycle + [cycle[0]]),
            cycle=cycle)
    graph: dict[str, set[str]] = {}
    for c in deps:
        graph.setdefault(c.before, set()).add(c.after)
    reached: set[str] = set()
    stack = list(graph.get(requirement_id, ()))
    while stack:
        node = stack.pop()
        if node in reached:
            continue
        reached.add(node)
        stack.extend(graph.get(node, ()))
    return len(reached)
