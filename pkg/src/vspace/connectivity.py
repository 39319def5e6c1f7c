"""Covers, overlap graphs, and the connectedness decision.

A cover picks one vicinity per point.  Two points are connected when
*every* cover admits a finite chain between them whose consecutive chosen
vicinities intersect.  A cover admitting no such chain is a witness that
the points are not connected.

Two engines decide connectedness:

* ``brute`` enumerates covers in lexicographic order of (point id,
  vicinity index) and returns the first witness found, so its witness is
  deterministic and stable for golden tests.
* ``pruned`` runs a branch-and-prune search over the same space.  It must
  return the same verdict as ``brute`` and a valid witness, but not
  necessarily the same one.

Identical vicinity sets within one system are collapsed before either
search (they induce identical overlap graphs); reported witness indices
always refer to the original sequence.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Mapping

from .errors import BudgetExceededError, ValidationError
from .spaces import WEAK, FiniteVSpace, VicinitySystem, require_valid_space

# Hard cap on enumerated covers (brute) or visited search nodes (pruned).
DEFAULT_MAX_COVERS = 2**24

Cover = Mapping[int, int]


@dataclass(frozen=True)
class ConnectivityVerdict:
    """Outcome of the connectedness decision.

    ``connected`` means every cover admits a chain; no single example
    chain is attached because one cover's chain proves nothing about the
    rest.  ``witness`` is set exactly when not connected.
    """

    connected: bool
    witness: dict[int, int] | None = None


def resolve_choice(system: VicinitySystem, index: int) -> frozenset[int]:
    """The vicinity set a cover index denotes, honouring weak padding."""
    if not system.vicinities:
        raise ValidationError(f"point {system.owner} has an empty system")
    if index < 0:
        raise ValidationError(f"negative vicinity index {index} for point {system.owner}")
    if index >= len(system.vicinities):
        if system.mode == WEAK:
            return system.vicinities[0]
        raise ValidationError(
            f"index {index} out of range for point {system.owner} "
            f"(strong system of length {len(system.vicinities)})"
        )
    return system.vicinities[index]


def validate_cover(space: FiniteVSpace, cover: Cover) -> None:
    missing = sorted(p for p in space.points if p not in cover)
    if missing:
        raise ValidationError(f"cover missing points {missing}")
    stray = sorted(p for p in cover if p not in space.points)
    if stray:
        raise ValidationError(f"cover mentions unknown points {stray}")
    for p in space.points:
        resolve_choice(space.system(p), cover[p])


def chosen_vicinities(space: FiniteVSpace, cover: Cover) -> dict[int, frozenset[int]]:
    validate_cover(space, cover)
    return {p: resolve_choice(space.system(p), cover[p]) for p in space.points}


def overlap_graph(space: FiniteVSpace, cover: Cover) -> dict[int, set[int]]:
    """Undirected graph with an edge wherever two chosen vicinities meet."""
    chosen = chosen_vicinities(space, cover)
    adj: dict[int, set[int]] = {p: set() for p in space.points}
    pts = list(space.points)
    for i, x in enumerate(pts):
        for y in pts[i + 1 :]:
            if not chosen[x].isdisjoint(chosen[y]):
                adj[x].add(y)
                adj[y].add(x)
    return adj


def _require_endpoints(space: FiniteVSpace, a: int, b: int) -> None:
    for e in (a, b):
        if e not in space.points:
            raise ValidationError(f"endpoint {e} not a point of the space")


def chain_exists(space: FiniteVSpace, cover: Cover, a: int, b: int) -> list[int] | None:
    """Shortest chain from a to b under the cover, or None.

    a == b yields the length-zero chain [a].  Ties are broken by visiting
    neighbours in ascending order, so the result is deterministic.
    """
    _require_endpoints(space, a, b)
    adj = overlap_graph(space, cover)
    if a == b:
        return [a]
    parent: dict[int, int] = {a: a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                if y == b:
                    path = [b]
                    while path[-1] != a:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(y)
    return None


def verify_witness(space: FiniteVSpace, cover: Cover, a: int, b: int) -> bool:
    """True iff the cover admits no chain from a to b."""
    return chain_exists(space, cover, a, b) is None


def _distinct_choices(space: FiniteVSpace) -> list[list[tuple[int, frozenset[int]]]]:
    """Per point, the distinct vicinity sets with their first original index."""
    out = []
    for p in space.points:
        system = space.system(p)
        if not system.vicinities:
            raise ValidationError(f"point {p} has an empty system")
        seen: dict[frozenset[int], int] = {}
        for i, vic in enumerate(system.vicinities):
            if vic not in seen:
                seen[vic] = i
        out.append([(i, vic) for vic, i in seen.items()])
    return out


def _sets_reachable(sets: list[frozenset[int]], a: int, b: int) -> bool:
    n = len(sets)
    seen = [False] * n
    seen[a] = True
    stack = [a]
    while stack:
        x = stack.pop()
        sx = sets[x]
        for y in range(n):
            if not seen[y] and not sx.isdisjoint(sets[y]):
                if y == b:
                    return True
                seen[y] = True
                stack.append(y)
    return False


def _brute(
    choices: list[list[tuple[int, frozenset[int]]]],
    a: int,
    b: int,
    max_covers: int,
) -> ConnectivityVerdict:
    total = prod(len(c) for c in choices)
    if total > max_covers:
        raise BudgetExceededError(f"{total} covers exceed the budget of {max_covers}")
    n = len(choices)
    for combo in itertools.product(*(range(len(c)) for c in choices)):
        sets = [choices[p][combo[p]][1] for p in range(n)]
        if not _sets_reachable(sets, a, b):
            witness = {p: choices[p][combo[p]][0] for p in range(n)}
            return ConnectivityVerdict(False, witness)
    return ConnectivityVerdict(True)


class _PrunedSearch:
    """Branch-and-prune over per-point vicinity choices.

    At each node two bounding graphs are read off the remaining options:
    *mandatory* edges are present under every completion of the partial
    assignment, *possible* edges under at least one.  If the endpoints
    are joined by mandatory edges no completion is a witness (prune); if
    even the possible edges cannot join them, any completion is a witness
    (take the first).  Otherwise branch on an undecided endpoint of some
    non-mandatory edge along a shortest possible path.
    """

    def __init__(self, choices, a, b, max_nodes):
        self.choices = choices
        self.n = len(choices)
        self.a = a
        self.b = b
        self.max_nodes = max_nodes
        self.nodes = 0
        # intersect[x][y][i][j] for x < y: does option i of x meet option j of y
        self.intersect: dict[tuple[int, int], list[list[bool]]] = {}
        for x in range(self.n):
            for y in range(x + 1, self.n):
                self.intersect[(x, y)] = [
                    [not vx.isdisjoint(vy) for _, vy in choices[y]] for _, vx in choices[x]
                ]
        self.assignment: list[int | None] = [
            0 if len(choices[p]) == 1 else None for p in range(self.n)
        ]

    def _options(self, p: int) -> list[int]:
        fixed = self.assignment[p]
        return [fixed] if fixed is not None else list(range(len(self.choices[p])))

    def _edge_flags(self, x: int, y: int) -> tuple[bool, bool]:
        """(possible, mandatory) for the edge between x < y."""
        matrix = self.intersect[(x, y)]
        possible = False
        mandatory = True
        for i in self._options(x):
            row = matrix[i]
            for j in self._options(y):
                if row[j]:
                    possible = True
                else:
                    mandatory = False
                if possible and not mandatory:
                    return True, False
        return possible, mandatory and possible

    def _graphs(self) -> tuple[dict[int, set[int]], dict[int, set[int]], set[tuple[int, int]]]:
        possible_adj: dict[int, set[int]] = {p: set() for p in range(self.n)}
        mandatory_adj: dict[int, set[int]] = {p: set() for p in range(self.n)}
        soft: set[tuple[int, int]] = set()
        for x in range(self.n):
            for y in range(x + 1, self.n):
                possible, mandatory = self._edge_flags(x, y)
                if possible:
                    possible_adj[x].add(y)
                    possible_adj[y].add(x)
                if mandatory:
                    mandatory_adj[x].add(y)
                    mandatory_adj[y].add(x)
                elif possible:
                    soft.add((x, y))
        return possible_adj, mandatory_adj, soft

    @staticmethod
    def _shortest_path(adj: dict[int, set[int]], a: int, b: int) -> list[int] | None:
        if a == b:
            return [a]
        parent = {a: a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if y not in parent:
                    parent[y] = x
                    if y == b:
                        path = [b]
                        while path[-1] != a:
                            path.append(parent[path[-1]])
                        path.reverse()
                        return path
                    queue.append(y)
        return None

    def _completion(self) -> dict[int, int]:
        return {
            p: self.choices[p][self.assignment[p] if self.assignment[p] is not None else 0][0]
            for p in range(self.n)
        }

    def search(self) -> dict[int, int] | None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(
                f"pruned search exceeded the node budget of {self.max_nodes}"
            )
        possible_adj, mandatory_adj, soft = self._graphs()
        if self._shortest_path(mandatory_adj, self.a, self.b) is not None:
            return None
        path = self._shortest_path(possible_adj, self.a, self.b)
        if path is None:
            return self._completion()
        branch_point = None
        for u, v in zip(path, path[1:]):
            key = (u, v) if u < v else (v, u)
            if key in soft:
                branch_point = u if self.assignment[u] is None else v
                break
        # A possible a-b path with no soft edge would be all-mandatory,
        # which the prune above already caught.
        assert branch_point is not None and self.assignment[branch_point] is None
        for option in range(len(self.choices[branch_point])):
            self.assignment[branch_point] = option
            found = self.search()
            if found is not None:
                self.assignment[branch_point] = None
                return found
        self.assignment[branch_point] = None
        return None


def is_connected(
    space: FiniteVSpace,
    a: int,
    b: int,
    engine: str = "brute",
    max_covers: int = DEFAULT_MAX_COVERS,
) -> ConnectivityVerdict:
    """Decide whether a and b are connected (a chain under every cover).

    Returns ``Connected`` or ``NotConnected`` with a witness cover that
    admits no chain.  Raises BudgetExceededError rather than guessing
    when the search space exceeds ``max_covers``.
    """
    require_valid_space(space)
    _require_endpoints(space, a, b)
    if engine not in ("brute", "pruned"):
        raise ValidationError(f"unknown engine {engine!r}")
    if a == b:
        return ConnectivityVerdict(True)
    choices = _distinct_choices(space)
    if engine == "brute":
        return _brute(choices, a, b, max_covers)
    witness = _PrunedSearch(choices, a, b, max_covers).search()
    if witness is None:
        return ConnectivityVerdict(True)
    return ConnectivityVerdict(False, witness)
