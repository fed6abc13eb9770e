"""Mutation trees, the same-level quotient, and Bratteli diagram export.

The quotient identifies seeds at the same tree level whose clusters coincide
up to a cyclic rotation of the variables.  Two modes are supported for the
matrix condition:

* ``literal``  -- the exchange matrices must be equal entrywise;
* ``permuted`` -- the matrices must agree after conjugating by the same
  cyclic rotation that matches the clusters.

Both modes reproduce the rank-2 annulus Pascal triangle and the rank-3
Markov level sizes (1, 3, 7); ``literal`` is the default.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    InconsistentQuotient,
    RankMismatch,
    UnknownFormat,
)
from .cluster import Seed, seed_mutate

__all__ = [
    "MutationTree",
    "TreeNode",
    "BratteliDiagram",
    "build_mutation_tree",
    "seeds_l_equivalent",
    "quotient_to_bratteli",
    "incidence_matrices",
    "export_diagram",
    "stationary_diagram",
    "DEFAULT_MODE",
]

DEFAULT_MODE = "literal"
_MODES = ("literal", "permuted")


@dataclass
class TreeNode:
    seed: Seed
    level: int
    children: list = field(default_factory=list)


@dataclass
class MutationTree:
    """Complete n-ary mutation tree; ``levels[m]`` lists the nodes at level m
    in breadth-first order with children generated in direction order."""

    root: TreeNode
    levels: list


def build_mutation_tree(s, depth, budget=200_000):
    """Build the complete mutation tree of ``s`` down to ``depth`` levels."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    root = TreeNode(s, 0)
    levels = [[root]]
    count = 1
    for level in range(depth):
        nxt = []
        for node in levels[level]:
            for k in range(1, s.n + 1):
                count += 1
                if count > budget:
                    raise BudgetExceeded(f"tree node budget {budget} exceeded")
                child = TreeNode(seed_mutate(node.seed, k), level + 1)
                node.children.append(child)
                nxt.append(child)
        levels.append(nxt)
    return MutationTree(root, levels)


def _rotations_matching(a, b):
    """Yield rotations r with b.cluster[i] == a.cluster[(i + r) % n] for all i."""
    n = len(a.cluster)
    for r in range(n):
        if all(b.cluster[i] == a.cluster[(i + r) % n] for i in range(n)):
            yield r


def seeds_l_equivalent(a, b, mode=DEFAULT_MODE):
    """True iff some cyclic rotation maps one cluster onto the other with the
    matrix condition of the given mode satisfied."""
    if mode not in _MODES:
        raise ValueError(f"unknown equivalence mode {mode!r}")
    if a.n != b.n:
        raise RankMismatch(f"seeds have ranks {a.n} and {b.n}")
    for r in _rotations_matching(a, b):
        if mode == "literal":
            if a.matrix == b.matrix:
                return True
        else:
            # relabeling consistent with b.cluster[i] == a.cluster[(i + r) % n]
            if a.matrix.conjugate_by_rotation(-r % a.n) == b.matrix:
                return True
    return False


def _class_key(seed, mode):
    """Canonical key of an equivalence class: the lexicographically least
    rotation of the serialized cluster, paired with the matrix data."""
    n = seed.n
    rotations = []
    for r in range(n):
        cluster = tuple(seed.cluster[(i + r) % n].render() for i in range(n))
        if mode == "literal":
            rotations.append((cluster, seed.matrix.entries))
        else:
            rotations.append((cluster, seed.matrix.conjugate_by_rotation(-r % n).entries))
    return min(rotations)


@dataclass
class BratteliDiagram:
    """Leveled vertex classes with multiplicity-weighted edges.

    ``level_sizes[m]`` counts the classes at level m; ``edges[m]`` maps pairs
    ``(i, j)`` (class i at level m, class j at level m+1) to multiplicities.
    ``class_members[m][i]`` lists the tree-node indices of that class.
    """

    level_sizes: list
    edges: list
    class_members: list = None
    stationary_matrix: list = None

    def num_levels(self):
        return len(self.level_sizes)

    def level_size(self, m):
        return self.level_sizes[m]

    def incidence(self, m):
        """Integer matrix of the step m -> m+1; entry (r, s) is the
        multiplicity of the edge from class s at level m to class r at m+1."""
        rows = self.level_sizes[m + 1]
        cols = self.level_sizes[m]
        mat = [[0] * cols for _ in range(rows)]
        for (i, j), mult in self.edges[m].items():
            mat[j][i] = mult
        return mat


def quotient_to_bratteli(tree, mode=DEFAULT_MODE):
    """Quotient a mutation tree by the same-level equivalence.

    Edge multiplicity from class U to class V is the number of children of a
    fixed representative of U whose class is V; the count is audited against
    every other representative and InconsistentQuotient is raised with a
    witness pair if it is representative-dependent.
    """
    if mode not in _MODES:
        raise ValueError(f"unknown equivalence mode {mode!r}")
    level_sizes = []
    edges = []
    class_members = []
    node_class = []  # per level: list of class index per node
    for level_nodes in tree.levels:
        key_to_class = {}
        classes = []
        members = []
        assignment = []
        for idx, node in enumerate(level_nodes):
            key = _class_key(node.seed, mode)
            if key not in key_to_class:
                key_to_class[key] = len(classes)
                classes.append(key)
                members.append([])
            c = key_to_class[key]
            assignment.append(c)
            members[c].append(idx)
        level_sizes.append(len(classes))
        class_members.append(members)
        node_class.append(assignment)

    for m in range(len(tree.levels) - 1):
        level_nodes = tree.levels[m]
        child_assignment = node_class[m + 1]
        # children of node i at level m occupy positions i*n .. i*n + n - 1
        n = tree.root.seed.n
        per_class_counts = {}
        for idx, node in enumerate(level_nodes):
            c = node_class[m][idx]
            counts = {}
            for j in range(n):
                child_cls = child_assignment[idx * n + j]
                counts[child_cls] = counts.get(child_cls, 0) + 1
            if c in per_class_counts:
                if per_class_counts[c][1] != counts:
                    rep_idx = per_class_counts[c][0]
                    raise InconsistentQuotient(
                        f"level {m} class {c}: representatives {rep_idx} and {idx} "
                        f"have child multiplicities {per_class_counts[c][1]} vs {counts}"
                    )
            else:
                per_class_counts[c] = (idx, counts)
        level_edges = {}
        for c, (_, counts) in per_class_counts.items():
            for child_cls, mult in counts.items():
                level_edges[(c, child_cls)] = mult
        edges.append(level_edges)

    return BratteliDiagram(level_sizes, edges, class_members)


def incidence_matrices(d):
    """All per-step incidence matrices of a diagram with >= 2 levels."""
    if d.num_levels() < 2:
        raise ValueError("diagram needs at least 2 levels")
    return [d.incidence(m) for m in range(d.num_levels() - 1)]


@dataclass
class InfiniteStationaryDiagram:
    """Unbounded diagram repeating one incidence matrix at every step."""

    stationary_matrix: list

    def num_levels(self):
        return None

    def level_size(self, m):
        return len(self.stationary_matrix)

    def incidence(self, m):
        return self.stationary_matrix


def stationary_diagram(matrix, num_levels=None):
    """Diagram repeating a single nonnegative integer incidence matrix.

    The matrix follows the ``incidence`` convention: entry (r, s) is the
    multiplicity from vertex s at one level to vertex r at the next.  With
    ``num_levels=None`` the diagram is unbounded.
    """
    matrix = [list(map(int, row)) for row in matrix]
    rows = len(matrix)
    if any(len(row) != rows for row in matrix):
        raise ValueError("stationary matrix must be square")
    if any(x < 0 for row in matrix for x in row):
        raise ValueError("multiplicities must be nonnegative")
    if num_levels is None:
        return InfiniteStationaryDiagram(matrix)
    if num_levels < 1:
        raise ValueError("num_levels must be >= 1")
    edges = []
    for _ in range(num_levels - 1):
        step = {}
        for r in range(rows):
            for s in range(rows):
                if matrix[r][s]:
                    step[(s, r)] = matrix[r][s]
        edges.append(step)
    return BratteliDiagram([rows] * num_levels, edges, stationary_matrix=matrix)


def export_diagram(d, fmt):
    """Render a diagram as byte-deterministic DOT or JSON text."""
    if fmt == "json":
        payload = {
            "levels": list(d.level_sizes),
            "edges": [
                {"from": [m, i], "to": [m + 1, j], "mult": mult}
                for m in range(len(d.edges))
                for (i, j), mult in sorted(d.edges[m].items())
            ],
        }
        return json.dumps(payload, separators=(", ", ": "))
    if fmt == "dot":
        lines = ["digraph bratteli {", "  rankdir=TB;", "  node [shape=circle, label=\"\"];"]
        for m, size in enumerate(d.level_sizes):
            ids = " ".join(f"L{m}_{i};" for i in range(size))
            lines.append(f"  {{ rank=same; {ids} }}")
        for m in range(len(d.edges)):
            for (i, j), mult in sorted(d.edges[m].items()):
                label = f" [label={mult}]" if mult > 1 else ""
                lines.append(f"  L{m}_{i} -> L{m + 1}_{j}{label};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown export format {fmt!r}")


def diagram_from_json(data):
    """Inverse of the JSON export; accepts text or a parsed object."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    level_sizes = list(data["levels"])
    edges = [{} for _ in range(max(len(level_sizes) - 1, 0))]
    for e in data.get("edges", []):
        (m, i), (m2, j), mult = e["from"], e["to"], e["mult"]
        if m2 != m + 1:
            raise ValueError("edges must connect consecutive levels")
        edges[m][(i, j)] = mult
    return BratteliDiagram(level_sizes, edges)
