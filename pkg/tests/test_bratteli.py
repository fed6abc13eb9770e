"""Mutation-tree quotients: golden level sizes, incidence patterns, the
representative audit, and export round-trips."""

import itertools
import json

import pytest

from clusterkit.bratteli import (
    BratteliDiagram,
    DEFAULT_MODE,
    build_mutation_tree,
    diagram_from_json,
    export_diagram,
    incidence_matrices,
    quotient_to_bratteli,
    seeds_l_equivalent,
    stationary_diagram,
)
from clusterkit.cluster import ExchangeMatrix, Seed, seed_mutate
from clusterkit.errors import RankMismatch, UnknownFormat

A11 = ExchangeMatrix([[0, 2], [-2, 0]])
MARKOV = ExchangeMatrix([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])


def pascal_incidence(rows, cols):
    # two downward edges per vertex: straight and one step right
    mat = [[0] * cols for _ in range(rows)]
    for s in range(cols):
        mat[s][s] = 1
        mat[s + 1][s] = 1
    return mat


def matrices_equal_up_to_relabeling(a, b):
    rows, cols = len(a), len(a[0])
    if (rows, cols) != (len(b), len(b[0])):
        return False
    for rperm in itertools.permutations(range(rows)):
        for cperm in itertools.permutations(range(cols)):
            if all(
                a[r][c] == b[rperm[r]][cperm[c]]
                for r in range(rows)
                for c in range(cols)
            ):
                return True
    return False


def test_tree_shape():
    tree = build_mutation_tree(Seed.initial(A11), 3)
    assert [len(level) for level in tree.levels] == [1, 2, 4, 8]


@pytest.mark.parametrize("mode", ["literal", "permuted"])
def test_a11_quotient_is_pascal(mode):
    tree = build_mutation_tree(Seed.initial(A11), 5)
    diagram = quotient_to_bratteli(tree, mode=mode)
    assert diagram.level_sizes == [1, 2, 3, 4, 5, 6]
    for m, mat in enumerate(incidence_matrices(diagram)):
        expected = pascal_incidence(m + 2, m + 1)
        assert matrices_equal_up_to_relabeling(mat, expected), (m, mat)
    assert all(mult == 1 for step in diagram.edges for mult in step.values())


@pytest.mark.parametrize("mode", ["literal", "permuted"])
def test_markov_quotient_level_sizes(mode):
    tree = build_mutation_tree(Seed.initial(MARKOV), 2)
    diagram = quotient_to_bratteli(tree, mode=mode)
    assert diagram.level_sizes == [1, 3, 7]


def test_l_equivalence_basics():
    seed = Seed.initial(A11)
    rotated = Seed((seed.cluster[1], seed.cluster[0]), seed.matrix)
    assert seeds_l_equivalent(seed, rotated, mode="literal")
    # permuted mode demands the matrix rotate along with the cluster; a rank-2
    # swap conjugates B to -B, so the literal pair is not permuted-equivalent
    assert not seeds_l_equivalent(seed, rotated, mode="permuted")
    conjugated = Seed(
        (seed.cluster[1], seed.cluster[0]), seed.matrix.conjugate_by_rotation(1)
    )
    assert seeds_l_equivalent(seed, conjugated, mode="permuted")
    other = seed_mutate(seed, 1)
    assert not seeds_l_equivalent(seed, other)
    with pytest.raises(RankMismatch):
        seeds_l_equivalent(seed, Seed.initial(MARKOV))
    with pytest.raises(ValueError):
        seeds_l_equivalent(seed, rotated, mode="sideways")
    assert DEFAULT_MODE in ("literal", "permuted")


def test_quotient_is_deterministic():
    tree1 = build_mutation_tree(Seed.initial(A11), 4)
    tree2 = build_mutation_tree(Seed.initial(A11), 4)
    d1 = quotient_to_bratteli(tree1)
    d2 = quotient_to_bratteli(tree2)
    assert d1.level_sizes == d2.level_sizes
    assert d1.edges == d2.edges
    assert export_diagram(d1, "json") == export_diagram(d2, "json")
    assert export_diagram(d1, "dot") == export_diagram(d2, "dot")


def test_export_json_roundtrip():
    tree = build_mutation_tree(Seed.initial(MARKOV), 2)
    diagram = quotient_to_bratteli(tree)
    text = export_diagram(diagram, "json")
    back = diagram_from_json(text)
    assert back.level_sizes == diagram.level_sizes
    assert back.edges == diagram.edges
    parsed = json.loads(text)
    assert parsed["levels"] == [1, 3, 7]


def test_export_dot_mentions_every_vertex():
    diagram = quotient_to_bratteli(build_mutation_tree(Seed.initial(A11), 3))
    dot = export_diagram(diagram, "dot")
    for m, size in enumerate(diagram.level_sizes):
        for i in range(size):
            assert f"L{m}_{i}" in dot
    with pytest.raises(UnknownFormat):
        export_diagram(diagram, "svg")


def test_stationary_diagram():
    fib = stationary_diagram([[1, 1], [1, 0]], num_levels=4)
    assert fib.level_sizes == [2, 2, 2, 2]
    assert fib.incidence(0) == [[1, 1], [1, 0]]
    unbounded = stationary_diagram([[1, 1], [1, 0]])
    assert unbounded.num_levels() is None
    assert unbounded.incidence(17) == [[1, 1], [1, 0]]
    with pytest.raises(ValueError):
        stationary_diagram([[1, 1]])
    with pytest.raises(ValueError):
        stationary_diagram([[1, -1], [0, 1]])


def test_incidence_orientation():
    d = BratteliDiagram([1, 2], [{(0, 0): 1, (0, 1): 3}])
    # entry (r, s): multiplicity from class s at level m to class r at m+1
    assert d.incidence(0) == [[1], [3]]
