"""
Tests for neighbour search, reconstruction weights and the LLE graph matrix.
"""

import numpy as np
import pytest
from scipy import sparse

from apps.core.exceptions import ParameterError, ShapeError
from apps.manifold.services.lle import (
    build_lle_graph,
    dump_coordinates,
    empty_graph,
    graph_matrix,
    graph_summary,
    reconstruction_weights,
)
from apps.manifold.services.neighbors import knn_neighbors


def kkt_weights(X, index, neighbors, reg):
    """Constrained least squares through the bordered Lagrange system."""
    offsets = X[index] - X[neighbors]
    gram = offsets @ offsets.T
    k = len(neighbors)
    gram += reg * np.trace(gram) / k * np.eye(k)
    system = np.zeros((k + 1, k + 1))
    system[:k, :k] = 2.0 * gram
    system[:k, k] = 1.0
    system[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    solution = np.linalg.solve(system, rhs)
    return solution[:k], gram


class TestKnnNeighbors:
    def test_points_on_a_line(self):
        X = np.array([[0.0], [1.0], [2.0]])

        assert knn_neighbors(X, 1).tolist() == [[1], [0], [1]]

    def test_duplicates_first(self):
        X = np.array([[0.0, 0.0], [5.0, 5.0], [0.0, 0.0], [0.1, 0.0]])

        assert knn_neighbors(X, 1)[0].tolist() == [2]
        assert knn_neighbors(X, 1)[2].tolist() == [0]

    def test_matches_full_sort(self):
        X = np.random.default_rng(0).standard_normal((50, 4))

        neighbors = knn_neighbors(X, 5)

        for i in range(50):
            distances = np.sum((X - X[i]) ** 2, axis=1)
            distances[i] = np.inf
            np.testing.assert_array_equal(neighbors[i], np.argsort(distances, kind="stable")[:5])

    @pytest.mark.parametrize("k", [0, 4, 10])
    def test_k_out_of_range(self, k):
        with pytest.raises(ParameterError):
            knn_neighbors(np.zeros((4, 2)), k)


class TestReconstructionWeights:
    def test_symmetric_pair(self):
        X = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        neighbors = np.array([[1, 2], [0, 2], [0, 1]])

        V = reconstruction_weights(X, neighbors, reg=1e-3).toarray()

        np.testing.assert_allclose(V[0], [0.0, 0.5, 0.5])
        assert np.sum((X[0] - V[0] @ X) ** 2) == pytest.approx(0.5)

    def test_midpoint(self):
        X = np.array([[0.0], [1.0], [2.0]])
        neighbors = np.array([[1, 2], [0, 2], [1, 0]])

        V = reconstruction_weights(X, neighbors, reg=1e-3).toarray()

        np.testing.assert_allclose(V[1], [0.5, 0.0, 0.5])
        np.testing.assert_allclose(V[1] @ X, X[1], atol=1e-12)

    def test_matches_lagrange_oracle(self):
        X = np.random.default_rng(1).standard_normal((10, 3))
        neighbors = knn_neighbors(X, 3)

        V = reconstruction_weights(X, neighbors, reg=1e-3).toarray()

        for i in range(10):
            expected, gram = kkt_weights(X, i, neighbors[i], 1e-3)
            actual = V[i, neighbors[i]]
            assert actual @ gram @ actual == pytest.approx(expected @ gram @ expected, abs=1e-6)
            np.testing.assert_allclose(actual, expected, atol=1e-6)

    def test_rows_sum_to_one_and_support_is_neighbourhood(self):
        X = np.random.default_rng(2).standard_normal((30, 2))
        neighbors = knn_neighbors(X, 4)

        V = reconstruction_weights(X, neighbors).toarray()

        np.testing.assert_allclose(V.sum(axis=1), np.ones(30), atol=1e-8)
        assert np.all(np.diag(V) == 0.0)
        for i in range(30):
            outside = np.setdiff1d(np.arange(30), neighbors[i])
            assert np.all(V[i, outside] == 0.0)

    def test_scale_invariant(self):
        X = np.random.default_rng(3).standard_normal((20, 3))
        neighbors = knn_neighbors(X, 4)

        V = reconstruction_weights(X, neighbors, reg=1e-3).toarray()
        scaled = reconstruction_weights(7.5 * X, neighbors, reg=1e-3).toarray()

        np.testing.assert_allclose(scaled, V, atol=1e-10)

    def test_coincident_neighbours_use_floor(self):
        X = np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]])
        neighbors = np.array([[1, 2], [0, 2], [0, 1]])

        V = reconstruction_weights(X, neighbors, reg=1e-3).toarray()

        np.testing.assert_allclose(V.sum(axis=1), np.ones(3))

    def test_negative_regularisation(self):
        with pytest.raises(ParameterError):
            reconstruction_weights(np.zeros((3, 1)), np.array([[1], [0], [1]]), reg=-1.0)

    def test_neighbour_rows_must_match(self):
        with pytest.raises(ShapeError):
            reconstruction_weights(np.zeros((3, 1)), np.array([[1], [0]]), reg=1e-3)


class TestGraphMatrix:
    def test_no_neighbours_gives_identity(self):
        np.testing.assert_allclose(graph_matrix(sparse.csr_matrix((3, 3))).toarray(), np.eye(3))

    def test_two_samples(self):
        M = graph_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))

        np.testing.assert_allclose(M.toarray(), [[2.0, -2.0], [-2.0, 2.0]])

    def test_structure(self):
        X = np.random.default_rng(4).standard_normal((25, 3))
        M = build_lle_graph(X, k=5, reg=1e-3).graph.toarray()

        np.testing.assert_allclose(M, M.T, atol=1e-10)
        assert np.linalg.eigvalsh(M).min() >= -1e-8
        assert np.max(np.abs(M @ np.ones(25))) < 1e-8

    def test_trace_equals_reconstruction_error(self):
        rng = np.random.default_rng(5)
        X = rng.standard_normal((30, 4))
        graph = build_lle_graph(X, k=4, reg=1e-3)
        V, M = graph.weights.toarray(), graph.graph.toarray()

        for _ in range(10):
            Y = rng.standard_normal((30, 3))
            reconstruction = np.sum((Y - V @ Y) ** 2)
            trace = np.trace(Y.T @ M @ Y)
            assert trace == pytest.approx(reconstruction, rel=1e-8)
            assert trace >= -1e-8 * np.sum(Y**2)

    def test_locally_linear_interior_has_no_penalty(self):
        X = np.outer(np.arange(10.0), [1.0, 2.0])
        graph = build_lle_graph(X, k=2, reg=1e-3)
        Y = X @ np.array([[0.5, -1.0, 2.0], [1.5, 0.0, -0.5]]) + 3.0

        residual = Y - graph.weights @ Y

        assert np.sum(residual[1:-1] ** 2) < 1e-8

    def test_exactly_reconstructed_rows_have_no_penalty(self):
        X = np.repeat(np.random.default_rng(6).standard_normal((6, 2)), 2, axis=0)
        graph = build_lle_graph(X, k=1, reg=1e-3)
        Y = X @ np.array([[1.0, 2.0], [-3.0, 0.5]]) - 1.0

        assert np.trace(Y.T @ graph.graph.toarray() @ Y) < 1e-8

    def test_non_square(self):
        with pytest.raises(ShapeError):
            graph_matrix(np.zeros((2, 3)))


class TestGraphHelpers:
    def test_defaults_from_settings(self, settings):
        settings.LLE_NEIGHBORS = 3

        graph = build_lle_graph(np.random.default_rng(7).standard_normal((10, 2)))

        assert graph.k == 3
        assert graph.neighbors.shape == (10, 3)

    def test_summary(self):
        graph = build_lle_graph(np.random.default_rng(8).standard_normal((12, 2)), k=3, reg=1e-3)

        summary = graph_summary(graph)

        assert summary["num_samples"] == 12
        assert summary["weights_nnz"] == 36
        assert summary["max_row_sum_error"] < 1e-8
        assert summary["null_space_residual"] < 1e-8

    def test_empty_graph(self):
        assert empty_graph(4).shape == (4, 4)
        assert empty_graph(4).nnz == 0

    def test_dump_coordinates(self, tmp_path):
        matrix = sparse.csr_matrix(np.array([[0.0, 0.25], [1.5, 0.0]]))

        path = dump_coordinates(matrix, tmp_path / "dump" / "v.txt")
        table = np.loadtxt(path, ndmin=2)

        np.testing.assert_allclose(table, [[0, 1, 0.25], [1, 0, 1.5]])
