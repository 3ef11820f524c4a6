#ifndef CODEC_GRAPH_HPP
#define CODEC_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace codec {

using Vertex = std::uint32_t;

/// A set of vertex indices, kept in insertion order. Indices are unique and
/// refer to vertices of the graph the class is used with.
using VertexClass = std::vector<Vertex>;

/// Dense symmetric weighted adjacency matrix with a zero diagonal.
/// Weights live in [0, 1]; an unweighted graph uses 0/1 entries.
///
/// The full n x n matrix is stored (not a triangle) so both (i, j) and (j, i)
/// are O(1) reads. Instances are treated as immutable once built, which makes
/// shared concurrent reads safe.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), weights_(n * n, 0.0) {}

  /// Builds a graph from a row-major n*n weight vector; validates symmetry,
  /// zero diagonal and the [0, 1] range.
  static Graph from_dense(std::size_t n, std::vector<double> weights);

  std::size_t order() const { return n_; }

  double weight(Vertex i, Vertex j) const { return weights_[std::size_t(i) * n_ + j]; }

  /// Sets w(i, j) and w(j, i). Throws for self-loops or out-of-range weights.
  void set_weight(Vertex i, Vertex j, double w);

  std::span<const double> row(Vertex i) const {
    return std::span<const double>(weights_.data() + std::size_t(i) * n_, n_);
  }

  const std::vector<double>& data() const { return weights_; }

  /// Sum of all matrix entries (each undirected edge counted twice).
  double total_weight() const;

  /// Mean entry over the full n x n matrix, zero diagonal included.
  double density() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> weights_;
};

/// Edge density d(X, Y) = e(X, Y) / (|X| |Y|) of two disjoint non-empty
/// classes, where e(X, Y) is the sum of cross weights.
double pair_density(const Graph& g, const VertexClass& x, const VertexClass& y);

/// Internal density d(C, C) = e(C, C) / |C|^2 with e counting ordered pairs,
/// i.e. twice the undirected internal weight sum.
double internal_density(const Graph& g, const VertexClass& c);

/// Sum of weights from v to the other members of its class c. v must be in c.
double indegree_within(const Graph& g, Vertex v, const VertexClass& c);

}  // namespace codec

#endif  // CODEC_GRAPH_HPP
