#include "codec/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace codec {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Throws if the two classes share a vertex or either contains a duplicate.
void require_disjoint(const VertexClass& x, const VertexClass& y) {
  VertexClass merged;
  merged.reserve(x.size() + y.size());
  merged.insert(merged.end(), x.begin(), x.end());
  merged.insert(merged.end(), y.begin(), y.end());
  std::sort(merged.begin(), merged.end());
  require(std::adjacent_find(merged.begin(), merged.end()) == merged.end(),
          "classes must be disjoint and free of duplicates");
}

}  // namespace

Graph Graph::from_dense(std::size_t n, std::vector<double> weights) {
  require(weights.size() == n * n, "weight vector must have n*n entries");
  for (std::size_t i = 0; i < n; ++i) {
    require(weights[i * n + i] == 0.0, "diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = weights[i * n + j];
      require(w == weights[j * n + i], "matrix must be symmetric");
      require(w >= 0.0 && w <= 1.0, "weights must lie in [0, 1]");
    }
  }
  Graph g;
  g.n_ = n;
  g.weights_ = std::move(weights);
  return g;
}

void Graph::set_weight(Vertex i, Vertex j, double w) {
  require(i != j, "self-loops are not representable");
  require(i < n_ && j < n_, "vertex index out of range");
  require(w >= 0.0 && w <= 1.0, "weights must lie in [0, 1]");
  weights_[std::size_t(i) * n_ + j] = w;
  weights_[std::size_t(j) * n_ + i] = w;
}

double Graph::total_weight() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

double Graph::density() const {
  if (n_ == 0) return 0.0;
  return total_weight() / (static_cast<double>(n_) * static_cast<double>(n_));
}

double pair_density(const Graph& g, const VertexClass& x, const VertexClass& y) {
  require(!x.empty() && !y.empty(), "pair_density requires non-empty classes");
  require_disjoint(x, y);
  double cross = 0.0;
  for (Vertex u : x) {
    const auto row = g.row(u);
    for (Vertex v : y) cross += row[v];
  }
  return cross / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

double internal_density(const Graph& g, const VertexClass& c) {
  require(!c.empty(), "internal_density requires a non-empty class");
  double undirected = 0.0;
  for (std::size_t a = 0; a < c.size(); ++a) {
    for (std::size_t b = a + 1; b < c.size(); ++b) undirected += g.weight(c[a], c[b]);
  }
  return 2.0 * undirected / (static_cast<double>(c.size()) * static_cast<double>(c.size()));
}

double indegree_within(const Graph& g, Vertex v, const VertexClass& c) {
  require(std::find(c.begin(), c.end(), v) != c.end(), "vertex must belong to the class");
  double sum = 0.0;
  const auto row = g.row(v);
  for (Vertex u : c) {
    if (u != v) sum += row[u];
  }
  return sum;
}

}  // namespace codec
