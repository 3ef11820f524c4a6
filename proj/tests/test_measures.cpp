#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "codec/measures.hpp"
#include "codec/rng.hpp"
#include "test_support.hpp"

using namespace codec;

namespace {

Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) g.set_weight(i, j, 1.0);
  }
  return g;
}

// Block-constant matrix from contiguous labels: 1.0 inside blocks.
Graph block_matrix(const LabelVector& labels) {
  Graph g(labels.size());
  for (Vertex i = 0; i < labels.size(); ++i) {
    for (Vertex j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) g.set_weight(i, j, 1.0);
    }
  }
  return g;
}

LabelVector block_labels(std::size_t n, std::uint32_t clusters) {
  LabelVector labels(n);
  for (std::size_t i = 0; i < n; ++i)
    labels[i] = static_cast<std::uint32_t>(i * clusters / n) + 1;
  return labels;
}

}  // namespace

TEST_CASE("matrix distances") {
  const std::size_t n = 10;
  SUBCASE("identical matrices") {
    const Graph g = testsupport::random_graph(n, 0.5, 3);
    CHECK(l2_dist(g, g) == 0.0);
    CHECK(l1_dist(g, g) == 0.0);
  }
  SUBCASE("complete versus empty hits the zero-diagonal bound") {
    // All n^2 - n off-diagonal cells differ by 1.
    CHECK(l2_dist(complete(n), Graph(n)) ==
          doctest::Approx(std::sqrt(static_cast<double>(n * n - n)) / n));
    CHECK(l1_dist(complete(n), Graph(n)) == doctest::Approx(1.0 - 1.0 / n));
  }
  SUBCASE("size mismatch") {
    CHECK_THROWS_AS(l2_dist(Graph(3), Graph(4)), std::invalid_argument);
    CHECK_THROWS_AS(l1_dist(Graph(3), Graph(4)), std::invalid_argument);
  }
  SUBCASE("metric properties on random triples") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Graph a = testsupport::random_graph(12, 0.4, seed, true);
      const Graph b = testsupport::random_graph(12, 0.5, seed + 50, true);
      const Graph c = testsupport::random_graph(12, 0.6, seed + 100, true);
      for (auto dist : {l1_dist, l2_dist}) {
        CHECK(dist(a, b) == doctest::Approx(dist(b, a)));
        CHECK(dist(a, b) >= 0.0);
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
      }
    }
  }
}

TEST_CASE("KVS voting") {
  SUBCASE("perfect block matrix recovers the labels") {
    const LabelVector labels = block_labels(30, 5);  // blocks of 6 >= k + 1
    const Graph m = block_matrix(labels);
    CHECK(kvs_predict(m, labels, 5) == labels);
    CHECK(ari(labels, kvs_predict(m, labels, 5)) == doctest::Approx(1.0));
  }
  SUBCASE("all-zero matrix degenerates deterministically") {
    const LabelVector labels = block_labels(12, 3);
    const Graph zero(12);
    const LabelVector once = kvs_predict(zero, labels, 5);
    CHECK(once == kvs_predict(zero, labels, 5));
    // Ties select the lowest column indices, whose labels all sit in the
    // first block (block size 4, k = 5 reaches one vertex past it).
    CHECK(once[6] == 1);
    CHECK(once[11] == 1);
  }
  SUBCASE("parameter validation") {
    const LabelVector labels = block_labels(12, 3);
    CHECK_THROWS_AS(kvs_predict(Graph(12), labels, 4), std::invalid_argument);
    CHECK_THROWS_AS(kvs_predict(Graph(12), labels, 13), std::invalid_argument);
    CHECK_THROWS_AS(kvs_predict(Graph(12), block_labels(11, 3), 5), std::invalid_argument);
  }
  SUBCASE("invariant under strictly increasing transforms") {
    const LabelVector labels = block_labels(20, 4);
    Graph m = testsupport::random_graph(20, 0.7, 9, true);
    Graph squared(20);
    for (Vertex i = 0; i < 20; ++i) {
      for (Vertex j = i + 1; j < 20; ++j) {
        squared.set_weight(i, j, m.weight(i, j) * m.weight(i, j));
      }
    }
    CHECK(kvs_predict(m, labels, 7) == kvs_predict(squared, labels, 7));
  }
}

TEST_CASE("adjusted Rand index") {
  SUBCASE("identical labelings") {
    const LabelVector labels = block_labels(16, 4);
    CHECK(ari(labels, labels) == doctest::Approx(1.0));
  }
  SUBCASE("hand-checked small case") {
    // truth {1,1,2,2} vs predicted {1,2,1,2}: a = 0, both marginals 2 of 6.
    const LabelVector truth{1, 1, 2, 2}, predicted{1, 2, 1, 2};
    CHECK(ari(truth, predicted) == doctest::Approx(-0.5));
    CHECK(testsupport::pair_counting_ari(truth, predicted) == doctest::Approx(-0.5));
  }
  SUBCASE("agrees with pair counting on random instances") {
    Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + rng.below(11);
      LabelVector x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint32_t>(1 + rng.below(3));
        y[i] = static_cast<std::uint32_t>(1 + rng.below(3));
      }
      CHECK(ari(x, y) == doctest::Approx(testsupport::pair_counting_ari(x, y)).epsilon(1e-12));
    }
  }
  SUBCASE("random labelings score near zero") {
    Rng rng(7);
    double total = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      LabelVector x(200), y(200);
      for (std::size_t i = 0; i < 200; ++i) {
        x[i] = static_cast<std::uint32_t>(1 + rng.below(4));
        y[i] = static_cast<std::uint32_t>(1 + rng.below(4));
      }
      total += ari(x, y);
    }
    CHECK(std::abs(total / 100.0) < 0.05);
  }
  SUBCASE("symmetric and relabeling invariant") {
    Rng rng(99);
    LabelVector x(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
      x[i] = static_cast<std::uint32_t>(1 + rng.below(4));
      y[i] = static_cast<std::uint32_t>(1 + rng.below(4));
    }
    CHECK(ari(x, y) == doctest::Approx(ari(y, x)));
    LabelVector renamed = x;
    for (auto& label : renamed) label = 17 + (label * 7) % 5;  // injective on 1..4
    CHECK(ari(renamed, y) == doctest::Approx(ari(x, y)));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(ari({1}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(ari({1, 2}, {1, 2, 3}), std::invalid_argument);
  }
}

TEST_CASE("pair-agreement counts") {
  const ContingencyCounts counts = count_pairs({1, 1, 2, 2}, {1, 2, 1, 2});
  CHECK(counts.a == 0);
  CHECK(counts.b == 2);
  CHECK(counts.total_pairs == 6);
}

TEST_CASE("best KVS agreement over the k grid") {
  SUBCASE("perfect blocks pick the smallest k") {
    const LabelVector labels = block_labels(40, 4);
    const KvsResult best = kvs_best_ari(block_matrix(labels), labels);
    CHECK(best.ari == doctest::Approx(1.0));
    CHECK(best.k == 5);
  }
  SUBCASE("zero matrix reports the degenerate score honestly") {
    const LabelVector labels = block_labels(30, 3);
    const KvsResult best = kvs_best_ari(Graph(30), labels);
    CHECK(best.ari <= 0.05);
  }
  SUBCASE("needs more than nine vertices") {
    CHECK_THROWS_AS(kvs_best_ari(Graph(9), block_labels(9, 3)), std::invalid_argument);
  }
}
