#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "codec/synth.hpp"

using namespace codec;

TEST_CASE("noise-free generation reproduces the ground truth") {
  SynthParams params{40, 4, 0.0, 0.0, true, false, 3};
  SynthGraph s = generate(params);
  CHECK(s.g == s.gt);

  // Labels are contiguous blocks 1..C.
  CHECK(s.labels.front() == 1);
  CHECK(s.labels.back() == 4);
  CHECK(std::is_sorted(s.labels.begin(), s.labels.end()));

  // Ground truth is a disjoint union of cliques.
  for (Vertex i = 0; i < 40; ++i) {
    for (Vertex j = i + 1; j < 40; ++j) {
      CHECK(s.gt.weight(i, j) == (s.labels[i] == s.labels[j] ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("full internoise yields the complete graph") {
  SynthParams params{30, 3, 1.0, 0.0, true, false, 9};
  SynthGraph s = generate(params);
  for (Vertex i = 0; i < 30; ++i) {
    for (Vertex j = i + 1; j < 30; ++j) CHECK(s.g.weight(i, j) == 1.0);
  }
}

TEST_CASE("same seed reproduces the run bit for bit") {
  SynthParams params{60, 5, 0.3, 0.1, true, true, 1234};
  SynthGraph a = generate(params);
  SynthGraph b = generate(params);
  CHECK(a.g == b.g);
  CHECK(a.gt == b.gt);
  CHECK(a.labels == b.labels);
}

TEST_CASE("noise respects the block structure") {
  SynthParams params{80, 4, 0.35, 0.25, true, false, 77};
  SynthGraph s = generate(params);
  for (Vertex i = 0; i < 80; ++i) {
    for (Vertex j = i + 1; j < 80; ++j) {
      const double w = s.g.weight(i, j);
      if (s.labels[i] == s.labels[j]) {
        CHECK((w == 0.0 || w == 1.0));
        if (w == 1.0) CHECK(s.gt.weight(i, j) == 1.0);  // corrosion never adds
      } else {
        CHECK(s.gt.weight(i, j) == 0.0);
        CHECK((w == 0.0 || w == 1.0));
      }
    }
  }
}

TEST_CASE("weighted mode draws noise weights from U(0.25, 0.75)") {
  SynthParams params{60, 3, 0.5, 0.0, true, true, 5};
  SynthGraph s = generate(params);
  bool saw_noise = false;
  for (Vertex i = 0; i < 60; ++i) {
    for (Vertex j = i + 1; j < 60; ++j) {
      const double w = s.g.weight(i, j);
      if (s.labels[i] == s.labels[j]) {
        CHECK(w == 1.0);  // structural weight
      } else if (w != 0.0) {
        saw_noise = true;
        CHECK(w >= 0.25);
        CHECK(w <= 0.75);
      }
    }
  }
  CHECK(saw_noise);
}

TEST_CASE("expected density matches the analytic formula") {
  SUBCASE("reference parameters") {
    SynthParams params{1000, 10, 0.2, 0.0, true, false, 1};
    // f_in = 10 * 100 * 99 / 1000^2 = 0.099
    CHECK(expected_density(params) == doctest::Approx(0.099 + 0.901 * 0.2));
    CHECK(expected_density(params) == doctest::Approx(0.279).epsilon(0.002));
  }
  SUBCASE("single noise-free clique") {
    SynthParams params{50, 1, 0.0, 0.0, true, false, 1};
    CHECK(expected_density(params) == doctest::Approx(49.0 / 50.0));
  }
  SUBCASE("full internoise") {
    SynthParams params{100, 4, 1.0, 0.3, true, false, 1};
    const double f_in = 4.0 * 25.0 * 24.0 / 10000.0;
    CHECK(expected_density(params) == doctest::Approx(f_in * 0.7 + (1.0 - f_in)));
  }
}

TEST_CASE("realized density concentrates around the expectation") {
  for (std::uint64_t seed : {11, 22, 33}) {
    SynthParams params{1000, 10, 0.3, 0.1, true, false, seed};
    SynthGraph s = generate(params);
    CHECK(std::abs(s.g.density() - expected_density(params)) < 0.01);
  }
}

TEST_CASE("imbalanced sizes are floored, cover n and reproduce") {
  SynthParams params{400, 8, 0.0, 0.0, false, false, 42};
  const auto sizes = cluster_sizes(params);
  CHECK(sizes.size() == 8);
  std::size_t total = 0;
  for (std::size_t s : sizes) {
    CHECK(s >= 12);  // max(8, 400 / 32)
    total += s;
  }
  CHECK(total == 400);
  CHECK(cluster_sizes(params) == sizes);

  SynthGraph g = generate(params);
  CHECK(g.labels.size() == 400);
  CHECK(*std::max_element(g.labels.begin(), g.labels.end()) == 8);
}

TEST_CASE("balanced remainder spreads one per cluster") {
  SynthParams params{17, 3, 0.0, 0.0, true, false, 1};
  const auto sizes = cluster_sizes(params);
  CHECK(sizes == std::vector<std::size_t>{6, 6, 5});
}

TEST_CASE("invalid parameters are rejected") {
  SynthParams params{10, 11, 0.0, 0.0, true, false, 1};
  CHECK_THROWS_AS(generate(params), std::invalid_argument);
  params.clusters = 2;
  params.internoise = 1.5;
  CHECK_THROWS_AS(generate(params), std::invalid_argument);
}
