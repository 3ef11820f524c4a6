#include "codec/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "codec/rng.hpp"
#include "codec/threads.hpp"

namespace codec {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

std::size_t triangle_index(std::uint32_t k, std::uint32_t s, std::uint32_t t) {
  if (s > t) std::swap(s, t);
  if (s < 1 || t > k || s == t) throw std::invalid_argument("class pair out of range");
  const std::size_t row = s - 1, col = t - 1;
  return row * k - row * (row + 1) / 2 + (col - row - 1);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double CompressedGraph::red_at(std::uint32_t s, std::uint32_t t) const {
  return red[triangle_index(k, s, t)];
}

void CompressedGraph::set_red(std::uint32_t s, std::uint32_t t, double d) {
  red[triangle_index(k, s, t)] = d;
}

bool CompressedGraph::pair_is_irregular(std::uint32_t s, std::uint32_t t) const {
  if (s > t) std::swap(s, t);
  return std::binary_search(irregular_pairs.begin(), irregular_pairs.end(), std::make_pair(s, t));
}

std::size_t CompressedGraph::payload_entries() const {
  return red.size() + membership.size() + internal_densities.size();
}

std::optional<Partition> approx_alon(const Graph& g, double eps, std::uint64_t seed,
                                     const RegularityOptions& reg_opts,
                                     const RefineOptions& ref_opts) {
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  Partition p = initial_partition(g, Rng::derive(seed, 0));
  p.eps = eps;

  const double c0_bound = eps * static_cast<double>(g.order());
  for (std::uint32_t iteration = 1;; ++iteration) {
    IrregularityReport report = count_irregular(g, p, eps, reg_opts);
    const double k = static_cast<double>(p.k());
    const bool count_ok = static_cast<double>(report.count) <= eps * k * (k - 1.0) / 2.0;
    if (count_ok && static_cast<double>(p.c0.size()) <= c0_bound) return p;

    RefineOutcome outcome = refine(g, p, report.verdicts, Rng::derive(seed, iteration), ref_opts);
    if (outcome.status != RefineStatus::kRegular) return std::nullopt;
    p = std::move(outcome.next);
  }
}

std::vector<SweepCandidate> sweep(const Graph& g, const CodecConfig& cfg) {
  require(!cfg.eps_grid.empty(), "eps grid must not be empty");
  std::vector<std::optional<Partition>> found(cfg.eps_grid.size());
  parallel_for_index(cfg.eps_grid.size(), [&](std::size_t i) {
    found[i] = approx_alon(g, cfg.eps_grid[i], Rng::derive(cfg.seed, 0x5eed + i),
                           cfg.regularity, cfg.refinement);
  });

  std::vector<SweepCandidate> candidates;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i]) candidates.push_back({cfg.eps_grid[i], i, std::move(*found[i])});
  }
  return candidates;
}

const SweepCandidate& best_partition(const std::vector<SweepCandidate>& candidates) {
  if (candidates.empty()) throw NoPartitionFoundError();
  const SweepCandidate* best = &candidates.front();
  for (const auto& candidate : candidates) {
    if (candidate.partition.k() > best->partition.k() ||
        (candidate.partition.k() == best->partition.k() && candidate.eps < best->eps)) {
      best = &candidate;
    }
  }
  return *best;
}

CompressedGraph compress(const Graph& g, const Partition& p, double eps,
                         const CodecConfig& cfg) {
  const std::uint32_t k = static_cast<std::uint32_t>(p.k());
  CompressedGraph out;
  out.n = g.order();
  out.k = k;
  out.eps = eps;
  out.membership = p.membership(g.order());
  out.red.assign(std::size_t(k) * (k - 1) / 2, 0.0);

  IrregularityReport report = count_irregular(g, p, eps, cfg.regularity);
  for (std::uint32_t s = 1; s <= k; ++s) {
    for (std::uint32_t t = s + 1; t <= k; ++t) {
      const PairVerdict& verdict = report.verdicts.at(s, t);
      out.set_red(s, t, verdict.density);
      if (!verdict.is_regular) out.irregular_pairs.emplace_back(s, t);
    }
  }
  if (cfg.reconstruct_internal) {
    out.internal_densities.resize(k);
    for (std::uint32_t s = 1; s <= k; ++s) {
      out.internal_densities[s - 1] = internal_density(g, p.classes[s - 1]);
    }
  }

  // Any weight that is neither 0 nor 1 marks a weighted source.
  for (double w : g.data()) {
    if (w != 0.0 && w != 1.0) {
      out.weighted_source = true;
      break;
    }
  }
  return out;
}

Graph decompress(const CompressedGraph& c, const CodecConfig& cfg) {
  require(c.membership.size() == c.n, "membership length does not match n");
  require(c.red.size() == std::size_t(c.k) * (c.k - 1) / 2, "red size does not match k");
  Graph sze(c.n);
  std::vector<std::vector<Vertex>> classes(c.k + 1);
  for (Vertex v = 0; v < c.n; ++v) {
    const std::uint32_t id = c.membership[v];
    if (id > c.k) throw std::invalid_argument("membership id out of range");
    classes[id].push_back(v);
  }

  for (std::uint32_t s = 1; s <= c.k; ++s) {
    for (std::uint32_t t = s + 1; t <= c.k; ++t) {
      if (c.pair_is_irregular(s, t) && !cfg.reconstruct_irregular) continue;
      const double d = c.red_at(s, t);
      if (d == 0.0) continue;
      for (Vertex u : classes[s]) {
        for (Vertex v : classes[t]) sze.set_weight(u, v, d);
      }
    }
  }

  if (cfg.reconstruct_internal && !c.internal_densities.empty()) {
    Rng rng(Rng::derive(cfg.seed, 0x1d));
    for (std::uint32_t s = 1; s <= c.k; ++s) {
      const double d = c.internal_densities[s - 1];
      const auto& members = classes[s];
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          if (rng.uniform01() < d) sze.set_weight(members[a], members[b], 1.0);
        }
      }
    }
  }
  return sze;
}

Graph median_filter(const Graph& m, std::uint32_t kernel) {
  require(kernel % 2 == 1, "kernel size must be odd");
  require(kernel <= m.order(), "kernel must not exceed the matrix size");
  const std::size_t n = m.order();
  const int radius = static_cast<int>(kernel) / 2;
  const int size = static_cast<int>(n);

  // Reflect padding that repeats the border row/column.
  auto reflect = [size](int idx) {
    if (idx < 0) idx = -idx - 1;
    if (idx >= size) idx = 2 * size - 1 - idx;
    return static_cast<std::size_t>(idx);
  };

  std::vector<double> filtered(n * n, 0.0);
  std::vector<double> window(static_cast<std::size_t>(kernel) * kernel);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      std::size_t w = 0;
      for (int di = -radius; di <= radius; ++di) {
        const auto row = m.row(static_cast<Vertex>(reflect(i + di)));
        for (int dj = -radius; dj <= radius; ++dj) window[w++] = row[reflect(j + dj)];
      }
      auto mid = window.begin() + window.size() / 2;
      std::nth_element(window.begin(), mid, window.end());
      filtered[std::size_t(i) * n + j] = *mid;
    }
  }

  // Median windows at (i, j) and (j, i) see the same multiset, but averaging
  // with the transpose keeps the invariant airtight under any border case.
  Graph out(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double w = 0.5 * (filtered[std::size_t(i) * n + j] + filtered[std::size_t(j) * n + i]);
      out.set_weight(i, j, w);
    }
  }
  return out;
}

ThresholdResult threshold_search(const Graph& fsze, const Graph& gt, double step) {
  require(fsze.order() == gt.order(), "graphs must have equal order");
  require(step > 0.0 && step < 1.0, "step must lie in (0, 1)");
  const std::size_t n = fsze.order();

  auto binarize = [&](double t) {
    Graph out(n);
    for (Vertex i = 0; i < n; ++i) {
      const auto row = fsze.row(i);
      for (Vertex j = i + 1; j < n; ++j) {
        if (row[j] >= t) out.set_weight(i, j, 1.0);
      }
    }
    return out;
  };

  double best_t = step;
  double best_l2 = std::numeric_limits<double>::infinity();
  for (std::size_t q = 1; static_cast<double>(q) * step < 1.0; ++q) {
    const double t = static_cast<double>(q) * step;
    const double l2 = l2_dist(binarize(t), gt);
    if (l2 < best_l2) {
      best_l2 = l2;
      best_t = t;
    }
  }
  return {best_t, best_l2, binarize(best_t)};
}

CodecResult run_codec(const Graph& g, const CodecConfig& cfg) {
  CodecResult result;

  auto start = std::chrono::steady_clock::now();
  std::vector<SweepCandidate> candidates = sweep(g, cfg);
  const SweepCandidate& best = best_partition(candidates);
  result.compressed = compress(g, best.partition, best.eps, cfg);
  result.report.t_compress = seconds_since(start);

  start = std::chrono::steady_clock::now();
  result.sze = decompress(result.compressed, cfg);
  result.report.t_decompress = seconds_since(start);

  start = std::chrono::steady_clock::now();
  result.fsze = median_filter(result.sze, cfg.kernel);
  result.report.t_filter = seconds_since(start);

  result.report.eps = best.eps;
  result.report.k_classes = result.compressed.k;
  result.report.irregular_count = result.compressed.irregular_pairs.size();
  result.report.sze_index = sze_index(g, best.partition);
  return result;
}

}  // namespace codec
