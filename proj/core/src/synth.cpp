#include "codec/synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "codec/rng.hpp"

namespace codec {
namespace {

void validate(const SynthParams& p) {
  if (p.clusters == 0 || p.clusters > p.n)
    throw std::invalid_argument("cluster count must be in [1, n]");
  if (p.internoise < 0.0 || p.internoise > 1.0 || p.intranoise < 0.0 || p.intranoise > 1.0)
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
}

std::vector<std::size_t> imbalanced_sizes(const SynthParams& p, Rng& rng) {
  const std::size_t c = p.clusters;
  std::size_t floor_size = std::max<std::size_t>(8, p.n / (4 * c));
  floor_size = std::min(floor_size, p.n / c);  // keep the floor feasible
  const std::size_t spare = p.n - floor_size * c;

  // C-1 uniform cut points over the spare vertices, sorted; the gaps are the
  // per-cluster extras.
  std::vector<std::size_t> cuts(c - 1);
  for (auto& cut : cuts) cut = rng.below(spare + 1);
  std::sort(cuts.begin(), cuts.end());

  std::vector<std::size_t> sizes(c, floor_size);
  std::size_t previous = 0;
  for (std::size_t i = 0; i + 1 < c; ++i) {
    sizes[i] += cuts[i] - previous;
    previous = cuts[i];
  }
  sizes[c - 1] += spare - previous;
  return sizes;
}

}  // namespace

std::vector<std::size_t> cluster_sizes(const SynthParams& params) {
  validate(params);
  if (params.balanced) {
    std::vector<std::size_t> sizes(params.clusters, params.n / params.clusters);
    const std::size_t remainder = params.n % params.clusters;
    for (std::size_t i = 0; i < remainder; ++i) ++sizes[i];
    return sizes;
  }
  Rng rng(Rng::derive(params.seed, 0x5129e5));
  return imbalanced_sizes(params, rng);
}

SynthGraph generate(const SynthParams& params) {
  validate(params);
  const auto sizes = cluster_sizes(params);

  SynthGraph out{Graph(params.n), Graph(params.n), LabelVector(params.n, 0)};
  std::vector<std::uint32_t>& labels = out.labels;
  std::size_t first = 0;
  for (std::uint32_t c = 0; c < params.clusters; ++c) {
    for (std::size_t v = first; v < first + sizes[c]; ++v) labels[v] = c + 1;
    first += sizes[c];
  }

  Rng rng(Rng::derive(params.seed, 0x9e4));
  for (Vertex i = 0; i < params.n; ++i) {
    for (Vertex j = i + 1; j < params.n; ++j) {
      if (labels[i] == labels[j]) {
        out.gt.set_weight(i, j, 1.0);
        // Corrosion: structural edges are deleted, never reweighted.
        const bool kept = params.intranoise == 0.0 || rng.uniform01() >= params.intranoise;
        if (kept) out.g.set_weight(i, j, 1.0);
      } else if (rng.uniform01() < params.internoise) {
        const double w = params.weighted ? rng.uniform(0.25, 0.75) : 1.0;
        out.g.set_weight(i, j, w);
      }
    }
  }
  return out;
}

double expected_density(const SynthParams& params) {
  validate(params);
  const auto sizes = cluster_sizes(params);
  double in_cells = 0.0;
  for (std::size_t s : sizes) in_cells += static_cast<double>(s) * (static_cast<double>(s) - 1.0);
  const double cells = static_cast<double>(params.n) * static_cast<double>(params.n);
  const double f_in = in_cells / cells;
  return f_in * (1.0 - params.intranoise) + (1.0 - f_in) * params.internoise;
}

}  // namespace codec
