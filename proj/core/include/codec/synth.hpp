#ifndef CODEC_SYNTH_HPP
#define CODEC_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "codec/graph.hpp"

namespace codec {

/// Cluster id per vertex, 1..C, block-contiguous in vertex order.
using LabelVector = std::vector<std::uint32_t>;

struct SynthParams {
  std::size_t n = 0;
  std::uint32_t clusters = 1;
  double internoise = 0.0;   // probability of a spurious edge between clusters
  double intranoise = 0.0;   // probability of deleting a structural edge
  bool balanced = true;
  bool weighted = false;     // noise edges get weights drawn from U(0.25, 0.75)
  std::uint64_t seed = 0;
};

struct SynthGraph {
  Graph g;             // gt corroded by intranoise plus internoise edges
  Graph gt;            // the planted structure: disjoint cliques
  LabelVector labels;  // ground-truth cluster per vertex
};

/// Cluster sizes used by generate() for the given params. Balanced mode
/// spreads the remainder one vertex per cluster; imbalanced mode draws
/// cut points from the seed with a per-cluster floor of max(8, n / (4C)).
std::vector<std::size_t> cluster_sizes(const SynthParams& params);

/// Generates a planted-cluster graph. Deterministic for a fixed seed.
SynthGraph generate(const SynthParams& params);

/// Analytic expected density of g under the params:
/// f_in * (1 - intranoise) + (1 - f_in) * internoise, with f_in the fraction
/// of matrix cells inside the planted blocks.
double expected_density(const SynthParams& params);

}  // namespace codec

#endif  // CODEC_SYNTH_HPP
