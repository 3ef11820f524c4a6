#ifndef CODEC_PIPELINE_HPP
#define CODEC_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "codec/graph.hpp"
#include "codec/measures.hpp"
#include "codec/partition.hpp"
#include "codec/refinement.hpp"
#include "codec/regularity.hpp"

namespace codec {

/// Serialized form of a partition: the class membership of every vertex plus
/// the RED matrix of pairwise class densities. Class ids are 1..k, 0 = C0.
struct CompressedGraph {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  double eps = 0.0;
  bool weighted_source = false;
  std::vector<std::uint32_t> membership;  // size n
  std::vector<double> red;                // upper triangle s < t, row-major, k(k-1)/2
  std::vector<std::pair<std::uint32_t, std::uint32_t>> irregular_pairs;  // s < t, sorted
  std::vector<double> internal_densities;  // size k when kept, else empty

  double red_at(std::uint32_t s, std::uint32_t t) const;
  void set_red(std::uint32_t s, std::uint32_t t, double d);
  bool pair_is_irregular(std::uint32_t s, std::uint32_t t) const;

  /// Number of stored payload entries: k(k-1)/2 + n (+k with densities).
  std::size_t payload_entries() const;
};

inline std::vector<double> default_eps_grid() {
  return {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
}

struct CodecConfig {
  std::vector<double> eps_grid = default_eps_grid();
  std::uint32_t kernel = 5;            // median window, odd
  bool reconstruct_irregular = false;  // give irregular pairs their density too
  bool reconstruct_internal = false;   // rebuild intra-class structure as ER
  double threshold_step = 0.01;
  std::uint64_t seed = 1;
  RegularityOptions regularity{};
  RefineOptions refinement{};
};

class NoPartitionFoundError : public std::runtime_error {
 public:
  NoPartitionFoundError() : std::runtime_error("no regular partition found") {}
};

/// Runs the check/refine loop from a random initial partition and returns
/// the first partition whose irregular-pair count is within eps * C(k, 2)
/// (and whose trash-set respects the eps * n bound), or nothing when
/// refinement dies first.
std::optional<Partition> approx_alon(const Graph& g, double eps, std::uint64_t seed,
                                     const RegularityOptions& reg_opts = {},
                                     const RefineOptions& ref_opts = {});

struct SweepCandidate {
  double eps = 0.0;
  std::size_t grid_index = 0;
  Partition partition;
};

/// Runs approx_alon for every grid candidate (independent seeds derived from
/// cfg.seed) and collects the successes in grid order.
std::vector<SweepCandidate> sweep(const Graph& g, const CodecConfig& cfg);

/// Picks the candidate with maximal class count, minimal eps among ties,
/// earliest grid position among remaining ties.
const SweepCandidate& best_partition(const std::vector<SweepCandidate>& candidates);

/// Builds the RED + membership representation of a partition. Pair densities
/// are stored for every class pair; pairs judged irregular at eps are listed
/// separately. Internal class densities are kept when cfg.reconstruct_internal.
CompressedGraph compress(const Graph& g, const Partition& p, double eps,
                         const CodecConfig& cfg = {});

/// Rebuilds the n x n weighted approximation: every regular class pair is
/// fully connected at its stored density. Irregular pairs stay empty unless
/// cfg.reconstruct_irregular; intra-class edges appear only with
/// cfg.reconstruct_internal (seeded ER with the stored internal density).
Graph decompress(const CompressedGraph& c, const CodecConfig& cfg = {});

/// Median filter with an odd kernel and reflect padding. The result is
/// re-symmetrized (average with its transpose) and the diagonal zeroed so it
/// remains a valid Graph.
Graph median_filter(const Graph& m, std::uint32_t kernel);

struct ThresholdResult {
  double t = 0.0;   // chosen threshold, smallest minimizer on the grid
  double l2 = 0.0;  // l2 distance of the binarized graph to the reference
  Graph ufsze;
};

/// Grid-scans t in {step, 2 step, ...} < 1, binarizing weights (>= t -> 1)
/// and minimizing l2 against gt. Smallest minimizing t wins.
ThresholdResult threshold_search(const Graph& fsze, const Graph& gt, double step);

struct CodecResult {
  CompressedGraph compressed;
  Graph sze;
  Graph fsze;
  MeasureReport report;
};

/// Full pipeline: sweep, select, compress, decompress, filter. Throws
/// NoPartitionFoundError when the sweep comes back empty.
CodecResult run_codec(const Graph& g, const CodecConfig& cfg);

}  // namespace codec

#endif  // CODEC_PIPELINE_HPP
