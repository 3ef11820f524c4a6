#ifndef CODEC_MEASURES_HPP
#define CODEC_MEASURES_HPP

#include <cstdint>
#include <limits>

#include "codec/graph.hpp"
#include "codec/synth.hpp"

namespace codec {

/// All quantities reported for one codec run. The distance/ARI fields are
/// NaN until a ground truth is available to compare against.
struct MeasureReport {
  double l1 = std::numeric_limits<double>::quiet_NaN();
  double l2 = std::numeric_limits<double>::quiet_NaN();
  double kvs_ari = std::numeric_limits<double>::quiet_NaN();
  std::uint32_t kvs_k = 0;
  double sze_index = 0.0;
  double eps = 0.0;
  std::uint32_t k_classes = 0;
  std::size_t irregular_count = 0;
  double t_compress = 0.0;    // seconds
  double t_decompress = 0.0;  // seconds
  double t_filter = 0.0;      // seconds
};

/// Pair-agreement counts between two labelings over the same elements:
/// a = pairs together in both, b = pairs separated in both.
struct ContingencyCounts {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t total_pairs = 0;
};

/// Counts agreement pairs by direct enumeration, O(n^2).
ContingencyCounts count_pairs(const LabelVector& x, const LabelVector& y);

/// Normalized l2 distance: sqrt(sum (a_ij - b_ij)^2) / n, in [0, 1].
double l2_dist(const Graph& a, const Graph& b);

/// Normalized l1 distance: sum |a_ij - b_ij| / n^2, in [0, 1].
double l1_dist(const Graph& a, const Graph& b);

/// Column-wise k-nearest voting: each row is labeled with the majority
/// ground-truth label of its k highest-valued columns (self excluded).
/// k must be odd and at most n - 1.
LabelVector kvs_predict(const Graph& m, const LabelVector& labels, std::uint32_t k);

/// Hubert-Arabie adjusted Rand index in [-1, 1] via the contingency-table
/// closed form. 1 is a perfect match, ~0 a random one.
double ari(const LabelVector& truth, const LabelVector& predicted);

struct KvsResult {
  double ari = 0.0;
  std::uint32_t k = 0;
};

/// Best KVS agreement over k in {5, 7, 9}; smallest k wins ties. n > 9.
KvsResult kvs_best_ari(const Graph& m, const LabelVector& labels);

}  // namespace codec

#endif  // CODEC_MEASURES_HPP
