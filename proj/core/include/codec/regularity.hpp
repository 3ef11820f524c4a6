#ifndef CODEC_REGULARITY_HPP
#define CODEC_REGULARITY_HPP

#include <cstdint>
#include <vector>

#include "codec/graph.hpp"
#include "codec/partition.hpp"

namespace codec {

/// Bipartite statistics of a class pair: the average degree d̄ and the common
/// class cardinality m the deviation formulas are expressed in.
struct PairStats {
  double avg_degree = 0.0;
  std::size_t class_size = 0;
};

enum class RegularityCondition : std::uint8_t {
  kNone = 0,        // no deviating structure found; treated as regular
  kCondition1 = 1,  // sparse pair: d̄ < eps^3 * m
  kCondition2 = 2,  // too many vertices with deviating degree
  kCondition3 = 3,  // certificate pair found through a pivot vertex y0
};

/// Outcome of the approximate regularity check for one class pair. When the
/// pair is irregular the certificates (cert_i ⊂ C_i, cert_j ⊂ C_j) and their
/// in-class complements are populated and non-empty.
struct PairVerdict {
  bool is_regular = true;
  RegularityCondition condition = RegularityCondition::kNone;
  double density = 0.0;  // d(C_i, C_j), cached for downstream consumers
  VertexClass cert_i;
  VertexClass cert_j;
  VertexClass compl_i;
  VertexClass compl_j;
};

/// Scale of the degree/deviation cutoffs in conditions 2 and 3.
///
/// kClassSize reads every formula cardinality as the class size m, which is
/// how the bipartite statements are phrased. kGraphOrder scales the cutoffs
/// by the order of the whole graph instead; with integer degrees the class
/// scale fires condition 2 on almost any pair once m is small, so the graph
/// scale is what makes the verdicts usable as a partition stopping rule.
/// Condition 1 is a pure density test and always uses m.
enum class DeviationScale : std::uint8_t { kClassSize, kGraphOrder };

/// Order in which the two certificate searches run once condition 1 has
/// passed. The degree census (condition 2) fires on almost any noisy pair,
/// but its certificates are plain degree outliers; the pivot scan
/// (condition 3) collects vertices with correlated neighbourhoods, which is
/// what lets the refinement concentrate planted structure. Scanning the
/// pivot first therefore hands the refinement the structured certificates
/// whenever they exist.
enum class ConditionOrder : std::uint8_t { kPivotFirst, kDegreeFirst };

struct RegularityOptions {
  DeviationScale scale = DeviationScale::kGraphOrder;
  ConditionOrder order = ConditionOrder::kPivotFirst;
};

/// Average degree of the bipartite subgraph spanned by two disjoint classes
/// of equal size m: (1/2m) * sum of bipartite degrees over both sides.
/// Equals m * pair_density(g, a, b).
double average_degree(const Graph& g, const VertexClass& a, const VertexClass& b);

/// Neighbourhood deviation of two distinct vertices of the B side:
/// sigma(y1, y2) = |N(y1) ∩ N(y2)| - d̄²/m with neighbourhoods restricted to
/// the A side. Weighted graphs use sum_x w(y1, x) * w(y2, x).
double neighborhood_deviation(const Graph& g, Vertex y1, Vertex y2, const VertexClass& a,
                              const PairStats& stats);

/// Deviation of a vertex set Y (|Y| >= 2): mean of sigma over ordered
/// distinct pairs of Y, divided by |Y|^2.
double set_deviation(const Graph& g, const VertexClass& y_set, const VertexClass& a,
                     const PairStats& stats);

/// Approximate epsilon-regularity verdict for a class pair with |ci| == |cj|.
PairVerdict check_pair(const Graph& g, const VertexClass& ci, const VertexClass& cj, double eps,
                       const RegularityOptions& opts = {});

/// Szemerédi partition index: (1/k^2) * sum over s < t of d(C_s, C_t)^2.
/// Bounded by 1/2; requires k >= 2.
double sze_index(const Graph& g, const Partition& p);

/// Verdicts for all unordered class pairs of a partition, keyed by 1-based
/// ids (s, t) with s < t.
class PairVerdicts {
 public:
  explicit PairVerdicts(std::size_t k) : k_(k), verdicts_(k * (k - 1) / 2) {}

  PairVerdict& at(std::uint32_t s, std::uint32_t t) { return verdicts_[index(s, t)]; }
  const PairVerdict& at(std::uint32_t s, std::uint32_t t) const { return verdicts_[index(s, t)]; }

  std::size_t class_count() const { return k_; }
  std::size_t pair_count() const { return verdicts_.size(); }

 private:
  std::size_t index(std::uint32_t s, std::uint32_t t) const;

  std::size_t k_;
  std::vector<PairVerdict> verdicts_;
};

struct IrregularityReport {
  std::size_t count = 0;  // number of irregular pairs
  PairVerdicts verdicts;
};

/// Checks every class pair of the partition.
IrregularityReport count_irregular(const Graph& g, const Partition& p, double eps,
                                   const RegularityOptions& opts = {});

}  // namespace codec

#endif  // CODEC_REGULARITY_HPP
