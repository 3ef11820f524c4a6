#ifndef CODEC_PARTITION_HPP
#define CODEC_PARTITION_HPP

#include <cstdint>
#include <vector>

#include "codec/graph.hpp"

namespace codec {

/// Equitable class system: k classes C1..Ck of one common cardinality plus
/// the exceptional set C0 ("trash-set"). Class ids are 1-based in every
/// external representation; id 0 denotes C0.
struct Partition {
  std::vector<VertexClass> classes;
  VertexClass c0;
  double eps = 0.0;
  std::uint32_t generation = 0;

  std::size_t k() const { return classes.size(); }

  /// Common class cardinality m (0 for an empty partition).
  std::size_t class_size() const { return classes.empty() ? 0 : classes.front().size(); }

  /// Number of vertices assigned to classes (C0 excluded).
  std::size_t assigned() const {
    std::size_t total = 0;
    for (const auto& c : classes) total += c.size();
    return total;
  }

  /// Class id per vertex: 0 for C0, 1..k otherwise.
  std::vector<std::uint32_t> membership(std::size_t n) const;

  /// Checks disjointness, exact cover of 0..n-1 and equal class cardinality.
  bool covers(std::size_t n) const;
};

}  // namespace codec

#endif  // CODEC_PARTITION_HPP
