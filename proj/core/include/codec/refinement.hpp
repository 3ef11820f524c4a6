#ifndef CODEC_REFINEMENT_HPP
#define CODEC_REFINEMENT_HPP

#include <cstdint>
#include <optional>

#include "codec/graph.hpp"
#include "codec/partition.hpp"
#include "codec/regularity.hpp"
#include "codec/rng.hpp"

namespace codec {

enum class RefineStatus : std::uint8_t {
  kRegular,    // classes doubled, trash-set within bounds
  kIrregular,  // trash-set overflowed and could not be redistributed
  kExhausted,  // doubling again would drop classes below two vertices
};

/// What to do when |C0| exceeds eps * n after a refinement pass.
enum class C0OverflowPolicy : std::uint8_t {
  kRedistributeWhenAble,  // spread C0 over the classes when |C0| >= 2k
  kDeclareIrregular,      // any overflow aborts the run
};

struct RefineOptions {
  C0OverflowPolicy c0_policy = C0OverflowPolicy::kRedistributeWhenAble;
  /// Fuse mutually dense certificate pairs into one side's children instead
  /// of splitting each certificate across its own children. Splitting in
  /// place dilutes both sides equally and the class mixture never improves;
  /// packing lets repeated refinement concentrate structure.
  bool pack_facing_certificates = true;
  /// Fill direction for the sparsification branch inside refine(). The
  /// free-standing sparsification_split op always takes the least connected
  /// pool vertices; inside the loop that choice actively evens out whatever
  /// concentration the greedy fills have built, so the default refills the
  /// sparse side with the most connected vertices as well.
  bool sparse_fill_most_connected = true;
};

struct RefineOutcome {
  Partition next;
  RefineStatus status = RefineStatus::kRegular;
};

/// Starting partition: four equal classes of floor(n/4) randomly drawn
/// vertices, remainder in C0. Requires n >= 8.
Partition initial_partition(const Graph& g, std::uint64_t seed);

/// Structural-similarity score used to pick the partner of an irregular
/// class: d(C_i, C_j) + (1 - |d(C_i, C_i) - d(C_j, C_j)|), in [0, 2].
double pair_score(const Graph& g, const VertexClass& ci, const VertexClass& cj);

struct UnzipResult {
  VertexClass c1, c2;
  std::optional<Vertex> leftover;  // last vertex when |c| is odd
};

/// Splits a class by sorting on indegree (descending, vertex id ascending on
/// ties) and dealing alternate positions to the two halves.
UnzipResult unzip_by_indegree(const Graph& g, const VertexClass& c);

struct SplitResult {
  VertexClass c1, c2;
};

/// Densification split: unzip the certificate into two seeds, then fill each
/// seed up to `target` with the pool vertices most connected to it, chosen
/// greedily alternating between the seeds. Consumed vertices are removed
/// from the pool.
SplitResult densification_split(const Graph& g, const VertexClass& cert, VertexClass& pool,
                                std::size_t target);

/// Sparsification split: randomly halve the certificate into two seeds, then
/// fill each seed up to `target` with the least connected pool vertices.
SplitResult sparsification_split(const Graph& g, const VertexClass& cert, VertexClass& pool,
                                 std::size_t target, Rng& rng);

/// One refinement pass: every class is split in two, doubling the class
/// count. Irregular classes are paired with their best-scoring irregular
/// partner and split through the certificate branches; everything else is
/// unzipped by indegree. Odd leftovers and trimming excess flow into C0.
RefineOutcome refine(const Graph& g, const Partition& p, const PairVerdicts& verdicts,
                     std::uint64_t seed, const RefineOptions& opts = {});

}  // namespace codec

#endif  // CODEC_REFINEMENT_HPP
