#ifndef CODEC_IO_HPP
#define CODEC_IO_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "codec/graph.hpp"
#include "codec/pipeline.hpp"
#include "codec/synth.hpp"

namespace codec {

/// Corrupt or inconsistent binary payload; the message names the field.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed text input; the message carries the line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message) : std::runtime_error(message) {}
};

/// CODC container, little-endian throughout:
///   magic "CODC" | version u16 = 1 | flags u16 | n u64 | k u32 | eps f64 |
///   membership n x u32 | red upper triangle row-major k(k-1)/2 x f64 |
///   [internal densities k x f64 when flag bit 0] |
///   irregular pair count u32 | pairs as (u32, u32)
/// Flag bit 0: internal densities present; bit 1: weighted source.
void save_compressed(const CompressedGraph& c, const std::filesystem::path& path);
CompressedGraph load_compressed(const std::filesystem::path& path);

enum class GraphFormat : std::uint8_t { kAuto, kEdgeList, kCsv };

struct LoadedGraph {
  Graph graph;
  /// Original vertex ids by compacted index (edge-list inputs only).
  std::vector<std::uint64_t> original_ids;
  std::size_t dropped_self_loops = 0;
};

/// Reads a graph from an edge list ("u v [w]" per line, '#' comments) or a
/// dense CSV matrix. kAuto picks CSV for .csv files, edge list otherwise.
/// Edge-list vertex ids are compacted to 0..n-1; the id map comes back in
/// `original_ids`. Self-loop entries are dropped and counted.
LoadedGraph load_graph(const std::filesystem::path& path, GraphFormat format = GraphFormat::kAuto);

void save_graph_csv(const Graph& g, const std::filesystem::path& path);

/// Binary PGM (P5) snapshot; pixel = round(weight * 255).
void write_pgm(const Graph& g, const std::filesystem::path& path);

void save_labels(const LabelVector& labels, const std::filesystem::path& path);
LabelVector load_labels(const std::filesystem::path& path);

void save_id_map(const std::vector<std::uint64_t>& ids, const std::filesystem::path& path);

}  // namespace codec

#endif  // CODEC_IO_HPP
