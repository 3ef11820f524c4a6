#ifndef CODEC_EXPERIMENT_HPP
#define CODEC_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "codec/pipeline.hpp"
#include "codec/synth.hpp"

namespace codec {

/// A grid of synthetic-benchmark cells: every (size, internoise, intranoise)
/// combination is generated and run `repetitions` times.
struct ExperimentSpec {
  std::vector<std::size_t> sizes;
  std::vector<double> internoise_levels;
  std::vector<double> intranoise_levels;
  std::uint32_t clusters = 10;
  bool balanced = true;
  std::uint32_t repetitions = 1;
  CodecConfig codec;  // codec.seed is the master seed
  std::filesystem::path output_dir;
  bool snapshots = true;  // PGM dumps of the first repetition of each cell
};

/// One pipeline run on one generated graph. Measure fields are NaN when the
/// run failed; `error` carries the reason.
struct RunRow {
  std::size_t n = 0;
  std::uint32_t clusters = 0;
  double internoise = 0.0;
  double intranoise = 0.0;
  std::uint32_t rep = 0;  // 1-based
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double density = 0.0;  // realized density of the generated graph
  MeasureReport report;
  double t_star = 0.0;    // optimal unweighting threshold
  double l2_ufsze = 0.0;  // l2(UFSZE, GT) at t_star
};

struct ExperimentResults {
  ExperimentSpec spec;
  std::vector<RunRow> rows;  // deterministic spec order
};

/// Runs every cell of the grid (work pool, CODEC_THREADS). Per-cell seeds
/// derive from the master seed, so reruns reproduce rows exactly. Snapshot
/// PGMs land under spec.output_dir while the runs execute.
ExperimentResults run_experiment(const ExperimentSpec& spec);

/// Writes results.csv (per run), summary.csv (mean/sd per cell),
/// threshold_study.csv (density vs optimal threshold) and timings.csv.
/// Timings stay out of the other files to keep them byte-identical across
/// reruns of the same master seed.
void emit_report(const ExperimentResults& results, const std::filesystem::path& dir);

}  // namespace codec

#endif  // CODEC_EXPERIMENT_HPP
