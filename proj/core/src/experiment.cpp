#include "codec/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "codec/io.hpp"
#include "codec/rng.hpp"
#include "codec/threads.hpp"

namespace codec {
namespace {

struct Cell {
  std::size_t size_idx, inter_idx, intra_idx;
  std::uint32_t rep;  // 1-based
};

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

std::string noise_tag(double v) {
  std::ostringstream out;
  out << v;
  std::string tag = out.str();
  for (char& c : tag) {
    if (c == '.') c = 'p';
  }
  return tag;
}

void write_run_columns(std::ofstream& out, const RunRow& row) {
  out << row.n << ',' << row.clusters << ',' << row.internoise << ',' << row.intranoise << ','
      << row.rep << ',' << row.seed << ',' << (row.ok ? "ok" : "failed") << ','
      << format_double(row.report.eps) << ',' << (row.ok ? std::to_string(row.report.k_classes) : "")
      << ',' << format_double(row.report.sze_index) << ','
      << (row.ok ? std::to_string(row.report.irregular_count) : "") << ','
      << format_double(row.report.kvs_ari) << ','
      << (row.ok ? std::to_string(row.report.kvs_k) : "") << ','
      << format_double(row.report.l1) << ',' << format_double(row.report.l2) << ','
      << format_double(row.t_star) << ',' << format_double(row.l2_ufsze) << ','
      << format_double(row.density) << ',' << row.error << '\n';
}

struct Aggregate {
  double mean = 0.0, sd = 0.0;
  std::size_t count = 0;
};

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate agg;
  for (double v : values) {
    if (std::isnan(v)) continue;
    agg.mean += v;
    ++agg.count;
  }
  if (agg.count == 0) return agg;
  agg.mean /= static_cast<double>(agg.count);
  for (double v : values) {
    if (std::isnan(v)) continue;
    agg.sd += (v - agg.mean) * (v - agg.mean);
  }
  agg.sd = agg.count > 1 ? std::sqrt(agg.sd / static_cast<double>(agg.count - 1)) : 0.0;
  return agg;
}

}  // namespace

ExperimentResults run_experiment(const ExperimentSpec& spec) {
  if (spec.sizes.empty() || spec.internoise_levels.empty() || spec.intranoise_levels.empty())
    throw std::invalid_argument("experiment grid must not be empty");
  if (spec.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");

  std::vector<Cell> cells;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    for (std::size_t e = 0; e < spec.internoise_levels.size(); ++e) {
      for (std::size_t a = 0; a < spec.intranoise_levels.size(); ++a) {
        for (std::uint32_t rep = 1; rep <= spec.repetitions; ++rep) cells.push_back({s, e, a, rep});
      }
    }
  }

  const bool want_snapshots = spec.snapshots && !spec.output_dir.empty();
  if (want_snapshots) std::filesystem::create_directories(spec.output_dir / "snapshots");

  ExperimentResults results{spec, std::vector<RunRow>(cells.size())};
  parallel_for_index(cells.size(), [&](std::size_t idx) {
    const Cell& cell = cells[idx];
    RunRow& row = results.rows[idx];
    row.n = spec.sizes[cell.size_idx];
    row.clusters = spec.clusters;
    row.internoise = spec.internoise_levels[cell.inter_idx];
    row.intranoise = spec.intranoise_levels[cell.intra_idx];
    row.rep = cell.rep;
    // Seeds depend only on the cell coordinates, never on scheduling.
    row.seed = Rng::derive(spec.codec.seed,
                           ((cell.size_idx * 97 + cell.inter_idx) * 97 + cell.intra_idx) * 9973 +
                               cell.rep);

    try {
      SynthParams params{row.n,         spec.clusters, row.internoise, row.intranoise,
                         spec.balanced, false,         row.seed};
      SynthGraph synth = generate(params);
      row.density = synth.g.density();

      CodecConfig cfg = spec.codec;
      cfg.seed = row.seed;
      CodecResult result = run_codec(synth.g, cfg);

      row.report = result.report;
      row.report.l1 = l1_dist(result.fsze, synth.gt);
      row.report.l2 = l2_dist(result.fsze, synth.gt);
      const KvsResult kvs = kvs_best_ari(result.fsze, synth.labels);
      row.report.kvs_ari = kvs.ari;
      row.report.kvs_k = kvs.k;

      ThresholdResult threshold = threshold_search(result.fsze, synth.gt, cfg.threshold_step);
      row.t_star = threshold.t;
      row.l2_ufsze = threshold.l2;
      row.ok = true;

      if (want_snapshots && cell.rep == 1) {
        const std::string stem = "n" + std::to_string(row.n) + "_inter" + noise_tag(row.internoise) +
                                 "_intra" + noise_tag(row.intranoise);
        const auto dir = spec.output_dir / "snapshots";
        write_pgm(synth.g, dir / (stem + "_G.pgm"));
        write_pgm(result.sze, dir / (stem + "_SZE.pgm"));
        write_pgm(result.fsze, dir / (stem + "_FSZE.pgm"));
        write_pgm(threshold.ufsze, dir / (stem + "_UFSZE.pgm"));
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return results;
}

void emit_report(const ExperimentResults& results, const std::filesystem::path& dir) {
  if (results.rows.empty()) throw std::invalid_argument("no results to report");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
    return out;
  };

  std::ofstream runs = open("results.csv");
  runs << "n,clusters,internoise,intranoise,rep,seed,status,eps,k,sze_index,irregular_count,"
          "ari_fsze,kvs_k,l1_fsze_gt,l2_fsze_gt,t_star,l2_ufsze_gt,density,error\n";
  for (const RunRow& row : results.rows) write_run_columns(runs, row);

  std::ofstream timings = open("timings.csv");
  timings << "n,clusters,internoise,intranoise,rep,t_compress_s,t_decompress_s,t_filter_s\n";
  for (const RunRow& row : results.rows) {
    timings << row.n << ',' << row.clusters << ',' << row.internoise << ',' << row.intranoise << ','
            << row.rep << ',' << format_double(row.report.t_compress) << ','
            << format_double(row.report.t_decompress) << ','
            << format_double(row.report.t_filter) << '\n';
  }

  std::ofstream study = open("threshold_study.csv");
  study << "n,internoise,intranoise,rep,density,t_star,l2_ufsze_gt\n";
  for (const RunRow& row : results.rows) {
    if (!row.ok) continue;
    study << row.n << ',' << row.internoise << ',' << row.intranoise << ',' << row.rep << ','
          << format_double(row.density) << ',' << format_double(row.t_star) << ','
          << format_double(row.l2_ufsze) << '\n';
  }

  // Mean/sd per grid cell across repetitions.
  std::ofstream summary = open("summary.csv");
  summary << "n,clusters,internoise,intranoise,runs_ok,avg_eps,avg_k,avg_sze_index,"
             "avg_ari,sd_ari,avg_l1,sd_l1,avg_l2,sd_l2,avg_t_star\n";
  const auto& spec = results.spec;
  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    for (std::size_t e = 0; e < spec.internoise_levels.size(); ++e) {
      for (std::size_t a = 0; a < spec.intranoise_levels.size(); ++a) {
        std::vector<double> eps, k, sze, ari_values, l1, l2, t_star;
        std::size_t ok = 0;
        for (const RunRow& row : results.rows) {
          if (row.n != spec.sizes[s] || row.internoise != spec.internoise_levels[e] ||
              row.intranoise != spec.intranoise_levels[a])
            continue;
          if (!row.ok) continue;
          ++ok;
          eps.push_back(row.report.eps);
          k.push_back(row.report.k_classes);
          sze.push_back(row.report.sze_index);
          ari_values.push_back(row.report.kvs_ari);
          l1.push_back(row.report.l1);
          l2.push_back(row.report.l2);
          t_star.push_back(row.t_star);
        }
        const Aggregate ag_ari = aggregate(ari_values), ag_l1 = aggregate(l1),
                        ag_l2 = aggregate(l2);
        summary << spec.sizes[s] << ',' << spec.clusters << ',' << spec.internoise_levels[e] << ','
                << spec.intranoise_levels[a] << ',' << ok << ',' << format_double(aggregate(eps).mean)
                << ',' << format_double(aggregate(k).mean) << ','
                << format_double(aggregate(sze).mean) << ',' << format_double(ag_ari.mean) << ','
                << format_double(ag_ari.sd) << ',' << format_double(ag_l1.mean) << ','
                << format_double(ag_l1.sd) << ',' << format_double(ag_l2.mean) << ','
                << format_double(ag_l2.sd) << ',' << format_double(aggregate(t_star).mean) << '\n';
      }
    }
  }
}

}  // namespace codec
