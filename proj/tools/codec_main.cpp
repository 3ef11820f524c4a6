// Command-line front end for the graph codec: synthetic generation,
// compression to the CODC container, reconstruction, filtering and the
// experiment harness.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "codec/config.hpp"
#include "codec/experiment.hpp"
#include "codec/io.hpp"
#include "codec/measures.hpp"
#include "codec/pipeline.hpp"
#include "codec/synth.hpp"

namespace {

using codec::CodecConfig;
using codec::GraphFormat;

GraphFormat parse_format(const std::string& name) {
  if (name == "auto") return GraphFormat::kAuto;
  if (name == "edgelist") return GraphFormat::kEdgeList;
  if (name == "csv") return GraphFormat::kCsv;
  throw CLI::ValidationError("--format must be auto, edgelist or csv");
}

nlohmann::json report_json(const codec::MeasureReport& report) {
  nlohmann::json j{
      {"eps", report.eps},
      {"k", report.k_classes},
      {"sze_index", report.sze_index},
      {"irregular_count", report.irregular_count},
      {"t_compress_s", report.t_compress},
      {"t_decompress_s", report.t_decompress},
      {"t_filter_s", report.t_filter},
  };
  if (!std::isnan(report.l1)) j["l1"] = report.l1;
  if (!std::isnan(report.l2)) j["l2"] = report.l2;
  if (!std::isnan(report.kvs_ari)) {
    j["kvs_ari"] = report.kvs_ari;
    j["kvs_k"] = report.kvs_k;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossy graph compression through regular partitions"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::vector<double>> grid_override;
  std::optional<std::uint32_t> kernel_override;
  app.add_option("--config", config_path, "TOML config file ([codec]/[synth]/[experiment])");
  app.add_option("--seed", seed_override, "Master RNG seed");
  app.add_option("--eps-grid", grid_override, "Comma-separated eps candidates")->delimiter(',');
  app.add_option("--kernel", kernel_override, "Median filter window (odd)");

  codec::ConfigTable table;
  auto make_codec_config = [&]() {
    CodecConfig cfg;
    codec::apply_codec_config(table, cfg);
    if (seed_override) cfg.seed = *seed_override;
    if (grid_override) cfg.eps_grid = *grid_override;
    if (kernel_override) cfg.kernel = *kernel_override;
    return cfg;
  };

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a planted-cluster graph");
  codec::SynthParams synth_flags;
  std::string gen_out, gen_gt, gen_labels;
  generate->add_option("--n", synth_flags.n, "Vertex count")->required();
  generate->add_option("--clusters", synth_flags.clusters, "Cluster count");
  generate->add_option("--internoise", synth_flags.internoise, "Inter-cluster noise probability");
  generate->add_option("--intranoise", synth_flags.intranoise, "Intra-cluster corrosion probability");
  generate->add_flag("--imbalanced{false},--balanced{true}", synth_flags.balanced,
                     "Cluster size policy (default balanced)");
  generate->add_flag("--weighted", synth_flags.weighted, "Draw noise weights from U(0.25, 0.75)");
  generate->add_option("--out", gen_out, "Output CSV for G")->required();
  generate->add_option("--gt", gen_gt, "Output CSV for the ground truth");
  generate->add_option("--labels", gen_labels, "Output file for the label vector");

  // compress
  auto* compress_cmd = app.add_subcommand("compress", "Find the best partition and write a CODC file");
  std::string in_path, out_path, format_name = "auto", idmap_path;
  bool keep_internal = false;
  compress_cmd->add_option("--input", in_path, "Input graph")->required();
  compress_cmd->add_option("--format", format_name, "auto | edgelist | csv");
  compress_cmd->add_option("--output", out_path, "Output .codc path")->required();
  compress_cmd->add_option("--id-map", idmap_path, "Write the edge-list id map here");
  compress_cmd->add_flag("--keep-internal", keep_internal, "Store internal class densities");

  // decompress
  auto* decompress_cmd = app.add_subcommand("decompress", "Reconstruct the weighted approximation");
  std::string dec_in, dec_out;
  bool rec_irregular = false, rec_internal = false;
  decompress_cmd->add_option("--input", dec_in, "Input .codc path")->required();
  decompress_cmd->add_option("--output", dec_out, "Output CSV")->required();
  decompress_cmd->add_flag("--reconstruct-irregular", rec_irregular,
                           "Reconstruct irregular pairs at their density");
  decompress_cmd->add_flag("--reconstruct-internal", rec_internal,
                           "Rebuild intra-class structure from stored densities");

  // filter
  auto* filter_cmd = app.add_subcommand("filter", "Median-filter a matrix");
  std::string filter_in, filter_out;
  filter_cmd->add_option("--input", filter_in, "Input CSV")->required();
  filter_cmd->add_option("--output", filter_out, "Output CSV")->required();

  // threshold
  auto* threshold_cmd = app.add_subcommand("threshold", "Optimal unweighting threshold vs a reference");
  std::string th_in, th_ref, th_out;
  double th_step = 0.0;
  threshold_cmd->add_option("--input", th_in, "Weighted matrix CSV")->required();
  threshold_cmd->add_option("--reference", th_ref, "Reference matrix CSV")->required();
  threshold_cmd->add_option("--step", th_step, "Grid step (default from config)");
  threshold_cmd->add_option("--output", th_out, "Output CSV for the binarized matrix");

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "Distances (and KVS agreement) of two matrices");
  std::string me_a, me_b, me_labels;
  measure_cmd->add_option("--a", me_a, "First matrix CSV")->required();
  measure_cmd->add_option("--b", me_b, "Second matrix CSV")->required();
  measure_cmd->add_option("--labels", me_labels, "Ground-truth labels for KVS voting on --a");

  // codec
  auto* codec_cmd = app.add_subcommand("codec", "Full pipeline: compress, decompress, filter");
  std::string run_in, run_prefix, run_gt, run_labels, run_format = "auto";
  bool run_snapshots = false;
  codec_cmd->add_option("--input", run_in, "Input graph")->required();
  codec_cmd->add_option("--format", run_format, "auto | edgelist | csv");
  codec_cmd->add_option("--out-prefix", run_prefix, "Prefix for output artifacts")->required();
  codec_cmd->add_option("--gt", run_gt, "Ground-truth CSV for distance measures");
  codec_cmd->add_option("--labels", run_labels, "Ground-truth labels for KVS agreement");
  codec_cmd->add_flag("--snapshots", run_snapshots, "Also write PGM snapshots");

  // experiment
  auto* experiment_cmd = app.add_subcommand("experiment", "Synthetic benchmark grid");
  codec::ExperimentSpec spec_flags;
  std::string exp_out;
  experiment_cmd->add_option("--sizes", spec_flags.sizes, "Graph sizes")->delimiter(',');
  experiment_cmd->add_option("--internoise", spec_flags.internoise_levels, "Internoise levels")
      ->delimiter(',');
  experiment_cmd->add_option("--intranoise", spec_flags.intranoise_levels, "Intranoise levels")
      ->delimiter(',');
  experiment_cmd->add_option("--clusters", spec_flags.clusters, "Planted cluster count");
  experiment_cmd->add_option("--reps", spec_flags.repetitions, "Repetitions per cell");
  experiment_cmd->add_flag("--imbalanced{false},--balanced{true}", spec_flags.balanced,
                           "Cluster size policy");
  experiment_cmd->add_option("--output-dir", exp_out, "Report directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) table = codec::load_config(config_path);

    if (generate->parsed()) {
      codec::SynthParams params;
      codec::apply_synth_params(table, params);
      // Flags win over the config file.
      if (generate->count("--n")) params.n = synth_flags.n;
      if (generate->count("--clusters")) params.clusters = synth_flags.clusters;
      if (generate->count("--internoise")) params.internoise = synth_flags.internoise;
      if (generate->count("--intranoise")) params.intranoise = synth_flags.intranoise;
      if (generate->count("--balanced") || generate->count("--imbalanced"))
        params.balanced = synth_flags.balanced;
      if (generate->count("--weighted")) params.weighted = synth_flags.weighted;
      if (seed_override) params.seed = *seed_override;

      codec::SynthGraph synth = codec::generate(params);
      codec::save_graph_csv(synth.g, gen_out);
      if (!gen_gt.empty()) codec::save_graph_csv(synth.gt, gen_gt);
      if (!gen_labels.empty()) codec::save_labels(synth.labels, gen_labels);
      std::cout << "generated n=" << params.n << " density=" << synth.g.density() << '\n';
      return 0;
    }

    if (compress_cmd->parsed()) {
      CodecConfig cfg = make_codec_config();
      cfg.reconstruct_internal = keep_internal;
      codec::LoadedGraph loaded = codec::load_graph(in_path, parse_format(format_name));
      if (loaded.dropped_self_loops > 0)
        std::cerr << "warning: dropped " << loaded.dropped_self_loops << " self-loop entries\n";
      auto candidates = codec::sweep(loaded.graph, cfg);
      const auto& best = codec::best_partition(candidates);
      codec::CompressedGraph compressed =
          codec::compress(loaded.graph, best.partition, best.eps, cfg);
      codec::save_compressed(compressed, out_path);
      if (!idmap_path.empty() && !loaded.original_ids.empty())
        codec::save_id_map(loaded.original_ids, idmap_path);
      std::cout << "eps=" << best.eps << " k=" << compressed.k
                << " irregular=" << compressed.irregular_pairs.size()
                << " sze_index=" << codec::sze_index(loaded.graph, best.partition)
                << " entries=" << compressed.payload_entries() << '\n';
      return 0;
    }

    if (decompress_cmd->parsed()) {
      CodecConfig cfg = make_codec_config();
      cfg.reconstruct_irregular = rec_irregular;
      cfg.reconstruct_internal = rec_internal;
      codec::CompressedGraph compressed = codec::load_compressed(dec_in);
      codec::save_graph_csv(codec::decompress(compressed, cfg), dec_out);
      return 0;
    }

    if (filter_cmd->parsed()) {
      CodecConfig cfg = make_codec_config();
      codec::LoadedGraph loaded = codec::load_graph(filter_in, GraphFormat::kCsv);
      codec::save_graph_csv(codec::median_filter(loaded.graph, cfg.kernel), filter_out);
      return 0;
    }

    if (threshold_cmd->parsed()) {
      CodecConfig cfg = make_codec_config();
      const double step = th_step > 0.0 ? th_step : cfg.threshold_step;
      codec::LoadedGraph weighted = codec::load_graph(th_in, GraphFormat::kCsv);
      codec::LoadedGraph reference = codec::load_graph(th_ref, GraphFormat::kCsv);
      codec::ThresholdResult result =
          codec::threshold_search(weighted.graph, reference.graph, step);
      if (!th_out.empty()) codec::save_graph_csv(result.ufsze, th_out);
      std::cout << "t_star=" << result.t << " l2=" << result.l2 << '\n';
      return 0;
    }

    if (measure_cmd->parsed()) {
      codec::LoadedGraph a = codec::load_graph(me_a, GraphFormat::kCsv);
      codec::LoadedGraph b = codec::load_graph(me_b, GraphFormat::kCsv);
      const double l1 = codec::l1_dist(a.graph, b.graph);
      const double l2 = codec::l2_dist(a.graph, b.graph);
      std::cout << "l1=" << l1 << " l2=" << l2 << '\n';
      if (!me_labels.empty()) {
        codec::LabelVector labels = codec::load_labels(me_labels);
        codec::KvsResult kvs = codec::kvs_best_ari(a.graph, labels);
        std::cout << "kvs_ari=" << kvs.ari << " kvs_k=" << kvs.k << '\n';
      }
      return 0;
    }

    if (codec_cmd->parsed()) {
      CodecConfig cfg = make_codec_config();
      codec::LoadedGraph loaded = codec::load_graph(run_in, parse_format(run_format));
      codec::CodecResult result = codec::run_codec(loaded.graph, cfg);

      codec::save_compressed(result.compressed, run_prefix + ".codc");
      codec::save_graph_csv(result.sze, run_prefix + "_sze.csv");
      codec::save_graph_csv(result.fsze, run_prefix + "_fsze.csv");

      if (!run_gt.empty()) {
        codec::LoadedGraph gt = codec::load_graph(run_gt, GraphFormat::kCsv);
        result.report.l1 = codec::l1_dist(result.fsze, gt.graph);
        result.report.l2 = codec::l2_dist(result.fsze, gt.graph);
        codec::ThresholdResult threshold =
            codec::threshold_search(result.fsze, gt.graph, cfg.threshold_step);
        codec::save_graph_csv(threshold.ufsze, run_prefix + "_ufsze.csv");
        if (run_snapshots) codec::write_pgm(threshold.ufsze, run_prefix + "_ufsze.pgm");
      }
      if (!run_labels.empty()) {
        codec::LabelVector labels = codec::load_labels(run_labels);
        codec::KvsResult kvs = codec::kvs_best_ari(result.fsze, labels);
        result.report.kvs_ari = kvs.ari;
        result.report.kvs_k = kvs.k;
      }
      if (run_snapshots) {
        codec::write_pgm(loaded.graph, run_prefix + "_g.pgm");
        codec::write_pgm(result.sze, run_prefix + "_sze.pgm");
        codec::write_pgm(result.fsze, run_prefix + "_fsze.pgm");
      }

      std::ofstream report_file(run_prefix + "_report.json");
      report_file << report_json(result.report).dump(2) << '\n';
      std::cout << report_json(result.report).dump(2) << '\n';
      return 0;
    }

    if (experiment_cmd->parsed()) {
      codec::ExperimentSpec spec;
      spec.codec = make_codec_config();
      codec::apply_experiment_spec(table, spec);
      if (experiment_cmd->count("--sizes")) spec.sizes = spec_flags.sizes;
      if (experiment_cmd->count("--internoise")) spec.internoise_levels = spec_flags.internoise_levels;
      if (experiment_cmd->count("--intranoise")) spec.intranoise_levels = spec_flags.intranoise_levels;
      if (experiment_cmd->count("--clusters")) spec.clusters = spec_flags.clusters;
      if (experiment_cmd->count("--reps")) spec.repetitions = spec_flags.repetitions;
      if (experiment_cmd->count("--balanced") || experiment_cmd->count("--imbalanced"))
        spec.balanced = spec_flags.balanced;
      if (!exp_out.empty()) spec.output_dir = exp_out;
      if (seed_override) spec.codec.seed = *seed_override;
      if (spec.intranoise_levels.empty()) spec.intranoise_levels = {0.0};
      if (spec.output_dir.empty()) spec.output_dir = "experiment_out";

      codec::ExperimentResults results = codec::run_experiment(spec);
      codec::emit_report(results, spec.output_dir);
      std::size_t ok = 0;
      for (const auto& row : results.rows) ok += row.ok ? 1 : 0;
      std::cout << "runs=" << results.rows.size() << " ok=" << ok << " reports in "
                << spec.output_dir << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
