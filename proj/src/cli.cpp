#include "cochange/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "cochange/csv.hpp"
#include "cochange/datasets.hpp"
#include "cochange/error.hpp"
#include "cochange/pipeline.hpp"
#include "cochange/protocol.hpp"
#include "cochange/stats.hpp"

namespace cochange {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::string outdir;
  std::size_t jobs = 1;
};

struct Context {
  ProjectConfig config;
  fs::path project_dir;  // <outdir>/<project>
  std::size_t jobs = 1;
  std::ostream& out;
  std::ostream& err;
};

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
  std::ostringstream buffer;
  body(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  file << buffer.str();
  if (!file) throw IoError("write failed for '" + path.string() + "'");
}

Context make_context(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  Context ctx{load_config(opts.config_path), {}, opts.jobs, out, err};
  if (!opts.outdir.empty()) ctx.config.output_dir = opts.outdir;
  ctx.project_dir = ctx.config.output_dir / ctx.config.project_name;
  return ctx;
}

std::vector<DefectLabelRecord> read_labels(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return load_labels(in);
  } catch (const Error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void warn_degenerate(const Context& ctx, const std::vector<ReleaseAnalysis>& analyses) {
  for (const auto& a : analyses) {
    if (a.cochange_degenerate) {
      ctx.err << "warning: release '" << a.release.name
              << "' has an edgeless co-change graph; co-change entropy set to 0\n";
    }
    if (a.change_degenerate) {
      ctx.err << "warning: release '" << a.release.name
              << "' has no file changes; change entropy set to 0\n";
    }
  }
}

/// Metric rows with labels joined when the config names a label file.
std::vector<FileMetricsRow> labeled_rows(const Context& ctx,
                                         const std::vector<ReleaseAnalysis>& analyses) {
  auto rows = collect_rows(analyses);
  if (!ctx.config.labels_path) return rows;
  auto joined = join_and_label(std::move(rows), read_labels(*ctx.config.labels_path));
  for (const auto& o : joined.orphans) {
    ctx.err << "warning: label " << o.release << "," << o.file
            << " matches no changed file; ignored\n";
  }
  return std::move(joined.rows);
}

void stage_ingest(const Context& ctx, const PreparedProject& project) {
  write_file(ctx.project_dir / "commits.log",
             [&](std::ostream& os) { write_change_log(os, project.history.commits); });
  write_file(ctx.project_dir / "windows.csv", [&](std::ostream& os) {
    csv::write_row(os, {"release", "commit", "timestamp", "files"});
    for (const auto& w : project.windows) {
      for (const auto& c : w.commits) {
        csv::write_row(os, {w.release.name, c.id, std::to_string(c.timestamp),
                            std::to_string(c.changes.size())});
      }
    }
  });
  ctx.out << "ingest: " << project.raw_commit_count << " commits read, " << project.fatty_removed
          << " fatty removed, " << project.history.commits.size() << " kept\n";
  for (const auto& w : project.windows) {
    ctx.out << "  " << w.release.name << ": " << w.commits.size() << " commits\n";
  }
}

void stage_graph(const Context& ctx, const std::vector<ReleaseAnalysis>& analyses) {
  for (const auto& a : analyses) {
    write_file(ctx.project_dir / "graphs" / (a.release.name + ".csv"),
               [&](std::ostream& os) { write_edge_list(os, a.graph); });
    ctx.out << "graph " << a.release.name << ": " << a.graph.nodes().size() << " nodes, "
            << a.graph.edge_count() << " edges\n";
  }
}

void stage_entropy(const Context& ctx, const std::vector<ReleaseAnalysis>& analyses,
                   const std::string& measure) {
  for (const auto& a : analyses) {
    for (const EntropyReport* report : {&a.change, &a.cochange}) {
      const std::string name = to_string(report->measure);
      if (measure != "both" && measure != name) continue;
      write_file(ctx.project_dir / "entropy" / (a.release.name + "." + name + ".csv"),
                 [&](std::ostream& os) { write_entropy_report(os, *report); });
      ctx.out << "entropy " << a.release.name << " " << name
              << " system_entropy=" << csv::format_double(report->system_entropy) << '\n';
    }
  }
}

void stage_metrics(const Context& ctx, const std::vector<FileMetricsRow>& rows) {
  write_file(ctx.project_dir / "metrics.csv",
             [&](std::ostream& os) { write_table(os, full_table(rows)); });
  ctx.out << "metrics: " << rows.size() << " rows\n";
}

void stage_correlate(const Context& ctx, const std::vector<FileMetricsRow>& rows) {
  if (!ctx.config.labels_path) {
    throw ValidationError("correlate: config has no labels_path");
  }
  write_file(ctx.project_dir / "correlation.csv", [&](std::ostream& os) {
    stats::write_correlation_header(os);
    for (auto metric : {stats::CorrelatedMetric::sctr, stats::CorrelatedMetric::cce}) {
      const auto result = stats::correlate_metric_vs_defects(rows, metric);
      stats::write_correlation_row(os, ctx.config.project_name, metric, result);
      ctx.out << "correlate " << to_string(metric) << ": pearson r=" << result.pearson.statistic
              << " p=" << result.pearson.p_value << ", spearman rho=" << result.spearman.statistic
              << " p=" << result.spearman.p_value << '\n';
    }
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Co-change entropy and process-metric mining toolchain", "cochange"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "project config file")->required();
    sub->add_option("--outdir", common.outdir, "output directory (overrides output_dir)");
    sub->add_option("--jobs", common.jobs, "parallel release workers")->check(CLI::Range(1, 256));
  };

  auto* ingest = app.add_subcommand("ingest", "parse, filter and window the change log");
  auto* graph = app.add_subcommand("graph", "write co-change edge lists per release");
  auto* entropy = app.add_subcommand("entropy", "write entropy reports per release");
  auto* metrics = app.add_subcommand("metrics", "write the per-file process metric dataset");
  auto* correlate = app.add_subcommand("correlate", "correlate sctr/cce with defect counts");
  auto* dataset = app.add_subcommand("dataset", "write train/test CSVs per metric set");
  auto* pipeline = app.add_subcommand("pipeline", "run every stage");
  auto* stats_cmd = app.add_subcommand("stats", "Friedman + Nemenyi over classifier results");
  for (auto* sub : {ingest, graph, entropy, metrics, correlate, dataset, pipeline}) add_common(sub);

  std::string measure = "both";
  entropy->add_option("--measure", measure, "change, cochange or both")
      ->check(CLI::IsMember({"change", "cochange", "both"}));
  std::vector<std::string> set_names;
  dataset->add_option("--set", set_names, "P+C, P+Co or P+C+Co (default: all)")
      ->check(CLI::IsMember({"P+C", "P+Co", "P+C+Co"}));
  std::string results_path;
  std::string stats_outdir;
  double alpha = 0.05;
  stats_cmd->add_option("results,--results", results_path, "classifier results CSV")->required();
  stats_cmd->add_option("--outdir", stats_outdir, "write stats.csv here");
  stats_cmd->add_option("--alpha", alpha, "significance level (0.05 or 0.10)");

  if (args.empty()) {
    err << app.help();
    return kExitValidation;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }

  try {
    if (stats_cmd->parsed()) {
      std::ifstream in(results_path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + results_path + "'");
      std::vector<stats::EvaluationRecord> records;
      try {
        records = stats::load_evaluation_results(in);
      } catch (const Error& e) {
        throw ValidationError(results_path + ": " + e.what());
      }
      const auto hypotheses = stats::run_protocol(records, alpha);
      stats::write_hypotheses(out, hypotheses);
      if (!stats_outdir.empty()) {
        write_file(fs::path(stats_outdir) / "stats.csv",
                   [&](std::ostream& os) { stats::write_hypotheses(os, hypotheses); });
      }
      return kExitOk;
    }

    const Context ctx = make_context(common, out, err);
    const PreparedProject project = prepare_project(ctx.config);
    if (ingest->parsed()) {
      stage_ingest(ctx, project);
      return kExitOk;
    }

    const auto analyses = analyze_releases(project, ctx.jobs);
    warn_degenerate(ctx, analyses);
    if (graph->parsed()) {
      stage_graph(ctx, analyses);
    } else if (entropy->parsed()) {
      stage_entropy(ctx, analyses, measure);
    } else if (metrics->parsed()) {
      stage_metrics(ctx, labeled_rows(ctx, analyses));
    } else if (correlate->parsed()) {
      stage_correlate(ctx, labeled_rows(ctx, analyses));
    } else if (dataset->parsed()) {
      std::vector<MetricSet> sets;
      for (const auto& name : set_names) sets.push_back(parse_metric_set(name));
      if (sets.empty()) sets = {MetricSet::p_c, MetricSet::p_co, MetricSet::p_c_co};
      const auto rows = labeled_rows(ctx, analyses);
      for (MetricSet set : sets) {
        write_experiment(ctx.config.output_dir, ctx.config.project_name, set,
                         emit_experiment(rows, project.history.releases, set));
        ctx.out << "dataset " << to_string(set) << " written\n";
      }
    } else if (pipeline->parsed()) {
      stage_ingest(ctx, project);
      stage_graph(ctx, analyses);
      stage_entropy(ctx, analyses, "both");
      const auto rows = labeled_rows(ctx, analyses);
      stage_metrics(ctx, rows);
      if (ctx.config.labels_path) {
        stage_correlate(ctx, rows);
      } else {
        ctx.err << "note: no labels_path; skipping correlate\n";
      }
      const auto& releases = project.history.releases;
      const bool has_test = std::any_of(releases.begin(), releases.end(), [](const ReleaseSpec& r) {
        return r.role == ReleaseRole::test;
      });
      if (!has_test) {
        ctx.err << "note: no test release; skipping dataset\n";
        return kExitOk;
      }
      for (MetricSet set : {MetricSet::p_c, MetricSet::p_co, MetricSet::p_c_co}) {
        write_experiment(ctx.config.output_dir, ctx.config.project_name, set,
                         emit_experiment(rows, releases, set));
        ctx.out << "dataset " << to_string(set) << " written\n";
      }
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace cochange
