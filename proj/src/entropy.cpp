#include "cochange/entropy.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"

namespace cochange {

namespace {

constexpr double kSumTolerance = 1e-9;

std::vector<double> values_of(const std::map<std::string, double>& probs) {
  std::vector<double> out;
  out.reserve(probs.size());
  for (const auto& [file, p] : probs) out.push_back(p);
  return out;
}

}  // namespace

const char* to_string(Measure measure) {
  return measure == Measure::change ? "change" : "cochange";
}

Measure parse_measure(const std::string& text) {
  if (text == "change") return Measure::change;
  if (text == "cochange") return Measure::cochange;
  throw ConfigError("unknown measure '" + text + "' (expected change or cochange)");
}

double shannon_entropy(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("negative or NaN probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg << "probabilities sum to " << std::setprecision(17) << sum << ", expected 1";
    throw ValidationError(msg.str());
  }
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;  // a one-point distribution can yield -0
}

Distribution change_probabilities(const std::vector<Commit>& commits) {
  std::map<std::string, std::uint64_t> touches;
  for (const Commit& c : commits) {
    for (const auto& ch : c.changes) ++touches[ch.path];
  }
  if (touches.empty()) throw DegenerateInputError("change probabilities undefined on an empty window");
  return Distribution(std::move(touches));
}

std::map<std::string, double> attribute_entropy(double system_entropy,
                                                const std::map<std::string, double>& probs) {
  std::map<std::string, double> out;
  for (const auto& [file, p] : probs) out.emplace(file, p * system_entropy);
  return out;
}

EntropyReport entropy_report(const std::vector<Commit>& commits, const CoChangeGraph& graph,
                             Measure measure, const std::string& window) {
  EntropyReport report;
  report.measure = measure;
  try {
    const Distribution dist =
        measure == Measure::change ? change_probabilities(commits) : cochange_probabilities(graph);
    report.probability = dist.probabilities();
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(std::string(to_string(measure)) + " entropy" +
                               (window.empty() ? "" : " for window '" + window + "'") + ": " +
                               e.what());
  }
  const auto probs = values_of(report.probability);
  report.system_entropy = shannon_entropy(probs);
  report.per_file = attribute_entropy(report.system_entropy, report.probability);
  return report;
}

EntropyReport entropy_report_or_zero(const std::vector<Commit>& commits,
                                     const CoChangeGraph& graph, Measure measure,
                                     bool* degenerate) {
  if (degenerate) *degenerate = false;
  try {
    return entropy_report(commits, graph, measure);
  } catch (const DegenerateInputError&) {
    if (degenerate) *degenerate = true;
  }
  EntropyReport report;
  report.measure = measure;
  for (const auto& node : graph.nodes()) {
    report.probability.emplace(node, 0.0);
    report.per_file.emplace(node, 0.0);
  }
  return report;
}

void write_entropy_report(std::ostream& out, const EntropyReport& report) {
  out << "# system_entropy=" << csv::format_double(report.system_entropy)
      << ",measure=" << to_string(report.measure) << '\n';
  csv::write_row(out, {"file", "measure", "probability", "entropy_bits"});
  for (const auto& [file, p] : report.probability) {
    csv::write_row(out, {file, to_string(report.measure), csv::format_double(p),
                         csv::format_double(report.per_file.at(file))});
  }
}

}  // namespace cochange
