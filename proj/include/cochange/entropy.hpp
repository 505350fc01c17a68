#pragma once

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cochange/distribution.hpp"
#include "cochange/graph.hpp"
#include "cochange/vcs.hpp"

namespace cochange {

enum class Measure { change, cochange };

const char* to_string(Measure measure);
/// Accepts "change" or "cochange"; throws ConfigError otherwise.
Measure parse_measure(const std::string& text);

struct EntropyReport {
  Measure measure = Measure::change;
  double system_entropy = 0.0;          // bits
  std::map<std::string, double> probability;
  std::map<std::string, double> per_file;  // bits, sums to system_entropy
};

/// -sum p log2 p with 0 log 0 = 0. Throws ValidationError when the
/// probabilities do not sum to 1 within 1e-9 or one is negative.
double shannon_entropy(std::span<const double> probs);

/// p_f = touches(f) / total touches. Throws DegenerateInputError when the
/// window has no file change.
Distribution change_probabilities(const std::vector<Commit>& commits);

/// p_f * system_entropy for every file.
std::map<std::string, double> attribute_entropy(double system_entropy,
                                                const std::map<std::string, double>& probs);

/// Change measure reads the commits, co-change measure reads the graph.
/// Degenerate windows raise DegenerateInputError naming the measure and
/// `window` (a label used only in the message).
EntropyReport entropy_report(const std::vector<Commit>& commits, const CoChangeGraph& graph,
                             Measure measure, const std::string& window = {});

/// Like entropy_report but a degenerate window yields an all-zero report
/// over the graph's nodes; `degenerate` is set when that happened.
EntropyReport entropy_report_or_zero(const std::vector<Commit>& commits,
                                     const CoChangeGraph& graph, Measure measure,
                                     bool* degenerate = nullptr);

/// `# system_entropy=<bits>` comment line then `file,measure,probability,entropy_bits`.
void write_entropy_report(std::ostream& out, const EntropyReport& report);

}  // namespace cochange
