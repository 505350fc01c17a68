#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace cochange {

/// A discrete distribution over files kept as integer weights, so that
/// probabilities can be compared exactly as rationals weight / total.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::map<std::string, std::uint64_t> weights);

  const std::map<std::string, std::uint64_t>& weights() const noexcept { return weights_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return weights_.empty(); }

  /// Throws LookupError for files outside the support.
  double probability(const std::string& file) const;
  std::map<std::string, double> probabilities() const;

  /// True when both have the same files and weight_a/total_a == weight_b/total_b
  /// for every file, compared by cross-multiplication.
  bool same_rationals(const Distribution& other) const;

 private:
  std::map<std::string, std::uint64_t> weights_;
  std::uint64_t total_ = 0;
};

}  // namespace cochange
