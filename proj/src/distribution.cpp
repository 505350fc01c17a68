#include "cochange/distribution.hpp"

#include "cochange/error.hpp"

namespace cochange {

Distribution::Distribution(std::map<std::string, std::uint64_t> weights)
    : weights_(std::move(weights)) {
  for (const auto& [file, w] : weights_) total_ += w;
}

double Distribution::probability(const std::string& file) const {
  auto it = weights_.find(file);
  if (it == weights_.end()) throw LookupError("file '" + file + "' not in distribution");
  return total_ == 0 ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total_);
}

std::map<std::string, double> Distribution::probabilities() const {
  std::map<std::string, double> out;
  for (const auto& [file, w] : weights_) {
    out.emplace(file, total_ == 0 ? 0.0 : static_cast<double>(w) / static_cast<double>(total_));
  }
  return out;
}

// Cross products of two 64-bit counts need 128 bits.
__extension__ using Wide = unsigned __int128;

bool Distribution::same_rationals(const Distribution& other) const {
  if (weights_.size() != other.weights_.size()) return false;
  auto it = other.weights_.begin();
  for (const auto& [file, w] : weights_) {
    if (file != it->first) return false;
    const auto lhs = static_cast<Wide>(w) * other.total_;
    const auto rhs = static_cast<Wide>(it->second) * total_;
    if (lhs != rhs) return false;
    ++it;
  }
  return true;
}

}  // namespace cochange
