#include "cochange/graph.hpp"

#include <algorithm>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"

namespace cochange {

Edge make_edge(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

void CoChangeGraph::add_node(const std::string& path) {
  if (nodes_.insert(path).second) adjacency_.emplace(path, std::vector<std::string>{});
}

void CoChangeGraph::add_cochange(const std::string& a, const std::string& b) {
  if (a == b) return;
  add_node(a);
  add_node(b);
  auto [it, inserted] = edges_.emplace(make_edge(a, b), 0);
  ++it->second;
  if (!inserted) return;
  for (const auto& [from, to] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
    auto& list = adjacency_[*from];
    list.insert(std::lower_bound(list.begin(), list.end(), *to), *to);
  }
}

const std::vector<std::string>& CoChangeGraph::neighbors(const std::string& node) const {
  auto it = adjacency_.find(node);
  if (it == adjacency_.end()) throw LookupError("file '" + node + "' not in co-change graph");
  return it->second;
}

std::uint64_t CoChangeGraph::degree(const std::string& node) const {
  return neighbors(node).size();
}

std::uint64_t CoChangeGraph::weighted_degree(const std::string& node) const {
  std::uint64_t total = 0;
  for (const auto& other : neighbors(node)) total += edges_.at(make_edge(node, other));
  return total;
}

CoChangeGraph build_graph(const std::vector<Commit>& commits) {
  CoChangeGraph graph;
  for (const Commit& c : commits) {
    for (std::size_t i = 0; i < c.changes.size(); ++i) {
      graph.add_node(c.changes[i].path);
      for (std::size_t j = i + 1; j < c.changes.size(); ++j) {
        graph.add_cochange(c.changes[i].path, c.changes[j].path);
      }
    }
  }
  return graph;
}

std::uint64_t degree(const CoChangeGraph& graph, const std::string& node) {
  return graph.degree(node);
}

Distribution cochange_probabilities(const CoChangeGraph& graph) {
  if (graph.edge_count() == 0) {
    throw DegenerateInputError("co-change probabilities undefined on an edgeless graph");
  }
  std::map<std::string, std::uint64_t> weights;
  for (const auto& node : graph.nodes()) weights.emplace(node, graph.degree(node));
  return Distribution(std::move(weights));
}

Distribution weighted_cochange_probabilities(const CoChangeGraph& graph) {
  if (graph.edge_count() == 0) {
    throw DegenerateInputError("weighted co-change probabilities undefined on an edgeless graph");
  }
  std::map<std::string, std::uint64_t> weights;
  for (const auto& node : graph.nodes()) weights.emplace(node, graph.weighted_degree(node));
  return Distribution(std::move(weights));
}

void write_edge_list(std::ostream& out, const CoChangeGraph& graph) {
  csv::write_row(out, {"file_a", "file_b", "count"});
  for (const auto& [edge, count] : graph.edges()) {
    csv::write_row(out, {edge.first, edge.second, std::to_string(count)});
  }
}

}  // namespace cochange
