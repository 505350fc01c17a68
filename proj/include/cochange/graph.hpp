#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cochange/distribution.hpp"
#include "cochange/vcs.hpp"

namespace cochange {

/// Canonical undirected edge: first < second lexicographically.
using Edge = std::pair<std::string, std::string>;

Edge make_edge(std::string a, std::string b);

/// Unweighted co-change graph over file paths. Each edge also records how
/// many commits changed its two endpoints together.
class CoChangeGraph {
 public:
  CoChangeGraph() = default;

  void add_node(const std::string& path);
  /// Adds the edge if absent and increments its co-change count.
  void add_cochange(const std::string& a, const std::string& b);

  const std::set<std::string>& nodes() const noexcept { return nodes_; }
  const std::map<Edge, std::uint64_t>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool contains(const std::string& node) const { return nodes_.contains(node); }

  /// Number of distinct incident edges. Throws LookupError for unknown nodes.
  std::uint64_t degree(const std::string& node) const;
  /// Sum of co-change counts over incident edges.
  std::uint64_t weighted_degree(const std::string& node) const;
  /// Sorted neighbor list.
  const std::vector<std::string>& neighbors(const std::string& node) const;

  friend bool operator==(const CoChangeGraph&, const CoChangeGraph&) = default;

 private:
  std::set<std::string> nodes_;
  std::map<Edge, std::uint64_t> edges_;
  std::map<std::string, std::vector<std::string>> adjacency_;
};

/// Nodes are all changed files; every unordered pair of files within one
/// commit becomes an edge.
CoChangeGraph build_graph(const std::vector<Commit>& commits);

std::uint64_t degree(const CoChangeGraph& graph, const std::string& node);

/// p'_k = degree(k) / (2|E|). Isolated nodes get weight 0.
/// Throws DegenerateInputError on an edgeless graph.
Distribution cochange_probabilities(const CoChangeGraph& graph);

/// p_k = weighted_degree(k) / sum of weighted degrees.
/// Throws DegenerateInputError on an edgeless graph.
Distribution weighted_cochange_probabilities(const CoChangeGraph& graph);

/// CSV `file_a,file_b,count`, rows in lexicographic edge order.
void write_edge_list(std::ostream& out, const CoChangeGraph& graph);

}  // namespace cochange
