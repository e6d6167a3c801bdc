// Undirected labeled graphs. Neighbor lists are ordered; for coined walks the
// position of a neighbor in the list is the edge label, and regular graphs
// with permutation-consistent labels give a unitary shift.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace qwalk {

struct Graph {
  std::vector<std::vector<int>> adjacency;
  std::set<int> marked;

  int num_vertices() const { return static_cast<int>(adjacency.size()); }
  std::int64_t num_edges() const;
  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }

  bool is_connected() const;
  // Degree shared by all vertices, or -1 when degrees differ.
  int regular_degree() const;
  void check_undirected() const;  // u in adj(v) <=> v in adj(u)

  static Graph cycle(int n);
  static Graph path(int n);
  static Graph complete(int n);
  static Graph star(int leaves);
  static Graph hypercube(int dim);

  // Edge-list text: one "u v" pair per line, 0-based ids, '#' comments.
  static Graph from_edge_list(std::istream& in);
  static Graph load_edge_list(const std::string& path);
};

}  // namespace qwalk
