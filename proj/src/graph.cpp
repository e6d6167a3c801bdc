#include "qwalk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

std::int64_t Graph::num_edges() const {
  std::int64_t twice = 0;
  for (const auto& nbrs : adjacency) twice += static_cast<std::int64_t>(nbrs.size());
  return twice / 2;
}

bool Graph::is_connected() const {
  const int n = num_vertices();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adjacency[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

int Graph::regular_degree() const {
  if (adjacency.empty()) return -1;
  const int d = degree(0);
  for (int v = 1; v < num_vertices(); ++v) {
    if (degree(v) != d) return -1;
  }
  return d;
}

void Graph::check_undirected() const {
  for (int v = 0; v < num_vertices(); ++v) {
    for (int u : adjacency[v]) {
      if (u < 0 || u >= num_vertices()) {
        throw Error(ErrorCode::BadInput, "graph: neighbor id out of range");
      }
      const auto& back = adjacency[u];
      if (std::count(back.begin(), back.end(), v) !=
          std::count(adjacency[v].begin(), adjacency[v].end(), u)) {
        throw Error(ErrorCode::BadInput,
                    "graph: adjacency is not undirected-consistent");
      }
    }
  }
}

Graph Graph::cycle(int n) {
  if (n < 2) throw Error(ErrorCode::BadInput, "cycle: need n >= 2");
  Graph g;
  g.adjacency.resize(n);
  for (int v = 0; v < n; ++v) {
    // Neighbor order fixes edge labels: slot 0 = +1 direction, slot 1 = -1.
    g.adjacency[v] = {(v + 1) % n, (v + n - 1) % n};
  }
  return g;
}

Graph Graph::path(int n) {
  if (n < 1) throw Error(ErrorCode::BadInput, "path: need n >= 1");
  Graph g;
  g.adjacency.resize(n);
  for (int v = 0; v + 1 < n; ++v) {
    g.adjacency[v].push_back(v + 1);
    g.adjacency[v + 1].push_back(v);
  }
  return g;
}

Graph Graph::complete(int n) {
  if (n < 2) throw Error(ErrorCode::BadInput, "complete: need n >= 2");
  Graph g;
  g.adjacency.resize(n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (u != v) g.adjacency[v].push_back(u);
    }
  }
  return g;
}

Graph Graph::star(int leaves) {
  if (leaves < 1) throw Error(ErrorCode::BadInput, "star: need >= 1 leaf");
  Graph g;
  g.adjacency.resize(leaves + 1);
  for (int l = 1; l <= leaves; ++l) {
    g.adjacency[0].push_back(l);
    g.adjacency[l].push_back(0);
  }
  return g;
}

Graph Graph::hypercube(int dim) {
  if (dim < 1 || dim > 20) {
    throw Error(ErrorCode::BadInput, "hypercube: dim must be in [1,20]");
  }
  Graph g;
  const int n = 1 << dim;
  g.adjacency.resize(n);
  for (int v = 0; v < n; ++v) {
    for (int d = 0; d < dim; ++d) g.adjacency[v].push_back(v ^ (1 << d));
  }
  return g;
}

Graph Graph::from_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v)) {
      throw Error(ErrorCode::BadInput, "edge list: expected 'u v' pair");
    }
    if (u < 0 || v < 0) {
      throw Error(ErrorCode::BadInput, "edge list: vertex ids are 0-based");
    }
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  Graph g;
  g.adjacency.resize(max_vertex + 1);
  for (auto [u, v] : edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  return g;
}

Graph Graph::load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open graph file: " + path);
  return from_edge_list(in);
}

}  // namespace qwalk
