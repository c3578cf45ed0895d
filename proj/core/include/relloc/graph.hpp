#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace relloc {

// Edge with the canonical orientation: first index below second.
using Edge = std::pair<int, int>;

// Undirected connected graph over nodes 0..N-1. The edge list order is part
// of the object (it fixes the incidence-matrix rows); edges are stored with
// the canonical low -> high orientation, never duplicated, never self-loops.
// Immutable after construction, safe to share across threads.
class Graph {
 public:
  // Canonicalizes edge orientation, then validates: indices in range, no
  // self-loops, no duplicates, graph connected. Throws InvalidParameterError
  // for malformed edges, ConstructionError if the graph is disconnected.
  Graph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const int> neighbors(int node) const {
    return {adjacency_.data() + offsets_[node],
            static_cast<std::size_t>(offsets_[node + 1] - offsets_[node])};
  }
  int degree(int node) const { return offsets_[node + 1] - offsets_[node]; }
  int max_degree() const { return max_degree_; }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<int> adjacency_;  // concatenated neighbor lists
  std::vector<int> offsets_;    // node_count_ + 1 entries into adjacency_
  int max_degree_ = 0;
};

// Ring 0-1-...-(n-1)-0; requires n >= 3.
Graph build_cycle(int n);
// Chain 0-1-...-(n-1); requires n >= 2.
Graph build_path(int n);
// All pairs connected; requires n >= 2.
Graph build_complete(int n);
// rows x cols grid with wrap-around in both directions; requires
// rows, cols >= 2. Wrap edges that coincide with grid edges (length-2
// dimensions) are not duplicated.
Graph build_torus_grid(int rows, int cols);
// Each pair present independently with probability p. Resamples with an
// incremented seed until connected, at most 100 attempts, then throws
// ConstructionError. Deterministic in (n, p, seed).
Graph build_erdos_renyi(int n, double p, std::uint64_t seed);

// Oriented incidence matrix A (edges x nodes): row e for edge (u, v) has
// -1 at u and +1 at v. Every row sums to zero. Dense; intended for small
// graphs and oracle checks, the solver never materializes it.
Eigen::MatrixXd incidence_matrix(const Graph& g);

// Graph Laplacian L = A^T A, accumulated edge-wise: degrees on the diagonal,
// -1 per edge off the diagonal. Entries are exact small integers.
Eigen::MatrixXd laplacian(const Graph& g);

struct LaplacianSpectrum {
  // Ascending. First entry ~0 (constant vector); the rest are positive for a
  // connected graph and bounded by 2 * max_degree.
  Eigen::VectorXd eigenvalues;
};

// Dense symmetric eigendecomposition of the Laplacian. Validates the
// spectral invariants above and throws NumericalError if they fail.
LaplacianSpectrum spectrum(const Graph& g);

// Plain-text edge list: first line "N M", then M lines "u v".
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace relloc
