#include "relloc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relloc/errors.hpp"
#include "relloc/rng.hpp"

namespace relloc {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.first) + ", " + std::to_string(e.second) + ")";
}

bool is_connected(int n, const std::vector<int>& adjacency,
                  const std::vector<int>& offsets) {
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int k = offsets[u]; k < offsets[u + 1]; ++k) {
      const int v = adjacency[k];
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n;
}

}  // namespace

Graph::Graph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1)
    throw InvalidParameterError("graph needs at least one node");
  for (auto& e : edges_) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first == e.second)
      throw InvalidParameterError("self-loop at node " +
                                  std::to_string(e.first));
    if (e.first < 0 || e.second >= node_count_)
      throw InvalidParameterError("edge " + edge_str(e) +
                                  " out of range for " +
                                  std::to_string(node_count_) + " nodes");
  }
  {
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
      throw InvalidParameterError("duplicate edge " + edge_str(*dup));
  }

  offsets_.assign(node_count_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (int i = 0; i < node_count_; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[node_count_]);
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (int i = 0; i < node_count_; ++i)
    max_degree_ = std::max(max_degree_, degree(i));

  if (!is_connected(node_count_, adjacency_, offsets_))
    throw ConstructionError("graph is not connected");
}

Graph build_cycle(int n) {
  if (n < 3) throw InvalidParameterError("cycle needs n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

Graph build_path(int n) {
  if (n < 2) throw InvalidParameterError("path needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph build_complete(int n) {
  if (n < 2) throw InvalidParameterError("complete graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph build_torus_grid(int rows, int cols) {
  if (rows < 2 || cols < 2)
    throw InvalidParameterError("torus grid needs rows, cols >= 2");
  const auto id = [cols](int r, int c) { return r * cols + c; };
  // A length-2 dimension makes the wrap edge coincide with the grid edge;
  // the set keeps exactly one copy.
  std::set<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int a = id(r, c);
      const int down = id((r + 1) % rows, c);
      const int right = id(r, (c + 1) % cols);
      edges.insert({std::min(a, down), std::max(a, down)});
      edges.insert({std::min(a, right), std::max(a, right)});
    }
  }
  return Graph(rows * cols, std::vector<Edge>(edges.begin(), edges.end()));
}

Graph build_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 2) throw InvalidParameterError("random graph needs n >= 2");
  if (!(p > 0.0) || p > 1.0)
    throw InvalidParameterError("edge probability must be in (0, 1]");
  constexpr int kMaxAttempts = 100;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto eng = rng::make_engine(seed + static_cast<std::uint64_t>(attempt));
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng::uniform01(eng) < p) edges.emplace_back(u, v);
    try {
      return Graph(n, std::move(edges));
    } catch (const ConstructionError&) {
      // disconnected; resample with the next seed
    }
  }
  throw ConstructionError("no connected graph with n = " + std::to_string(n) +
                          ", p = " + std::to_string(p) + " after " +
                          std::to_string(kMaxAttempts) + " attempts");
}

Eigen::MatrixXd incidence_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.edge_count(), g.node_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& [u, v] = g.edges()[e];
    a(e, u) = -1.0;
    a(e, v) = 1.0;
  }
  return a;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.node_count(), g.node_count());
  for (const auto& [u, v] : g.edges()) {
    l(u, u) += 1.0;
    l(v, v) += 1.0;
    l(u, v) -= 1.0;
    l(v, u) -= 1.0;
  }
  return l;
}

LaplacianSpectrum spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Laplacian eigendecomposition did not converge");
  LaplacianSpectrum s{solver.eigenvalues()};

  const int n = g.node_count();
  const double lambda_max = s.eigenvalues(n - 1);
  const double tol = 1e-9 * std::max(1.0, lambda_max);
  if (std::abs(s.eigenvalues(0)) > tol)
    throw NumericalError("smallest Laplacian eigenvalue not zero");
  if (n >= 2 && s.eigenvalues(1) <= 1e-12 * std::max(1.0, lambda_max))
    throw NumericalError("second Laplacian eigenvalue not positive");
  if (lambda_max > 2.0 * g.max_degree() + tol)
    throw NumericalError("Laplacian eigenvalue above twice the max degree");
  return s;
}

Graph read_edge_list(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m))
    throw InvalidParameterError("edge list: missing 'N M' header");
  if (n < 1 || m < 0)
    throw InvalidParameterError("edge list: bad 'N M' header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    long long u = 0, v = 0;
    if (!(in >> u >> v))
      throw InvalidParameterError("edge list: expected " + std::to_string(m) +
                                  " edges, got " + std::to_string(e));
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidParameterError("edge list: edge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ") out of range");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameterError("cannot open graph file: " + path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidParameterError("cannot write graph file: " + path);
  write_edge_list(g, out);
  out.flush();
  if (!out) throw InvalidParameterError("failed writing graph file: " + path);
}

}  // namespace relloc
