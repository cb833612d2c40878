#include "specmix/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace specmix {

VertexSet::VertexSet(std::vector<int> v) : vertices(std::move(v)) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()),
                 vertices.end());
}

VertexSet VertexSet::from_mask(std::uint64_t mask) {
  VertexSet s;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) s.vertices.push_back(i);
  }
  return s;
}

VertexSet VertexSet::full(int n) {
  VertexSet s;
  s.vertices.resize(n);
  for (int i = 0; i < n; ++i) s.vertices[i] = i;
  return s;
}

bool VertexSet::contains(int x) const {
  return std::binary_search(vertices.begin(), vertices.end(), x);
}

bool VertexSet::lex_less(const VertexSet& other) const {
  return std::lexicographical_compare(vertices.begin(), vertices.end(),
                                      other.vertices.begin(),
                                      other.vertices.end());
}

bool is_nonnegative(const VertexFunction& f, double tol) {
  return (f.array() >= -tol).all();
}

VertexSet support(const VertexFunction& f, double tol) {
  VertexSet s;
  for (int i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) > tol) s.vertices.push_back(i);
  }
  return s;
}

WeightedGraph WeightedGraph::build(int num_vertices,
                                   const std::vector<Edge>& edges) {
  WeightedGraph g;
  g.n_ = num_vertices;
  if (num_vertices <= 0) {
    throw Error(ErrorCode::IsolatedVertex, "graph must have vertices");
  }
  g.vertex_weight_.assign(num_vertices, 0.0);
  g.adjacency_.resize(num_vertices);
  std::set<std::pair<int, int>> seen;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    int u = std::min(e.u, e.v);
    int v = std::max(e.u, e.v);
    if (u < 0 || v >= num_vertices) {
      throw Error(ErrorCode::BadInputFile,
                  "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") out of range");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::NonpositiveWeight,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") has weight " + std::to_string(e.w));
    }
    if (!seen.insert({u, v}).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "pair (" + std::to_string(u) + "," + std::to_string(v) +
                      ") listed twice");
    }
    g.edges_.push_back({u, v, e.w});
    g.vertex_weight_[u] += e.w;
    if (v != u) g.vertex_weight_[v] += e.w;
    g.adjacency_[u].push_back({v, e.w});
    if (v != u) g.adjacency_[v].push_back({u, e.w});
  }
  for (int x = 0; x < num_vertices; ++x) {
    if (!(g.vertex_weight_[x] > 0.0)) {
      throw Error(ErrorCode::IsolatedVertex,
                  "vertex " + std::to_string(x) + " has zero weight");
    }
    g.total_weight_ += g.vertex_weight_[x];
  }
  return g;
}

double WeightedGraph::weight(int u, int v) const {
  for (const auto& [y, w] : adjacency_[u]) {
    if (y == v) return w;
  }
  return 0.0;
}

Eigen::VectorXd WeightedGraph::stationary() const {
  Eigen::VectorXd pi(n_);
  for (int x = 0; x < n_; ++x) pi[x] = vertex_weight_[x] / total_weight_;
  return pi;
}

double WeightedGraph::min_stationary() const {
  double w = vertex_weight_[0];
  for (int x = 1; x < n_; ++x) w = std::min(w, vertex_weight_[x]);
  return w / total_weight_;
}

double WeightedGraph::measure(const VertexSet& a) const {
  double w = 0.0;
  for (int x : a.vertices) w += vertex_weight_[x];
  return w / total_weight_;
}

bool WeightedGraph::connected() const {
  std::vector<char> visited(n_, 0);
  std::vector<int> stack{0};
  visited[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& [y, w] : adjacency_[x]) {
      (void)w;
      if (!visited[y]) {
        visited[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n_;
}

Eigen::MatrixXd WeightedGraph::transition_kernel() const {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n_, n_);
  for (int x = 0; x < n_; ++x) {
    for (const auto& [y, w] : adjacency_[x]) k(x, y) += w / vertex_weight_[x];
  }
  return k;
}

Eigen::MatrixXd WeightedGraph::laplacian() const {
  return Eigen::MatrixXd::Identity(n_, n_) - transition_kernel();
}

Eigen::MatrixXd WeightedGraph::symmetrized_laplacian() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
  for (int x = 0; x < n_; ++x) {
    for (const auto& [y, w] : adjacency_[x]) {
      m(x, y) += w / std::sqrt(vertex_weight_[x] * vertex_weight_[y]);
    }
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n_, n_) - m;
  return 0.5 * (a + a.transpose());  // scrub rounding asymmetry
}

Eigen::MatrixXd WeightedGraph::dirichlet_operator(const VertexSet& a) const {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "Dirichlet restriction");
  Eigen::MatrixXd full = laplacian();
  int m = a.size();
  Eigen::MatrixXd sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = full(a.vertices[i], a.vertices[j]);
  return sub;
}

Eigen::MatrixXd WeightedGraph::dirichlet_symmetrized(const VertexSet& a) const {
  if (a.empty()) throw Error(ErrorCode::EmptySet, "Dirichlet restriction");
  Eigen::MatrixXd full = symmetrized_laplacian();
  int m = a.size();
  Eigen::MatrixXd sub(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) sub(i, j) = full(a.vertices[i], a.vertices[j]);
  return sub;
}

DirichletFormResult dirichlet_form_and_norms(const WeightedGraph& g,
                                             const VertexFunction& f) {
  const int n = g.num_vertices();
  Eigen::VectorXd pi = g.stationary();

  // Quadratic-form route: sum_x pi(x) f(x) (f(x) - (Kf)(x)).
  double matrix_form = 0.0;
  for (int x = 0; x < n; ++x) {
    double kf = 0.0;
    for (const auto& [y, w] : g.neighbors(x)) {
      kf += w / g.vertex_weight(x) * f[y];
    }
    matrix_form += pi[x] * f[x] * (f[x] - kf);
  }

  // Pairwise-difference route: (1/2) sum pi(x)K(x,y)(f(x)-f(y))^2, which is
  // sum over unordered edges of w(x,y)/W * (f(x)-f(y))^2.
  double pair_form = 0.0;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    double d = f[e.u] - f[e.v];
    pair_form += e.w / g.total_weight() * d * d;
  }

  double scale = std::max({1.0, std::abs(matrix_form), std::abs(pair_form),
                           1e-2 * f.squaredNorm()});
  if (std::abs(matrix_form - pair_form) > 1e-10 * scale) {
    throw std::logic_error("Dirichlet form cross-check failed: " +
                           std::to_string(matrix_form) + " vs " +
                           std::to_string(pair_form));
  }

  double l1 = 0.0, l2sq = 0.0, mean = 0.0;
  for (int x = 0; x < n; ++x) {
    l1 += pi[x] * std::abs(f[x]);
    l2sq += pi[x] * f[x] * f[x];
    mean += pi[x] * f[x];
  }
  return {pair_form, l1, std::sqrt(l2sq), l2sq - mean * mean};
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::TooLargeForExact: return "TooLargeForExact";
    case ErrorCode::SingletonGraph: return "SingletonGraph";
    case ErrorCode::SingletonFullGraph: return "SingletonFullGraph";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::KTooLargeForDense: return "KTooLargeForDense";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::BadPieceLabel: return "BadPieceLabel";
    case ErrorCode::PartialMap: return "PartialMap";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
    case ErrorCode::BadInputFile: return "BadInputFile";
  }
  return "UnknownError";
}

}  // namespace specmix
