#ifndef KWGRAPH_GRAPH_HPP
#define KWGRAPH_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kwgraph/error.hpp"

namespace kwgraph {

/// A real-valued function on the vertex set, indexed in canonical vertex order.
class VertexFunction {
public:
  VertexFunction() = default;
  explicit VertexFunction(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit VertexFunction(std::vector<double> values) : values_(std::move(values)) {}
  VertexFunction(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  VertexFunction& operator+=(const VertexFunction& other) {
    detail::require_same_length(size(), other.size(), "VertexFunction +=");
    for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
    return *this;
  }
  VertexFunction& operator-=(const VertexFunction& other) {
    detail::require_same_length(size(), other.size(), "VertexFunction -=");
    for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
    return *this;
  }
  VertexFunction& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }
  VertexFunction& operator+=(double c) {
    for (double& v : values_) v += c;
    return *this;
  }

  /// this += a * x
  VertexFunction& axpy(double a, const VertexFunction& x) {
    detail::require_same_length(size(), x.size(), "VertexFunction axpy");
    for (std::size_t i = 0; i < size(); ++i) values_[i] += a * x.values_[i];
    return *this;
  }

  double sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  double max() const { return *std::max_element(values_.begin(), values_.end()); }

  friend bool operator==(const VertexFunction&, const VertexFunction&) = default;

private:
  std::vector<double> values_;
};

inline VertexFunction operator+(VertexFunction a, const VertexFunction& b) { return a += b; }
inline VertexFunction operator-(VertexFunction a, const VertexFunction& b) { return a -= b; }
inline VertexFunction operator*(double s, VertexFunction a) { return a *= s; }
inline VertexFunction operator*(VertexFunction a, double s) { return a *= s; }
inline VertexFunction operator-(VertexFunction a) { return a *= -1.0; }

struct Edge {
  std::size_t i;
  std::size_t j;
  double w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::size_t index;
  double w;
};

/// Finite weighted graph with vertex measure mu and prescribed function h.
///
/// Construction only checks that edge endpoints are valid indices; the
/// remaining invariants (positivity, no self-loops or duplicates,
/// connectivity) are reported by validate().
class Graph {
public:
  Graph(std::vector<std::string> vertex_ids, std::vector<double> mu,
        std::vector<double> h, std::vector<Edge> edges)
      : ids_(std::move(vertex_ids)),
        mu_(std::move(mu)),
        h_(std::move(h)),
        edges_(std::move(edges)),
        adjacency_(ids_.size()) {
    if (mu_.size() != ids_.size() || h_.size() != ids_.size()) {
      throw Error(ErrorKind::Validation, "mu and h must have one entry per vertex");
    }
    for (const Edge& e : edges_) {
      if (e.i >= ids_.size() || e.j >= ids_.size()) {
        throw Error(ErrorKind::Validation, "edge endpoint index out of range");
      }
      adjacency_[e.i].push_back({e.j, e.w});
      if (e.i != e.j) adjacency_[e.j].push_back({e.i, e.w});
    }
    for (double m : mu_) volume_ += m;
  }

  std::size_t size() const noexcept { return ids_.size(); }

  const std::vector<std::string>& vertex_ids() const noexcept { return ids_; }
  const std::vector<double>& mu() const noexcept { return mu_; }
  const std::vector<double>& h() const noexcept { return h_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  double mu(std::size_t x) const { return mu_[x]; }
  double h(std::size_t x) const { return h_[x]; }

  std::span<const Neighbor> neighbors(std::size_t x) const { return adjacency_[x]; }

  /// Vol(V) = sum of mu.
  double volume() const noexcept { return volume_; }

  double mu_min() const { return *std::min_element(mu_.begin(), mu_.end()); }
  double h_min() const { return *std::min_element(h_.begin(), h_.end()); }
  double h_max() const { return *std::max_element(h_.begin(), h_.end()); }

  std::optional<std::size_t> index_of(const std::string& id) const {
    auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  VertexFunction h_function() const { return VertexFunction(h_); }
  VertexFunction constant(double c) const { return VertexFunction(size(), c); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.mu_ == b.mu_ && a.h_ == b.h_ && a.edges_ == b.edges_;
  }

private:
  std::vector<std::string> ids_;
  std::vector<double> mu_;
  std::vector<double> h_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  double volume_ = 0.0;
};

enum class ViolationKind {
  Empty,
  NonpositiveMeasure,
  NonpositiveH,
  NonpositiveWeight,
  SelfLoop,
  DuplicateEdge,
  Disconnected,
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Empty: return "empty graph";
    case ViolationKind::NonpositiveMeasure: return "nonpositive measure";
    case ViolationKind::NonpositiveH: return "nonpositive h";
    case ViolationKind::NonpositiveWeight: return "nonpositive weight";
    case ViolationKind::SelfLoop: return "self-loop";
    case ViolationKind::DuplicateEdge: return "duplicate edge";
    case ViolationKind::Disconnected: return "disconnected";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string detail;

  std::string message() const {
    return detail.empty() ? std::string(to_string(kind))
                          : std::string(to_string(kind)) + ": " + detail;
  }
};

/// Lists every violated Graph invariant; empty means valid.
inline std::vector<Violation> validate(const Graph& g) {
  std::vector<Violation> out;
  const std::size_t n = g.size();
  if (n == 0) {
    out.push_back({ViolationKind::Empty, ""});
    return out;
  }
  const auto& ids = g.vertex_ids();
  for (std::size_t x = 0; x < n; ++x) {
    // Written as !(v > 0) so that NaN is rejected too.
    if (!(g.mu(x) > 0.0) || !std::isfinite(g.mu(x)))
      out.push_back({ViolationKind::NonpositiveMeasure, ids[x]});
    if (!(g.h(x) > 0.0) || !std::isfinite(g.h(x)))
      out.push_back({ViolationKind::NonpositiveH, ids[x]});
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : g.edges()) {
    const std::string label = ids[e.i] + "-" + ids[e.j];
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      out.push_back({ViolationKind::NonpositiveWeight, label});
    if (e.i == e.j) {
      out.push_back({ViolationKind::SelfLoop, label});
      continue;
    }
    if (!seen.insert(std::minmax(e.i, e.j)).second)
      out.push_back({ViolationKind::DuplicateEdge, label});
  }

  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors(x)) {
      if (!reached[nb.index]) {
        reached[nb.index] = true;
        ++count;
        stack.push_back(nb.index);
      }
    }
  }
  if (count != n) out.push_back({ViolationKind::Disconnected, ""});
  return out;
}

inline std::string join_violations(const std::vector<Violation>& violations) {
  std::string s;
  for (const Violation& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.message();
  }
  return s;
}

}  // namespace kwgraph

#endif  // KWGRAPH_GRAPH_HPP
