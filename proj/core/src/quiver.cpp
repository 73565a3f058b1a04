#include "quivermod/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

namespace quivermod {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::size_t checked_vertex(long long v, std::size_t k, const std::string& arrow_id) {
  if (v < 1 || static_cast<unsigned long long>(v) > k) {
    throw ValidationError("arrow '" + arrow_id + "': vertex index " + std::to_string(v) +
                          " out of range 1.." + std::to_string(k));
  }
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

Quiver::Quiver(std::size_t vertex_count, const std::vector<ArrowSpec>& arrows,
               std::vector<std::string> vertex_names)
    : vertex_count_(vertex_count), vertex_names_(std::move(vertex_names)) {
  if (vertex_count_ == 0) throw ValidationError("a quiver needs at least one vertex");
  if (vertex_names_.empty()) {
    for (std::size_t v = 0; v < vertex_count_; ++v) vertex_names_.push_back("v" + std::to_string(v + 1));
  } else if (vertex_names_.size() != vertex_count_) {
    throw ValidationError("vertex name list does not match the vertex count");
  }
  if (std::set<std::string>(vertex_names_.begin(), vertex_names_.end()).size() != vertex_count_) {
    throw ValidationError("duplicate vertex name");
  }

  std::set<std::string> seen;
  arrows_.reserve(arrows.size());
  for (const auto& spec : arrows) {
    std::string id = trim(spec.id);
    if (id.empty()) throw ValidationError("empty arrow id");
    if (!seen.insert(id).second) throw ValidationError("duplicate arrow id '" + id + "'");
    arrows_.push_back(Arrow{id, checked_vertex(spec.source, vertex_count_, id),
                            checked_vertex(spec.target, vertex_count_, id)});
  }

  // Kahn's algorithm; smallest available vertex first for a canonical order.
  std::vector<std::size_t> indegree(vertex_count_, 0);
  for (const auto& a : arrows_) ++indegree[a.target];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (const auto& a : arrows_) {
      if (a.source == v && --indegree[a.target] == 0) ready.push(a.target);
    }
  }
  acyclic_ = order.size() == vertex_count_;
  if (acyclic_) topo_order_ = std::move(order);
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].id == id) return i;
  }
  return std::nullopt;
}

void require_acyclic(const Quiver& q, const char* operation) {
  if (!q.acyclic()) {
    throw ValidationError(std::string(operation) + " requires a quiver without oriented cycles");
  }
}

Path Path::of_arrow(const Quiver& q, std::size_t arrow_index) {
  const Arrow& a = q.arrow(arrow_index);
  return Path{a.source, a.target, {arrow_index}};
}

Path make_path(const Quiver& q, const std::vector<std::string>& ids,
               std::optional<std::size_t> trivial_vertex) {
  if (ids.empty()) {
    if (!trivial_vertex || *trivial_vertex >= q.vertex_count()) {
      throw ValidationError("trivial path needs a vertex in range");
    }
    return Path::trivial(*trivial_vertex);
  }
  Path p;
  for (std::size_t n = 0; n < ids.size(); ++n) {
    auto index = q.find_arrow(ids[n]);
    if (!index) throw ValidationError("unknown arrow '" + ids[n] + "'");
    const Arrow& a = q.arrow(*index);
    if (n == 0) {
      p.source = a.source;
    } else if (a.source != p.target) {
      throw ValidationError("arrow '" + ids[n] + "' does not start where '" + ids[n - 1] +
                            "' ends");
    }
    p.target = a.target;
    p.arrows.push_back(*index);
  }
  return p;
}

bool is_valid_path(const Quiver& q, const Path& p) {
  if (p.source >= q.vertex_count() || p.target >= q.vertex_count()) return false;
  if (p.arrows.empty()) return p.source == p.target;
  std::size_t at = p.source;
  for (auto index : p.arrows) {
    if (index >= q.arrow_count() || q.arrow(index).source != at) return false;
    at = q.arrow(index).target;
  }
  return at == p.target;
}

Path compose(const Path& p, const Path& q) {
  if (q.target != p.source) throw ValidationError("paths are not composable");
  Path out{q.source, p.target, q.arrows};
  out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
  return out;
}

std::vector<std::string> arrow_ids(const Quiver& q, const Path& p) {
  std::vector<std::string> ids;
  ids.reserve(p.arrows.size());
  for (auto index : p.arrows) ids.push_back(q.arrow(index).id);
  return ids;
}

std::string format_path(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e" + std::to_string(p.source + 1);
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
    if (!out.empty()) out += '*';
    out += q.arrow(*it).id;
  }
  return out;
}

namespace {

bool path_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.is_trivial()) return a.source < b.source;
  return arrow_ids(q, a) < arrow_ids(q, b);
}

}  // namespace

std::vector<Path> enumerate_paths(const Quiver& q, std::optional<std::size_t> max_len) {
  if (!q.acyclic() && !max_len) {
    throw ValidationError("path enumeration in a quiver with oriented cycles needs a length bound");
  }
  std::vector<Path> all;
  std::vector<Path> frontier;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) frontier.push_back(Path::trivial(v));
  std::size_t length = 0;
  while (!frontier.empty()) {
    all.insert(all.end(), frontier.begin(), frontier.end());
    if (max_len && length == *max_len) break;
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).source != p.target) continue;
        next.push_back(compose(Path::of_arrow(q, a), p));
      }
    }
    frontier = std::move(next);
    ++length;
  }
  std::stable_sort(all.begin(), all.end(),
                   [&q](const Path& a, const Path& b) { return path_less(q, a, b); });
  return all;
}

std::vector<Path> paths_between(const Quiver& q, std::size_t source, std::size_t target,
                                std::optional<std::size_t> max_len) {
  std::vector<Path> out;
  for (auto& p : enumerate_paths(q, max_len)) {
    if (p.source == source && p.target == target) out.push_back(std::move(p));
  }
  return out;
}

DimVector operator+(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) throw ValidationError("dimension vector length mismatch");
  std::vector<std::int64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return DimVector(std::move(out));
}

DimVector operator-(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) throw ValidationError("dimension vector length mismatch");
  std::vector<std::int64_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return DimVector(std::move(out));
}

bool dominated_by(const DimVector& a, const DimVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::vector<DimVector> sub_dimvectors(const DimVector& alpha) {
  std::vector<DimVector> out;
  std::vector<std::int64_t> current(alpha.size(), 0);
  // Odometer over the box [0, α], last coordinate fastest: lexicographic order.
  while (true) {
    out.emplace_back(current);
    std::size_t i = alpha.size();
    while (i > 0) {
      --i;
      if (current[i] < alpha[i]) {
        ++current[i];
        break;
      }
      current[i] = 0;
      if (i == 0) return out;
    }
    if (alpha.size() == 0) return out;
  }
}

std::string format_vector(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::int64_t euler_form(const Quiver& q, const DimVector& alpha, const DimVector& beta) {
  require_length(q, alpha, "alpha");
  require_length(q, beta, "beta");
  std::int64_t value = 0;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) value += alpha[i] * beta[i];
  for (const auto& a : q.arrows()) value -= alpha[a.source] * beta[a.target];
  return value;
}

std::int64_t theta_pairing(const Weight& theta, const DimVector& alpha) {
  if (theta.size() != alpha.size()) {
    throw ValidationError("weight and dimension vector have different lengths");
  }
  std::int64_t value = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) value += theta[i] * alpha[i];
  return value;
}

std::vector<DimVector> enumerate_dimvectors(const Quiver& q, std::int64_t n, const Weight& theta) {
  require_length(q, theta, "theta");
  if (n < 0) throw ValidationError("total dimension must be nonnegative");
  const std::size_t k = q.vertex_count();
  std::vector<DimVector> out;
  std::vector<std::int64_t> current(k, 0);
  // Recursive compositions of n into k parts, first coordinate outermost.
  auto recurse = [&](auto&& self, std::size_t index, std::int64_t remaining) -> void {
    if (index + 1 == k) {
      current[index] = remaining;
      DimVector alpha(current);
      if (theta_pairing(theta, alpha) == 0) out.push_back(std::move(alpha));
      return;
    }
    for (std::int64_t value = 0; value <= remaining; ++value) {
      current[index] = value;
      self(self, index + 1, remaining - value);
    }
  };
  recurse(recurse, 0, n);
  return out;
}

}  // namespace quivermod
