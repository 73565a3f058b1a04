#pragma once

#include "quivermod/errors.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace quivermod {

/// Arrow as supplied by a caller: vertex indices are 1-based.
struct ArrowSpec {
  std::string id;
  long long source = 0;
  long long target = 0;
};

/// Validated arrow; vertex indices are 0-based.
struct Arrow {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// A finite quiver. Immutable after construction.
///
/// Vertices are 0-based internally and 1-based in every file and CLI
/// surface. Vertices carry display names ("v1".."vk" unless overridden);
/// names only matter for presentations.
class Quiver {
 public:
  /// Validates a raw description. Arrow ids are trimmed and must be unique
  /// and nonempty; endpoints must lie in 1..vertex_count.
  Quiver(std::size_t vertex_count, const std::vector<ArrowSpec>& arrows,
         std::vector<std::string> vertex_names = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(std::size_t index) const { return arrows_.at(index); }
  std::optional<std::size_t> find_arrow(const std::string& id) const;
  const std::string& vertex_name(std::size_t v) const { return vertex_names_.at(v); }
  const std::vector<std::string>& vertex_names() const noexcept { return vertex_names_; }

  bool acyclic() const noexcept { return acyclic_; }
  /// Topological order of the vertices; empty when the quiver has a cycle.
  const std::vector<std::size_t>& topological_order() const noexcept { return topo_order_; }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertex_count_ == b.vertex_count_ && a.arrows_ == b.arrows_;
  }

 private:
  std::size_t vertex_count_;
  std::vector<Arrow> arrows_;
  std::vector<std::string> vertex_names_;
  std::vector<std::size_t> topo_order_;
  bool acyclic_ = false;
};

/// Throws ValidationError unless the quiver has no oriented cycles.
void require_acyclic(const Quiver& q, const char* operation);

/// Path in a quiver. `arrows` are listed in application order: the first
/// arrow is applied first, so the path [a, b] is the algebra product b·a and
/// evaluates to M_b M_a. A path with no arrows is the trivial path at
/// `source` (== `target`).
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  static Path trivial(std::size_t vertex) { return Path{vertex, vertex, {}}; }
  static Path of_arrow(const Quiver& q, std::size_t arrow_index);

  std::size_t length() const noexcept { return arrows.size(); }
  bool is_trivial() const noexcept { return arrows.empty(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Builds a path from arrow ids in application order. For an empty list the
/// vertex must be supplied. Throws ValidationError on unknown ids or breaks.
Path make_path(const Quiver& q, const std::vector<std::string>& arrow_ids,
               std::optional<std::size_t> trivial_vertex = std::nullopt);
/// True when the arrows chain and the endpoints are consistent.
bool is_valid_path(const Quiver& q, const Path& p);
/// The product p·q: apply q, then p. Requires q.target == p.source.
Path compose(const Path& p, const Path& q);
/// Arrow ids in application order.
std::vector<std::string> arrow_ids(const Quiver& q, const Path& p);
/// "e2" for trivial paths, otherwise ids joined by "*" in product order ("b*a").
std::string format_path(const Quiver& q, const Path& p);

/// All paths of length <= max_len (all paths when omitted), sorted by
/// length, then lexicographically by arrow-id sequence; trivial paths by vertex.
/// Throws ValidationError for a cyclic quiver without a bound.
std::vector<Path> enumerate_paths(const Quiver& q, std::optional<std::size_t> max_len = std::nullopt);
/// Paths from `source` to `target`, in the same order.
std::vector<Path> paths_between(const Quiver& q, std::size_t source, std::size_t target,
                                std::optional<std::size_t> max_len = std::nullopt);

struct DimTag {};
struct WeightTag {};

/// Integer vector indexed by vertex. Shared base of DimVector and Weight.
template <typename Tag>
class VertexVector {
 public:
  VertexVector() = default;
  explicit VertexVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    if constexpr (std::is_same_v<Tag, DimTag>) {
      for (auto x : entries_) {
        if (x < 0) throw ValidationError("dimension vector entries must be nonnegative");
      }
    }
  }
  static VertexVector zero(std::size_t k) { return VertexVector(std::vector<std::int64_t>(k, 0)); }

  std::size_t size() const noexcept { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto x : entries_) s += x;
    return s;
  }
  bool is_zero() const {
    for (auto x : entries_) {
      if (x != 0) return false;
    }
    return true;
  }

  friend auto operator<=>(const VertexVector&, const VertexVector&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

/// Dimension vector α: nonnegative entries, d(α) = total().
using DimVector = VertexVector<DimTag>;
/// Stability weight θ ∈ Z^k.
using Weight = VertexVector<WeightTag>;

DimVector operator+(const DimVector& a, const DimVector& b);
/// Componentwise difference; throws ValidationError if a negative entry results.
DimVector operator-(const DimVector& a, const DimVector& b);
/// Componentwise a <= b.
bool dominated_by(const DimVector& a, const DimVector& b);
/// All β with 0 <= β <= α componentwise, lexicographically sorted.
std::vector<DimVector> sub_dimvectors(const DimVector& alpha);

/// "(1,2,0)".
std::string format_vector(const std::vector<std::int64_t>& v);

/// ⟨α,β⟩ = Σ_i a_i b_i − Σ_{a: i→j} a_i b_j.
std::int64_t euler_form(const Quiver& q, const DimVector& alpha, const DimVector& beta);
/// θ(α) = Σ_i θ_i a_i.
std::int64_t theta_pairing(const Weight& theta, const DimVector& alpha);
/// All α with d(α) = n and θ(α) = 0, lexicographically sorted.
std::vector<DimVector> enumerate_dimvectors(const Quiver& q, std::int64_t n, const Weight& theta);

/// Throws ValidationError unless v has one entry per vertex.
template <typename Tag>
void require_length(const Quiver& q, const VertexVector<Tag>& v, const char* what) {
  if (v.size() != q.vertex_count()) {
    throw ValidationError(std::string(what) + " has " + std::to_string(v.size()) +
                          " entries, quiver has " + std::to_string(q.vertex_count()) +
                          " vertices");
  }
}

}  // namespace quivermod
