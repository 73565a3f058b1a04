#pragma once

#include "quivermod/quiver.hpp"
#include "quivermod/representation.hpp"
#include "quivermod/stability.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace quivermod {

/// Memoized generic extension dimensions ext(α, β) for an acyclic quiver.
///
/// Uses the recursion
///
///   ext(α, β) = max { −⟨α, β − β′⟩ : β′ ↪ β },   β′ ↪ β  iff  ext(β′, β − β′) = 0,
///
/// i.e. the maximum of −⟨α, β″⟩ over generic quotient dimension vectors β″
/// of β, including β″ = β and β″ = 0. This form comes from
/// Schofield's work on general representations; correctness is checked
/// against sampled Ext¹ dimensions of random representations in the tests.
///
/// Not thread-safe: confine each table to one worker.
class GenericExtTable {
 public:
  /// Throws ValidationError for a quiver with oriented cycles.
  explicit GenericExtTable(QuiverPtr quiver);

  const Quiver& quiver() const noexcept { return *quiver_; }

  std::int64_t ext(const DimVector& alpha, const DimVector& beta);
  /// All β ≤ α with ext(β, α − β) = 0, lexicographically sorted.
  const std::vector<DimVector>& generic_subdimvectors(const DimVector& alpha);

  std::size_t memo_size() const noexcept { return ext_memo_.size(); }

 private:
  QuiverPtr quiver_;
  std::map<std::pair<DimVector, DimVector>, std::int64_t> ext_memo_;
  std::map<DimVector, std::vector<DimVector>> sub_memo_;
  std::set<DimVector> subs_in_progress_;
};

/// One-shot conveniences over a fresh table.
std::int64_t generic_ext(QuiverPtr quiver, const DimVector& alpha, const DimVector& beta);
std::vector<DimVector> generic_subdimvectors(QuiverPtr quiver, const DimVector& alpha);

/// θ(α) = 0 and θ(β) ≥ 0 for every generic subdimension vector β.
bool semistable_nonempty(GenericExtTable& table, const DimVector& alpha, const Weight& theta);
/// θ(α) = 0 and θ(β) > 0 for every proper nonzero generic subdimension vector.
/// This existence criterion is assembled from King's and Schofield's results.
/// Throws ValidationError for α = 0.
bool stable_nonempty(GenericExtTable& table, const DimVector& alpha, const Weight& theta);
/// 1 − ⟨α,α⟩ when the stable locus is nonempty; nullopt otherwise.
std::optional<std::int64_t> moduli_dimension(GenericExtTable& table, const DimVector& alpha,
                                             const Weight& theta);

/// A θ-stable summand M_i of a semisimple point with multiplicity e_i.
struct LocalSummand {
  Representation rep;
  std::int64_t multiplicity = 1;
};

struct LocalQuiverOptions {
  /// Skip oracle verification of stability (required for rational input);
  /// the result is then marked unverified.
  bool assert_stable = false;
  OracleConfig oracle;
};

/// Local quiver Γ_y and dimension vector β_y at M_y = ⊕ M_i^{e_i}.
struct LocalQuiverData {
  /// arrow_counts[i][j] = dim Ext¹(M_i, M_j); loops on the diagonal.
  std::vector<std::vector<std::int64_t>> arrow_counts;
  std::vector<std::int64_t> multiplicities;
  std::vector<DimVector> summand_dims;
  bool stability_verified = false;

  std::size_t vertex_count() const noexcept { return multiplicities.size(); }
  /// Γ_y as a quiver; arrows i→j are named "g<i>_<j>_<n>" (1-based).
  Quiver to_quiver() const;
};

/// Throws ValidationError when a summand fails the stability oracle or when
/// hom(M_i, M_j) ≠ δ_ij (summands not stable or not pairwise distinct).
LocalQuiverData local_quiver(const std::vector<LocalSummand>& summands, const Weight& theta,
                             const LocalQuiverOptions& options = {});

/// Σ_{i,j} arrow_counts[i][j] e_i e_j − Σ_i e_i² + 1. Throws ValidationError
/// for empty data.
std::int64_t local_model_dimension(const LocalQuiverData& data);

}  // namespace quivermod
