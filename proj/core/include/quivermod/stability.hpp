#pragma once

#include "quivermod/representation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quivermod {

/// Exhaustive search limits. `subspace_budget` bounds the number of
/// subspace tuples Π_i |Gr(F_p^{a_i})| the search may visit.
struct OracleConfig {
  std::uint64_t subspace_budget = 10'000'000;
  unsigned jobs = 1;
};

/// A subrepresentation: per-vertex subspaces U_i given by row bases in
/// reduced row-echelon form (β_i × a_i), with M_a(U_i) ⊆ U_j for every arrow.
struct Subrepresentation {
  std::vector<Matrix> bases;
  DimVector beta;
};

struct SubrepWitness {
  Subrepresentation sub;
  std::int64_t theta_value = 0;
};

/// Number of subspaces of F_p^n (sum of Gaussian binomials), saturating at UINT64_MAX.
std::uint64_t subspace_count(std::uint64_t p, std::size_t n);
/// Size of the search space for a representation; what the budget is checked against.
std::uint64_t subspace_tuple_count(const Representation& m);

/// Every subrepresentation exactly once, in deterministic order (vertex 1's
/// subspace outermost; subspaces ordered by rank, pivot set, free entries).
/// Throws ValidationError over Q, BudgetExceeded past the budget.
std::vector<Subrepresentation> enumerate_subreps(const Representation& m,
                                                 const OracleConfig& config = {});

/// True when every U_i is mapped into U_j; recomputed from scratch.
bool is_arrow_stable(const Representation& m, const std::vector<Matrix>& bases);

struct StabilityVerdict {
  bool holds = false;
  std::int64_t theta_of_m = 0;
  /// For semistability: a subrep of minimal θ(β) when that minimum is negative.
  /// For stability: additionally, a proper nonzero subrep with θ(β) = 0.
  std::optional<SubrepWitness> witness;
  std::string reason;
  std::uint64_t budget_used = 0;
};

/// θ(α_M) = 0 and θ(β) >= 0 for all subreps. The witness minimises θ(β),
/// ties broken by smaller d(β), then lexicographic β, then search order.
StabilityVerdict is_semistable(const Representation& m, const Weight& theta,
                               const OracleConfig& config = {});
/// Semistable and no proper nonzero subrep has θ(β) = 0.
StabilityVerdict is_stable(const Representation& m, const Weight& theta,
                           const OracleConfig& config = {});

enum class Certainty { heuristic, proof };

/// Outcome of testing a rational representation by reduction modulo primes.
struct RationalVerdict {
  enum class Outcome {
    semistable_at_all_primes,  // heuristic
    unstable_proved,           // θ(α) != 0, or a witness lifted to Q
    unstable_mod_p             // heuristic: witness found mod p did not lift
  };
  Outcome outcome = Outcome::semistable_at_all_primes;
  Certainty certainty = Certainty::heuristic;
  std::int64_t theta_of_m = 0;
  std::vector<std::uint32_t> primes_tested;
  std::vector<std::string> notices;
  /// Witness found modulo `witness_prime`; `lifted_bases` set when it lifts.
  std::optional<SubrepWitness> witness;
  std::uint32_t witness_prime = 0;
  std::optional<std::vector<Matrix>> lifted_bases;
  std::uint64_t budget_used = 0;

  bool semistable() const noexcept { return outcome == Outcome::semistable_at_all_primes; }
};

/// Reduces M mod each prime (skipping primes dividing a denominator) and runs
/// the F_p oracle. Semistability is only ever heuristic; instability is a
/// proof when the destabilising subspaces lift to an arrow-stable tuple over Q.
RationalVerdict check_over_rationals(const Representation& m, const Weight& theta,
                                     const std::vector<std::uint64_t>& primes,
                                     const OracleConfig& config = {});

/// Entrywise reduction of a rational representation into F_p.
Representation reduce_mod_p(const Representation& m, const Field& target);

}  // namespace quivermod
