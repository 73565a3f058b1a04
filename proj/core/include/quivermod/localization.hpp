#pragma once

#include "quivermod/field.hpp"
#include "quivermod/matrix.hpp"
#include "quivermod/quiver.hpp"
#include "quivermod/representation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quivermod {

/// Formal sum Σ c_t p_t of paths sharing one source and one target.
struct PathCombination {
  struct Term {
    Scalar coeff;
    Path path;
  };

  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<Term> terms;

  bool is_zero() const noexcept { return terms.empty(); }
};

/// Morphism P_{i_1} ⊕ … ⊕ P_{i_u} → P_{j_1} ⊕ … ⊕ P_{j_v} between
/// projectives of the path algebra, stored as a u × v matrix whose (p, q)
/// entry is a combination of paths from vertex j_q to vertex i_p.
///
/// Evaluated at a representation, entry (p, q) becomes an a_{i_p} × a_{j_q}
/// block, so M_σ(m) maps ⊕ V_{j_q} to ⊕ V_{i_p}.
class SigmaMorphism {
 public:
  /// Validates typing against `quiver`. Vertex indices are 0-based.
  SigmaMorphism(const Quiver& quiver, std::vector<std::size_t> domain,
                std::vector<std::size_t> codomain, std::vector<PathCombination> entries);

  const Quiver& quiver() const noexcept { return *quiver_; }
  const std::vector<std::size_t>& domain() const noexcept { return domain_; }
  const std::vector<std::size_t>& codomain() const noexcept { return codomain_; }
  std::size_t rows() const noexcept { return domain_.size(); }
  std::size_t cols() const noexcept { return codomain_.size(); }
  const PathCombination& entry(std::size_t p, std::size_t q) const { return entries_[p * cols() + q]; }

 private:
  QuiverPtr quiver_;
  std::vector<std::size_t> domain_;
  std::vector<std::size_t> codomain_;
  std::vector<PathCombination> entries_;
};

/// A random member of Σ_z for θ: domain holds each i with θ_i > 0 repeated
/// zθ_i times, codomain each j with θ_j < 0 repeated −zθ_j times. Entries
/// combine every admissible path of length ≤ max_path_len with random
/// nonzero rational coefficients; deterministic per seed.
SigmaMorphism make_sigma(const Quiver& q, const Weight& theta, std::int64_t z,
                         std::size_t max_path_len, std::uint64_t seed);

/// Σ_{domain} a_{i_p} == Σ_{codomain} a_{j_q}.
bool numerical_condition(const SigmaMorphism& sigma, const DimVector& alpha);

/// M_σ(m); rectangular results are allowed.
Matrix evaluate_sigma(const SigmaMorphism& sigma, const Representation& m);

/// d_σ(m) = det M_σ(m). Throws ValidationError when the numerical condition fails.
Scalar semi_invariant(const SigmaMorphism& sigma, const Representation& m);

/// χ_θ(g) = Π det(g_i)^{θ_i}.
Scalar character(const Weight& theta, const GroupElement& g);

/// Generator of a presentation with its (source, target) typing.
struct Generator {
  enum class Kind { idempotent, arrow, localization };
  std::string name;
  Kind kind = Kind::arrow;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// c · g_1 * g_2 * … * g_m, factors in algebra-product order (the rightmost
/// factor acts first).
struct Monomial {
  Scalar coeff;
  std::vector<std::string> factors;
};

/// Σ lhs = rhs, where rhs is a generator name, "0" or "1".
struct Relation {
  enum class Kind { idempotent, unit, arrow_typing, localization };
  Kind kind = Kind::idempotent;
  std::vector<Monomial> lhs;
  std::string rhs;
  /// (source, target); unset for the unit relation and for v_i v_j = 0.
  std::optional<std::pair<std::size_t, std::size_t>> typing;
  std::string origin;  // e.g. "sigma 1: (M N)[1,2]"
};

/// Generators and relations of a quotient of the free algebra. Normal forms
/// are never computed; verification is by evaluation at points.
struct Presentation {
  std::vector<Generator> generators;
  std::vector<Relation> relations;

  const Generator* find(const std::string& name) const;
  std::size_t count(Relation::Kind kind) const;
  /// Checks every monomial chains and matches its relation's typing.
  bool well_typed() const;
  std::string to_text() const;
};

/// Name of the localization variable y_{pq} of the k-th σ (1-based): "y.k.p.q".
std::string localization_variable(std::size_t sigma_index, std::size_t p, std::size_t q);

/// CQ_Σ: the path algebra presented by vertex idempotents and arrows, plus
/// for each σ a v × u matrix N_σ of fresh variables and the entrywise
/// relations M_σ N_σ = diag(v_{i_1}, …, v_{i_u}) and
/// N_σ M_σ = diag(v_{j_1}, …, v_{j_v}).
Presentation localization_presentation(const Quiver& q, const std::vector<SigmaMorphism>& sigmas);

/// Result of testing whether a point of rep(α) lies in rep CQ_Σ.
struct LocalizedPointCheck {
  bool invertible = false;
  std::vector<Scalar> determinants;
  /// N_σ = M_σ(m)^{-1} for each σ, when invertible.
  std::vector<Matrix> inverses;
  std::optional<std::size_t> first_singular;
  /// Both relation families re-evaluated to identity blocks.
  bool relations_verified = false;
};

/// Throws ValidationError if some σ fails the numerical condition.
LocalizedPointCheck check_localized_point(const std::vector<SigmaMorphism>& sigmas,
                                          const Representation& m);

/// Values for the localization variables of a presentation, read off blockwise
/// from N_σ matrices. Keyed by variable name.
std::map<std::string, Matrix> localization_assignment(const std::vector<SigmaMorphism>& sigmas,
                                                      const Representation& m,
                                                      const std::vector<Matrix>& inverses);

/// Evaluates lhs − rhs of a typed relation at a point: arrows become their
/// matrices, idempotents identity (or zero) blocks, y-variables the supplied
/// blocks. Returns true when the difference vanishes.
bool relation_holds(const Presentation& presentation, const Relation& relation, const Representation& m,
                    const std::map<std::string, Matrix>& assignment);

/// Q̂(n): Q plus a vertex v0 (placed last, index k) and arrows
/// x<i>_<1..n>: v0 → v_i for every vertex i.
Quiver extended_quiver(const Quiver& q, std::int64_t n);
/// Name of the arrow x_{ij} in the extended quiver (1-based i, j).
std::string extension_arrow(std::size_t i, std::size_t j);

/// τ: P_1 ⊕ … ⊕ P_k → P_0^{⊕n} with (p, q) entry x_{pq}, over `extended`.
SigmaMorphism tau_morphism(const Quiver& extended, std::size_t original_vertex_count, std::int64_t n);

/// Re-types a σ over Q as a σ over Q̂(n), which keeps Q's vertices and arrows.
SigmaMorphism lift_to_extension(const Quiver& extended, const SigmaMorphism& sigma);

struct RootPresentation {
  Quiver extended;
  Presentation presentation;
  /// Words in arrows and localization variables from v0 to v0 of length
  /// ≤ the bound, product order; the trivial loop is {"v0"}.
  std::vector<std::vector<std::string>> loops;
};

/// B = CQ̂(n)_{Σ ∪ {τ}} (τ is the last σ) and the loop words generating v0 B v0.
RootPresentation root_presentation(const Quiver& q, const std::vector<SigmaMorphism>& sigmas,
                                   std::int64_t n, std::size_t loop_len_bound);

}  // namespace quivermod
