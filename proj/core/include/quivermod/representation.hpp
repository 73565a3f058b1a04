#pragma once

#include "quivermod/field.hpp"
#include "quivermod/matrix.hpp"
#include "quivermod/quiver.hpp"

#include <memory>
#include <random>
#include <vector>

namespace quivermod {

using QuiverPtr = std::shared_ptr<const Quiver>;

/// A representation of a quiver over an exact field: one matrix per arrow,
/// arrow a: i→j carrying an a_j × a_i matrix.
class Representation {
 public:
  /// Matrices are indexed like quiver->arrows(). Entries are reduced into the
  /// field; shapes are checked.
  Representation(QuiverPtr quiver, Field field, DimVector dim, std::vector<Matrix> matrices);

  /// The representation with all arrow maps zero.
  static Representation zero(QuiverPtr quiver, Field field, DimVector dim);

  const Quiver& quiver() const noexcept { return *quiver_; }
  const QuiverPtr& quiver_ptr() const noexcept { return quiver_; }
  const Field& field() const noexcept { return field_; }
  const DimVector& dim() const noexcept { return dim_; }
  const Matrix& matrix(std::size_t arrow_index) const { return matrices_.at(arrow_index); }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }

  friend bool operator==(const Representation& a, const Representation& b) {
    return *a.quiver_ == *b.quiver_ && a.field_ == b.field_ && a.dim_ == b.dim_ &&
           a.matrices_ == b.matrices_;
  }

 private:
  QuiverPtr quiver_;
  Field field_;
  DimVector dim_;
  std::vector<Matrix> matrices_;
};

/// Throws ValidationError unless both live on the same quiver and field.
void require_compatible(const Representation& m, const Representation& n);

/// Element of GL(α) = Π GL_{a_i}: one invertible matrix per vertex.
class GroupElement {
 public:
  /// Throws ValidationError when some g_i is singular or has the wrong shape.
  GroupElement(Field field, DimVector dim, std::vector<Matrix> blocks);

  static GroupElement identity(Field field, const DimVector& dim);

  const Field& field() const noexcept { return field_; }
  const DimVector& dim() const noexcept { return dim_; }
  const Matrix& block(std::size_t vertex) const { return blocks_.at(vertex); }
  const Matrix& inverse_block(std::size_t vertex) const { return inverses_.at(vertex); }

 private:
  Field field_;
  DimVector dim_;
  std::vector<Matrix> blocks_;
  std::vector<Matrix> inverses_;
};

/// Componentwise product g·h.
GroupElement operator*(const GroupElement& g, const GroupElement& h);

/// Identity for trivial paths, otherwise the ordered product of arrow
/// matrices (last arrow leftmost); shape a_target × a_source.
Matrix evaluate_path(const Representation& m, const Path& p);

Representation direct_sum(const Representation& m, const Representation& n);

/// Base change: arrow a: i→j becomes g_j M_a g_i^{-1}.
Representation act(const GroupElement& g, const Representation& m);

/// Hom(M, N) as the kernel of (f_i) ↦ (N_a f_i − f_j M_a).
struct HomSpace {
  std::size_t dimension = 0;
  /// Each basis element is one a_N_i × a_M_i matrix per vertex.
  std::vector<std::vector<Matrix>> basis;
};

/// Ext¹(M, N) as the cokernel of the same map.
struct ExtSpace {
  std::size_t dimension = 0;
  std::size_t source_dimension = 0;  // Σ_i a_M_i a_N_i
  std::size_t target_dimension = 0;  // Σ_{a: i→j} a_M_i a_N_j
  std::size_t rank = 0;
  /// Representatives of a cokernel basis: one a_N_j × a_M_i matrix per arrow.
  std::vector<std::vector<Matrix>> complement_basis;
};

HomSpace hom_space(const Representation& m, const Representation& n);
ExtSpace ext_space(const Representation& m, const Representation& n);
/// Dimensions only, skipping basis extraction.
std::size_t hom_dimension(const Representation& m, const Representation& n);
std::size_t ext_dimension(const Representation& m, const Representation& n);

/// Uniform random entries over F_p; integers in [-bound, bound] over Q.
Representation random_representation(QuiverPtr quiver, const Field& field, const DimVector& dim,
                                      std::mt19937_64& rng, int bound = 3);
/// Random invertible element, resampled until every block is nonsingular.
GroupElement random_group_element(const Field& field, const DimVector& dim, std::mt19937_64& rng,
                                  int bound = 3);

}  // namespace quivermod
