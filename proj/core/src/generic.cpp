#include "quivermod/generic.hpp"

#include "quivermod/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace quivermod {

GenericExtTable::GenericExtTable(QuiverPtr quiver) : quiver_(std::move(quiver)) {
  if (!quiver_) throw ValidationError("generic ext table without a quiver");
  require_acyclic(*quiver_, "generic extension computation");
}

std::int64_t GenericExtTable::ext(const DimVector& alpha, const DimVector& beta) {
  require_length(*quiver_, alpha, "alpha");
  require_length(*quiver_, beta, "beta");
  if (alpha.is_zero() || beta.is_zero()) return 0;
  const auto key = std::make_pair(alpha, beta);
  if (auto it = ext_memo_.find(key); it != ext_memo_.end()) return it->second;

  // Ext¹(M, N) surjects onto Ext¹(M, N/N′), so every generic quotient
  // β − β′ bounds ext from below; β′ = β contributes 0.
  std::int64_t best = 0;
  for (const auto& sub : generic_subdimvectors(beta)) {
    best = std::max(best, -euler_form(*quiver_, alpha, beta - sub));
  }
  ext_memo_.emplace(key, best);
  return best;
}

const std::vector<DimVector>& GenericExtTable::generic_subdimvectors(const DimVector& alpha) {
  require_length(*quiver_, alpha, "alpha");
  if (auto it = sub_memo_.find(alpha); it != sub_memo_.end()) return it->second;
  if (!subs_in_progress_.insert(alpha).second) {
    throw std::logic_error("generic ext recursion revisited " + format_vector(alpha.entries()));
  }
  std::vector<DimVector> subs;
  for (const auto& beta : sub_dimvectors(alpha)) {
    // ext(0, α) and ext(α, 0) vanish without recursion; every other call has
    // a second argument of strictly smaller total dimension.
    if (beta.is_zero() || beta == alpha || ext(beta, alpha - beta) == 0) subs.push_back(beta);
  }
  subs_in_progress_.erase(alpha);
  return sub_memo_.emplace(alpha, std::move(subs)).first->second;
}

std::int64_t generic_ext(QuiverPtr quiver, const DimVector& alpha, const DimVector& beta) {
  GenericExtTable table(std::move(quiver));
  return table.ext(alpha, beta);
}

std::vector<DimVector> generic_subdimvectors(QuiverPtr quiver, const DimVector& alpha) {
  GenericExtTable table(std::move(quiver));
  return table.generic_subdimvectors(alpha);
}

bool semistable_nonempty(GenericExtTable& table, const DimVector& alpha, const Weight& theta) {
  require_length(table.quiver(), theta, "theta");
  if (theta_pairing(theta, alpha) != 0) return false;
  const auto& subs = table.generic_subdimvectors(alpha);
  return std::all_of(subs.begin(), subs.end(),
                     [&](const DimVector& beta) { return theta_pairing(theta, beta) >= 0; });
}

bool stable_nonempty(GenericExtTable& table, const DimVector& alpha, const Weight& theta) {
  require_length(table.quiver(), theta, "theta");
  require_length(table.quiver(), alpha, "alpha");
  if (alpha.is_zero()) throw ValidationError("stable locus is undefined for the zero dimension vector");
  if (theta_pairing(theta, alpha) != 0) return false;
  for (const auto& beta : table.generic_subdimvectors(alpha)) {
    if (beta.is_zero() || beta == alpha) continue;
    if (theta_pairing(theta, beta) <= 0) return false;
  }
  return true;
}

std::optional<std::int64_t> moduli_dimension(GenericExtTable& table, const DimVector& alpha,
                                             const Weight& theta) {
  if (!stable_nonempty(table, alpha, theta)) return std::nullopt;
  return 1 - euler_form(table.quiver(), alpha, alpha);
}

Quiver LocalQuiverData::to_quiver() const {
  std::vector<ArrowSpec> arrows;
  for (std::size_t i = 0; i < arrow_counts.size(); ++i) {
    for (std::size_t j = 0; j < arrow_counts[i].size(); ++j) {
      for (std::int64_t n = 1; n <= arrow_counts[i][j]; ++n) {
        arrows.push_back(ArrowSpec{"g" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" +
                                       std::to_string(n),
                                   static_cast<long long>(i + 1), static_cast<long long>(j + 1)});
      }
    }
  }
  return Quiver(vertex_count(), arrows);
}

LocalQuiverData local_quiver(const std::vector<LocalSummand>& summands, const Weight& theta,
                             const LocalQuiverOptions& options) {
  if (summands.empty()) throw ValidationError("local quiver needs at least one stable summand");
  for (std::size_t i = 1; i < summands.size(); ++i) require_compatible(summands[0].rep, summands[i].rep);
  const Quiver& q = summands[0].rep.quiver();
  require_acyclic(q, "local quiver computation");
  require_length(q, theta, "theta");

  LocalQuiverData data;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto& s = summands[i];
    if (s.multiplicity < 1) {
      throw ValidationError("summand " + std::to_string(i + 1) + " has multiplicity < 1");
    }
    if (!options.assert_stable) {
      if (!s.rep.field().is_prime()) {
        throw ValidationError("stability of summand " + std::to_string(i + 1) +
                              " can only be verified over a prime field; assert it instead");
      }
      StabilityVerdict v = is_stable(s.rep, theta, options.oracle);
      if (!v.holds) {
        throw ValidationError("summand " + std::to_string(i + 1) + " is not theta-stable: " + v.reason);
      }
    }
    data.multiplicities.push_back(s.multiplicity);
    data.summand_dims.push_back(s.rep.dim());
  }
  data.stability_verified = !options.assert_stable;

  const std::size_t l = summands.size();
  data.arrow_counts.assign(l, std::vector<std::int64_t>(l, 0));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) {
      const auto hom = hom_dimension(summands[i].rep, summands[j].rep);
      const std::size_t expected = i == j ? 1 : 0;
      if (hom != expected) {
        throw ValidationError("hom(M" + std::to_string(i + 1) + ", M" + std::to_string(j + 1) +
                              ") = " + std::to_string(hom) + ", expected " +
                              std::to_string(expected) + ": summands are not distinct stables");
      }
      data.arrow_counts[i][j] =
          static_cast<std::int64_t>(ext_dimension(summands[i].rep, summands[j].rep));
    }
  }
  return data;
}

std::int64_t local_model_dimension(const LocalQuiverData& data) {
  if (data.vertex_count() == 0) throw ValidationError("local model dimension of empty data");
  std::int64_t dim = 1;
  for (std::size_t i = 0; i < data.vertex_count(); ++i) {
    const auto ei = data.multiplicities[i];
    dim -= ei * ei;
    for (std::size_t j = 0; j < data.vertex_count(); ++j) {
      dim += data.arrow_counts[i][j] * ei * data.multiplicities[j];
    }
  }
  return dim;
}

}  // namespace quivermod
