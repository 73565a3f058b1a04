#include "quivermod/stability.hpp"

#include "quivermod/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <thread>
#include <tuple>

namespace quivermod {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

using Residue = std::uint32_t;

// Subspace of F_p^n in reduced row-echelon form.
struct NativeSubspace {
  std::size_t dim = 0;
  std::vector<std::size_t> pivots;
  std::vector<Residue> rows;  // dim × n, row-major
};

// The representation with entries as machine residues.
struct NativeRep {
  std::uint64_t p = 0;
  std::vector<std::size_t> dims;
  struct NativeArrow {
    std::size_t source;
    std::size_t target;
    std::vector<Residue> matrix;  // dims[target] × dims[source]
  };
  std::vector<NativeArrow> arrows;
};

NativeRep to_native(const Representation& m) {
  NativeRep rep;
  rep.p = m.field().characteristic();
  for (std::size_t v = 0; v < m.dim().size(); ++v) rep.dims.push_back(static_cast<std::size_t>(m.dim()[v]));
  for (std::size_t a = 0; a < m.quiver().arrow_count(); ++a) {
    const Arrow& arrow = m.quiver().arrow(a);
    NativeRep::NativeArrow na{arrow.source, arrow.target, {}};
    for (const auto& x : m.matrix(a).data()) na.matrix.push_back(static_cast<Residue>(x.get_num().get_ui()));
    rep.arrows.push_back(std::move(na));
  }
  return rep;
}

// All subspaces of F_p^n ordered by dimension, then pivot set
// (lexicographic), then free entries (odometer, last position fastest).
std::vector<NativeSubspace> all_subspaces(std::uint64_t p, std::size_t n) {
  std::vector<NativeSubspace> out;
  for (std::size_t r = 0; r <= n; ++r) {
    std::vector<std::size_t> pivots(r);
    for (std::size_t t = 0; t < r; ++t) pivots[t] = t;
    while (true) {
      std::vector<bool> is_pivot(n, false);
      for (auto c : pivots) is_pivot[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free_positions;
      for (std::size_t t = 0; t < r; ++t) {
        for (std::size_t c = pivots[t] + 1; c < n; ++c) {
          if (!is_pivot[c]) free_positions.emplace_back(t, c);
        }
      }
      std::vector<Residue> values(free_positions.size(), 0);
      while (true) {
        NativeSubspace s{r, pivots, std::vector<Residue>(r * n, 0)};
        for (std::size_t t = 0; t < r; ++t) s.rows[t * n + pivots[t]] = 1;
        for (std::size_t f = 0; f < free_positions.size(); ++f) {
          s.rows[free_positions[f].first * n + free_positions[f].second] = values[f];
        }
        out.push_back(std::move(s));
        std::size_t f = values.size();
        bool done = true;
        while (f > 0) {
          --f;
          if (values[f] + 1 < p) {
            ++values[f];
            done = false;
            break;
          }
          values[f] = 0;
        }
        if (done) break;
      }
      // Next pivot combination.
      std::size_t t = r;
      bool advanced = false;
      while (t > 0) {
        --t;
        if (pivots[t] < n - r + t) {
          ++pivots[t];
          for (std::size_t u = t + 1; u < r; ++u) pivots[u] = pivots[u - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

bool contains(const NativeSubspace& s, std::size_t n, std::vector<Residue> x, std::uint64_t p) {
  for (std::size_t t = 0; t < s.dim; ++t) {
    const std::uint64_t coeff = x[s.pivots[t]];
    if (coeff == 0) continue;
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint64_t sub = coeff * s.rows[t * n + c] % p;
      x[c] = static_cast<Residue>((x[c] + p - sub) % p);
    }
  }
  return std::all_of(x.begin(), x.end(), [](Residue v) { return v == 0; });
}

class SubrepSearch {
 public:
  explicit SubrepSearch(const Representation& m, const OracleConfig& config) : rep_(to_native(m)) {
    if (!m.field().is_prime()) {
      throw ValidationError("the subrepresentation oracle needs a prime field");
    }
    const std::uint64_t tuples = subspace_tuple_count(m);
    if (tuples > config.subspace_budget) {
      throw BudgetExceeded("subspace_tuples", tuples, config.subspace_budget);
    }
    budget_used_ = tuples;
    for (auto n : rep_.dims) subspaces_.push_back(all_subspaces(rep_.p, n));
    checks_.resize(rep_.dims.size());
    for (std::size_t a = 0; a < rep_.arrows.size(); ++a) {
      const auto& arrow = rep_.arrows[a];
      checks_[std::max(arrow.source, arrow.target)].push_back(a);
    }
  }

  std::uint64_t budget_used() const noexcept { return budget_used_; }
  std::size_t outer_size() const { return subspaces_.empty() ? 0 : subspaces_[0].size(); }

  // Visits every arrow-stable tuple whose first subspace index lies in [lo, hi).
  template <typename Visitor>
  void run(std::size_t lo, std::size_t hi, Visitor& visit) const {
    std::vector<const NativeSubspace*> chosen(rep_.dims.size(), nullptr);
    for (std::size_t s = lo; s < hi; ++s) {
      chosen[0] = &subspaces_[0][s];
      if (!consistent(chosen, 0)) continue;
      descend(chosen, 1, visit);
    }
  }

  Subrepresentation materialize(const std::vector<const NativeSubspace*>& chosen) const {
    Subrepresentation sub;
    std::vector<std::int64_t> beta;
    for (std::size_t v = 0; v < chosen.size(); ++v) {
      const std::size_t n = rep_.dims[v];
      const NativeSubspace& s = *chosen[v];
      Matrix basis(s.dim, n);
      for (std::size_t t = 0; t < s.dim; ++t) {
        for (std::size_t c = 0; c < n; ++c) basis(t, c) = Scalar(static_cast<unsigned long>(s.rows[t * n + c]));
      }
      sub.bases.push_back(std::move(basis));
      beta.push_back(static_cast<std::int64_t>(s.dim));
    }
    sub.beta = DimVector(std::move(beta));
    return sub;
  }

 private:
  template <typename Visitor>
  void descend(std::vector<const NativeSubspace*>& chosen, std::size_t v, Visitor& visit) const {
    if (v == chosen.size()) {
      visit(chosen);
      return;
    }
    for (const auto& s : subspaces_[v]) {
      chosen[v] = &s;
      if (consistent(chosen, v)) descend(chosen, v + 1, visit);
    }
  }

  // Arrow-stability for every arrow whose later endpoint is v.
  bool consistent(const std::vector<const NativeSubspace*>& chosen, std::size_t v) const {
    const std::uint64_t p = rep_.p;
    for (auto a : checks_[v]) {
      const auto& arrow = rep_.arrows[a];
      const NativeSubspace& from = *chosen[arrow.source];
      const NativeSubspace& to = *chosen[arrow.target];
      const std::size_t n_src = rep_.dims[arrow.source];
      const std::size_t n_tgt = rep_.dims[arrow.target];
      if (from.dim == 0) continue;
      for (std::size_t t = 0; t < from.dim; ++t) {
        std::vector<Residue> image(n_tgt, 0);
        for (std::size_t r = 0; r < n_tgt; ++r) {
          std::uint64_t acc = 0;
          for (std::size_t c = 0; c < n_src; ++c) {
            acc = (acc + std::uint64_t{arrow.matrix[r * n_src + c]} * from.rows[t * n_src + c]) % p;
          }
          image[r] = static_cast<Residue>(acc);
        }
        if (!contains(to, n_tgt, std::move(image), p)) return false;
      }
    }
    return true;
  }

  NativeRep rep_;
  std::vector<std::vector<NativeSubspace>> subspaces_;
  std::vector<std::vector<std::size_t>> checks_;
  std::uint64_t budget_used_ = 0;
};

// Splits the outermost choice into contiguous chunks, one per job, and
// returns the per-chunk visitors in chunk order.
template <typename Visitor>
std::vector<Visitor> run_chunked(const SubrepSearch& search, unsigned jobs,
                                 const std::function<Visitor()>& make) {
  const std::size_t outer = search.outer_size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, outer));
  std::vector<Visitor> visitors;
  for (std::size_t w = 0; w < workers; ++w) visitors.push_back(make());
  auto bounds = [&](std::size_t w) { return outer * w / workers; };
  if (workers == 1) {
    search.run(0, outer, visitors[0]);
    return visitors;
  }
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] { search.run(bounds(w), bounds(w + 1), visitors[w]); });
  }
  for (auto& t : threads) t.join();
  return visitors;
}

std::int64_t theta_of(const Weight& theta, const std::vector<const NativeSubspace*>& chosen) {
  std::int64_t value = 0;
  for (std::size_t v = 0; v < chosen.size(); ++v) value += theta[v] * static_cast<std::int64_t>(chosen[v]->dim);
  return value;
}

// Tracks the minimal-θ subrep and the first proper nonzero θ = 0 subrep.
struct ThetaScan {
  const SubrepSearch* search = nullptr;
  const Weight* theta = nullptr;
  std::vector<std::size_t> total_dims;

  using Key = std::tuple<std::int64_t, std::int64_t, std::vector<std::int64_t>>;
  std::optional<Key> best_key;
  std::optional<Subrepresentation> best;
  std::optional<Subrepresentation> first_zero_proper;

  void operator()(const std::vector<const NativeSubspace*>& chosen) {
    const std::int64_t value = theta_of(*theta, chosen);
    std::vector<std::int64_t> beta;
    std::int64_t total = 0;
    bool is_whole = true;
    for (std::size_t v = 0; v < chosen.size(); ++v) {
      beta.push_back(static_cast<std::int64_t>(chosen[v]->dim));
      total += beta.back();
      if (chosen[v]->dim != total_dims[v]) is_whole = false;
    }
    Key key{value, total, beta};
    if (!best_key || key < *best_key) {
      best_key = key;
      best = search->materialize(chosen);
    }
    if (value == 0 && total > 0 && !is_whole && !first_zero_proper) {
      first_zero_proper = search->materialize(chosen);
    }
  }
};

struct ScanResult {
  std::optional<SubrepWitness> minimum;
  std::optional<SubrepWitness> zero_proper;
};

ScanResult scan(const SubrepSearch& search, const Representation& m, const Weight& theta,
                unsigned jobs) {
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < m.dim().size(); ++v) dims.push_back(static_cast<std::size_t>(m.dim()[v]));
  auto parts = run_chunked<ThetaScan>(search, jobs, [&] {
    ThetaScan s;
    s.search = &search;
    s.theta = &theta;
    s.total_dims = dims;
    return s;
  });
  ScanResult out;
  std::optional<ThetaScan::Key> best_key;
  for (auto& part : parts) {
    if (part.best_key && (!best_key || *part.best_key < *best_key)) {
      best_key = part.best_key;
      out.minimum = SubrepWitness{std::move(*part.best), std::get<0>(*part.best_key)};
    }
    if (!out.zero_proper && part.first_zero_proper) {
      out.zero_proper = SubrepWitness{std::move(*part.first_zero_proper), 0};
    }
  }
  return out;
}

}  // namespace

std::uint64_t subspace_count(std::uint64_t p, std::size_t n) {
  // Gaussian binomials via G(n, r) = G(n-1, r-1) + p^r G(n-1, r).
  std::vector<std::uint64_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 0);
    std::uint64_t p_pow = 1;
    for (std::size_t r = 0; r <= m; ++r) {
      const std::uint64_t left = r > 0 ? row[r - 1] : 0;
      const std::uint64_t right = r < m ? saturating_mul(p_pow, row[r]) : 0;
      next[r] = saturating_add(left, right);
      p_pow = saturating_mul(p_pow, p);
    }
    row = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto x : row) total = saturating_add(total, x);
  return total;
}

std::uint64_t subspace_tuple_count(const Representation& m) {
  std::uint64_t total = 1;
  for (std::size_t v = 0; v < m.dim().size(); ++v) {
    total = saturating_mul(total, subspace_count(m.field().characteristic(),
                                                 static_cast<std::size_t>(m.dim()[v])));
  }
  return total;
}

std::vector<Subrepresentation> enumerate_subreps(const Representation& m, const OracleConfig& config) {
  SubrepSearch search(m, config);
  struct Collect {
    const SubrepSearch* search;
    std::vector<Subrepresentation> found;
    void operator()(const std::vector<const NativeSubspace*>& chosen) {
      found.push_back(search->materialize(chosen));
    }
  };
  auto parts = run_chunked<Collect>(search, config.jobs, [&] { return Collect{&search, {}}; });
  std::vector<Subrepresentation> out;
  for (auto& part : parts) {
    for (auto& s : part.found) out.push_back(std::move(s));
  }
  return out;
}

bool is_arrow_stable(const Representation& m, const std::vector<Matrix>& bases) {
  const Quiver& q = m.quiver();
  const Field& f = m.field();
  if (bases.size() != q.vertex_count()) return false;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (bases[v].cols() != static_cast<std::size_t>(m.dim()[v])) return false;
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arrow = q.arrow(a);
    const Matrix& from = bases[arrow.source];
    const Matrix& to = bases[arrow.target];
    if (from.rows() == 0) continue;
    // Images of the source basis vectors, as rows.
    const Matrix images = transpose(multiply(f, m.matrix(a), transpose(from)));
    Matrix stacked(to.rows() + images.rows(), to.cols());
    place_block(stacked, 0, 0, to);
    place_block(stacked, to.rows(), 0, images);
    if (rank(f, stacked) != rank(f, to)) return false;
  }
  return true;
}

StabilityVerdict is_semistable(const Representation& m, const Weight& theta, const OracleConfig& config) {
  require_length(m.quiver(), theta, "theta");
  StabilityVerdict verdict;
  verdict.theta_of_m = theta_pairing(theta, m.dim());
  if (!m.field().is_prime()) throw ValidationError("the subrepresentation oracle needs a prime field");
  if (verdict.theta_of_m != 0) {
    verdict.reason = "theta(M) = " + std::to_string(verdict.theta_of_m) + " is not zero";
    return verdict;
  }
  SubrepSearch search(m, config);
  verdict.budget_used = search.budget_used();
  ScanResult result = scan(search, m, theta, config.jobs);
  if (result.minimum && result.minimum->theta_value < 0) {
    verdict.reason = "subrepresentation of dimension " + format_vector(result.minimum->sub.beta.entries()) +
                     " has theta = " + std::to_string(result.minimum->theta_value);
    verdict.witness = std::move(result.minimum);
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

StabilityVerdict is_stable(const Representation& m, const Weight& theta, const OracleConfig& config) {
  require_length(m.quiver(), theta, "theta");
  StabilityVerdict verdict;
  verdict.theta_of_m = theta_pairing(theta, m.dim());
  if (!m.field().is_prime()) throw ValidationError("the subrepresentation oracle needs a prime field");
  if (verdict.theta_of_m != 0) {
    verdict.reason = "theta(M) = " + std::to_string(verdict.theta_of_m) + " is not zero";
    return verdict;
  }
  if (m.dim().is_zero()) {
    verdict.reason = "the zero representation is not stable";
    return verdict;
  }
  SubrepSearch search(m, config);
  verdict.budget_used = search.budget_used();
  ScanResult result = scan(search, m, theta, config.jobs);
  if (result.minimum && result.minimum->theta_value < 0) {
    verdict.reason = "not semistable: subrepresentation of dimension " +
                     format_vector(result.minimum->sub.beta.entries()) + " has theta = " +
                     std::to_string(result.minimum->theta_value);
    verdict.witness = std::move(result.minimum);
    return verdict;
  }
  if (result.zero_proper) {
    verdict.reason = "proper subrepresentation of dimension " +
                     format_vector(result.zero_proper->sub.beta.entries()) + " has theta = 0";
    verdict.witness = std::move(result.zero_proper);
    return verdict;
  }
  verdict.holds = true;
  return verdict;
}

Representation reduce_mod_p(const Representation& m, const Field& target) {
  std::vector<Matrix> matrices;
  for (const auto& mat : m.matrices()) matrices.push_back(reduce_into(target, mat));
  return Representation(m.quiver_ptr(), target, m.dim(), std::move(matrices));
}

namespace {

std::vector<Matrix> lift_bases(const std::vector<Matrix>& bases, std::uint32_t p, bool symmetric) {
  std::vector<Matrix> lifted;
  for (const auto& b : bases) {
    Matrix out(b.rows(), b.cols());
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) {
        long value = static_cast<long>(b(r, c).get_num().get_si());
        if (symmetric && value > static_cast<long>(p / 2)) value -= static_cast<long>(p);
        out(r, c) = value;
      }
    }
    lifted.push_back(std::move(out));
  }
  return lifted;
}

}  // namespace

RationalVerdict check_over_rationals(const Representation& m, const Weight& theta,
                                     const std::vector<std::uint64_t>& primes,
                                     const OracleConfig& config) {
  require_length(m.quiver(), theta, "theta");
  if (!m.field().is_rational()) throw ValidationError("check_over_rationals expects a rational representation");
  RationalVerdict verdict;
  verdict.theta_of_m = theta_pairing(theta, m.dim());
  if (verdict.theta_of_m != 0) {
    verdict.outcome = RationalVerdict::Outcome::unstable_proved;
    verdict.certainty = Certainty::proof;
    verdict.notices.push_back("theta(M) = " + std::to_string(verdict.theta_of_m) + " is not zero");
    return verdict;
  }
  for (auto prime : primes) {
    const Field field = Field::prime(prime);
    std::optional<Representation> reduced;
    try {
      reduced.emplace(reduce_mod_p(m, field));
    } catch (const ValidationError&) {
      verdict.notices.push_back("prime " + std::to_string(prime) +
                                " skipped: it divides a denominator");
      continue;
    }
    StabilityVerdict local = is_semistable(*reduced, theta, config);
    verdict.primes_tested.push_back(field.characteristic());
    verdict.budget_used += local.budget_used;
    if (local.holds) continue;

    verdict.witness = local.witness;
    verdict.witness_prime = field.characteristic();
    for (bool symmetric : {true, false}) {
      auto lifted = lift_bases(local.witness->sub.bases, field.characteristic(), symmetric);
      if (is_arrow_stable(m, lifted)) {
        verdict.lifted_bases = std::move(lifted);
        verdict.outcome = RationalVerdict::Outcome::unstable_proved;
        verdict.certainty = Certainty::proof;
        return verdict;
      }
    }
    verdict.outcome = RationalVerdict::Outcome::unstable_mod_p;
    verdict.certainty = Certainty::heuristic;
    verdict.notices.push_back("destabilising subspace mod " + std::to_string(prime) +
                              " does not lift to Q");
    return verdict;
  }
  if (verdict.primes_tested.empty()) verdict.notices.push_back("no prime could be tested");
  return verdict;
}

}  // namespace quivermod
