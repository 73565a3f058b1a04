#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// here deliberately avoid the library's elimination and enumeration code.

#include "quivermod/quivermod.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace qtest {

using namespace quivermod;

inline QuiverPtr make_quiver(std::size_t k, std::vector<ArrowSpec> arrows) {
  return std::make_shared<const Quiver>(k, arrows);
}

/// Kronecker quiver with n arrows x, y, z, ... from vertex 1 to vertex 2.
inline QuiverPtr kronecker(int n) {
  static const char* names[] = {"x", "y", "z", "w", "u"};
  std::vector<ArrowSpec> arrows;
  for (int i = 0; i < n; ++i) arrows.push_back({names[i], 1, 2});
  return make_quiver(2, arrows);
}
inline QuiverPtr k3() { return kronecker(3); }
inline QuiverPtr k2() { return kronecker(2); }
inline QuiverPtr a2() { return make_quiver(2, {{"a", 1, 2}}); }
inline QuiverPtr a3() { return make_quiver(3, {{"a", 1, 2}, {"b", 2, 3}}); }
inline QuiverPtr arrow_free(std::size_t k) { return make_quiver(k, {}); }

inline DimVector dv(std::vector<std::int64_t> v) { return DimVector(std::move(v)); }
inline Weight wt(std::vector<std::int64_t> v) { return Weight(std::move(v)); }

inline Matrix mat(std::size_t rows, std::size_t cols, std::vector<long> entries) {
  std::vector<Scalar> data;
  for (auto e : entries) data.emplace_back(e);
  return Matrix(rows, cols, std::move(data));
}

/// K3 representation of dimension (1,1) with x, y, z ↦ the given scalars.
inline Representation k3_point(const Field& f, long x, long y, long z) {
  return Representation(k3(), f, dv({1, 1}), {mat(1, 1, {x}), mat(1, 1, {y}), mat(1, 1, {z})});
}

// ---- Oracles ---------------------------------------------------------------

/// Determinant by the Leibniz permutation expansion.
inline Scalar leibniz_determinant(const Field& f, const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = f.zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Scalar term = f.one();
    for (std::size_t i = 0; i < n; ++i) term = f.mul(term, a(i, perm[i]));
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Vectors of F_p^n as integer lists, in odometer order.
inline std::vector<std::vector<long>> all_vectors(long p, std::size_t n) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++v[i] < p) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

inline std::vector<long> apply(const Matrix& m, const std::vector<long>& v, long p) {
  std::vector<long> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    long acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c).get_num().get_si() * v[c];
    out[r] = ((acc % p) + p) % p;
  }
  return out;
}

/// Span of a list of vectors as an explicit set, by closure under addition
/// and scaling.
inline std::set<std::vector<long>> span_set(const std::vector<std::vector<long>>& gens, long p,
                                            std::size_t n) {
  std::set<std::vector<long>> span{std::vector<long>(n, 0)};
  for (const auto& g : gens) {
    std::set<std::vector<long>> next;
    for (const auto& s : span) {
      for (long c = 0; c < p; ++c) {
        std::vector<long> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (s[i] + c * g[i]) % p;
        next.insert(v);
      }
    }
    span = std::move(next);
  }
  return span;
}

/// Every subspace of F_p^n as the span of some tuple of at most n vectors.
inline std::vector<std::set<std::vector<long>>> brute_subspaces(long p, std::size_t n) {
  std::set<std::set<std::vector<long>>> found;
  const auto vecs = all_vectors(p, n);
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    std::vector<std::vector<long>> gens;
    for (auto i : idx) gens.push_back(vecs[i]);
    found.insert(span_set(gens, p, n));
    if (depth == n) return;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      idx.push_back(i);
      self(self, depth + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return {found.begin(), found.end()};
}

inline std::size_t log_p(std::size_t size, long p) {
  std::size_t d = 0;
  while (size > 1) {
    size /= static_cast<std::size_t>(p);
    ++d;
  }
  return d;
}

/// Dimension vectors of all subrepresentations of M over F_p, with
/// multiplicity, found by brute force over explicit vector sets.
inline std::vector<std::vector<std::int64_t>> brute_subrep_dims(const Representation& m) {
  const long p = m.field().characteristic();
  const Quiver& q = m.quiver();
  std::vector<std::vector<std::set<std::vector<long>>>> choices;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    choices.push_back(brute_subspaces(p, static_cast<std::size_t>(m.dim()[v])));
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<const std::set<std::vector<long>>*> chosen(q.vertex_count());
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == q.vertex_count()) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& arrow = q.arrow(a);
        for (const auto& x : *chosen[arrow.source]) {
          if (!chosen[arrow.target]->count(apply(m.matrix(a), x, p))) return;
        }
      }
      std::vector<std::int64_t> beta;
      for (auto* s : chosen) beta.push_back(static_cast<std::int64_t>(log_p(s->size(), p)));
      out.push_back(beta);
      return;
    }
    for (const auto& s : choices[v]) {
      chosen[v] = &s;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// θ-semistability from the brute-force subrep list.
inline bool brute_semistable(const Representation& m, const Weight& theta) {
  if (theta_pairing(theta, m.dim()) != 0) return false;
  for (const auto& beta : brute_subrep_dims(m)) {
    if (theta_pairing(theta, DimVector(beta)) < 0) return false;
  }
  return true;
}

/// Number of tuples (f_i) with f_j M_a = N_a f_i, by exhaustive enumeration over F_p.
inline std::size_t brute_hom_count(const Representation& m, const Representation& n) {
  const long p = m.field().characteristic();
  const Quiver& q = m.quiver();
  std::vector<std::size_t> sizes;
  std::size_t unknowns = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    sizes.push_back(static_cast<std::size_t>(n.dim()[v] * m.dim()[v]));
    unknowns += sizes.back();
  }
  std::size_t count = 0;
  for (const auto& flat : all_vectors(p, unknowns)) {
    std::vector<Matrix> f;
    std::size_t at = 0;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      const auto rows = static_cast<std::size_t>(n.dim()[v]);
      const auto cols = static_cast<std::size_t>(m.dim()[v]);
      Matrix fv(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) fv(r, c) = flat[at++];
      }
      f.push_back(std::move(fv));
    }
    bool ok = true;
    for (std::size_t a = 0; a < q.arrow_count() && ok; ++a) {
      const Arrow& arrow = q.arrow(a);
      ok = multiply(m.field(), f[arrow.target], m.matrix(a)) ==
           multiply(m.field(), n.matrix(a), f[arrow.source]);
    }
    count += ok;
  }
  return count;
}

/// Dimension of the path algebra of an acyclic quiver: k + Σ_{l≥1} 1ᵀ A^l 1.
inline std::size_t path_algebra_dimension(const Quiver& q) {
  const std::size_t k = q.vertex_count();
  std::vector<std::vector<std::size_t>> adj(k, std::vector<std::size_t>(k, 0));
  for (const auto& a : q.arrows()) ++adj[a.source][a.target];
  auto power = adj;
  std::size_t total = k;
  for (std::size_t l = 1; l <= k; ++l) {
    for (const auto& row : power) {
      for (auto x : row) total += x;
    }
    std::vector<std::vector<std::size_t>> next(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t j = 0; j < k; ++j) next[i][j] += power[i][m] * adj[m][j];
      }
    }
    power = std::move(next);
  }
  return total;
}

/// All representations of the given dimension over F_p (small cases only).
inline std::vector<Representation> all_representations(QuiverPtr q, const Field& f, const DimVector& dim) {
  std::size_t entries = 0;
  for (const auto& a : q->arrows()) entries += static_cast<std::size_t>(dim[a.target] * dim[a.source]);
  std::vector<Representation> out;
  for (const auto& flat : all_vectors(f.characteristic(), entries)) {
    std::vector<Matrix> mats;
    std::size_t at = 0;
    for (const auto& a : q->arrows()) {
      const auto rows = static_cast<std::size_t>(dim[a.target]);
      const auto cols = static_cast<std::size_t>(dim[a.source]);
      Matrix m(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = flat[at++];
      }
      mats.push_back(std::move(m));
    }
    out.emplace_back(q, f, dim, std::move(mats));
  }
  return out;
}

}  // namespace qtest
