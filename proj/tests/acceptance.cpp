// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace quivermod;
using namespace qtest;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::vector<DimVector> dims_up_to(std::size_t k, std::int64_t total) {
  std::vector<DimVector> out;
  for (const auto& d : sub_dimvectors(DimVector(std::vector<std::int64_t>(k, total)))) {
    if (d.total() <= total) out.push_back(d);
  }
  return out;
}

// Straight from the definition, without going through the library.
std::int64_t euler_by_hand(const Quiver& q, const DimVector& a, const DimVector& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < q.vertex_count(); ++i) s += a[i] * b[i];
  for (std::size_t k = 0; k < q.arrow_count(); ++k) s -= a[q.arrow(k).source] * b[q.arrow(k).target];
  return s;
}

PathCombination single_arrow(const Quiver& q, const std::string& id) {
  return PathCombination{0, 1, {{Scalar(1), make_path(q, {id}, 0)}}};
}

Outcome kronecker_moduli() {
  Outcome out;
  GenericExtTable table(k3());
  const Weight theta = wt({-1, 1});
  std::ostringstream d;
  for (std::int64_t n = 1; n <= 4; ++n) {
    const DimVector alpha = dv({n, n});
    const bool ss = semistable_nonempty(table, alpha, theta);
    const bool st = stable_nonempty(table, alpha, theta);
    const auto dim = moduli_dimension(table, alpha, theta);
    const std::int64_t expected = 1 - euler_by_hand(*k3(), alpha, alpha);
    d << " n=" << n << ":" << (dim ? std::to_string(*dim) : "none");
    if (!ss || !st || dim != expected) out.ok = false;
  }
  out.detail = "dims" + d.str();
  return out;
}

Outcome oracle_vs_certificates() {
  Outcome out;
  const Field f = Field::prime(3);
  auto q = k3();
  std::vector<SigmaMorphism> coords;
  for (const char* id : {"x", "y", "z"}) coords.emplace_back(*q, std::vector<std::size_t>{1},
                                                             std::vector<std::size_t>{0},
                                                             std::vector<PathCombination>{single_arrow(*q, id)});
  int total = 0, semistable = 0, certified = 0;
  for (const auto& m : all_representations(q, f, dv({1, 1}))) {
    ++total;
    if (!is_semistable(m, wt({-1, 1})).holds) continue;
    ++semistable;
    for (const auto& s : coords) {
      if (!Field::is_zero(semi_invariant(s, m))) {
        ++certified;
        break;
      }
    }
  }
  out.ok = total == 27 && semistable == 26 && certified == 26;
  out.detail = std::to_string(total) + " reps, " + std::to_string(semistable) + " semistable, " +
               std::to_string(certified) + " certified";
  return out;
}

Outcome recursion_vs_sampling() {
  Outcome out;
  const Field f = Field::prime(5);
  std::mt19937_64 rng(2024);
  std::size_t cells = 0;
  std::size_t extra_used = 0;
  for (auto q : {a2(), a3(), k2(), k3()}) {
    GenericExtTable table(q);
    const auto dims = dims_up_to(q->vertex_count(), 3);
    for (const auto& a : dims) {
      for (const auto& b : dims) {
        ++cells;
        const auto rec = static_cast<std::size_t>(table.ext(a, b));
        std::size_t best = SIZE_MAX;
        for (int s = 0; s < 200; ++s) {
          best = std::min(best, ext_dimension(random_representation(q, f, a, rng), random_representation(q, f, b, rng)));
        }
        for (int s = 0; s < 1000 && best > rec; ++s, ++extra_used) {
          best = std::min(best, ext_dimension(random_representation(q, f, a, rng), random_representation(q, f, b, rng)));
        }
        if (best != rec) {
          out.ok = false;
          std::ostringstream d;
          d << " mismatch " << format_vector(a.entries()) << "," << format_vector(b.entries()) << ": rec " << rec
            << " sampled " << best << ";";
          out.detail += d.str();
        }
      }
    }
  }
  out.detail = std::to_string(cells) + " cells, " + std::to_string(extra_used) + " extra samples" + out.detail;
  return out;
}

Outcome euler_identity() {
  Outcome out;
  std::mt19937_64 rng(77);
  std::vector<QuiverPtr> quivers{a2(), a3(), k2(), k3(), make_quiver(3, {{"a", 1, 2}, {"b", 3, 2}, {"c", 1, 3}})};
  std::vector<Field> fields{Field::rationals(), Field::prime(2), Field::prime(5), Field::prime(2147483647ULL)};
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    auto q = quivers[rng() % quivers.size()];
    const Field& f = fields[rng() % fields.size()];
    std::vector<std::int64_t> a(q->vertex_count()), b(q->vertex_count());
    for (auto& x : a) x = static_cast<std::int64_t>(rng() % 4);
    for (auto& x : b) x = static_cast<std::int64_t>(rng() % 4);
    auto m = random_representation(q, f, DimVector(a), rng);
    auto n = random_representation(q, f, DimVector(b), rng);
    const auto lhs = static_cast<std::int64_t>(hom_dimension(m, n)) - static_cast<std::int64_t>(ext_dimension(m, n));
    if (lhs != euler_by_hand(*q, DimVector(a), DimVector(b))) ++bad;
  }
  out.ok = bad == 0;
  out.detail = "100 pairs, " + std::to_string(bad) + " violations";
  return out;
}

// χ_θ(g)^z computed with cofactor determinants.
Scalar character_by_hand(const Field& f, const Weight& theta, const GroupElement& g, std::int64_t z) {
  Scalar chi(1);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    chi *= f.pow(leibniz_determinant(f, g.block(i)), theta[i]);
  }
  return f.pow(chi, z);
}

Outcome semi_invariance_law() {
  Outcome out;
  std::mt19937_64 rng(5150);
  const Field q = Field::rationals();
  struct Setup {
    QuiverPtr quiver;
    Weight theta;
    std::vector<DimVector> dims;
  };
  std::vector<Setup> setups{
      {k3(), wt({-1, 1}), {dv({1, 1}), dv({2, 2})}},
      {a3(), wt({-1, 0, 1}), {dv({1, 1, 1}), dv({2, 1, 2})}},
      {k2(), wt({-1, 1}), {dv({1, 1}), dv({2, 2})}},
  };
  int bad = 0, nonzero = 0;
  for (int t = 0; t < 50; ++t) {
    const auto& setup = setups[static_cast<std::size_t>(t) % setups.size()];
    const std::int64_t z = 1 + t % 2;
    const auto& dim = setup.dims[rng() % setup.dims.size()];
    auto sigma = make_sigma(*setup.quiver, setup.theta, z, 2, rng());
    auto m = random_representation(setup.quiver, q, dim, rng);
    auto g = random_group_element(q, dim, rng);
    const Scalar before = semi_invariant(sigma, m);
    if (!Field::is_zero(before)) ++nonzero;
    if (semi_invariant(sigma, act(g, m)) != character_by_hand(q, setup.theta, g, z) * before) ++bad;
  }
  out.ok = bad == 0 && nonzero > 0;
  out.detail = "50 trials, " + std::to_string(nonzero) + " with d != 0, " + std::to_string(bad) + " violations";
  return out;
}

Outcome localization_soundness() {
  Outcome out;
  std::mt19937_64 rng(31337);
  const Field f = Field::rationals();
  struct Setup {
    QuiverPtr quiver;
    Weight theta;
  };
  std::vector<Setup> setups{{k3(), wt({-1, 1})}, {a2(), wt({-1, 1})}, {k2(), wt({-1, 1})}};
  int points = 0, bad = 0, attempts = 0;
  while (points < 20 && attempts < 500) {
    ++attempts;
    const auto& setup = setups[rng() % setups.size()];
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 2);
    std::vector<SigmaMorphism> sigmas{make_sigma(*setup.quiver, setup.theta, 1, 1, rng()),
                                      make_sigma(*setup.quiver, setup.theta, 2, 1, rng())};
    auto m = random_representation(setup.quiver, f, dv({n, n}), rng);
    auto check = check_localized_point(sigmas, m);
    if (!check.invertible) continue;
    ++points;
    bool ok = true;
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
      const Matrix big = evaluate_sigma(sigmas[s], m);
      const Matrix& inv = check.inverses[s];
      ok &= multiply(f, big, inv) == Matrix::identity(big.rows());
      ok &= multiply(f, inv, big) == Matrix::identity(big.cols());
    }
    auto pres = localization_presentation(*setup.quiver, sigmas);
    auto assignment = localization_assignment(sigmas, m, check.inverses);
    for (const auto& rel : pres.relations) {
      if (rel.kind == Relation::Kind::localization) ok &= relation_holds(pres, rel, m, assignment);
    }
    if (!ok) ++bad;
  }
  out.ok = points == 20 && bad == 0;
  out.detail = std::to_string(points) + " invertible points, " + std::to_string(bad) + " violations";
  return out;
}

Outcome local_quiver_consistency() {
  Outcome out;
  std::mt19937_64 rng(99);
  const Field f = Field::prime(5);
  const Weight theta = wt({-1, 1});
  auto q = k3();
  auto stable_point = [&]() {
    for (;;) {
      auto m = random_representation(q, f, dv({1, 1}), rng);
      if (is_stable(m, theta).holds) return m;
    }
  };
  GenericExtTable table(q);
  auto first = stable_point();
  auto one = local_quiver({{first, 1}}, theta);
  const auto moduli1 = moduli_dimension(table, dv({1, 1}), theta);
  const bool one_ok = one.vertex_count() == 1 && one.arrow_counts == std::vector<std::vector<std::int64_t>>{{2}} &&
                      local_model_dimension(one) == 2 && moduli1 == 2;

  auto second = stable_point();
  while (hom_dimension(first, second) != 0) second = stable_point();
  auto two = local_quiver({{first, 1}, {second, 1}}, theta);
  const auto moduli2 = moduli_dimension(table, dv({2, 2}), theta);
  const bool two_ok = two.vertex_count() == 2 && local_model_dimension(two) == 5 && moduli2 == 5;

  out.ok = one_ok && two_ok;
  out.detail = "one summand: " + std::to_string(one.arrow_counts[0][0]) + " loops, model dim " +
               std::to_string(local_model_dimension(one)) + "; two summands: model dim " +
               std::to_string(local_model_dimension(two));
  return out;
}

Outcome direct_sum_closure() {
  Outcome out;
  const Field f = Field::prime(2);
  const Weight theta = wt({-1, 1});
  std::vector<Representation> ss;
  for (const auto& m : all_representations(k3(), f, dv({1, 1}))) {
    if (is_semistable(m, theta).holds) ss.push_back(m);
  }
  int pairs = 0, bad = 0;
  for (const auto& m : ss) {
    for (const auto& n : ss) {
      ++pairs;
      if (!is_semistable(direct_sum(m, n), theta).holds) ++bad;
    }
  }
  out.ok = pairs > 0 && bad == 0;
  out.detail = std::to_string(ss.size()) + " semistable reps, " + std::to_string(pairs) + " ordered pairs, " +
               std::to_string(bad) + " failures";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "kronecker moduli dimensions", 1.0, kronecker_moduli},
      {2, "oracle and coordinate certificates over F_3", 1.0, oracle_vs_certificates},
      {3, "generic ext recursion vs F_5 sampling", 60.0, recursion_vs_sampling},
      {4, "euler identity", 10.0, euler_identity},
      {5, "semi-invariance law", 10.0, semi_invariance_law},
      {6, "localization soundness", 10.0, localization_soundness},
      {7, "local quiver consistency", 5.0, local_quiver_consistency},
      {8, "direct-sum semistability closure", 60.0, direct_sum_closure},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.limit_seconds;
    if (!pass) ++failures;
    std::printf("%s %d %s (%.3f s, limit %.0f s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                c.limit_seconds, o.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
