#include "doctest.h"
#include "support.hpp"

#include <random>

using namespace quivermod;
using namespace qtest;

namespace {

std::vector<DimVector> dims_up_to(std::size_t k, std::int64_t total) {
  std::vector<DimVector> out;
  for (const auto& d : sub_dimvectors(DimVector(std::vector<std::int64_t>(k, total)))) {
    if (d.total() <= total) out.push_back(d);
  }
  return out;
}

std::size_t sampled_min_ext(QuiverPtr q, const DimVector& a, const DimVector& b, int samples,
                            std::mt19937_64& rng) {
  const Field f = Field::prime(5);
  std::size_t best = SIZE_MAX;
  for (int s = 0; s < samples && best > 0; ++s) {
    best = std::min(best, ext_dimension(random_representation(q, f, a, rng), random_representation(q, f, b, rng)));
  }
  return best;
}

}  // namespace

TEST_CASE("generic_ext examples") {
  CHECK(generic_ext(k3(), dv({1, 1}), dv({1, 1})) == 1);
  CHECK(generic_ext(k3(), dv({1, 0}), dv({0, 1})) == 3);
  CHECK(generic_ext(k3(), dv({0, 1}), dv({1, 0})) == 0);
  for (auto q : {k3(), a3(), arrow_free(2)}) {
    const auto zero = DimVector::zero(q->vertex_count());
    for (const auto& a : dims_up_to(q->vertex_count(), 3)) {
      CHECK(generic_ext(q, a, zero) == 0);
      CHECK(generic_ext(q, zero, a) == 0);
    }
  }
  CHECK_THROWS_AS(GenericExtTable(std::make_shared<const Quiver>(1, std::vector<ArrowSpec>{{"l", 1, 1}})),
                  ValidationError);
}

TEST_CASE("generic_subdimvectors examples") {
  CHECK(generic_subdimvectors(k3(), dv({1, 1})) == std::vector<DimVector>{dv({0, 0}), dv({0, 1}), dv({1, 1})});
  CHECK(generic_subdimvectors(arrow_free(2), dv({1, 2})) == sub_dimvectors(dv({1, 2})));
  CHECK(generic_subdimvectors(k3(), dv({0, 0})) == std::vector<DimVector>{dv({0, 0})});
  CHECK(generic_subdimvectors(a2(), dv({1, 1})) == std::vector<DimVector>{dv({0, 0}), dv({0, 1}), dv({1, 1})});
}

TEST_CASE("generic_subdimvectors contain 0 and alpha and satisfy their defining condition") {
  for (auto q : {k3(), a3(), k2(), make_quiver(3, {{"a", 1, 2}, {"b", 3, 2}})}) {
    GenericExtTable table(q);
    for (const auto& alpha : dims_up_to(q->vertex_count(), 4)) {
      const auto& subs = table.generic_subdimvectors(alpha);
      CHECK(std::find(subs.begin(), subs.end(), DimVector::zero(q->vertex_count())) != subs.end());
      CHECK(std::find(subs.begin(), subs.end(), alpha) != subs.end());
      CHECK(std::is_sorted(subs.begin(), subs.end()));
      for (const auto& beta : sub_dimvectors(alpha)) {
        const bool listed = std::find(subs.begin(), subs.end(), beta) != subs.end();
        CHECK(listed == (table.ext(beta, alpha - beta) == 0));
      }
    }
  }
}

TEST_CASE("generic_ext is bounded below by -<alpha,beta> and matches sampling on K3") {
  std::mt19937_64 rng(101);
  auto q = k3();
  GenericExtTable table(q);
  for (const auto& a : dims_up_to(2, 3)) {
    for (const auto& b : dims_up_to(2, 3)) {
      const auto value = table.ext(a, b);
      CHECK(value >= 0);
      CHECK(value >= -euler_form(*q, a, b));
      CHECK(static_cast<std::int64_t>(sampled_min_ext(q, a, b, 60, rng)) == value);
    }
  }
}

TEST_CASE("semistable_nonempty examples") {
  GenericExtTable table(k3());
  for (std::int64_t n = 1; n <= 4; ++n) CHECK(semistable_nonempty(table, dv({n, n}), wt({-1, 1})));
  CHECK_FALSE(semistable_nonempty(table, dv({2, 1}), wt({-1, 1})));
  CHECK(semistable_nonempty(table, dv({0, 0}), wt({-1, 1})));
}

TEST_CASE("stable_nonempty examples") {
  GenericExtTable k3t(k3());
  CHECK(stable_nonempty(k3t, dv({1, 1}), wt({-1, 1})));
  GenericExtTable a2t(a2());
  CHECK(stable_nonempty(a2t, dv({1, 1}), wt({-1, 1})));
  GenericExtTable free(arrow_free(2));
  CHECK_FALSE(stable_nonempty(free, dv({1, 1}), wt({-1, 1})));
  CHECK_THROWS_AS(stable_nonempty(k3t, dv({0, 0}), wt({-1, 1})), ValidationError);
}

TEST_CASE("stable_nonempty implies semistable_nonempty") {
  for (auto q : {k3(), k2(), a3()}) {
    GenericExtTable table(q);
    const std::size_t k = q->vertex_count();
    for (const auto& alpha : dims_up_to(k, 4)) {
      if (alpha.is_zero()) continue;
      for (const auto& t : sub_dimvectors(DimVector(std::vector<std::int64_t>(k, 4)))) {
        std::vector<std::int64_t> shifted;
        for (auto x : t.entries()) shifted.push_back(x - 2);
        const Weight theta(shifted);
        if (stable_nonempty(table, alpha, theta)) CHECK(semistable_nonempty(table, alpha, theta));
      }
    }
  }
}

TEST_CASE("semistable_nonempty agrees with the finite-field oracle") {
  std::mt19937_64 rng(55);
  const Field f = Field::prime(3);
  for (auto q : {k2(), a3(), k3()}) {
    GenericExtTable table(q);
    const std::size_t k = q->vertex_count();
    for (const auto& alpha : dims_up_to(k, 3)) {
      for (const auto& t : sub_dimvectors(DimVector(std::vector<std::int64_t>(k, 2)))) {
        std::vector<std::int64_t> shifted;
        for (auto x : t.entries()) shifted.push_back(x - 1);
        const Weight theta(shifted);
        if (theta_pairing(theta, alpha) != 0) continue;
        const bool predicted = semistable_nonempty(table, alpha, theta);
        bool found = false;
        if (predicted) {
          for (int s = 0; s < 200 && !found; ++s) {
            found = is_semistable(random_representation(q, f, alpha, rng), theta).holds;
          }
          CHECK(found);
        } else {
          for (const auto& m : all_representations(q, f, alpha)) {
            if (is_semistable(m, theta).holds) found = true;
          }
          CHECK_FALSE(found);
        }
      }
    }
  }
}

TEST_CASE("moduli_dimension") {
  GenericExtTable table(k3());
  CHECK(moduli_dimension(table, dv({1, 1}), wt({-1, 1})) == 2);
  for (std::int64_t n = 1; n <= 4; ++n) CHECK(moduli_dimension(table, dv({n, n}), wt({-1, 1})) == n * n + 1);
  CHECK_FALSE(moduli_dimension(table, dv({2, 1}), wt({-1, 1})).has_value());
  GenericExtTable a2t(a2());
  CHECK(moduli_dimension(a2t, dv({1, 1}), wt({-1, 1})) == 0);
  // 1 - <alpha,alpha> = dim rep(alpha) - dim GL(alpha) + 1.
  for (std::int64_t n = 1; n <= 4; ++n) {
    const std::int64_t rep_dim = 3 * n * n;
    const std::int64_t gl_dim = 2 * n * n;
    CHECK(moduli_dimension(table, dv({n, n}), wt({-1, 1})) == rep_dim - gl_dim + 1);
  }
}

TEST_CASE("local_quiver examples") {
  const Field f3 = Field::prime(3);
  const Weight theta = wt({-1, 1});
  SUBCASE("one stable summand") {
    auto data = local_quiver({{k3_point(f3, 1, 0, 0), 1}}, theta);
    CHECK(data.vertex_count() == 1);
    CHECK(data.arrow_counts == std::vector<std::vector<std::int64_t>>{{2}});
    CHECK(data.multiplicities == std::vector<std::int64_t>{1});
    CHECK(data.stability_verified);
    CHECK(local_model_dimension(data) == 2);
    GenericExtTable table(k3());
    CHECK(local_model_dimension(data) == moduli_dimension(table, dv({1, 1}), theta));
    Quiver gamma = data.to_quiver();
    CHECK(gamma.vertex_count() == 1);
    CHECK(gamma.arrow_count() == 2);
    CHECK_FALSE(gamma.acyclic());
  }
  SUBCASE("two distinct stable summands") {
    auto data = local_quiver({{k3_point(f3, 1, 0, 0), 1}, {k3_point(f3, 0, 1, 0), 1}}, theta);
    CHECK(data.arrow_counts == std::vector<std::vector<std::int64_t>>{{2, 1}, {1, 2}});
    CHECK(local_model_dimension(data) == 5);
    GenericExtTable table(k3());
    CHECK(local_model_dimension(data) == moduli_dimension(table, dv({2, 2}), theta));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(local_quiver({{k3_point(f3, 1, 0, 0), 1}, {k3_point(f3, 2, 0, 0), 1}}, theta),
                    ValidationError);
    CHECK_THROWS_AS(local_quiver({{k3_point(f3, 0, 0, 0), 1}}, theta), ValidationError);
    CHECK_THROWS_AS(local_quiver({{k3_point(f3, 1, 0, 0), 0}}, theta), ValidationError);
    CHECK_THROWS_AS(local_quiver({{k3_point(Field::rationals(), 1, 0, 0), 1}}, theta), ValidationError);
    CHECK_THROWS_AS(local_model_dimension(LocalQuiverData{}), ValidationError);
  }
  SUBCASE("asserted stability over Q is marked unverified") {
    LocalQuiverOptions options;
    options.assert_stable = true;
    auto data = local_quiver({{k3_point(Field::rationals(), 1, 0, 0), 2}}, theta, options);
    CHECK_FALSE(data.stability_verified);
    CHECK(data.multiplicities == std::vector<std::int64_t>{2});
    CHECK(local_model_dimension(data) == 2 * 4 - 4 + 1);
  }
}

TEST_CASE("local model dimension at a stable point equals the moduli dimension") {
  std::mt19937_64 rng(12);
  const Field f = Field::prime(3);
  GenericExtTable table(k3());
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 2);
    auto m = random_representation(k3(), f, dv({n, n}), rng);
    if (!is_stable(m, wt({-1, 1})).holds) continue;
    ++checked;
    auto data = local_quiver({{m, 1}}, wt({-1, 1}));
    CHECK(local_model_dimension(data) == moduli_dimension(table, dv({n, n}), wt({-1, 1})));
  }
  CHECK(checked > 10);
}
