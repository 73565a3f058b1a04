#include "doctest.h"
#include "support.hpp"

#include <random>

using namespace quivermod;
using namespace qtest;

namespace {

DimVector small_dim(std::size_t k, std::mt19937_64& rng, std::int64_t max = 3) {
  std::vector<std::int64_t> v(k);
  for (auto& x : v) x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(max + 1));
  return DimVector(v);
}

}  // namespace

TEST_CASE("representation construction validates shapes and reduces entries") {
  const Field f5 = Field::prime(5);
  Representation m(a2(), f5, dv({1, 1}), {mat(1, 1, {7})});
  CHECK(m.matrix(0)(0, 0) == 2);
  CHECK_THROWS_AS(Representation(a2(), f5, dv({1, 1}), {mat(2, 1, {1, 1})}), ValidationError);
  CHECK_THROWS_AS(Representation(a2(), f5, dv({1, 1}), {}), ValidationError);
  CHECK_THROWS_AS(Representation(a2(), f5, dv({1}), {mat(1, 1, {1})}), ValidationError);
  Representation zero_dim(a2(), f5, dv({0, 2}), {Matrix(2, 0)});
  CHECK(zero_dim.matrix(0).cols() == 0);
}

TEST_CASE("evaluate_path examples") {
  const Field q = Field::rationals();
  SUBCASE("trivial path is the identity") {
    Representation m = Representation::zero(a2(), q, dv({2, 1}));
    CHECK(evaluate_path(m, Path::trivial(0)) == Matrix::identity(2));
  }
  SUBCASE("single arrow") {
    Representation m(a2(), q, dv({1, 1}), {mat(1, 1, {3})});
    CHECK(evaluate_path(m, make_path(*a2(), {"a"})) == mat(1, 1, {3}));
  }
  SUBCASE("b*a evaluates to B A") {
    Representation m(a3(), q, dv({2, 1, 2}), {mat(1, 2, {1, 2}), mat(2, 1, {3, 4})});
    Matrix ba = evaluate_path(m, make_path(*a3(), {"a", "b"}));
    CHECK(ba == mat(2, 2, {3, 6, 4, 8}));
  }
  SUBCASE("foreign path") {
    Representation m = Representation::zero(a2(), q, dv({1, 1}));
    Path bad{0, 2, {0, 1}};
    CHECK_THROWS_AS(evaluate_path(m, bad), ValidationError);
  }
}

TEST_CASE("evaluate_path is multiplicative under composition") {
  std::mt19937_64 rng(9);
  const Field f = Field::prime(7);
  auto q = make_quiver(4, {{"a", 1, 2}, {"b", 2, 3}, {"c", 3, 4}, {"d", 2, 4}});
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_representation(q, f, small_dim(4, rng), rng);
    auto paths = enumerate_paths(*q);
    for (const auto& p : paths) {
      for (const auto& r : paths) {
        if (r.target != p.source) continue;
        CHECK(evaluate_path(m, compose(p, r)) ==
              multiply(f, evaluate_path(m, p), evaluate_path(m, r)));
      }
    }
  }
}

TEST_CASE("direct_sum examples") {
  const Field q = Field::rationals();
  Representation m(a2(), q, dv({1, 1}), {mat(1, 1, {5})});
  CHECK(direct_sum(m, Representation::zero(a2(), q, dv({0, 0}))) == m);
  Representation n = Representation::zero(a2(), q, dv({2, 0}));
  Representation s = direct_sum(m, n);
  CHECK(s.dim() == dv({3, 1}));
  CHECK(s.matrix(0) == mat(1, 3, {5, 0, 0}));
  CHECK(theta_pairing(wt({-1, 1}), direct_sum(m, m).dim()) == 0);
  CHECK_THROWS_AS(direct_sum(m, Representation::zero(a2(), Field::prime(3), dv({1, 1}))), ValidationError);
  CHECK_THROWS_AS(direct_sum(m, Representation::zero(k3(), q, dv({1, 1}))), ValidationError);
}

TEST_CASE("direct_sum is associative and Hom is additive in the first argument") {
  std::mt19937_64 rng(21);
  const Field f = Field::prime(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto q = trial % 2 ? k3() : a3();
    const std::size_t k = q->vertex_count();
    auto a = random_representation(q, f, small_dim(k, rng, 2), rng);
    auto b = random_representation(q, f, small_dim(k, rng, 2), rng);
    auto c = random_representation(q, f, small_dim(k, rng, 2), rng);
    CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
    CHECK(hom_dimension(direct_sum(a, b), c) == hom_dimension(a, c) + hom_dimension(b, c));
  }
}

TEST_CASE("act examples") {
  const Field q = Field::rationals();
  SUBCASE("identity leaves M unchanged") {
    auto m = k3_point(q, 1, 2, 3);
    CHECK(act(GroupElement::identity(q, m.dim()), m) == m);
  }
  SUBCASE("K3 g=(2,3) on (1,0,0)") {
    auto m = k3_point(q, 1, 0, 0);
    GroupElement g(q, dv({1, 1}), {mat(1, 1, {2}), mat(1, 1, {3})});
    auto gm = act(g, m);
    CHECK(gm.matrix(0)(0, 0) == Scalar(3, 2));
    CHECK(gm.matrix(1)(0, 0) == 0);
    CHECK(gm.matrix(2)(0, 0) == 0);
  }
  SUBCASE("singular blocks and shape mismatches") {
    CHECK_THROWS_AS(GroupElement(q, dv({1, 1}), {mat(1, 1, {0}), mat(1, 1, {1})}), ValidationError);
    CHECK_THROWS_AS(GroupElement(q, dv({1, 1}), {mat(1, 1, {1})}), ValidationError);
    GroupElement g = GroupElement::identity(q, dv({2, 1}));
    CHECK_THROWS_AS(act(g, k3_point(q, 1, 0, 0)), ValidationError);
    CHECK_THROWS_AS(act(GroupElement::identity(Field::prime(5), dv({1, 1})), k3_point(q, 1, 0, 0)),
                    ValidationError);
  }
}

TEST_CASE("act is a group action over F_5") {
  std::mt19937_64 rng(4);
  const Field f = Field::prime(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto q = trial % 2 ? k3() : a3();
    auto dim = small_dim(q->vertex_count(), rng);
    auto m = random_representation(q, f, dim, rng);
    auto g = random_group_element(f, dim, rng);
    auto h = random_group_element(f, dim, rng);
    CHECK(act(g, act(h, m)) == act(g * h, m));
  }
}

TEST_CASE("hom_space examples") {
  const Field q = Field::rationals();
  Representation one(a2(), q, dv({1, 1}), {mat(1, 1, {1})});
  Representation zero_map(a2(), q, dv({1, 1}), {mat(1, 1, {0})});
  CHECK(hom_space(one, one).dimension == 1);
  CHECK(hom_space(zero_map, zero_map).dimension == 2);
  CHECK(hom_space(one, Representation::zero(a2(), q, dv({0, 0}))).dimension == 0);
  CHECK_THROWS_AS(hom_space(one, Representation::zero(a2(), Field::prime(2), dv({1, 1}))), ValidationError);
}

TEST_CASE("hom_space basis elements are intertwiners and match exhaustive counts") {
  std::mt19937_64 rng(31);
  const Field f = Field::prime(2);
  for (int trial = 0; trial < 40; ++trial) {
    auto q = trial % 2 ? k2() : a3();
    const std::size_t k = q->vertex_count();
    auto m = random_representation(q, f, small_dim(k, rng, 2), rng);
    auto n = random_representation(q, f, small_dim(k, rng, 2), rng);
    auto hom = hom_space(m, n);
    CHECK(hom.dimension == hom_dimension(m, n));
    std::size_t expected = 1;
    for (std::size_t i = 0; i < hom.dimension; ++i) expected *= 2;
    CHECK(brute_hom_count(m, n) == expected);
    for (const auto& fmap : hom.basis) {
      for (std::size_t a = 0; a < q->arrow_count(); ++a) {
        const Arrow& arrow = q->arrow(a);
        CHECK(multiply(f, fmap[arrow.target], m.matrix(a)) == multiply(f, n.matrix(a), fmap[arrow.source]));
      }
    }
  }
}

TEST_CASE("ext_space examples") {
  const Field q = Field::rationals();
  auto m = k3_point(q, 1, 0, 0);
  CHECK(ext_space(m, m).dimension == 2);
  CHECK(hom_space(m, m).dimension == 1);
  auto z = Representation::zero(k3(), q, dv({1, 1}));
  auto ez = ext_space(z, z);
  CHECK(ez.dimension == 3);
  CHECK(ez.complement_basis.size() == 3);
  CHECK(ez.source_dimension == 2);
  CHECK(ez.target_dimension == 3);
  Representation simple(a2(), q, dv({1, 0}), {Matrix(0, 1)});
  CHECK(ext_space(simple, simple).dimension == 0);
}

TEST_CASE("Euler identity hom - ext = <alpha_M, alpha_N>") {
  std::mt19937_64 rng(77);
  std::vector<QuiverPtr> quivers{k3(), a3(), make_quiver(3, {{"a", 1, 2}, {"b", 1, 3}, {"c", 2, 3}})};
  for (const Field& f : {Field::prime(3), Field::prime(2147483647ULL), Field::rationals()}) {
    for (int trial = 0; trial < 100; ++trial) {
      auto q = quivers[static_cast<std::size_t>(trial) % quivers.size()];
      const std::size_t k = q->vertex_count();
      auto m = random_representation(q, f, small_dim(k, rng), rng);
      auto n = random_representation(q, f, small_dim(k, rng), rng);
      auto hom = hom_space(m, n);
      auto ext = ext_space(m, n);
      CHECK(static_cast<std::int64_t>(hom.dimension) - static_cast<std::int64_t>(ext.dimension) ==
            euler_form(*q, m.dim(), n.dim()));
      CHECK(ext.dimension == ext_dimension(m, n));
      CHECK(ext.complement_basis.size() == ext.dimension);
    }
  }
}

TEST_CASE("hom and ext dimensions are invariant under base change") {
  std::mt19937_64 rng(8);
  const Field f = Field::prime(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto q = k3();
    auto m = random_representation(q, f, small_dim(2, rng), rng);
    auto n = random_representation(q, f, small_dim(2, rng), rng);
    auto gm = act(random_group_element(f, m.dim(), rng), m);
    auto gn = act(random_group_element(f, n.dim(), rng), n);
    CHECK(hom_dimension(m, n) == hom_dimension(gm, gn));
    CHECK(ext_dimension(m, n) == ext_dimension(gm, gn));
  }
}
