#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zch/poly/fme.hpp"
#include "zch/poly/linear_system.hpp"
#include "zch/poly/simplex.hpp"

using namespace zch::poly;

namespace {

System<double> two_var_example() {
  System<double> sys;
  sys.vars = {"x", "y"};
  sys.add_row({1, 1}, 3);
  sys.add_row({1, 0}, 2);
  sys.add_row({0, 1}, 2);
  sys.add_row({-1, 0}, 0);
  sys.add_row({0, -1}, 0);
  return sys;
}

System<double> unit_cube() {
  System<double> sys;
  sys.vars = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    std::vector<double> up(3, 0.0), dn(3, 0.0);
    up[i] = 1.0;
    dn[i] = -1.0;
    sys.add_row(up, 1.0);
    sys.add_row(dn, 0.0);
  }
  return sys;
}

// Random feasible bounded system: integer coefficients in [-3,3], rhs in
// [0,3] (origin always feasible), plus a bounding box.
System<double> random_system(std::uint64_t seed, int nvars, int nrows) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3), rhs(0, 3);
  System<double> sys;
  for (int i = 0; i < nvars; ++i) sys.vars.push_back("v" + std::to_string(i));
  for (int r = 0; r < nrows; ++r) {
    std::vector<double> c(nvars);
    for (double& x : c) x = coeff(rng);
    sys.add_row(std::move(c), rhs(rng));
  }
  for (int i = 0; i < nvars; ++i) {
    std::vector<double> up(nvars, 0.0), dn(nvars, 0.0);
    up[i] = 1.0;
    dn[i] = -1.0;
    sys.add_row(up, 2.0);
    sys.add_row(dn, 2.0);
  }
  return sys;
}

bool vertex_sets_equal(const std::vector<std::vector<Rational>>& a,
                       const std::vector<std::vector<double>>& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (std::abs(static_cast<double>(a[i][j]) - b[i][j]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("simplex solves small LPs") {
  System<double> sys;
  sys.vars = {"x", "y"};
  sys.add_row({1, 0}, 2);
  sys.add_row({0, 1}, 3);
  sys.add_row({-1, 0}, 0);
  sys.add_row({0, -1}, 0);
  auto r = lp_maximize(sys, {1.0, 1.0});
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK_THAT(r.objective, Catch::Matchers::WithinAbs(5.0, 1e-9));

  SECTION("unbounded") {
    System<double> ub;
    ub.vars = {"x"};
    ub.add_row({-1}, 0);
    CHECK(lp_maximize(ub, {1.0}).status == LpStatus::Unbounded);
  }
  SECTION("infeasible") {
    System<double> inf;
    inf.vars = {"x"};
    inf.add_row({1}, -1);
    inf.add_row({-1}, 0);
    CHECK(lp_maximize(inf, {1.0}).status == LpStatus::Infeasible);
    CHECK_FALSE(lp_feasible(inf));
  }
  SECTION("exact rational arithmetic") {
    auto rsys = convert_system<Rational>(sys);
    auto rr = lp_maximize(rsys, {Rational(1), Rational(1)});
    REQUIRE(rr.status == LpStatus::Optimal);
    CHECK(rr.objective == Rational(5));
  }
}

TEST_CASE("fme_eliminate hand example") {
  auto out = fme_eliminate(two_var_example(), "y");
  REQUIRE(out.vars == std::vector<std::string>{"x"});
  // expected facet set (pre-pruning): x <= 3, x <= 2, x >= 0 among the rows
  auto reduced = remove_redundant(out);
  REQUIRE(reduced.rows.size() == 2);
  auto verts = enumerate_vertices(reduced);
  REQUIRE(verts.size() == 2);
  CHECK_THAT(verts[0][0], Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THAT(verts[1][0], Catch::Matchers::WithinAbs(2.0, 1e-12));
}

TEST_CASE("fme_eliminate no-op when victim is absent") {
  System<double> sys;
  sys.vars = {"x", "y"};
  sys.add_row({1, 0}, 1);
  sys.add_row({-1, 0}, 0);
  auto out = fme_eliminate(sys, "y");
  CHECK(out.vars == std::vector<std::string>{"x"});
  CHECK(out.rows.size() == 2);
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    CHECK(out.rows[i].coeffs[0] == sys.rows[i].coeffs[0]);
    CHECK(out.rows[i].rhs == sys.rows[i].rhs);
  }
}

TEST_CASE("remove_redundant") {
  SECTION("drops the looser bound") {
    System<double> sys;
    sys.vars = {"x"};
    sys.add_row({1}, 3);
    sys.add_row({1}, 2);
    sys.add_row({-1}, 0);
    auto out = remove_redundant(sys);
    REQUIRE(out.rows.size() == 2);
    for (const auto& r : out.rows)
      if (r.coeffs[0] > 0) CHECK(r.rhs == 2.0);
  }
  SECTION("identity on an irredundant system") {
    auto cube = unit_cube();
    CHECK(remove_redundant(cube).rows.size() == cube.rows.size());
  }
  SECTION("infeasible input is an error") {
    System<double> inf;
    inf.vars = {"x"};
    inf.add_row({1}, -1);
    inf.add_row({-1}, 0);
    CHECK_THROWS_AS(remove_redundant(inf), InfeasibleError);
  }
}

TEST_CASE("enumerate_vertices") {
  SECTION("unit cube has 8 vertices") {
    CHECK(enumerate_vertices(unit_cube()).size() == 8);
  }
  SECTION("standard simplex has 4 vertices") {
    System<double> sys;
    sys.vars = {"x", "y", "z"};
    sys.add_row({1, 1, 1}, 1);
    for (int i = 0; i < 3; ++i) {
      std::vector<double> dn(3, 0.0);
      dn[i] = -1.0;
      sys.add_row(dn, 0.0);
    }
    auto v = enumerate_vertices(sys);
    REQUIRE(v.size() == 4);
    // lexicographic order: origin first
    CHECK(v[0] == std::vector<double>{0, 0, 0});
  }
  SECTION("unbounded polyhedron names a direction") {
    System<double> sys;
    sys.vars = {"x", "y"};
    sys.add_row({-1, 0}, 0);
    sys.add_row({0, -1}, 0);
    sys.add_row({0, 1}, 1);
    try {
      enumerate_vertices(sys);
      FAIL("expected UnboundedError");
    } catch (const UnboundedError& e) {
      CHECK(std::string(e.what()).find("x=") != std::string::npos);
    }
  }
  SECTION("too many variables rejected") {
    System<double> sys;
    sys.vars = {"a", "b", "c", "d", "e"};
    CHECK_THROWS_AS(enumerate_vertices(sys), std::invalid_argument);
  }
}

TEST_CASE("project") {
  SECTION("keep-all is pruning only") {
    System<double> sys;
    sys.vars = {"x"};
    sys.add_row({1}, 3);
    sys.add_row({1}, 2);
    sys.add_row({-1}, 0);
    CHECK(project(sys, {"x"}).rows.size() == 2);
  }
  SECTION("two-variable example onto x") {
    auto out = project(two_var_example(), {"x"});
    auto verts = enumerate_vertices(out);
    REQUIRE(verts.size() == 2);
    CHECK_THAT(verts[0][0], Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(verts[1][0], Catch::Matchers::WithinAbs(2.0, 1e-12));
  }
}

TEST_CASE("projection soundness and completeness on random systems") {
  // a grid point lies in the projection iff it extends to a feasible point
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int nvars = 3 + static_cast<int>(seed % 3);  // 3..5
    auto sys = random_system(seed, nvars, 4);
    auto rsys = convert_system<Rational>(sys);
    auto proj = project(rsys, {"v0", "v1"});
    for (double x = -2; x <= 2; x += 1)
      for (double y = -2; y <= 2; y += 1) {
        bool in_proj = true;
        const int i0 = proj.index_of("v0"), i1 = proj.index_of("v1");
        for (const auto& r : proj.normalized().rows) {
          Rational lhs = r.coeffs[i0] * Rational(x) + r.coeffs[i1] * Rational(y);
          if (lhs > r.rhs) in_proj = false;
        }
        // extendability: fix v0, v1 by equality rows and test feasibility
        auto fixed = rsys;
        std::vector<Rational> e0(nvars, Rational(0)), e1(nvars, Rational(0));
        e0[0] = 1;
        e1[1] = 1;
        fixed.add_row(e0, Rational(x), Relation::Eq);
        fixed.add_row(e1, Rational(y), Relation::Eq);
        const bool extendable = lp_feasible(fixed);
        CHECK(in_proj == extendable);
        ++checked;
      }
  }
  CHECK(checked == 100 * 25);
}

TEST_CASE("elimination order does not change the projection") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto sys = random_system(seed + 500, 4, 4);
    auto rsys = convert_system<Rational>(sys);
    auto a = fme_eliminate(fme_eliminate(rsys, "v2"), "v3");
    auto b = fme_eliminate(fme_eliminate(rsys, "v3"), "v2");
    auto va = enumerate_vertices(remove_redundant(a));
    auto vb = enumerate_vertices(remove_redundant(b));
    REQUIRE(va.size() == vb.size());
    for (std::size_t i = 0; i < va.size(); ++i)
      for (std::size_t j = 0; j < va[i].size(); ++j) CHECK(va[i][j] == vb[i][j]);
  }
}

TEST_CASE("rational vertex enumeration is exact") {
  System<Rational> sys;
  sys.vars = {"x", "y"};
  sys.add_row({Rational(3), Rational(1)}, Rational(1));
  sys.add_row({Rational(-1), Rational(0)}, Rational(0));
  sys.add_row({Rational(0), Rational(-1)}, Rational(0));
  auto v = enumerate_vertices(sys);
  REQUIRE(v.size() == 3);
  CHECK(v[2][0] == Rational(1, 3));
  (void)vertex_sets_equal;
}
