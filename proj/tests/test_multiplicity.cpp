#include <doctest.h>

#include <random>

#include "segre/multiplicity.hpp"

using namespace segre;

namespace {

MonomialIdeal ideal2(std::vector<Exponent> gens) { return MonomialIdeal(2, std::move(gens)); }

std::vector<std::int64_t> seq(const MonomialIdeal& J) { return multiplicity_sequence(J).c; }

using V = std::vector<std::int64_t>;

}  // namespace

TEST_CASE("power membership") {
  MonomialIdeal J = ideal2({{2, 0}, {1, 1}});
  CHECK(power_membership(J, Exponent{3, 1}, 2));  // x^3 y = x^2 * xy
  CHECK(power_membership(J, Exponent{3, 1}, 0));
  CHECK(!power_membership(J, Exponent{2, 0}, 2));
  CHECK(power_membership(ideal2({{0, 0}}), Exponent{0, 0}, 5));
  CHECK_THROWS_AS(power_membership(J, Exponent{1, 1, 1}, 1), DimensionError);
}

TEST_CASE("bigraded dimensions: direct enumeration oracles") {
  MonomialIdeal J = ideal2({{2, 0}, {1, 1}});
  CHECK(bigraded_dimension(J, 0, 1) == 2);  // x and y survive in degree 1
  CHECK(bigraded_dimension(J, 1, 2) == 2);  // x^2, xy in J \ J^2; y^2 not in J
  CHECK(bigraded_dimension(J, 1, 0) == 0);  // constants never sit in the proper ideal
  CHECK(bigraded_dimension(ideal2({{0, 0}}), 1, 0) == 0);

  // associated-graded binning: the same monomials land at their m-adic degree
  BigradedTable T = bigraded_table(J, 4, 4, BigradedMode::AssociatedGraded);
  CHECK(T.H[1][0] == 2);  // classes of x^2, xy have degree 0 in the graded ring
  // at i = 0 the two modes agree
  BigradedTable Tt = bigraded_table(J, 4, 4, BigradedMode::TotalDegree);
  for (int j = 0; j <= 4; ++j) CHECK(T.H[0][j] == Tt.H[0][j]);
  // H(0,j) counts degree-j monomials outside J: 1, 2, 1, 1, 1 for (x^2,xy)
  CHECK(Tt.H[0][0] == 1);
  CHECK(Tt.H[0][1] == 2);
  CHECK(Tt.H[0][2] == 1);
  CHECK(Tt.H[0][3] == 1);
}

TEST_CASE("multiplicity sequences of the corpus") {
  CHECK(seq(ideal2({{2, 0}, {1, 1}})) == V{0, 1, 2});
  CHECK(seq(ideal2({{2, 0}, {0, 3}})) == V{0, 0, 6});
  CHECK(seq(ideal2({{2, 0}, {0, 2}})) == V{0, 0, 4});
  CHECK(seq(ideal2({{3, 0}, {0, 3}})) == V{0, 0, 9});
  CHECK(seq(ideal2({{1, 0}, {0, 1}})) == V{0, 0, 1});
  CHECK(seq(ideal2({{1, 0}})) == V{0, 1, 0});
  CHECK(seq(ideal2({{1, 1}})) == V{0, 2, 0});
  CHECK(seq(ideal2({{0, 0}})) == V{0, 0, 0});  // unit ideal

  MonomialIdeal J3(3, {Exponent{2, 0, 0}, Exponent{1, 1, 0}, Exponent{1, 0, 1}});
  CHECK(seq(J3) == V{0, 1, 1, 2});

  // maximal ideal in 4 variables: multiplicity 1 at the top
  MonomialIdeal m4(4, {Exponent{1, 0, 0, 0}, Exponent{0, 1, 0, 0}, Exponent{0, 0, 1, 0},
                       Exponent{0, 0, 0, 1}});
  CHECK(seq(m4) == V{0, 0, 0, 0, 1});
}

TEST_CASE("non-complete-intersection cross-checks") {
  // J = x(x^2, y^2): current calculus gives e = (0,1,6), fixed parts 1 and 2+4
  MonomialIdeal a = ideal2({{3, 0}, {1, 2}});
  CHECK(seq(a) == V{0, 1, 6});
  SegreReport Ra = siu_report(a);
  CHECK(Ra.decomposition[1].fixed[0].beta == 1);
  CHECK(Ra.decomposition[2].fixed[0].beta == 6);

  // J = xy(x, y): three unit contributions at the top level
  MonomialIdeal b = ideal2({{2, 1}, {1, 2}});
  CHECK(seq(b) == V{0, 2, 3});
  SegreReport Rb = siu_report(b);
  REQUIRE(Rb.decomposition[1].fixed.size() == 2);
  CHECK(Rb.decomposition[2].fixed[0].beta == 3);
}

TEST_CASE("three coordinate axes in C^3") {
  // J = (xy, yz, xz): two generic quadrics through the axes meet in the
  // three axes plus one extra line, so the hand recursion gives
  // e = (0,0,3,2) with unit coefficients on each axis
  MonomialIdeal J(3, {Exponent{1, 1, 0}, Exponent{0, 1, 1}, Exponent{1, 0, 1}});
  CHECK(seq(J) == V{0, 0, 3, 2});
  SegreReport R = siu_report(J);
  CHECK(R.codimZ == 2);
  REQUIRE(R.decomposition[2].fixed.size() == 3);
  for (const auto& fp : R.decomposition[2].fixed) CHECK(fp.beta == 1);
  CHECK(R.decomposition[2].n_k == 0);
  REQUIRE(R.decomposition[3].fixed.size() == 1);
  CHECK(R.decomposition[3].fixed[0].beta == 2);
}

TEST_CASE("budget errors carry the window size") {
  // degree-2 generators in 4 variables exceed the monomial-box budget
  MonomialIdeal big(4, {Exponent{2, 0, 0, 0}, Exponent{0, 2, 0, 0}, Exponent{0, 0, 2, 0},
                        Exponent{0, 0, 0, 2}});
  try {
    multiplicity_sequence(big);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("window") != std::string::npos);
  }
}

TEST_CASE("top entry equals n! * covolume when m-primary") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ex(1, 3);
  for (int t = 0; t < 12; ++t) {
    std::vector<Exponent> gens{{ex(rng), 0}, {0, ex(rng)}};
    if (t % 2) gens.push_back({ex(rng), ex(rng)});
    MonomialIdeal J = ideal2(gens);
    auto cv = covolume(newton_polyhedron(J));
    REQUIRE(cv.has_value());
    Rational expect = *cv * 2;  // n! = 2
    CHECK(Rational(seq(J).back()) == expect);
  }
}

TEST_CASE("closure invariance") {
  CHECK(closure_invariance_check(ideal2({{2, 0}, {0, 2}})));
  CHECK(closure_invariance_check(ideal2({{2, 0}, {1, 1}})));
  CHECK(closure_invariance_check(ideal2({{3, 0}, {0, 3}})));
  CHECK(seq(ideal2({{2, 0}, {0, 2}})) == seq(ideal2({{2, 0}, {1, 1}, {0, 2}})));
  CHECK(seq(ideal2({{3, 0}, {0, 3}})) ==
        seq(ideal2({{3, 0}, {2, 1}, {1, 2}, {0, 3}})));
}

TEST_CASE("vanishing below codim Z and adding generators") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> ex(0, 3);
  for (int t = 0; t < 15; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 2; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{2, 1};
      gens.push_back(e);
    }
    MonomialIdeal J = ideal2(gens);
    auto c = seq(J);
    for (int k = 0; k < codim_zero_set(J) && k <= 2; ++k) CHECK(c[k] == 0);
  }
  // e_n never grows when a generator is added (m-primary pairs)
  MonomialIdeal A = ideal2({{3, 0}, {0, 3}});
  MonomialIdeal B = ideal2({{3, 0}, {1, 1}, {0, 3}});
  CHECK(seq(B).back() <= seq(A).back());
}

TEST_CASE("generic Segre numbers along distinguished supports") {
  MonomialIdeal J = ideal2({{2, 0}, {1, 1}});
  CHECK(generic_segre_along(J, CoordinateSubspace{{0}}) == 1);
  CHECK(generic_segre_along(J, CoordinateSubspace{{0, 1}}) == 2);

  MonomialIdeal J3(3, {Exponent{2, 0, 0}, Exponent{1, 1, 0}, Exponent{1, 0, 1}});
  CHECK(generic_segre_along(J3, CoordinateSubspace{{0}}) == 1);
  CHECK(generic_segre_along(J3, CoordinateSubspace{{0, 1, 2}}) == 2);
}

TEST_CASE("siu reports") {
  SUBCASE("(x^2, xy)") {
    SegreReport R = siu_report(ideal2({{2, 0}, {1, 1}}));
    CHECK(R.e == V{0, 1, 2});
    CHECK(R.codimZ == 1);
    REQUIRE(R.decomposition.size() == 3);
    REQUIRE(R.decomposition[1].fixed.size() == 1);
    CHECK(R.decomposition[1].fixed[0].V.vanishing == std::vector<int>{0});
    CHECK(R.decomposition[1].fixed[0].beta == 1);
    REQUIRE(R.decomposition[2].fixed.size() == 1);
    CHECK(R.decomposition[2].fixed[0].beta == 2);
    for (const auto& lvl : R.decomposition) CHECK(lvl.n_k == 0);
  }
  SUBCASE("(x^2, xy, xz): moving component at k = 2") {
    MonomialIdeal J3(3, {Exponent{2, 0, 0}, Exponent{1, 1, 0}, Exponent{1, 0, 1}});
    SegreReport R = siu_report(J3);
    CHECK(R.e == V{0, 1, 1, 2});
    CHECK(R.codimZ == 1);
    CHECK(R.decomposition[1].n_k == 0);
    CHECK(R.decomposition[2].fixed.empty());
    CHECK(R.decomposition[2].n_k == 1);
    CHECK(R.decomposition[3].n_k == 0);
    REQUIRE(R.decomposition[3].fixed.size() == 1);
    CHECK(R.decomposition[3].fixed[0].beta == 2);
  }
  SUBCASE("(x^2, y^3): complete intersection") {
    SegreReport R = siu_report(ideal2({{2, 0}, {0, 3}}));
    CHECK(R.e == V{0, 0, 6});
    CHECK(R.codimZ == 2);
    REQUIRE(R.decomposition[2].fixed.size() == 1);
    CHECK(R.decomposition[2].fixed[0].beta == 6);
    CHECK(R.decomposition[2].n_k == 0);
  }
  SUBCASE("unit ideal") {
    SegreReport R = siu_report(ideal2({{0, 0}}));
    CHECK(R.e == V{0, 0, 0});
    CHECK(R.codimZ == 3);
    for (const auto& lvl : R.decomposition) {
      CHECK(lvl.fixed.empty());
      CHECK(lvl.n_k == 0);
    }
  }
  SUBCASE("(xy): two lines, each beta 1") {
    SegreReport R = siu_report(ideal2({{1, 1}}));
    CHECK(R.e == V{0, 2, 0});
    REQUIRE(R.decomposition[1].fixed.size() == 2);
    CHECK(R.decomposition[1].fixed[0].beta == 1);
    CHECK(R.decomposition[1].fixed[1].beta == 1);
    CHECK(R.decomposition[1].n_k == 0);
  }
}

TEST_CASE("siu decomposition identity holds on random ideals") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> ex(0, 3);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 3; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{1, 2};
      gens.push_back(e);
    }
    // throws DiscrepancyError if any n_k < 0 or structural identity fails
    SegreReport R = siu_report(ideal2(gens));
    for (const auto& lvl : R.decomposition) {
      std::int64_t sum = lvl.n_k;
      for (const auto& fp : lvl.fixed) sum += fp.beta;
      CHECK(sum == R.e[lvl.k]);
    }
    ++checked;
  }
  CHECK(checked == 40);
}
