#include <doctest.h>

#include <algorithm>
#include <random>

#include "segre/newton.hpp"

using namespace segre;

namespace {

MonomialIdeal ideal2(std::vector<Exponent> gens) { return MonomialIdeal(2, std::move(gens)); }

bool has_facet(const NewtonPolyhedron& NP, std::vector<long> normal, long offset) {
  for (const auto& f : NP.facets)
    if (f.normal == normal && f.offset == offset) return true;
  return false;
}

// brute-force membership: exists k <= kmax with k*a >= some sum of k generators
bool brute_force_contains(const MonomialIdeal& J, const Exponent& a, int kmax = 6) {
  for (int k = 1; k <= kmax; ++k) {
    Exponent target = a;
    for (int i = 0; i < a.size(); ++i) target[i] *= k;
    std::vector<std::pair<Exponent, int>> stack{{target, k}};
    while (!stack.empty()) {
      auto [rest, need] = stack.back();
      stack.pop_back();
      if (need == 0) return true;
      for (const auto& g : J.generators) {
        if (!g.divides(rest)) continue;
        stack.push_back({rest - g, need - 1});
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("newton polyhedron facets: hand oracles") {
  // (x^2, xy): vertices {(2,0),(1,1)}, facets x>=1, y>=0, x+y>=2
  NewtonPolyhedron NP = newton_polyhedron(ideal2({{2, 0}, {1, 1}}));
  CHECK(NP.vertices == std::vector<Exponent>{{1, 1}, {2, 0}});
  CHECK(NP.facets.size() == 3);
  CHECK(has_facet(NP, {1, 0}, 1));
  CHECK(has_facet(NP, {0, 1}, 0));
  CHECK(has_facet(NP, {1, 1}, 2));

  // (x): half-plane
  NewtonPolyhedron NPx = newton_polyhedron(ideal2({{1, 0}}));
  CHECK(NPx.facets.size() == 2);
  CHECK(has_facet(NPx, {1, 0}, 1));
  CHECK(has_facet(NPx, {0, 1}, 0));

  // (x^2, y^3): normals (1,0), (0,1), (3,2) with offsets 0, 0, 6
  NewtonPolyhedron NP2 = newton_polyhedron(ideal2({{2, 0}, {0, 3}}));
  CHECK(NP2.facets.size() == 3);
  CHECK(has_facet(NP2, {1, 0}, 0));
  CHECK(has_facet(NP2, {0, 1}, 0));
  CHECK(has_facet(NP2, {3, 2}, 6));
}

TEST_CASE("np_contains") {
  NewtonPolyhedron NP = newton_polyhedron(ideal2({{2, 0}, {0, 2}}));
  CHECK(np_contains(NP, Exponent{1, 1}));  // midpoint of (2,0),(0,2)

  NewtonPolyhedron NPb = newton_polyhedron(ideal2({{2, 0}, {1, 1}}));
  CHECK(!np_contains(NPb, Exponent{0, 1}));  // violates x >= 1

  for (const auto& v : NP.vertices) CHECK(np_contains(NP, v));
  CHECK_THROWS_AS(np_contains(NP, Exponent{1, 1, 1}), DimensionError);

  // every generator satisfies every facet inequality
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> ex(0, 4);
  for (int t = 0; t < 20; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 3; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{1, 1};
      gens.push_back(e);
    }
    MonomialIdeal J = ideal2(gens);
    NewtonPolyhedron P2 = newton_polyhedron(J);
    for (const auto& g : J.generators) CHECK(np_contains(P2, g));
  }
}

TEST_CASE("integral closure") {
  CHECK(integral_closure(ideal2({{2, 0}, {0, 2}})) == ideal2({{2, 0}, {1, 1}, {0, 2}}));
  CHECK(integral_closure(ideal2({{2, 0}, {1, 1}})) == ideal2({{2, 0}, {1, 1}}));
  CHECK(integral_closure(ideal2({{1, 0}})) == ideal2({{1, 0}}));

  // idempotent; polyhedron unchanged
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ex(0, 4);
  for (int t = 0; t < 25; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 3; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{1, 1};
      gens.push_back(e);
    }
    MonomialIdeal J = ideal2(gens);
    MonomialIdeal C = integral_closure(J);
    CHECK(integral_closure(C) == C);
    NewtonPolyhedron a = newton_polyhedron(J), b = newton_polyhedron(C);
    REQUIRE(a.facets.size() == b.facets.size());
    for (const auto& f : a.facets) CHECK(has_facet(b, f.normal, f.offset));
  }
}

TEST_CASE("membership matches brute-force power search") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> ex(0, 3), pt(0, 5);
  for (int t = 0; t < 40; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 2; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{1, 2};
      gens.push_back(e);
    }
    MonomialIdeal J = ideal2(gens);
    NewtonPolyhedron NP = newton_polyhedron(J);
    for (int s = 0; s < 8; ++s) {
      Exponent a{pt(rng), pt(rng)};
      bool brute = brute_force_contains(J, a);
      // small generator degrees: k <= 6 realizes every hull membership
      CHECK(np_contains(NP, a) == brute);
    }
  }
}

TEST_CASE("covolume") {
  auto cv = covolume(newton_polyhedron(ideal2({{2, 0}, {0, 3}})));
  REQUIRE(cv.has_value());
  CHECK(*cv == Rational(3));

  auto cv2 = covolume(newton_polyhedron(ideal2({{1, 0}, {0, 1}})));
  REQUIRE(cv2.has_value());
  CHECK(*cv2 == rational_of(1, 2));

  CHECK(!covolume(newton_polyhedron(ideal2({{2, 0}, {1, 1}}))).has_value());

  // staircase hull of (3,0),(1,1),(0,3): covolume 3 by shoelace
  auto cv3 = covolume(newton_polyhedron(ideal2({{3, 0}, {1, 1}, {0, 3}})));
  REQUIRE(cv3.has_value());
  CHECK(*cv3 == Rational(3));

  // corner simplices in 3 and 4 variables
  MonomialIdeal m3(3, {Exponent{1, 0, 0}, Exponent{0, 1, 0}, Exponent{0, 0, 1}});
  auto cv4 = covolume(newton_polyhedron(m3));
  REQUIRE(cv4.has_value());
  CHECK(*cv4 == rational_of(1, 6));

  MonomialIdeal m4(4, {Exponent{1, 0, 0, 0}, Exponent{0, 1, 0, 0}, Exponent{0, 0, 1, 0},
                       Exponent{0, 0, 0, 1}});
  auto cv5 = covolume(newton_polyhedron(m4));
  REQUIRE(cv5.has_value());
  CHECK(*cv5 == rational_of(1, 24));

  MonomialIdeal m4b(4, {Exponent{2, 0, 0, 0}, Exponent{0, 2, 0, 0}, Exponent{0, 0, 2, 0},
                        Exponent{0, 0, 0, 2}});
  auto cv6 = covolume(newton_polyhedron(m4b));
  REQUIRE(cv6.has_value());
  CHECK(*cv6 == rational_of(16, 24));
}

TEST_CASE("minimal primes") {
  auto p1 = minimal_primes(ideal2({{2, 0}, {1, 1}}));
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].vanishing == std::vector<int>{0});

  auto p2 = minimal_primes(ideal2({{1, 1}}));
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].vanishing == std::vector<int>{0});
  CHECK(p2[1].vanishing == std::vector<int>{1});

  auto p3 = minimal_primes(ideal2({{2, 0}, {0, 3}}));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].vanishing == std::vector<int>{0, 1});

  CHECK(minimal_primes(ideal2({{0, 0}})).empty());  // unit ideal: Z empty
  CHECK(codim_zero_set(ideal2({{0, 0}})) == 3);

  // covolume finite iff the only minimal prime is the full variable set
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> ex(0, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 2; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{2, 1};
      gens.push_back(e);
    }
    MonomialIdeal J = ideal2(gens);
    auto primes = minimal_primes(J);
    bool primary = primes.size() == 1 && primes[0].codim() == 2;
    CHECK(covolume(newton_polyhedron(J)).has_value() == primary);
  }
}

TEST_CASE("distinguished varieties") {
  // (x^2, xy): V_{x} order 1 and V_{x,y} order 2; the (0,1) facet is excluded
  auto d1 = distinguished_varieties(ideal2({{2, 0}, {1, 1}}));
  REQUIRE(d1.size() == 2);
  CHECK(d1[0].V.vanishing == std::vector<int>{0});
  CHECK(d1[0].order == 1);
  CHECK(d1[1].V.vanishing == std::vector<int>{0, 1});
  CHECK(d1[1].order == 2);

  // (x^2, xy, xz) in 3 vars: V_{x} order 1, V_{x,y,z} order 2
  MonomialIdeal J3(3, {Exponent{2, 0, 0}, Exponent{1, 1, 0}, Exponent{1, 0, 1}});
  auto d2 = distinguished_varieties(J3);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0].V.vanishing == std::vector<int>{0});
  CHECK(d2[0].order == 1);
  CHECK(d2[1].V.vanishing == std::vector<int>{0, 1, 2});
  CHECK(d2[1].order == 2);

  // principal (x)
  auto d3 = distinguished_varieties(ideal2({{1, 0}}));
  REQUIRE(d3.size() == 1);
  CHECK(d3[0].V.vanishing == std::vector<int>{0});
  CHECK(d3[0].order == 1);

  // two facets sharing the support {x,y} merge into one variety
  auto d4 = distinguished_varieties(ideal2({{2, 0}, {1, 1}, {0, 3}}));
  int full = 0;
  for (const auto& d : d4)
    if (d.V.codim() == 2) {
      ++full;
      CHECK(d.normals.size() == 2);
      CHECK(d.order == 2);  // min(val(1,1)=2, val(2,1)=3)
    }
  CHECK(full == 1);
}

TEST_CASE("distinguished varieties at codim(Z) are the minimal primes") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> ex(0, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<Exponent> gens;
    for (int g = 0; g < 3; ++g) {
      Exponent e{ex(rng), ex(rng)};
      if (e.total_degree() == 0) e = Exponent{1, 1};
      gens.push_back(e);
    }
    MonomialIdeal J = ideal2(gens);
    int codim = codim_zero_set(J);
    auto primes = minimal_primes(J);
    auto dist = distinguished_varieties(J);
    std::vector<CoordinateSubspace> dist_at_codim, primes_at_codim;
    for (const auto& d : dist)
      if (d.V.codim() == codim) dist_at_codim.push_back(d.V);
    for (const auto& p : primes)
      if (p.codim() == codim) primes_at_codim.push_back(p);
    std::sort(dist_at_codim.begin(), dist_at_codim.end());
    CHECK(dist_at_codim == primes_at_codim);
  }
}
