#ifndef SEGRE_NEWTON_HPP
#define SEGRE_NEWTON_HPP

#include <optional>
#include <vector>

#include "segre/polynomial.hpp"

namespace segre {

// V_S = { z_i = 0 : i in S }.  Indices sorted ascending.
struct CoordinateSubspace {
  std::vector<int> vanishing;

  int codim() const { return (int)vanishing.size(); }
  bool contains_index(int i) const;
  // V_S subset of V_T  iff  T subset of S
  bool subset_of(const CoordinateSubspace& other) const;
  friend bool operator==(const CoordinateSubspace& a, const CoordinateSubspace& b) {
    return a.vanishing == b.vanishing;
  }
  friend bool operator<(const CoordinateSubspace& a, const CoordinateSubspace& b) {
    if (a.vanishing.size() != b.vanishing.size())
      return a.vanishing.size() < b.vanishing.size();
    return a.vanishing < b.vanishing;
  }
};

// Monomial ideal at the origin, given by its minimal generators.
struct MonomialIdeal {
  int n = 0;
  std::vector<Exponent> generators;

  MonomialIdeal() = default;
  // Normalizes: drops generators divisible by another one, dedupes.
  MonomialIdeal(int ambient_dim, std::vector<Exponent> gens);

  bool is_unit() const;    // contains 1
  bool is_proper() const { return !is_unit(); }
  long max_generator_degree() const;
  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b);
};

struct Facet {
  std::vector<long> normal;  // primitive, >= 0 componentwise, at least one > 0
  long offset = 0;           // <normal, a> >= offset for every a in NP
};

struct NewtonPolyhedron {
  int n = 0;
  std::vector<Exponent> generators;
  std::vector<Exponent> vertices;
  std::vector<Facet> facets;
};

struct DistinguishedVariety {
  CoordinateSubspace V;
  long order = 0;  // min ideal-value over normals with this support
  // every facet normal with this support, with its ideal value (diagnostics)
  std::vector<std::pair<std::vector<long>, long>> normals;
};

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& J);

bool np_contains(const NewtonPolyhedron& NP, const Exponent& a);

MonomialIdeal integral_closure(const MonomialIdeal& J);

// n-volume of (positive orthant \ NP); empty optional = +infinity.
std::optional<Rational> covolume(const NewtonPolyhedron& NP);

// Minimal transversals of the generator supports; empty list = empty zero set.
std::vector<CoordinateSubspace> minimal_primes(const MonomialIdeal& J);

int codim_zero_set(const MonomialIdeal& J);  // n+1 when Z is empty

std::vector<DistinguishedVariety> distinguished_varieties(const MonomialIdeal& J);

}  // namespace segre

#endif
