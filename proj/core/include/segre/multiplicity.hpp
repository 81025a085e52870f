#ifndef SEGRE_MULTIPLICITY_HPP
#define SEGRE_MULTIPLICITY_HPP

#include <cstdint>
#include <vector>

#include "segre/newton.hpp"

namespace segre {

// Two bigradings of the monomials by (power layer i, degree j):
//   TotalDegree      — j is the plain total degree of mu in J^i \ J^{i+1};
//   AssociatedGraded — j is the m-adic degree of the class of mu in the
//                      doubly graded ring, i.e. |mu| minus the minimal
//                      degree of a J^i-monomial dividing mu.
// They agree at i = 0.  Only the second one sums to a function whose
// degree-n part carries the multiplicity sequence; the first is the
// direct per-degree census.
enum class BigradedMode { TotalDegree, AssociatedGraded };

struct BigradedTable {
  int I_max = 0, J_max = 0;
  BigradedMode mode = BigradedMode::TotalDegree;
  std::vector<std::vector<std::int64_t>> H;  // (I_max+1) x (J_max+1)

  std::int64_t at(int i, int j) const { return H[i][j]; }
};

struct StableWindow {
  int i_lo = 0, i_hi = 0, j_lo = 0, j_hi = 0;
};

struct MultiplicitySequence {
  std::vector<std::int64_t> c;  // c_0..c_n
  StableWindow stable_window;
};

struct FixedPart {
  CoordinateSubspace V;
  std::int64_t beta = 0;
};

// Content of the decomposition 1_Z (dd^c G)^k = sum beta [V] + N_k:
// per k the fixed parts with integer coefficients and the residue Lelong
// number n_k, tied together by e_k = sum beta + n_k.
struct SegreReport {
  int n = 0;
  std::vector<std::int64_t> e;
  int codimZ = 0;  // n+1 when Z is empty
  struct Level {
    int k = 0;
    std::vector<FixedPart> fixed;
    std::int64_t n_k = 0;
  };
  std::vector<Level> decomposition;  // k = 0..n
};

// mu in J^i?  Decided by depth-first search with componentwise pruning.
bool power_membership(const MonomialIdeal& J, const Exponent& mu, int i);

// count of monomials mu of total degree j with mu in J^i \ J^{i+1}
std::int64_t bigraded_dimension(const MonomialIdeal& J, int i, int j);

BigradedTable bigraded_table(const MonomialIdeal& J, int I_max, int J_max,
                             BigradedMode mode);

MultiplicitySequence multiplicity_sequence(const MonomialIdeal& J);

std::int64_t generic_segre_along(const MonomialIdeal& J, const CoordinateSubspace& S);

SegreReport siu_report(const MonomialIdeal& J);

bool closure_invariance_check(const MonomialIdeal& J);

}  // namespace segre

#endif
