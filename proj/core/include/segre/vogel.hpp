#ifndef SEGRE_VOGEL_HPP
#define SEGRE_VOGEL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "segre/multiplicity.hpp"
#include "segre/newton.hpp"

namespace segre {

// Two generic ideal elements h_l = sum_i c_{l,i} g_i cutting properly off Z.
struct VogelSequence {
  std::vector<Polynomial> h;  // 2 entries; may be constants for the unit ideal
  std::uint64_t seed = 0;
  int coeff_range = 64;
};

// Integer cycle supported on coordinate axes, the origin, and plane curves.
// Curve polynomials carry no x- or y-factor.  Points away from the origin
// are deliberately dropped: every reported multiplicity is taken at 0.
struct PlaneCycle {
  std::int64_t axis_x = 0;  // multiplicity of {x = 0}
  std::int64_t axis_y = 0;  // multiplicity of {y = 0}
  std::int64_t origin = 0;  // multiplicity of [0]
  std::vector<std::pair<Polynomial, std::int64_t>> curves;

  bool is_zero() const { return axis_x == 0 && axis_y == 0 && origin == 0 && curves.empty(); }
  std::int64_t mult_at_origin() const;
  friend PlaneCycle operator+(const PlaneCycle& a, const PlaneCycle& b);
  friend bool operator==(const PlaneCycle& a, const PlaneCycle& b);
};

struct VogelOutcome {
  std::array<std::int64_t, 3> e{0, 0, 0};
  std::array<std::int64_t, 3> m{0, 0, 0};
  friend bool operator==(const VogelOutcome&, const VogelOutcome&) = default;
  friend bool operator<(const VogelOutcome& a, const VogelOutcome& b) {
    return std::tie(a.e, a.m) < std::tie(b.e, b.m);
  }
};

struct VogelStats {
  std::map<VogelOutcome, int> frequency;
  VogelOutcome generic_value;  // componentwise minimum over trials
  int trials = 0;
  int generic_count = 0;  // trials realizing the componentwise minimum jointly
  std::vector<std::pair<std::uint64_t, VogelOutcome>> per_trial;
};

VogelSequence draw_vogel_sequence(const MonomialIdeal& J, std::uint64_t seed,
                                  int coeff_range = 64);

// Split into the part supported inside Z and the rest; C = C_Z + C_off.
std::pair<PlaneCycle, PlaneCycle> split_by_Z(const PlaneCycle& C,
                                             const std::vector<CoordinateSubspace>& Z);

// H . C_off for the divisor H = div(h).  For the full plane pass the cycle
// returned by full_plane(); curve components contribute their local
// intersection number at the origin times [0].
PlaneCycle intersect_with_divisor(const PlaneCycle& C_off, const Polynomial& h,
                                  std::uint64_t shear_seed);

// div(h) as a PlaneCycle (axes split off by exact division).
PlaneCycle divisor_cycle(const Polynomial& h);

VogelOutcome vogel_at_origin(const MonomialIdeal& J, std::uint64_t seed,
                             int coeff_range = 64);

VogelStats vogel_statistics(const MonomialIdeal& J, int trials, std::uint64_t base_seed,
                            int coeff_range = 64);

}  // namespace segre

#endif
