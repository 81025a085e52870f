#include "segre/vogel.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace segre {

namespace {

std::vector<std::string> xy_vars(const MonomialIdeal& J) {
  (void)J;
  return {"x", "y"};
}

Polynomial combination(const MonomialIdeal& J, const std::vector<std::string>& vars,
                       const std::vector<long>& coeffs) {
  Polynomial h(vars);
  for (size_t i = 0; i < J.generators.size(); ++i)
    h.add_term(J.generators[i], GaussianRational(coeffs[i]));
  return h;
}

bool axis_in_Z(int var, const std::vector<CoordinateSubspace>& Z) {
  // {x_var = 0} lies in Z iff {var} is one of the minimal primes
  for (const auto& S : Z)
    if (S.vanishing.size() == 1 && S.vanishing[0] == var) return true;
  return false;
}

// order of h restricted to the axis {x_var = 0}; -1 if identically zero
long order_on_axis(const Polynomial& h, int var) {
  long best = -1;
  for (const auto& [e, c] : h.terms()) {
    if (e[var] != 0) continue;
    long d = e.total_degree();
    if (best < 0 || d < best) best = d;
  }
  return best;
}

// local intersection number at 0 of the curves g, h via sheared resultants;
// requires a proper intersection at the origin
std::int64_t local_intersection_at_origin(const Polynomial& g, const Polynomial& h,
                                          std::uint64_t seed) {
  const auto& vars = g.vars();
  std::vector<GaussianRational> at0(2, GaussianRational(0));
  if (!g.eval_exact(at0).is_zero()) return 0;
  if (!h.eval_exact(at0).is_zero())
    return 0;  // h is a unit at 0; no contribution at the origin

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(1, 6);
  auto sheared_order = [&](long a, long b) -> std::optional<std::int64_t> {
    // (x,y) -> (x + a y, y + b x); unimodular-enough when a*b != 1
    Polynomial X = Polynomial::variable(vars, 0) + Polynomial::variable(vars, 1).scaled(
                       GaussianRational(a));
    Polynomial Y = Polynomial::variable(vars, 1) + Polynomial::variable(vars, 0).scaled(
                       GaussianRational(b));
    Polynomial gs = g.substitute({X, Y});
    Polynomial hs = h.substitute({X, Y});
    // require the y-leading coefficients to be constants (degree reached)
    if (gs.degree_in(1) != gs.total_degree() || hs.degree_in(1) != hs.total_degree())
      return std::nullopt;
    if (gs.degree_in(1) < 1 || hs.degree_in(1) < 1) return std::nullopt;
    Polynomial res = resultant_eliminating(gs, hs, 1);
    if (res.is_zero()) throw VogelError("improper intersection: resultant vanishes identically");
    return *res.order_at_zero();
  };

  for (int round = 0; round < 6; ++round) {
    std::vector<std::int64_t> vals;
    int attempts = 0;
    while ((int)vals.size() < 3 && attempts < 40) {
      ++attempts;
      long a = pick(rng), b = pick(rng);
      if (a * b == 1) continue;
      if (auto v = sheared_order(a, b)) vals.push_back(*v);
    }
    if ((int)vals.size() < 3)
      throw VogelError("local_intersection: could not find admissible shears");
    if (vals[0] == vals[1] && vals[1] == vals[2]) return vals[0];
    // disagreement: re-shear, never accept silently
  }
  throw VogelError("local_intersection: shear votes kept disagreeing");
}

}  // namespace

std::int64_t PlaneCycle::mult_at_origin() const {
  std::int64_t m = axis_x + axis_y + origin;
  for (const auto& [g, k] : curves) {
    auto ord = g.order_at_zero();
    m += k * (ord ? *ord : 0);
  }
  return m;
}

PlaneCycle operator+(const PlaneCycle& a, const PlaneCycle& b) {
  PlaneCycle r = a;
  r.axis_x += b.axis_x;
  r.axis_y += b.axis_y;
  r.origin += b.origin;
  for (const auto& c : b.curves) r.curves.push_back(c);
  return r;
}

bool operator==(const PlaneCycle& a, const PlaneCycle& b) {
  return a.axis_x == b.axis_x && a.axis_y == b.axis_y && a.origin == b.origin &&
         a.curves == b.curves;
}

PlaneCycle divisor_cycle(const Polynomial& h) {
  PlaneCycle C;
  if (h.is_constant()) return C;  // unit: empty divisor
  Polynomial g = h;
  while (g.divisible_by(0)) {
    g = g.shift_down(0, 1);
    C.axis_x += 1;
  }
  while (g.divisible_by(1)) {
    g = g.shift_down(1, 1);
    C.axis_y += 1;
  }
  if (!g.is_constant()) C.curves.push_back({g, 1});
  return C;
}

std::pair<PlaneCycle, PlaneCycle> split_by_Z(const PlaneCycle& C,
                                             const std::vector<CoordinateSubspace>& Z) {
  PlaneCycle in, off;
  const bool x_in = axis_in_Z(0, Z);
  const bool y_in = axis_in_Z(1, Z);
  const bool origin_in = !Z.empty();
  (x_in ? in : off).axis_x = C.axis_x;
  (y_in ? in : off).axis_y = C.axis_y;
  (origin_in ? in : off).origin = C.origin;
  // a curve (no axis factor) is never contained in a union of coordinate subspaces
  off.curves = C.curves;
  return {in, off};
}

PlaneCycle intersect_with_divisor(const PlaneCycle& C_off, const Polynomial& h,
                                  std::uint64_t shear_seed) {
  PlaneCycle out;
  if (C_off.axis_x > 0) {
    long ord = order_on_axis(h, 0);
    if (ord < 0) throw VogelError("intersect: divisor contains the axis {x=0}");
    out.origin += C_off.axis_x * ord;
  }
  if (C_off.axis_y > 0) {
    long ord = order_on_axis(h, 1);
    if (ord < 0) throw VogelError("intersect: divisor contains the axis {y=0}");
    out.origin += C_off.axis_y * ord;
  }
  std::uint64_t salt = 0;
  for (const auto& [g, mult] : C_off.curves) {
    out.origin += mult * local_intersection_at_origin(g, h, shear_seed ^ (0x9e3779b9u + salt));
    ++salt;
  }
  return out;
}

VogelSequence draw_vogel_sequence(const MonomialIdeal& J, std::uint64_t seed, int coeff_range) {
  if (J.n != 2) throw DimensionError("draw_vogel_sequence: bivariate ideals only");
  if (coeff_range < 1) throw Error("draw_vogel_sequence: coeff_range must be >= 1");
  const auto vars = xy_vars(J);
  VogelSequence V;
  V.seed = seed;
  V.coeff_range = coeff_range;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(1, coeff_range);
  const auto Z = minimal_primes(J);

  const int max_retries = 64;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<long> c1(J.generators.size()), c2(J.generators.size());
    for (auto& c : c1) c = pick(rng);
    for (auto& c : c2) c = pick(rng);
    Polynomial h1 = combination(J, vars, c1), h2 = combination(J, vars, c2);
    if (h1.is_zero() || h2.is_zero()) continue;

    if (J.is_unit()) {
      V.h = {h1, h2};  // divisors are empty; nothing to check
      return V;
    }
    // Vogel condition: div(h1) off Z must meet div(h2) only in points
    PlaneCycle X1 = divisor_cycle(h1);
    auto [X1z, X1off] = split_by_Z(X1, Z);
    bool ok = true;
    if (X1off.axis_x > 0 && order_on_axis(h2, 0) < 0) ok = false;
    if (X1off.axis_y > 0 && order_on_axis(h2, 1) < 0) ok = false;
    for (const auto& [g, mult] : X1off.curves) {
      if (!ok) break;
      // a shared component with positive y-degree shows up in Res_y; a
      // shared pure-x component cannot pass through the origin
      if (g.degree_in(1) >= 1 && h2.degree_in(1) >= 1) {
        if (resultant_eliminating(g, h2, 1).is_zero()) ok = false;
      }
      if (ok && g.degree_in(0) >= 1 && h2.degree_in(0) >= 1) {
        if (resultant_eliminating(g, h2, 0).is_zero()) ok = false;
      }
    }
    if (!ok) continue;
    V.h = {h1, h2};
    return V;
  }
  std::ostringstream os;
  os << "draw_vogel_sequence: retries exhausted (seed " << seed << ", coeff_range "
     << coeff_range << ")";
  throw VogelError(os.str());
}

VogelOutcome vogel_at_origin(const MonomialIdeal& J, std::uint64_t seed, int coeff_range) {
  if (J.n != 2) throw DimensionError("vogel_at_origin: bivariate ideals only");
  VogelOutcome out;
  const auto Z = minimal_primes(J);
  VogelSequence V = draw_vogel_sequence(J, seed, coeff_range);

  // X0 = plane: never inside Z for a nonzero ideal
  out.e[0] = 0;
  out.m[0] = 1;
  if (J.is_unit()) return out;  // div(h) empty; recursion terminates

  // X1 = div(h1)
  PlaneCycle X1 = divisor_cycle(V.h[0]);
  auto [X1z, X1off] = split_by_Z(X1, Z);
  if (!(X1z + X1off == X1)) throw DiscrepancyError("vogel: cycle conservation failed at k=1");
  out.e[1] = X1z.mult_at_origin();
  out.m[1] = X1off.mult_at_origin();

  // X2 = H2 . X1^{X \ Z}: a point cycle; only the origin coefficient is kept
  PlaneCycle X2 = intersect_with_divisor(X1off, V.h[1], seed ^ 0xabcddcba12344321ull);
  auto [X2z, X2off] = split_by_Z(X2, Z);
  if (!(X2z + X2off == X2)) throw DiscrepancyError("vogel: cycle conservation failed at k=2");
  out.e[2] = X2z.mult_at_origin();
  out.m[2] = X2off.mult_at_origin();
  return out;
}

VogelStats vogel_statistics(const MonomialIdeal& J, int trials, std::uint64_t base_seed,
                            int coeff_range) {
  if (trials < 1) throw Error("vogel_statistics: trials must be >= 1");
  VogelStats S;
  S.trials = trials;
  bool first = true;
  for (int t = 0; t < trials; ++t) {
    VogelOutcome o = vogel_at_origin(J, base_seed + t, coeff_range);
    S.frequency[o] += 1;
    S.per_trial.push_back({base_seed + t, o});
    if (first) {
      S.generic_value = o;
      first = false;
    } else {
      for (int k = 0; k < 3; ++k) {
        S.generic_value.e[k] = std::min(S.generic_value.e[k], o.e[k]);
        S.generic_value.m[k] = std::min(S.generic_value.m[k], o.m[k]);
      }
    }
  }
  auto it = S.frequency.find(S.generic_value);
  S.generic_count = it == S.frequency.end() ? 0 : it->second;
  return S;
}

}  // namespace segre
