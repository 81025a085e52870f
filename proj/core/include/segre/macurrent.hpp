#ifndef SEGRE_MACURRENT_HPP
#define SEGRE_MACURRENT_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "segre/polynomial.hpp"

namespace segre {

// Smooth bounded psh summand h of the potential.
struct Perturbation {
  enum class Kind { None, FullNorm, AffineForm } kind = Kind::None;
  double c = 0.0;                 // scale; must be >= 0 to stay psh
  std::vector<Cx> affine_coeffs;  // l(z) = affine_const + sum a_i z_i
  Cx affine_const = 0.0;

  static Perturbation none() { return {}; }
  // c/2 * log(1 + |z|^2)
  static Perturbation full_norm(double c);
  // c/2 * log(1 + |l(z)|^2)
  static Perturbation affine(double c, std::vector<Cx> coeffs, Cx constant = 0.0);
};

// u_eps = 1/2 log(|f|^2 + eps^2) + h
struct Potential {
  PolyTuple f;
  double epsilon = 0.0;
  Perturbation h;

  Potential(PolyTuple f_, double eps, Perturbation h_ = Perturbation::none());
  int nvars() const { return f.nvars(); }
};

struct HessianSample {
  std::vector<Cx> point;
  // row-major n x n, H[j*n+k] = d^2 u / dz_j dzbar_k; Hermitian
  std::vector<Cx> H;
  int n = 0;

  Cx at(int j, int k) const { return H[j * n + k]; }
  double hermitian_defect() const;
  double min_eigenvalue() const;  // of the Hermitian part
  double norm() const;            // max |entry|
};

struct QuadratureConfig {
  std::vector<Cx> center;
  std::vector<double> radii{0.36, 0.24, 0.16};
  double eta = 0.1;           // epsilon = eta * r^epsilon_power
  double epsilon_power = 0.0;  // 0 = auto: 1 + deepest per-coordinate vanishing order
  long samples_per_ball = 400000;
  std::uint64_t rng_seed = 20240601;
  double importance_exponent = 1.0;  // per-coordinate radial profile (rho+tau)^-q
  double uniform_weight = 0.25;      // mixture weight of the uniform component
  long batch_size = 65536;
  int threads = 0;  // 0 = hardware concurrency
  // exploratory diagnostic: split mass by |f| < delta = eps^split_exponent
  // (0 disables).  Reported only; never part of an acceptance observable.
  double split_exponent = 0.0;
};

struct MassEstimate {
  double mass = 0.0;
  double stderr_ = 0.0;
  double clipped_fraction = 0.0;  // samples with negative density clipped to 0
  double near_zero_fraction = 0.0;  // samples with |f| < 10 eps
  bool flagged = false;             // clipped_fraction above threshold
  // populated only when QuadratureConfig::split_exponent > 0
  double near_mass = 0.0;  // mass carried by samples with |f| < eps^split_exponent
  double far_mass = 0.0;
};

struct LelongEstimate {
  int k = 0;
  double value = 0.0;
  double stderr_ = 0.0;
  struct Row {
    double r = 0.0, epsilon = 0.0, mass = 0.0, mass_stderr = 0.0, nu_hat = 0.0,
           nu_stderr = 0.0;
    double mass_near = 0.0, mass_far = 0.0;  // split diagnostic, when enabled
  };
  std::vector<Row> trace;
  double decay_exponent = 0.0;  // fitted 2*gamma of nu_hat(r) = nu + C r^{2 gamma}
  bool fit_used = false;        // false: fell back to the smallest radius
  bool monotone = true;         // nu_hat nonincreasing toward small r beyond stderr
  bool flagged = false;         // any quadrature or fit diagnostic tripped
};

// Evaluates Hessians of a fixed potential at many points.
class PotentialEvaluator {
 public:
  explicit PotentialEvaluator(const Potential& P);
  int nvars() const { return n_; }
  double value(std::span<const Cx> z) const;  // u_eps(z)
  void hessian(std::span<const Cx> z, std::span<Cx> H) const;
  HessianSample hessian_sample(std::span<const Cx> z) const;
  // |f(z)| (without the eps term), for near-zero diagnostics
  double f_norm(std::span<const Cx> z) const;
  const Potential& potential() const { return P_; }

 private:
  Potential P_;
  CompiledTuple compiled_;
  int n_ = 0, m_ = 0;
};

// density of (dd^c u)^k wedge beta^{n-k} against Lebesgue measure, with
// dd^c = (i/pi) d dbar and beta = dd^c |z|^2:
//   k!(n-k)! sigma_k(H) (2/pi)^n,  sigma_k = sum of principal k x k minors.
// Negative roundoff values are clipped to zero (counted by callers).
double ma_density(const HessianSample& H, int k);
double ma_density_raw(std::span<const Cx> H, int n, int k);  // unclipped sigma-form

MassEstimate ball_mass(const Potential& P, int k, std::span<const Cx> center, double r,
                       const QuadratureConfig& cfg);

// Monte Carlo mass over the polydisc of the given polyradii (the window
// observables of the regularization-contrast demo).
MassEstimate window_mass(const Potential& P, int k, std::span<const Cx> center,
                         std::span<const double> polyradii, const QuadratureConfig& cfg);

LelongEstimate lelong_estimate(const PolyTuple& f, const Perturbation& h, int k,
                               std::span<const Cx> x, const QuadratureConfig& cfg);

struct RegularizationContrast {
  double mass_tuple = 0.0, mass_tuple_stderr = 0.0;      // 1/2 log(|phi|^2 + eps^2)
  double mass_factored = 0.0, mass_factored_stderr = 0.0;  // 1/2 log(|w|^2+eps^2) + alpha
  double ratio = 0.0;
  std::vector<std::array<double, 3>> schedule;  // (epsilon, mass_tuple, mass_factored)
};

// phi = (w, zw) on the window {|z|<=R, |w|<=R}: two smooth psh regularizations
// decreasing to log|phi| whose squared Monge-Ampere limits carry different
// window masses (1/2 vs 1 as eps -> 0; the limits differ by a factor 2).
RegularizationContrast regularization_contrast_demo(double window_radius,
                                                    std::span<const double> epsilon_schedule,
                                                    const QuadratureConfig& cfg);

struct InvarianceResult {
  double delta = 0.0;
  double with_h = 0.0, without_h = 0.0;
  double combined_stderr = 0.0;
  bool pass = false;
};

InvarianceResult perturbation_invariance_check(const PolyTuple& f, const Perturbation& h,
                                               int k, std::span<const Cx> x,
                                               const QuadratureConfig& cfg);

struct TubeDecayResult {
  std::vector<std::pair<double, double>> tube_masses;  // (t, mass)
  double fitted_slope = 0.0;                           // log mass vs log t
  bool pass = false;
};

// A bounded psh potential puts no Monge-Ampere mass on a proper subvariety;
// tube masses around W = {z_i = 0} must decay at tube-volume rate.
TubeDecayResult bounded_no_charge_check(const Perturbation& b, int subspace_var, int k,
                                        int nvars, const QuadratureConfig& cfg);

}  // namespace segre

#endif
