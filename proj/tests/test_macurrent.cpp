#include <doctest.h>

#include <random>

#include "segre/macurrent.hpp"

using namespace segre;

namespace {

PolyTuple tuple(std::initializer_list<const char*> texts, std::vector<std::string> vars) {
  std::vector<Polynomial> ps;
  for (const char* t : texts) ps.push_back(parse_polynomial(t, vars));
  return PolyTuple(std::move(ps));
}

PolyTuple coords(int n) {
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("z" + std::to_string(i + 1));
  std::vector<Polynomial> ps;
  for (int i = 0; i < n; ++i) ps.push_back(Polynomial::variable(vars, i));
  return PolyTuple(std::move(ps));
}

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> ZW{"z", "w"};

// central finite differences of the potential in the 2n real coordinates
Cx fd_hessian_entry(const PotentialEvaluator& eval, std::vector<Cx> z, int j, int k,
                    double step) {
  auto bump = [&](int var, int part, double delta) {
    auto zz = z;
    if (part == 0)
      zz[var] += delta;
    else
      zz[var] += Cx(0, delta);
    return zz;
  };
  auto D = [&](int va, int pa, int vb, int pb) {
    if (va == vb && pa == pb) {
      double upp = eval.value(bump(va, pa, step));
      double u0 = eval.value(z);
      double umm = eval.value(bump(va, pa, -step));
      return (upp - 2 * u0 + umm) / (step * step);
    }
    auto zpp = bump(va, pa, step), zpm = bump(va, pa, step);
    auto zmp = bump(va, pa, -step), zmm = bump(va, pa, -step);
    if (pb == 0) {
      zpp[vb] += step;
      zpm[vb] -= step;
      zmp[vb] += step;
      zmm[vb] -= step;
    } else {
      zpp[vb] += Cx(0, step);
      zpm[vb] -= Cx(0, step);
      zmp[vb] += Cx(0, step);
      zmm[vb] -= Cx(0, step);
    }
    return (eval.value(zpp) - eval.value(zpm) - eval.value(zmp) + eval.value(zmm)) /
           (4 * step * step);
  };
  double re = 0.25 * (D(j, 0, k, 0) + D(j, 1, k, 1));
  double im = 0.25 * (D(j, 0, k, 1) - D(j, 1, k, 0));
  return {re, im};
}

QuadratureConfig quick_cfg(long samples = 60000) {
  QuadratureConfig cfg;
  cfg.samples_per_ball = samples;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST_CASE("hessian closed form at the origin") {
  const int n = 2;
  const double eps = 0.2;
  Potential P(coords(n), eps);
  PotentialEvaluator eval(P);
  std::vector<Cx> zero(n, Cx(0, 0));
  HessianSample H = eval.hessian_sample(zero);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Cx expect = (j == k) ? Cx(1.0 / (2 * eps * eps), 0) : Cx(0, 0);
      CHECK(std::abs(H.at(j, k) - expect) < 1e-12 / (eps * eps));
    }
}

TEST_CASE("constant tuple has zero hessian") {
  std::vector<std::string> vars{"x", "y"};
  PolyTuple one({Polynomial::constant(vars, GaussianRational(1))});
  Potential P(one, 0.5);
  PotentialEvaluator eval(P);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> co(-1, 1);
  for (int t = 0; t < 10; ++t) {
    std::vector<Cx> z{{co(rng), co(rng)}, {co(rng), co(rng)}};
    HessianSample H = eval.hessian_sample(z);
    CHECK(H.norm() < 1e-15);
  }
}

TEST_CASE("hessian agrees with finite differences; hermitian and psd") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> co(-0.8, 0.8);
  std::vector<Potential> corpus;
  corpus.emplace_back(tuple({"x^2", "x*y"}, XY), 0.15);
  corpus.emplace_back(tuple({"x^2", "y^3"}, XY), 0.2);
  corpus.emplace_back(coords(2), 0.25);
  corpus.emplace_back(tuple({"w", "z*w"}, ZW), 0.2, Perturbation::affine(1.0, {Cx(1), Cx(0)}));
  corpus.emplace_back(coords(2), 0.3, Perturbation::full_norm(1.0));

  for (const auto& P : corpus) {
    PotentialEvaluator eval(P);
    for (int t = 0; t < 100; ++t) {
      std::vector<Cx> z{{co(rng), co(rng)}, {co(rng), co(rng)}};
      HessianSample H = eval.hessian_sample(z);
      CHECK(H.hermitian_defect() < 1e-12 * std::max(1.0, H.norm()));
      CHECK(H.min_eigenvalue() >= -1e-10 * std::max(1.0, H.norm()));
      const double step = 1e-4 * (1.0 + std::abs(z[0]) + std::abs(z[1]));
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          Cx fd = fd_hessian_entry(eval, z, j, k, step);
          CHECK(std::abs(fd - H.at(j, k)) <= 1e-5 * std::max(1.0, H.norm()));
        }
    }
  }
}

TEST_CASE("ma density formula") {
  HessianSample H;
  H.n = 2;
  H.H = {Cx(1), Cx(0), Cx(0), Cx(1)};
  const double c = 2.0 / 3.14159265358979323846;
  // sigma_0 = 1, sigma_1 = 2, sigma_2 = 1
  CHECK(ma_density(H, 0) == doctest::Approx(2 * c * c));
  CHECK(ma_density(H, 1) == doctest::Approx(2 * c * c));
  CHECK(ma_density(H, 2) == doctest::Approx(2 * c * c));
  H.H = {Cx(3), Cx(0, 1), Cx(0, -1), Cx(2)};  // det = 6 - 1 = 5
  CHECK(ma_density(H, 2) == doctest::Approx(2 * 5 * c * c));
  CHECK_THROWS_AS(ma_density(H, 3), DimensionError);
}

TEST_CASE("unit total mass of the regularized point potential (n=1 analytic)") {
  // mass over B_R is 1 - eps^2/(R^2+eps^2) exactly; quadrature must match
  std::vector<std::string> vars{"z1"};
  PolyTuple f({Polynomial::variable(vars, 0)});
  const double eps = 0.05, R = 1.0;
  Potential P(f, eps);
  std::vector<Cx> c0{Cx(0, 0)};
  auto est = ball_mass(P, 1, c0, R, quick_cfg(80000));
  const double expect = 1.0 - eps * eps / (R * R + eps * eps);
  CHECK(std::abs(est.mass - expect) < 0.03);
}

TEST_CASE("ball mass calibrations in n = 2") {
  std::vector<Cx> c0{Cx(0, 0), Cx(0, 0)};

  SUBCASE("point bump: k = 2 mass about 1") {
    Potential P(coords(2), 0.01);
    auto est = ball_mass(P, 2, c0, 0.5, quick_cfg(150000));
    CHECK(std::abs(est.mass - 1.0) < 0.05);
  }
  SUBCASE("hyperplane: k = 1 mass / (2 r^2) about 1") {
    std::vector<std::string> vars{"z1", "z2"};
    PolyTuple f({Polynomial::variable(vars, 0)});
    const double r = 0.5;
    Potential P(f, 0.01);
    auto est = ball_mass(P, 1, c0, r, quick_cfg(150000));
    CHECK(std::abs(est.mass / (2 * r * r) - 1.0) < 0.05);
  }
  SUBCASE("other importance profiles stay unbiased (within their noise)") {
    Potential P(coords(2), 0.02);
    auto cfg = quick_cfg(120000);
    for (double q : {2.0, 0.5}) {
      cfg.importance_exponent = q;
      auto est = ball_mass(P, 2, c0, 0.5, cfg);
      CHECK(std::abs(est.mass - 1.0) < std::max(0.05, 5 * est.stderr_));
    }
  }
  SUBCASE("k = 0: exact ball volume times the constant density") {
    Potential P(coords(2), 0.1);
    const double r = 0.7;
    auto est = ball_mass(P, 0, c0, r, quick_cfg(200000));
    const double expect = std::pow(2 * r * r, 2);  // 2^n r^{2n}
    CHECK(std::abs(est.mass - expect) < 0.005 * expect);
  }
}

TEST_CASE("exploratory near/far split diagnostic") {
  // for the hyperplane nearly all k=1 mass sits in the |f| < eps^0.9 tube
  std::vector<std::string> vars{"z1", "z2"};
  PolyTuple f({Polynomial::variable(vars, 0)});
  Potential P(f, 0.002);
  auto cfg = quick_cfg(80000);
  cfg.split_exponent = 0.9;
  std::vector<Cx> c0{Cx(0, 0), Cx(0, 0)};
  auto est = ball_mass(P, 1, c0, 0.4, cfg);
  CHECK(est.near_mass + est.far_mass == doctest::Approx(est.mass));
  CHECK(est.near_mass > 0.7 * est.mass);

  cfg.split_exponent = 0.0;  // disabled by default: fields stay zero
  auto off = ball_mass(P, 1, c0, 0.4, cfg);
  CHECK(off.near_mass == 0.0);
  CHECK(off.far_mass == 0.0);
}

TEST_CASE("mass monotone in radius; deterministic under fixed seed") {
  Potential P(tuple({"x^2", "x*y"}, XY), 0.02);
  std::vector<Cx> c0{Cx(0, 0), Cx(0, 0)};
  auto cfg = quick_cfg(40000);
  auto m1 = ball_mass(P, 1, c0, 0.2, cfg);
  auto m2 = ball_mass(P, 1, c0, 0.3, cfg);
  auto m3 = ball_mass(P, 1, c0, 0.4, cfg);
  CHECK(m2.mass + 3 * (m1.stderr_ + m2.stderr_) >= m1.mass);
  CHECK(m3.mass + 3 * (m2.stderr_ + m3.stderr_) >= m2.mass);

  auto again = ball_mass(P, 1, c0, 0.2, cfg);
  CHECK(again.mass == m1.mass);  // bitwise: fixed batch partition and seeds
  cfg.threads = 1;
  auto serial = ball_mass(P, 1, c0, 0.2, cfg);
  CHECK(serial.mass == m1.mass);
}

TEST_CASE("regularization consistency: nu_hat Cauchy in epsilon at fixed r") {
  PolyTuple f = tuple({"x^2", "x*y"}, XY);
  std::vector<Cx> c0{Cx(0, 0), Cx(0, 0)};
  const double r = 0.3;
  auto cfg = quick_cfg(120000);
  std::vector<double> nu;
  for (double eps : {0.04, 0.02, 0.01, 0.005}) {
    Potential P(f, eps);
    auto est = ball_mass(P, 2, c0, r, cfg);  // same seeds: correlated estimates
    nu.push_back(est.mass);
  }
  double d1 = std::abs(nu[1] - nu[0]);
  double d2 = std::abs(nu[2] - nu[1]);
  double d3 = std::abs(nu[3] - nu[2]);
  CHECK(d2 <= d1 / 1.5 + 1e-3);
  CHECK(d3 <= d2 / 1.5 + 1e-3);
}

TEST_CASE("lelong estimates: calibration targets") {
  auto cfg = quick_cfg(120000);
  std::vector<Cx> c0{Cx(0, 0), Cx(0, 0)};

  LelongEstimate point = lelong_estimate(coords(2), Perturbation::none(), 2, c0, cfg);
  CHECK(std::abs(point.value - 1.0) < 0.05);

  std::vector<std::string> vars{"z1", "z2"};
  PolyTuple hyper({Polynomial::variable(vars, 0)});
  LelongEstimate hy = lelong_estimate(hyper, Perturbation::none(), 1, c0, cfg);
  CHECK(std::abs(hy.value - 1.0) < 0.05);

  LelongEstimate k0 = lelong_estimate(coords(2), Perturbation::none(), 0, c0, cfg);
  CHECK(std::abs(k0.value - 1.0) < 0.01);

  // decomposition identity on (x^2, xy): l = e_k + m_k
  PolyTuple f = tuple({"x^2", "x*y"}, XY);
  LelongEstimate l1 = lelong_estimate(f, Perturbation::none(), 1, c0, cfg);
  CHECK(std::abs(l1.value - 2.0) < 0.3);
  LelongEstimate l2 = lelong_estimate(f, Perturbation::none(), 2, c0, cfg);
  CHECK(std::abs(l2.value - 2.0) < 0.3);
}

TEST_CASE("three coordinate axes: k = 2 Lelong number is 3 + 1") {
  // e_2 = 3 (unit mass per axis) plus the moving line, m_2 = 1
  std::vector<std::string> XYZ{"x", "y", "z"};
  PolyTuple f({parse_polynomial("x*y", XYZ), parse_polynomial("y*z", XYZ),
               parse_polynomial("x*z", XYZ)});
  std::vector<Cx> c0(3, Cx(0, 0));
  LelongEstimate L = lelong_estimate(f, Perturbation::none(), 2, c0, quick_cfg(150000));
  CHECK(std::abs(L.value - 4.0) < 0.3);
}

TEST_CASE("regularization limits disagree by a factor 2 (quick)") {
  auto cfg = quick_cfg(120000);
  std::vector<double> eps{0.2, 0.1, 0.05};
  RegularizationContrast R = regularization_contrast_demo(1.0, eps, cfg);
  CHECK(std::abs(R.mass_tuple - 0.5) < 0.08);
  CHECK(std::abs(R.mass_factored - 1.0) < 0.12);
  CHECK(std::abs(R.ratio - 2.0) < 0.35);
}

TEST_CASE("perturbation invariance") {
  auto cfg = quick_cfg(60000);
  std::vector<Cx> c0{Cx(0, 0), Cx(0, 0)};

  // scaled by c = 0: identical potentials, delta exactly 0
  InvarianceResult r0 = perturbation_invariance_check(coords(2), Perturbation::full_norm(0.0), 2,
                                                      c0, cfg);
  CHECK(r0.delta == 0.0);
  CHECK(r0.pass);

  InvarianceResult r1 = perturbation_invariance_check(tuple({"x^2", "x*y"}, XY),
                                                      Perturbation::full_norm(1.0), 1, c0, cfg);
  CHECK(r1.pass);

  // off the singular set: both Lelong numbers vanish
  std::vector<Cx> off{Cx(0.5, 0), Cx(0, 0)};
  QuadratureConfig cfg_small = cfg;
  cfg_small.radii = {0.2, 0.14, 0.1};
  InvarianceResult r2 = perturbation_invariance_check(
      tuple({"w", "z*w"}, ZW), Perturbation::affine(1.0, {Cx(1), Cx(0)}), 2, off, cfg_small);
  CHECK(std::abs(r2.with_h) < 0.1);
  CHECK(std::abs(r2.without_h) < 0.1);
  CHECK(r2.pass);
}

TEST_CASE("bounded potentials put no mass on subvarieties") {
  auto cfg = quick_cfg(50000);
  TubeDecayResult r1 = bounded_no_charge_check(Perturbation::full_norm(1.0), 0, 2, 2, cfg);
  CHECK(r1.pass);
  TubeDecayResult r0 = bounded_no_charge_check(Perturbation::full_norm(1.0), 0, 0, 2, cfg);
  CHECK(r0.pass);
  CHECK(r0.fitted_slope == doctest::Approx(2.0).epsilon(0.05));
  // constant potential: every tube mass vanishes
  TubeDecayResult rc = bounded_no_charge_check(Perturbation::full_norm(0.0), 0, 2, 2, cfg);
  CHECK(rc.pass);
  for (auto& [t, m] : rc.tube_masses) CHECK(m == 0.0);
}
