#include "segre/macurrent.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace segre {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sqr(double x) { return x * x; }

}  // namespace

Perturbation Perturbation::full_norm(double c) {
  if (c < 0) throw ConfigError("Perturbation: scale must be >= 0 (psh)");
  Perturbation p;
  p.kind = Kind::FullNorm;
  p.c = c;
  return p;
}

Perturbation Perturbation::affine(double c, std::vector<Cx> coeffs, Cx constant) {
  if (c < 0) throw ConfigError("Perturbation: scale must be >= 0 (psh)");
  Perturbation p;
  p.kind = Kind::AffineForm;
  p.c = c;
  p.affine_coeffs = std::move(coeffs);
  p.affine_const = constant;
  return p;
}

Potential::Potential(PolyTuple f_, double eps, Perturbation h_)
    : f(std::move(f_)), epsilon(eps), h(std::move(h_)) {
  if (!(epsilon > 0)) throw ConfigError("Potential: epsilon must be positive");
  if (h.kind == Perturbation::Kind::AffineForm && (int)h.affine_coeffs.size() != f.nvars())
    throw DimensionError("Potential: affine form dimension mismatch");
}

double HessianSample::hermitian_defect() const {
  double d = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) d = std::max(d, std::abs(at(j, k) - std::conj(at(k, j))));
  return d;
}

double HessianSample::norm() const {
  double m = 0;
  for (const auto& v : H) m = std::max(m, std::abs(v));
  return m;
}

double HessianSample::min_eigenvalue() const {
  // Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]]
  const int N = 2 * n;
  std::vector<double> A(N * N, 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Cx v = 0.5 * (at(j, k) + std::conj(at(k, j)));
      A[j * N + k] = v.real();
      A[(j + n) * N + (k + n)] = v.real();
      A[(j + n) * N + k] = v.imag();
      A[j * N + (k + n)] = -v.imag();
    }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += sqr(A[p * N + q]);
    if (off < 1e-30) break;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) {
        double apq = A[p * N + q];
        if (std::abs(apq) < 1e-300) continue;
        double theta = (A[q * N + q] - A[p * N + p]) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int i = 0; i < N; ++i) {
          double aip = A[i * N + p], aiq = A[i * N + q];
          A[i * N + p] = c * aip - s * aiq;
          A[i * N + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < N; ++i) {
          double api = A[p * N + i], aqi = A[q * N + i];
          A[p * N + i] = c * api - s * aqi;
          A[q * N + i] = s * api + c * aqi;
        }
      }
  }
  double mn = A[0];
  for (int i = 1; i < N; ++i) mn = std::min(mn, A[i * N + i]);
  return mn;
}

PotentialEvaluator::PotentialEvaluator(const Potential& P)
    : P_(P), compiled_(P.f), n_(P.f.nvars()), m_(P.f.size()) {}

double PotentialEvaluator::f_norm(std::span<const Cx> z) const {
  Cx vals[8], jac[32];
  compiled_.eval_all(z, {vals, (size_t)m_}, {jac, (size_t)(m_ * n_)});
  double s = 0;
  for (int i = 0; i < m_; ++i) s += std::norm(vals[i]);
  return std::sqrt(s);
}

double PotentialEvaluator::value(std::span<const Cx> z) const {
  Cx vals[8], jac[32];
  compiled_.eval_all(z, {vals, (size_t)m_}, {jac, (size_t)(m_ * n_)});
  double F = sqr(P_.epsilon);
  for (int i = 0; i < m_; ++i) F += std::norm(vals[i]);
  double u = 0.5 * std::log(F);
  switch (P_.h.kind) {
    case Perturbation::Kind::None:
      break;
    case Perturbation::Kind::FullNorm: {
      double s = 0;
      for (int v = 0; v < n_; ++v) s += std::norm(z[v]);
      u += P_.h.c * 0.5 * std::log1p(s);
      break;
    }
    case Perturbation::Kind::AffineForm: {
      Cx l = P_.h.affine_const;
      for (int v = 0; v < n_; ++v) l += P_.h.affine_coeffs[v] * z[v];
      u += P_.h.c * 0.5 * std::log1p(std::norm(l));
      break;
    }
  }
  return u;
}

void PotentialEvaluator::hessian(std::span<const Cx> z, std::span<Cx> H) const {
  Cx vals[8], jac[32];
  compiled_.eval_all(z, {vals, (size_t)m_}, {jac, (size_t)(m_ * n_)});
  double F = sqr(P_.epsilon);
  for (int i = 0; i < m_; ++i) F += std::norm(vals[i]);
  Cx gradF[4] = {};
  for (int j = 0; j < n_; ++j) {
    Cx g = 0;
    for (int i = 0; i < m_; ++i) g += jac[i * n_ + j] * std::conj(vals[i]);
    gradF[j] = g;
  }
  const double inv2F = 0.5 / F;
  const double inv2F2 = 0.5 / (F * F);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) {
      Cx jj = 0;
      for (int i = 0; i < m_; ++i) jj += jac[i * n_ + j] * std::conj(jac[i * n_ + k]);
      H[j * n_ + k] = jj * inv2F - gradF[j] * std::conj(gradF[k]) * inv2F2;
    }
  switch (P_.h.kind) {
    case Perturbation::Kind::None:
      break;
    case Perturbation::Kind::FullNorm: {
      double s = 0;
      for (int v = 0; v < n_; ++v) s += std::norm(z[v]);
      const double a = P_.h.c * 0.5 / (1.0 + s);
      const double b = P_.h.c * 0.5 / sqr(1.0 + s);
      for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < n_; ++k)
          H[j * n_ + k] -= b * std::conj(z[j]) * z[k];
        H[j * n_ + j] += a;
      }
      break;
    }
    case Perturbation::Kind::AffineForm: {
      Cx l = P_.h.affine_const;
      for (int v = 0; v < n_; ++v) l += P_.h.affine_coeffs[v] * z[v];
      const double b = P_.h.c * 0.5 / sqr(1.0 + std::norm(l));
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          H[j * n_ + k] += b * P_.h.affine_coeffs[j] * std::conj(P_.h.affine_coeffs[k]);
      break;
    }
  }
}

HessianSample PotentialEvaluator::hessian_sample(std::span<const Cx> z) const {
  HessianSample s;
  s.n = n_;
  s.point.assign(z.begin(), z.end());
  s.H.assign(n_ * n_, Cx(0));
  hessian(z, s.H);
  return s;
}

double ma_density_raw(std::span<const Cx> H, int n, int k) {
  if (k < 0 || k > n) throw DimensionError("ma_density: k out of range");
  auto entry = [&](int j, int kk) { return H[j * n + kk]; };
  double sigma = 0;
  if (k == 0) {
    sigma = 1;
  } else if (k == 1) {
    for (int j = 0; j < n; ++j) sigma += entry(j, j).real();
  } else {
    // sum of principal k x k minors (n <= 4: enumerate subsets)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      int idx[4], t = 0;
      for (int j = 0; j < n; ++j)
        if (mask & (1u << j)) idx[t++] = j;
      Cx det;
      if (k == 2) {
        det = entry(idx[0], idx[0]) * entry(idx[1], idx[1]) -
               entry(idx[0], idx[1]) * entry(idx[1], idx[0]);
      } else if (k == 3) {
        auto a = [&](int r, int c) { return entry(idx[r], idx[c]); };
        det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
              a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
              a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
      } else {  // k == 4
        auto a = [&](int r, int c) { return entry(idx[r], idx[c]); };
        Cx d = 0;
        for (int c0 = 0; c0 < 4; ++c0) {
          int cols[3], t2 = 0;
          for (int c = 0; c < 4; ++c)
            if (c != c0) cols[t2++] = c;
          Cx m3 = a(1, cols[0]) * (a(2, cols[1]) * a(3, cols[2]) - a(2, cols[2]) * a(3, cols[1])) -
                  a(1, cols[1]) * (a(2, cols[0]) * a(3, cols[2]) - a(2, cols[2]) * a(3, cols[0])) +
                  a(1, cols[2]) * (a(2, cols[0]) * a(3, cols[1]) - a(2, cols[1]) * a(3, cols[0]));
          d += ((c0 % 2) ? -1.0 : 1.0) * a(0, c0) * m3;
        }
        det = d;
      }
      sigma += det.real();
    }
  }
  double kf = 1, nkf = 1;
  for (int t = 2; t <= k; ++t) kf *= t;
  for (int t = 2; t <= n - k; ++t) nkf *= t;
  return kf * nkf * sigma * std::pow(2.0 / kPi, n);
}

double ma_density(const HessianSample& H, int k) {
  double d = ma_density_raw(H.H, H.n, k);
  return d < 0 ? 0.0 : d;
}

namespace {

// ----- importance sampling ---------------------------------------------

// Per complex coordinate: angle uniform, radius with pdf w(rho)/Z on (0, R],
// w = (rho + tau)^{-q}.  tau = R disables concentration (still admissible).
struct RadialProfile {
  double R = 1.0, tau = 1.0, q = 1.0, Z = 1.0;
  bool uniform_disc = false;  // pdf 2 rho / R^2 instead

  static RadialProfile uniform(double R) {
    RadialProfile p;
    p.R = R;
    p.uniform_disc = true;
    return p;
  }
  static RadialProfile reciprocal(double R, double tau, double q) {
    RadialProfile p;
    p.R = R;
    p.tau = std::min(std::max(tau, 1e-12), R);
    p.q = q;
    p.Z = p.primitive(R) - p.primitive(0);
    return p;
  }
  double primitive(double rho) const {
    if (std::abs(q - 1.0) < 1e-12) return std::log(rho + tau);
    return std::pow(rho + tau, 1.0 - q) / (1.0 - q);
  }
  double radius_pdf(double rho) const {
    if (uniform_disc) return 2.0 * rho / (R * R);
    return std::pow(rho + tau, -q) / Z;
  }
  // planar density at |w| = rho (angle marginalized)
  double plane_density(double rho) const {
    if (uniform_disc) return 1.0 / (kPi * R * R);
    return radius_pdf(rho) / (2.0 * kPi * std::max(rho, 1e-300));
  }
  double sample_radius(double u) const {
    if (uniform_disc) return R * std::sqrt(u);
    double target = primitive(0) + u * Z;
    if (std::abs(q - 1.0) < 1e-12) return std::exp(target) - tau;
    return std::pow((1.0 - q) * target, 1.0 / (1.0 - q)) - tau;
  }
};

struct MixtureSampler {
  int n = 0;
  std::vector<double> weights;
  std::vector<std::vector<RadialProfile>> comps;  // per component, per coordinate

  double density(std::span<const double> rho) const {
    double q = 0;
    for (size_t c = 0; c < comps.size(); ++c) {
      double d = weights[c];
      for (int v = 0; v < n; ++v) d *= comps[c][v].plane_density(rho[v]);
      q += d;
    }
    return q;
  }
};

// scale exponents per coordinate from the monomial support of f
std::vector<std::vector<int>> support_exponents(const PolyTuple& f) {
  std::vector<std::vector<int>> out;
  for (const auto& p : f.entries)
    for (const auto& [e, c] : p.terms()) {
      if (e.total_degree() == 0) continue;
      out.push_back(e.e);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MixtureSampler build_sampler(const Potential& P, std::span<const double> polyradii,
                             const QuadratureConfig& cfg) {
  const int n = P.f.nvars();
  const double q = cfg.importance_exponent;
  MixtureSampler S;
  S.n = n;

  std::vector<std::vector<RadialProfile>> comps;
  {
    std::vector<RadialProfile> uni;
    for (int v = 0; v < n; ++v) uni.push_back(RadialProfile::uniform(polyradii[v]));
    comps.push_back(std::move(uni));
  }
  auto supp = support_exponents(P.f);
  auto add_scaled = [&](const std::vector<int>& a) {
    std::vector<RadialProfile> comp;
    for (int v = 0; v < n; ++v) {
      if (a[v] >= 1) {
        double tau = std::pow(P.epsilon, 1.0 / a[v]);
        comp.push_back(RadialProfile::reciprocal(polyradii[v], tau, q));
      } else {
        comp.push_back(RadialProfile::uniform(polyradii[v]));
      }
    }
    comps.push_back(std::move(comp));
  };
  if (!supp.empty()) {
    for (const auto& a : supp) add_scaled(a);
    // deepest stratum: componentwise minimum positive exponent
    std::vector<int> core(n, 0);
    for (int v = 0; v < n; ++v) {
      int d = 0;
      for (const auto& a : supp)
        if (a[v] >= 1) d = d == 0 ? a[v] : std::min(d, a[v]);
      core[v] = d;
    }
    add_scaled(core);
  }
  // dedupe identical components
  std::vector<std::vector<RadialProfile>> uniq;
  for (const auto& c : comps) {
    bool dup = false;
    for (const auto& u : uniq) {
      bool same = true;
      for (int v = 0; v < n && same; ++v)
        same = u[v].uniform_disc == c[v].uniform_disc && std::abs(u[v].tau - c[v].tau) < 1e-15;
      if (same) dup = true;
    }
    if (!dup) uniq.push_back(c);
  }
  S.comps = std::move(uniq);
  const size_t K = S.comps.size();
  S.weights.assign(K, 0.0);
  if (K == 1) {
    S.weights[0] = 1.0;
  } else {
    S.weights[0] = cfg.uniform_weight;
    for (size_t c = 1; c < K; ++c) S.weights[c] = (1.0 - cfg.uniform_weight) / (double)(K - 1);
  }
  return S;
}

struct McAccumulator {
  double sum = 0, comp = 0;  // Kahan
  double sumsq = 0, compsq = 0;
  double near_sum = 0;
  long clipped = 0, near_zero = 0, count = 0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    double y2 = x * x - compsq;
    double t2 = sumsq + y2;
    compsq = (t2 - sumsq) - y2;
    sumsq = t2;
    ++count;
  }
  void merge(const McAccumulator& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    near_sum += o.near_sum;
    clipped += o.clipped;
    near_zero += o.near_zero;
    count += o.count;
  }
};

// The ball indicator is optional: with radius <= 0 the domain is the polydisc.
MassEstimate mc_mass(const Potential& P, int k, std::span<const Cx> center,
                     std::span<const double> polyradii, double ball_radius,
                     const QuadratureConfig& cfg) {
  const int n = P.f.nvars();
  if ((int)center.size() != n) throw DimensionError("mc_mass: center dimension mismatch");
  if (cfg.samples_per_ball < 10000)
    throw ConfigError("mc_mass: samples budget must be >= 10^4");
  PotentialEvaluator eval(P);
  MixtureSampler sampler = build_sampler(P, polyradii, cfg);

  const long N = cfg.samples_per_ball;
  const long B = std::max(1L, cfg.batch_size);
  const long nbatches = (N + B - 1) / B;
  std::vector<McAccumulator> acc(nbatches);

  auto run_batch = [&](long bi) {
    std::mt19937_64 rng(cfg.rng_seed * 0x9E3779B97F4A7C15ull + 0x2545F4914F6CDD1Dull * (bi + 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    McAccumulator& A = acc[bi];
    Cx z[4];
    double rho[4];
    Cx H[16];
    const long lo = bi * B, hi = std::min(N, (bi + 1) * B);
    for (long s = lo; s < hi; ++s) {
      // pick a mixture component
      double uc = unit(rng);
      size_t comp = 0;
      double accw = 0;
      for (size_t c = 0; c < sampler.weights.size(); ++c) {
        accw += sampler.weights[c];
        if (uc <= accw || c + 1 == sampler.weights.size()) {
          comp = c;
          break;
        }
      }
      for (int v = 0; v < n; ++v) {
        double r = sampler.comps[comp][v].sample_radius(unit(rng));
        double th = 2 * kPi * unit(rng);
        rho[v] = r;
        z[v] = center[v] + Cx(r * std::cos(th), r * std::sin(th));
      }
      if (ball_radius > 0) {
        double d2 = 0;
        for (int v = 0; v < n; ++v) d2 += std::norm(z[v] - center[v]);
        if (d2 > ball_radius * ball_radius) {
          A.add(0.0);
          continue;
        }
      }
      double qdens = sampler.density({rho, (size_t)n});
      eval.hessian({z, (size_t)n}, {H, (size_t)(n * n)});
      double dens = ma_density_raw({H, (size_t)(n * n)}, n, k);
      if (dens < 0) {
        ++A.clipped;
        dens = 0;
      }
      double fn = eval.f_norm({z, (size_t)n});
      if (fn < 10.0 * P.epsilon) ++A.near_zero;
      double w = dens / qdens;
      if (cfg.split_exponent > 0 && fn < std::pow(P.epsilon, cfg.split_exponent))
        A.near_sum += w;
      A.add(w);
    }
  };

  int nthreads = cfg.threads > 0 ? cfg.threads : (int)std::thread::hardware_concurrency();
  nthreads = std::max(1, std::min<int>(nthreads, (int)nbatches));
  if (nthreads == 1) {
    for (long bi = 0; bi < nbatches; ++bi) run_batch(bi);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          long bi = next.fetch_add(1);
          if (bi >= nbatches) return;
          run_batch(bi);
        }
      });
    for (auto& th : pool) th.join();
  }
  McAccumulator total;
  for (const auto& a : acc) total.merge(a);  // fixed batch order

  MassEstimate est;
  est.mass = total.sum / (double)N;
  double var = std::max(0.0, total.sumsq / (double)N - sqr(est.mass));
  est.stderr_ = std::sqrt(var / (double)N);
  est.clipped_fraction = (double)total.clipped / (double)N;
  est.near_zero_fraction = (double)total.near_zero / (double)N;
  est.flagged = est.clipped_fraction > 1e-3;
  if (cfg.split_exponent > 0) {
    est.near_mass = total.near_sum / (double)N;
    est.far_mass = est.mass - est.near_mass;
  }
  return est;
}

}  // namespace

MassEstimate ball_mass(const Potential& P, int k, std::span<const Cx> center, double r,
                       const QuadratureConfig& cfg) {
  if (!(r > 0)) throw ConfigError("ball_mass: radius must be positive");
  std::vector<double> polyradii(P.f.nvars(), r);
  return mc_mass(P, k, center, polyradii, r, cfg);
}

MassEstimate window_mass(const Potential& P, int k, std::span<const Cx> center,
                         std::span<const double> polyradii, const QuadratureConfig& cfg) {
  return mc_mass(P, k, center, polyradii, -1.0, cfg);
}

LelongEstimate lelong_estimate(const PolyTuple& f, const Perturbation& h, int k,
                               std::span<const Cx> x, const QuadratureConfig& cfg) {
  const int n = f.nvars();
  if (k < 0 || k > n) throw DimensionError("lelong_estimate: k out of range");
  std::vector<double> radii = cfg.radii;
  std::sort(radii.begin(), radii.end(), std::greater<>());
  if (radii.size() < 3) throw ConfigError("lelong_estimate: need at least 3 radii");

  // epsilon must vanish faster than the deepest coordinate scale of {f=0},
  // or the regularization bump escapes the shrinking balls
  double power = cfg.epsilon_power;
  if (power <= 0) {
    std::vector<int> dmin(n, 0);
    for (const auto& a : support_exponents(f))
      for (int v = 0; v < n; ++v)
        if (a[v] >= 1) dmin[v] = dmin[v] == 0 ? a[v] : std::min(dmin[v], a[v]);
    int dmax = 1;
    for (int v = 0; v < n; ++v) dmax = std::max(dmax, dmin[v]);
    power = dmax + 2.0;
  }

  LelongEstimate L;
  L.k = k;
  for (double r : radii) {
    double eps = cfg.eta * std::pow(r, power);
    Potential P(f, eps, h);
    MassEstimate me = ball_mass(P, k, x, r, cfg);
    double normc = std::pow(2.0, n - k) * std::pow(r, 2.0 * (n - k));
    LelongEstimate::Row row;
    row.r = r;
    row.epsilon = eps;
    row.mass = me.mass;
    row.mass_stderr = me.stderr_;
    row.nu_hat = me.mass / normc;
    row.nu_stderr = me.stderr_ / normc;
    row.mass_near = me.near_mass;
    row.mass_far = me.far_mass;
    L.trace.push_back(row);
    L.flagged = L.flagged || me.flagged;
  }
  // nu_hat may approach the limit from either side; flag only oscillation
  // (a sign change in consecutive differences beyond the noise level)
  {
    int dir = 0;
    for (size_t i = 0; i + 1 < L.trace.size(); ++i) {
      double tol = 2.0 * (L.trace[i].nu_stderr + L.trace[i + 1].nu_stderr);
      double d = L.trace[i + 1].nu_hat - L.trace[i].nu_hat;
      if (std::abs(d) <= tol) continue;
      int s = d > 0 ? 1 : -1;
      if (dir != 0 && s != dir) L.monotone = false;
      dir = s;
    }
  }

  // power-law fit nu_hat = nu + C r^{2 gamma} on the 3 smallest radii
  // (geometric ladder => Aitken extrapolation)
  const size_t T = L.trace.size();
  const auto& r1 = L.trace[T - 1];  // smallest
  const auto& r2 = L.trace[T - 2];
  const auto& r3 = L.trace[T - 3];
  double rho21 = r2.r / r1.r, rho32 = r3.r / r2.r;
  bool geometric = std::abs(rho21 - rho32) < 0.02 * rho21;
  double d1 = r2.nu_hat - r1.nu_hat;
  double d2 = r3.nu_hat - r2.nu_hat;
  double w = r3.nu_hat - 2 * r2.nu_hat + r1.nu_hat;
  bool usable = geometric && L.monotone && std::abs(w) > 1e-12 && d1 * d2 > 0;
  double s = usable ? d2 / d1 : 0.0;
  usable = usable && s > 1.05 && s < 100.0;  // corrections must decay toward r -> 0
  if (usable) {
    double a = r1.nu_hat, b = r2.nu_hat, c = r3.nu_hat;
    double u = b - a;
    L.value = a - u * u / w;
    L.decay_exponent = std::log(s) / std::log(rho21);
    // linear error propagation through the Aitken formula
    double da = 1 + 2 * u / w + sqr(u / w);
    double db = -2 * u / w - 2 * sqr(u / w);
    double dc = sqr(u / w);
    L.stderr_ = std::sqrt(sqr(da * r1.nu_stderr) + sqr(db * r2.nu_stderr) +
                          sqr(dc * r3.nu_stderr));
    L.fit_used = true;
    (void)c;
  } else {
    L.value = r1.nu_hat;
    L.stderr_ = r1.nu_stderr + std::abs(d1);  // widened fallback error bar
    L.fit_used = false;
    L.flagged = L.flagged || !L.monotone;
  }
  if (L.value < -1e-6) L.flagged = true;
  return L;
}

RegularizationContrast regularization_contrast_demo(double window_radius,
                                                    std::span<const double> epsilon_schedule,
                                                    const QuadratureConfig& cfg) {
  if (epsilon_schedule.empty())
    throw ConfigError("regularization_contrast_demo: empty epsilon schedule");
  std::vector<std::string> vars{"z", "w"};
  Polynomial z = Polynomial::variable(vars, 0);
  Polynomial w = Polynomial::variable(vars, 1);
  PolyTuple phi({w, z * w});
  PolyTuple just_w({w});
  Perturbation alpha = Perturbation::affine(1.0, {Cx(1, 0), Cx(0, 0)});

  std::vector<double> eps(epsilon_schedule.begin(), epsilon_schedule.end());
  std::sort(eps.begin(), eps.end(), std::greater<>());
  std::vector<Cx> center(2, Cx(0, 0));
  std::vector<double> polyradii(2, window_radius);

  RegularizationContrast R;
  double gs = 0, ts = 0;
  for (double e : eps) {
    Potential G(phi, e, Perturbation::none());
    Potential Gt(just_w, e, alpha);
    MassEstimate mg = window_mass(G, 2, center, polyradii, cfg);
    MassEstimate mt = window_mass(Gt, 2, center, polyradii, cfg);
    R.schedule.push_back({e, mg.mass, mt.mass});
    R.mass_tuple = mg.mass;
    R.mass_factored = mt.mass;
    gs = mg.stderr_;
    ts = mt.stderr_;
  }
  // Aitken toward eps -> 0 when the schedule allows it
  const size_t T = R.schedule.size();
  if (T >= 3) {
    auto extrapolate = [&](int col) -> std::optional<double> {
      double a = R.schedule[T - 1][col], b = R.schedule[T - 2][col], c = R.schedule[T - 3][col];
      double w2 = c - 2 * b + a;
      if (std::abs(w2) < 1e-12) return std::nullopt;
      double u = b - a;
      if ((b - a) * (c - b) <= 0) return std::nullopt;
      double v = a - u * u / w2;
      if (std::abs(v - a) > 0.2 * std::max(1.0, std::abs(a))) return std::nullopt;
      return v;
    };
    if (auto v = extrapolate(1)) R.mass_tuple = *v;
    if (auto v = extrapolate(2)) R.mass_factored = *v;
  }
  R.mass_tuple_stderr = gs;
  R.mass_factored_stderr = ts;
  R.ratio = R.mass_tuple != 0 ? R.mass_factored / R.mass_tuple : 0.0;
  return R;
}

InvarianceResult perturbation_invariance_check(const PolyTuple& f, const Perturbation& h,
                                               int k, std::span<const Cx> x,
                                               const QuadratureConfig& cfg) {
  LelongEstimate with = lelong_estimate(f, h, k, x, cfg);
  LelongEstimate without = lelong_estimate(f, Perturbation::none(), k, x, cfg);
  InvarianceResult R;
  R.with_h = with.value;
  R.without_h = without.value;
  R.delta = std::abs(with.value - without.value);
  R.combined_stderr = std::sqrt(sqr(with.stderr_) + sqr(without.stderr_));
  R.pass = R.delta < std::max(0.1, 3.0 * R.combined_stderr);
  return R;
}

TubeDecayResult bounded_no_charge_check(const Perturbation& b, int subspace_var, int k,
                                        int nvars, const QuadratureConfig& cfg) {
  if (b.kind == Perturbation::Kind::None && b.c != 0)
    throw ConfigError("bounded_no_charge_check: malformed perturbation");
  std::vector<std::string> vars;
  for (int i = 0; i < nvars; ++i) vars.push_back("z" + std::to_string(i + 1));
  // constant tuple: the potential is the bounded perturbation alone
  PolyTuple one({Polynomial::constant(vars, GaussianRational(1))});
  Potential P(one, 1.0, b);

  TubeDecayResult R;
  const std::vector<double> ts{0.2, 0.1, 0.05, 0.025};
  std::vector<Cx> center(nvars, Cx(0, 0));
  for (double t : ts) {
    std::vector<double> polyradii(nvars, 1.0);
    polyradii[subspace_var] = t;  // tube {|z_i| < t} within the unit ball
    MassEstimate me = mc_mass(P, k, center, polyradii, 1.0, cfg);
    R.tube_masses.push_back({t, me.mass});
  }
  // slope of log mass against log t; tube volume scales like t^2
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  bool all_tiny = true;
  for (auto& [t, m] : R.tube_masses) {
    if (m > 1e-12) all_tiny = false;
  }
  if (all_tiny) {
    R.fitted_slope = 2.0;
    R.pass = true;
    return R;
  }
  for (auto& [t, m] : R.tube_masses) {
    if (m <= 0) continue;
    double lx = std::log(t), ly = std::log(m);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt >= 2) {
    R.fitted_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    R.pass = R.fitted_slope >= 1.8;
  }
  return R;
}

}  // namespace segre
