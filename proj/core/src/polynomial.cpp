#include "segre/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace segre {

std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string gaussian_to_string(const GaussianRational& c) {
  if (c.is_zero()) return "0";
  std::string out;
  bool has_re = c.re != 0;
  if (has_re) out += rational_to_string(c.re);
  if (c.im != 0) {
    std::string im;
    if (c.im == 1)
      im = "i";
    else if (c.im == -1)
      im = "-i";
    else
      im = rational_to_string(c.im) + "i";
    if (has_re && im[0] != '-') out += "+";
    out += im;
  }
  return out;
}

Polynomial Polynomial::constant(std::vector<std::string> vars, GaussianRational c) {
  Polynomial p(std::move(vars));
  p.add_term(Exponent(std::vector<int>(p.nvars(), 0)), c);
  return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> vars, Exponent e, GaussianRational c) {
  Polynomial p(std::move(vars));
  if ((int)e.e.size() != p.nvars()) throw DimensionError("monomial exponent length mismatch");
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, int index) {
  Polynomial p(std::move(vars));
  std::vector<int> e(p.nvars(), 0);
  e.at(index) = 1;
  p.add_term(Exponent(std::move(e)), GaussianRational(1));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

void Polynomial::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
  Polynomial r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= nvars()) throw DimensionError("derivative index out of range");
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * GaussianRational(e[var]));
  }
  return r;
}

std::optional<long> Polynomial::order_at_zero() const {
  if (terms_.empty()) return std::nullopt;
  // grlex map: the first key has minimal total degree
  return terms_.begin()->first.total_degree();
}

long Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.total_degree();
}

long Polynomial::degree_in(int var) const {
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, (long)e[var]);
  return d;
}

Polynomial Polynomial::coefficient_of(int var, long k) const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponent d = e;
    d[var] = 0;
    r.add_term(d, c);
  }
  return r;
}

bool Polynomial::divisible_by(int var) const {
  if (terms_.empty()) return true;
  for (const auto& [e, c] : terms_)
    if (e[var] == 0) return false;
  return true;
}

Polynomial Polynomial::shift_down(int var, long power) const {
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] < power) throw Error("shift_down: not divisible");
    Exponent d = e;
    d[var] -= (int)power;
    r.terms_.emplace(d, c);
  }
  return r;
}

Polynomial Polynomial::divexact(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw Error("divexact: division by zero polynomial");
  Polynomial rem = p, q(p.vars_);
  const auto& [lde, ldc] = *d.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& [lre, lrc] = *rem.terms_.rbegin();
    if (!lde.divides(lre)) throw Error("divexact: inexact division");
    Exponent qe = lre - lde;
    GaussianRational qc = lrc / ldc;
    q.add_term(qe, qc);
    Polynomial t = d.scaled(qc);
    Polynomial shifted(p.vars_);
    for (const auto& [e, c] : t.terms_) shifted.terms_.emplace(e + qe, c);
    rem = rem - shifted;
  }
  return q;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if ((int)images.size() != nvars()) throw DimensionError("substitute: wrong image count");
  // cache powers of each image
  std::vector<std::vector<Polynomial>> pw(nvars());
  for (int v = 0; v < nvars(); ++v) {
    long md = degree_in(v);
    pw[v].push_back(Polynomial::constant(vars_, GaussianRational(1)));
    for (long k = 1; k <= md; ++k) pw[v].push_back(pw[v].back() * images[v]);
  }
  Polynomial r(vars_);
  for (const auto& [e, c] : terms_) {
    Polynomial t = Polynomial::constant(vars_, c);
    for (int v = 0; v < nvars(); ++v)
      if (e[v] > 0) t = t * pw[v][e[v]];
    r = r + t;
  }
  return r;
}

GaussianRational Polynomial::eval_exact(const std::vector<GaussianRational>& z) const {
  if ((int)z.size() != nvars()) throw DimensionError("eval_exact: dimension mismatch");
  GaussianRational acc(0);
  for (const auto& [e, c] : terms_) {
    GaussianRational t = c;
    for (int v = 0; v < nvars(); ++v)
      for (int k = 0; k < e[v]; ++k) t *= z[v];
    acc += t;
  }
  return acc;
}

std::complex<double> Polynomial::eval(std::span<const std::complex<double>> z) const {
  if ((int)z.size() != nvars()) throw DimensionError("eval: dimension mismatch");
  std::complex<double> acc = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int v = 0; v < nvars(); ++v)
      for (int k = 0; k < e[v]; ++k) t *= z[v];
    acc += t;
  }
  return acc;
}

namespace {

// Coefficient as it appears in front of a monomial, e.g. "3*", "(3/4)*", "i*".
std::string coeff_prefix(const GaussianRational& c) {
  if (c.re == 1 && c.im == 0) return "";
  if (c.re != 0 && c.im != 0) return "(" + gaussian_to_string(c) + ")*";
  if (c.im == 0) {
    std::string s = rational_to_string(c.re);
    if (s.find('/') != std::string::npos) return "(" + s + ")*";
    return s + "*";
  }
  // pure imaginary
  if (c.im == 1) return "i*";
  std::string s = rational_to_string(c.im);
  if (s.find('/') != std::string::npos) return "(" + s + ")i*";
  return s + "i*";
}

std::string monomial_string(const Exponent& e, const std::vector<std::string>& vars) {
  std::string out;
  for (int v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  // descending grlex
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent& e = it->first;
    GaussianRational c = it->second;
    bool neg = c.re < 0 || (c.re == 0 && c.im < 0);
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = monomial_string(e, vars_);
    if (mono.empty()) {
      std::string cs = gaussian_to_string(c);
      bool needs_paren = c.re != 0 && c.im != 0;
      out += needs_paren ? "(" + cs + ")" : cs;
    } else {
      out += coeff_prefix(c) + mono;
    }
  }
  return out;
}

PolyTuple::PolyTuple(std::vector<Polynomial> fs) : entries(std::move(fs)) {
  if (entries.empty()) throw Error("PolyTuple: empty tuple");
  const auto& v = entries.front().vars();
  bool all_zero = true;
  for (const auto& p : entries) {
    if (p.vars() != v) throw DimensionError("PolyTuple: mismatched variable lists");
    if (!p.is_zero()) all_zero = false;
  }
  if (all_zero) throw Error("PolyTuple: all entries zero");
}

std::vector<std::complex<double>> evaluate(const PolyTuple& f,
                                           std::span<const std::complex<double>> z) {
  if ((int)z.size() != f.nvars()) throw DimensionError("evaluate: dimension mismatch");
  // doubles are exact rationals; evaluate exactly, round once at the end
  std::vector<GaussianRational> zq;
  zq.reserve(z.size());
  for (const auto& c : z) zq.emplace_back(Rational(c.real()), Rational(c.imag()));
  std::vector<std::complex<double>> out;
  out.reserve(f.entries.size());
  for (const auto& p : f.entries) out.push_back(p.eval_exact(zq).to_complex());
  return out;
}

Polynomial partial_derivative(const Polynomial& p, int var_index) {
  return p.derivative(var_index);
}

std::optional<long> order_at_zero(const Polynomial& p) { return p.order_at_zero(); }

namespace {

// Fraction-free determinant (Bareiss) over Q(i)[x,y]; exact divisions only.
Polynomial bareiss_det(std::vector<std::vector<Polynomial>> M,
                       const std::vector<std::string>& vars) {
  const int n = (int)M.size();
  if (n == 0) return Polynomial::constant(vars, GaussianRational(1));
  int sign = 1;
  Polynomial prev = Polynomial::constant(vars, GaussianRational(1));
  for (int k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!M[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Polynomial(vars);  // zero column => det 0
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Polynomial num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        M[i][j] = Polynomial::divexact(num, prev);
      }
      M[i][k] = Polynomial(vars);
    }
    prev = M[k][k];
  }
  Polynomial det = M[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

Polynomial resultant_eliminating(const Polynomial& p, const Polynomial& q, int var_index) {
  if (p.nvars() != 2 || q.nvars() != 2)
    throw DimensionError("resultant_eliminating: polynomials must be bivariate");
  if (var_index < 0 || var_index >= 2)
    throw DimensionError("resultant_eliminating: variable index out of range");
  const long dp = p.degree_in(var_index), dq = q.degree_in(var_index);
  if (dp < 1 || dq < 1)
    throw Error("resultant_eliminating: argument constant in the eliminated variable");
  const auto& vars = p.vars();
  const int n = (int)(dp + dq);
  std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial(vars)));
  // dq rows of p coefficients, dp rows of q coefficients (descending powers)
  for (long r = 0; r < dq; ++r)
    for (long k = 0; k <= dp; ++k) M[r][r + k] = p.coefficient_of(var_index, dp - k);
  for (long r = 0; r < dp; ++r)
    for (long k = 0; k <= dq; ++k) M[dq + r][r + k] = q.coefficient_of(var_index, dq - k);
  return bareiss_det(std::move(M), vars);
}

CompiledPoly::CompiledPoly(const Polynomial& p) : nvars_(p.nvars()) {
  max_deg_.assign(nvars_, 0);
  for (const auto& [e, c] : p.terms()) {
    for (int v = 0; v < nvars_; ++v) {
      exps_.push_back(e[v]);
      max_deg_[v] = std::max(max_deg_[v], e[v]);
    }
    coeffs_.push_back(c.to_complex());
  }
}

std::complex<double> CompiledPoly::eval(std::span<const std::complex<double>> /*z*/,
                                        std::span<const std::complex<double>> powers,
                                        int max_deg) const {
  std::complex<double> acc = 0;
  const int n = nvars_;
  const int stride = max_deg + 1;
  for (size_t t = 0; t < coeffs_.size(); ++t) {
    std::complex<double> term = coeffs_[t];
    for (int v = 0; v < n; ++v) term *= powers[v * stride + exps_[t * n + v]];
    acc += term;
  }
  return acc;
}

CompiledTuple::CompiledTuple(const PolyTuple& f) : n_(f.nvars()), m_(f.size()) {
  for (const auto& p : f.entries) {
    f_.emplace_back(p);
    for (int v = 0; v < n_; ++v) df_.emplace_back(p.derivative(v));
    max_deg_ = std::max(max_deg_, (int)std::max(0L, p.total_degree()));
  }
  if (n_ > 4 || max_deg_ > 15)
    throw BudgetError("CompiledTuple: supports up to 4 variables and degree 15");
}

void CompiledTuple::eval_all(std::span<const std::complex<double>> z,
                             std::span<std::complex<double>> values,
                             std::span<std::complex<double>> jac) const {
  const int stride = max_deg_ + 1;
  // per-variable power table z_v^k, k = 0..max_deg_
  std::complex<double> powers[4 * 16];
  for (int v = 0; v < n_; ++v) {
    powers[v * stride] = 1.0;
    for (int k = 1; k <= max_deg_; ++k) powers[v * stride + k] = powers[v * stride + k - 1] * z[v];
  }
  std::span<const std::complex<double>> pw(powers, n_ * stride);
  for (int i = 0; i < m_; ++i) {
    values[i] = f_[i].eval(z, pw, max_deg_);
    for (int v = 0; v < n_; ++v) jac[i * n_ + v] = df_[i * n_ + v].eval(z, pw, max_deg_);
  }
}

}  // namespace segre
