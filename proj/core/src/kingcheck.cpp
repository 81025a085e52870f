#include "segre/kingcheck.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace segre {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

IdealSpec parse_ideal_spec(std::istream& in) {
  IdealSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw Error("ideal file line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = strip(line.substr(0, colon));
    std::string value = strip(line.substr(colon + 1));
    if (key == "vars") {
      std::istringstream vs(value);
      std::string name;
      while (vs >> name) spec.vars.push_back(name);
      if (spec.vars.empty())
        throw Error("ideal file line " + std::to_string(lineno) + ": empty vars list");
    } else if (key == "gen") {
      if (spec.vars.empty())
        throw Error("ideal file line " + std::to_string(lineno) + ": gen before vars");
      if (value.empty())
        throw Error("ideal file line " + std::to_string(lineno) + ": empty generator");
      spec.generator_texts.push_back(value);
    } else if (key == "meta") {
      spec.metadata.push_back({"meta", value});
    } else {
      throw Error("ideal file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (spec.vars.empty()) throw Error("ideal file: missing vars line");
  if (spec.generator_texts.empty()) throw Error("ideal file: no generators");
  return spec;
}

IdealSpec load_ideal_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ideal file: " + path);
  return parse_ideal_spec(in);
}

MonomialIdeal to_monomial_ideal(const IdealSpec& spec) {
  std::vector<Exponent> gens;
  for (const auto& text : spec.generator_texts) {
    Polynomial p = parse_polynomial(text, spec.vars);
    if (p.is_zero()) throw Error("generator '" + text + "' is zero");
    if (!p.is_monomial())
      throw Error("generator '" + text +
                  "' is not a monomial; symbolic commands need monomial ideals");
    gens.push_back(p.terms().begin()->first);
  }
  return MonomialIdeal((int)spec.vars.size(), std::move(gens));
}

PolyTuple to_poly_tuple(const IdealSpec& spec) {
  std::vector<Polynomial> ps;
  for (const auto& text : spec.generator_texts) ps.push_back(parse_polynomial(text, spec.vars));
  return PolyTuple(std::move(ps));
}

QuadratureConfig parse_quadrature_config(std::istream& in, QuadratureConfig base) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "radii") {
        std::vector<double> radii;
        std::istringstream rs(value);
        std::string tok;
        while (std::getline(rs, tok, ',')) radii.push_back(std::stod(strip(tok)));
        if (radii.empty()) throw ConfigError("empty radii list");
        base.radii = radii;
      } else if (key == "eta") {
        base.eta = std::stod(value);
      } else if (key == "epsilon_power") {
        base.epsilon_power = std::stod(value);
      } else if (key == "split_exponent") {
        base.split_exponent = std::stod(value);
      } else if (key == "samples") {
        base.samples_per_ball = std::stol(value);
      } else if (key == "seed") {
        base.rng_seed = std::stoull(value);
      } else if (key == "importance_exponent") {
        base.importance_exponent = std::stod(value);
      } else if (key == "uniform_weight") {
        base.uniform_weight = std::stod(value);
      } else if (key == "batch") {
        base.batch_size = std::stol(value);
      } else if (key == "threads") {
        base.threads = std::stoi(value);
      } else {
        throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key +
                          "'");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError("config line " + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  if (base.eta <= 0 || base.uniform_weight <= 0 || base.uniform_weight > 1)
    throw ConfigError("config: eta and uniform_weight must be positive (weight <= 1)");
  for (double r : base.radii)
    if (r <= 0) throw ConfigError("config: radii must be positive");
  return base;
}

QuadratureConfig load_quadrature_config(const std::string& path, QuadratureConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_quadrature_config(in, base);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PASS:
      return "PASS";
    case Verdict::FAIL:
      return "FAIL";
    default:
      return "SKIPPED";
  }
}

KingReport run_king_check(const IdealSpec& spec, const KingCheckOptions& opts) {
  KingReport R;
  R.ideal = spec;
  MonomialIdeal J = to_monomial_ideal(spec);
  const int n = J.n;
  R.segre = siu_report(J);

  // polar multiplicities: full vector from the Vogel engine when n = 2;
  // otherwise the degenerate ends m_0 = 1, m_1 = minimal generator degree
  // minus the fixed divisor order, m_n = 0 (monomial ideals)
  std::vector<std::optional<std::int64_t>> m(n + 1);
  std::vector<std::string> m_source(n + 1, "");
  if (J.is_unit()) {
    for (int k = 0; k <= n; ++k) {
      m[k] = (k == 0) ? 1 : 0;
      m_source[k] = "symbolic";
    }
  } else if (n == 2) {
    R.vogel = vogel_statistics(J, opts.vogel_trials, opts.vogel_seed);
    const auto& g = R.vogel->generic_value;
    for (int k = 0; k <= 2; ++k) {
      m[k] = g.m[k];
      m_source[k] = "vogel";
    }
    R.vogel_agrees = g.e[1] == R.segre.e[1] && g.e[2] == R.segre.e[2];
  } else {
    m[0] = 1;
    m_source[0] = "symbolic";
    long dmin = J.generators.front().total_degree();
    for (const auto& gg : J.generators) dmin = std::min(dmin, gg.total_degree());
    Exponent gcd = J.generators.front();
    for (const auto& gg : J.generators)
      for (int i = 0; i < n; ++i) gcd[i] = std::min(gcd[i], gg[i]);
    m[1] = dmin - gcd.total_degree();
    m_source[1] = "symbolic";
    m[n] = 0;
    m_source[n] = "symbolic";
  }

  PolyTuple f = to_poly_tuple(spec);
  std::vector<Cx> origin(n, Cx(0, 0));
  bool any_fail = false;
  for (int k = 0; k <= n; ++k) {
    LelongCheck chk;
    chk.k = k;
    chk.estimate = lelong_estimate(f, Perturbation::none(), k, origin, opts.quadrature);
    R.any_flagged = R.any_flagged || chk.estimate.flagged;
    if (m[k].has_value()) {
      chk.target = (double)(R.segre.e[k] + *m[k]);
      chk.target_source = m_source[k];
      double tol = std::max(0.15 * std::max(std::abs(*chk.target), 1.0),
                            3.0 * chk.estimate.stderr_);
      if (std::abs(chk.estimate.value - *chk.target) <= tol) {
        chk.verdict = Verdict::PASS;
      } else {
        chk.verdict = Verdict::FAIL;
        std::ostringstream os;
        os << "estimate " << chk.estimate.value << " vs target " << *chk.target
           << " (tolerance " << tol << ")";
        chk.reason = os.str();
        any_fail = true;
      }
    } else {
      chk.verdict = Verdict::SKIPPED;
      chk.reason = "no symbolic m_" + std::to_string(k) + " for n = " + std::to_string(n) +
                   "; numeric-only diagnostic";
    }
    R.lelong_checks.push_back(std::move(chk));
  }
  if (R.vogel && !R.vogel_agrees) any_fail = true;
  R.overall = any_fail ? Verdict::FAIL : Verdict::PASS;
  return R;
}

}  // namespace segre
