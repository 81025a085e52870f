#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "segre/json_io.hpp"

namespace {

using namespace segre;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void emit_json(const Json& j, const std::string& json_out) {
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!json_out.empty()) write_text(json_out, text);
}

std::vector<Cx> parse_point(const std::string& text, int n) {
  std::vector<Cx> pt;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    // re[+-]im with an optional trailing i
    size_t pos = 0;
    auto read_num = [&]() {
      size_t used = 0;
      double v = std::stod(tok.substr(pos), &used);
      pos += used;
      return v;
    };
    double re = 0, im = 0;
    try {
      re = read_num();
      if (pos < tok.size() && (tok[pos] == '+' || tok[pos] == '-')) {
        im = read_num();
      }
      if (pos < tok.size() && tok[pos] == 'i') ++pos;
      if (pos != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error("bad --point component '" + tok + "' (expected re+im)");
    }
    pt.push_back(Cx(re, im));
  }
  if ((int)pt.size() != n)
    throw Error("--point has " + std::to_string(pt.size()) + " components, expected " +
                std::to_string(n));
  return pt;
}

int cmd_ideal_info(const std::string& path) {
  IdealSpec spec = load_ideal_file(path);
  MonomialIdeal J = to_monomial_ideal(spec);
  std::cout << "vars:";
  for (const auto& v : spec.vars) std::cout << " " << v;
  std::cout << "\nminimal generators:";
  for (const auto& g : J.generators) {
    std::cout << " ";
    std::cout << Polynomial::monomial(spec.vars, g, GaussianRational(1)).to_string();
  }
  std::cout << "\n";
  if (J.is_unit()) {
    std::cout << "unit ideal: Z is empty; no distinguished varieties\n";
    return 0;
  }
  NewtonPolyhedron NP = newton_polyhedron(J);
  std::cout << "newton polyhedron: " << newton_polyhedron_json(NP).dump() << "\n";
  auto primes = minimal_primes(J);
  std::cout << "minimal primes:";
  for (const auto& S : primes) {
    std::cout << " {";
    for (size_t i = 0; i < S.vanishing.size(); ++i)
      std::cout << (i ? "," : "") << spec.vars[S.vanishing[i]];
    std::cout << "}";
  }
  std::cout << "\ncodim Z: " << codim_zero_set(J) << "\n";
  auto cv = covolume(NP);
  std::cout << "covolume: " << (cv ? rational_to_string(*cv) : std::string("infinite")) << "\n";
  std::cout << "distinguished varieties:";
  for (const auto& d : distinguished_varieties(J)) {
    std::cout << " {";
    for (size_t i = 0; i < d.V.vanishing.size(); ++i)
      std::cout << (i ? "," : "") << spec.vars[d.V.vanishing[i]];
    std::cout << "}(order " << d.order << ")";
  }
  std::cout << "\n";
  return 0;
}

int cmd_segre(const std::string& path, const std::string& json_out) {
  IdealSpec spec = load_ideal_file(path);
  MonomialIdeal J = to_monomial_ideal(spec);
  SegreReport R = siu_report(J);
  emit_json(segre_report_json(R, spec.vars), json_out);
  return 0;
}

int cmd_vogel(const std::string& path, int trials, std::uint64_t seed,
              const std::string& csv_out) {
  IdealSpec spec = load_ideal_file(path);
  MonomialIdeal J = to_monomial_ideal(spec);
  if (J.n != 2) {
    std::cout << "SKIPPED: vogel engine supports bivariate ideals only (n = " << J.n << ")\n";
    return 0;
  }
  VogelStats S = vogel_statistics(J, trials, seed);
  std::ostringstream csv;
  csv << "seed,e0,e1,e2,m0,m1,m2\n";
  for (const auto& [s, o] : S.per_trial) {
    csv << s;
    for (int k = 0; k < 3; ++k) csv << "," << o.e[k];
    for (int k = 0; k < 3; ++k) csv << "," << o.m[k];
    csv << "\n";
  }
  std::cout << csv.str();
  if (!csv_out.empty()) write_text(csv_out, csv.str());

  MultiplicitySequence ms = multiplicity_sequence(J);
  bool agrees = S.generic_value.e[1] == ms.c[1] && S.generic_value.e[2] == ms.c[2];
  std::cout << "generic e: (" << S.generic_value.e[0] << "," << S.generic_value.e[1] << ","
            << S.generic_value.e[2] << ")  m: (" << S.generic_value.m[0] << ","
            << S.generic_value.m[1] << "," << S.generic_value.m[2] << ")\n";
  std::cout << "generic outcome frequency: " << S.generic_count << "/" << S.trials << "\n";
  std::cout << "agreement with segre engine: " << (agrees ? "yes" : "NO") << "\n";
  return agrees ? 0 : 1;
}

int cmd_ma(const std::string& path, int k, const std::string& point,
           const std::string& config, const std::string& json_out,
           const std::string& csv_out) {
  IdealSpec spec = load_ideal_file(path);
  PolyTuple f = to_poly_tuple(spec);
  QuadratureConfig cfg;
  if (!config.empty()) cfg = load_quadrature_config(config, cfg);
  std::vector<Cx> x(f.nvars(), Cx(0, 0));
  if ((int)cfg.center.size() == f.nvars()) x = cfg.center;
  if (!point.empty()) x = parse_point(point, f.nvars());
  LelongEstimate L = lelong_estimate(f, Perturbation::none(), k, x, cfg);
  emit_json(lelong_estimate_json(L), json_out);
  if (!csv_out.empty()) {
    std::ostringstream csv;
    csv << "r,epsilon,mass,stderr,nu_hat\n";
    for (const auto& row : L.trace)
      csv << row.r << "," << row.epsilon << "," << row.mass << "," << row.mass_stderr << ","
          << row.nu_hat << "\n";
    write_text(csv_out, csv.str());
  }
  return L.flagged ? 2 : 0;
}

int cmd_king_check(const std::string& path, const std::string& config, int trials,
                   std::uint64_t seed, const std::string& json_out) {
  IdealSpec spec = load_ideal_file(path);
  KingCheckOptions opts;
  opts.vogel_trials = trials;
  opts.vogel_seed = seed;
  if (!config.empty()) opts.quadrature = load_quadrature_config(config, opts.quadrature);
  KingReport R = run_king_check(spec, opts);
  emit_json(king_report_json(R), json_out);
  if (R.overall == Verdict::FAIL) return 1;
  return R.any_flagged ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segre numbers, Vogel cycles and Monge-Ampere masses of monomial ideals"};
  app.require_subcommand(1);

  std::string path, json_out, csv_out, config, point;
  int trials = 100, k = 0;
  std::uint64_t seed = 1;

  auto* info = app.add_subcommand("ideal-info", "print ideal geometry");
  info->add_option("path", path)->required();

  auto* seg = app.add_subcommand("segre", "Segre numbers and Siu decomposition");
  seg->add_option("path", path)->required();
  seg->add_option("--json-out", json_out);

  auto* vog = app.add_subcommand("vogel", "randomized Vogel trials (n = 2)");
  vog->add_option("path", path)->required();
  vog->add_option("--trials", trials);
  vog->add_option("--seed", seed);
  vog->add_option("--csv-out", csv_out);

  auto* ma = app.add_subcommand("ma", "Lelong number of the regularized potential");
  ma->add_option("path", path)->required();
  ma->add_option("--k", k)->required();
  ma->add_option("--point", point);
  ma->add_option("--config", config);
  ma->add_option("--json-out", json_out);
  ma->add_option("--csv-out", csv_out);

  auto* king = app.add_subcommand("king-check", "cross-engine decomposition check");
  king->add_option("path", path)->required();
  king->add_option("--config", config);
  king->add_option("--trials", trials);
  king->add_option("--seed", seed);
  king->add_option("--json-out", json_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return cmd_ideal_info(path);
    if (seg->parsed()) return cmd_segre(path, json_out);
    if (vog->parsed()) return cmd_vogel(path, trials, seed, csv_out);
    if (ma->parsed()) return cmd_ma(path, k, point, config, json_out, csv_out);
    if (king->parsed()) return cmd_king_check(path, config, trials, seed, json_out);
  } catch (const segre::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const segre::DiscrepancyError& e) {
    std::cerr << "DISCREPANCY: " << e.what() << "\n" << e.detail;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
