#ifndef SEGRE_KINGCHECK_HPP
#define SEGRE_KINGCHECK_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "segre/macurrent.hpp"
#include "segre/multiplicity.hpp"
#include "segre/vogel.hpp"

namespace segre {

// Parsed ideal file: `vars: x y` plus repeatable `gen: <polynomial>` lines.
struct IdealSpec {
  std::vector<std::string> vars;
  std::vector<std::string> generator_texts;
  std::vector<std::pair<std::string, std::string>> metadata;
};

IdealSpec parse_ideal_spec(std::istream& in);
IdealSpec load_ideal_file(const std::string& path);

// Throws Error with a clear message on non-monomial generators.
MonomialIdeal to_monomial_ideal(const IdealSpec& spec);
PolyTuple to_poly_tuple(const IdealSpec& spec);

// key=value lines: radii, eta, samples, seed, importance_exponent,
// uniform_weight, batch, threads
QuadratureConfig parse_quadrature_config(std::istream& in, QuadratureConfig base = {});
QuadratureConfig load_quadrature_config(const std::string& path, QuadratureConfig base = {});

enum class Verdict { PASS, FAIL, SKIPPED };
std::string to_string(Verdict v);

struct LelongCheck {
  int k = 0;
  std::optional<double> target;  // e_k + m_k when symbolically available
  std::string target_source;     // "vogel", "symbolic", or "" when absent
  LelongEstimate estimate;
  Verdict verdict = Verdict::SKIPPED;
  std::string reason;
};

struct KingReport {
  IdealSpec ideal;
  SegreReport segre;
  std::optional<VogelStats> vogel;  // n = 2 only
  bool vogel_agrees = false;        // generic (e1,e2) equals the symbolic values
  std::vector<LelongCheck> lelong_checks;
  Verdict overall = Verdict::PASS;
  bool any_flagged = false;
};

struct KingCheckOptions {
  int vogel_trials = 100;
  std::uint64_t vogel_seed = 1;
  QuadratureConfig quadrature;
};

KingReport run_king_check(const IdealSpec& spec, const KingCheckOptions& opts);

}  // namespace segre

#endif
