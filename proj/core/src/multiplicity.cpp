#include "segre/multiplicity.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace segre {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Dense enumeration of the simplex |mu| <= L with per-entry DP state.
struct MonomialBox {
  int n;
  long L;
  std::vector<long> stride;
  explicit MonomialBox(int n_, long L_) : n(n_), L(L_) {
    stride.assign(n, 1);
    for (int i = 1; i < n; ++i) stride[i] = stride[i - 1] * (L + 1);
  }
  long cells() const { return stride[n - 1] * (L + 1); }
  long index(const Exponent& mu) const {
    long s = 0;
    for (int i = 0; i < n; ++i) s += stride[i] * mu[i];
    return s;
  }
};

}  // namespace

bool power_membership(const MonomialIdeal& J, const Exponent& mu, int i) {
  if (mu.size() != J.n) throw DimensionError("power_membership: dimension mismatch");
  if (i < 0) throw Error("power_membership: negative power");
  if (i == 0) return true;
  if (J.is_unit()) return true;
  // DFS over generator multisets with componentwise pruning
  std::vector<std::pair<Exponent, int>> stack{{mu, i}};
  while (!stack.empty()) {
    auto [rest, need] = stack.back();
    stack.pop_back();
    if (need == 0) return true;
    for (const auto& g : J.generators) {
      if (!g.divides(rest)) continue;
      stack.push_back({rest - g, need - 1});
    }
  }
  return false;
}

BigradedTable bigraded_table(const MonomialIdeal& J, int I_max, int J_max,
                             BigradedMode mode) {
  const int n = J.n;
  BigradedTable T;
  T.I_max = I_max;
  T.J_max = J_max;
  T.mode = mode;
  T.H.assign(I_max + 1, std::vector<std::int64_t>(J_max + 1, 0));
  if (J.is_unit()) return T;  // every monomial sits in arbitrarily high powers

  const long D = J.max_generator_degree();
  const long L = mode == BigradedMode::AssociatedGraded ? D * I_max + J_max : J_max;
  MonomialBox box(n, L);
  if (box.cells() > (long)5e6) throw BudgetError("bigraded_table: monomial box too large");

  // d_i(mu) = minimal degree of a J^i-monomial dividing mu, layer by layer;
  // track the last power with a finite value and that value.
  std::vector<std::int64_t> prev(box.cells(), 0), next(box.cells());
  std::vector<std::int64_t> best_d(box.cells(), 0);
  std::vector<int> istar(box.cells(), 0);

  std::vector<long> gidx;
  std::vector<long> gdeg;
  for (const auto& g : J.generators) {
    gidx.push_back(box.index(g));
    gdeg.push_back(g.total_degree());
  }

  Exponent mu(std::vector<int>(n, 0));
  for (int layer = 1; layer <= I_max + 1; ++layer) {
    std::fill(next.begin(), next.end(), kInf);
    std::fill(mu.e.begin(), mu.e.end(), 0);
    long idx = 0, deg = 0;
    for (;;) {
      if (deg <= L) {
        std::int64_t best = kInf;
        for (size_t t = 0; t < gidx.size(); ++t) {
          if (!J.generators[t].divides(mu)) continue;
          std::int64_t sub = prev[idx - gidx[t]];
          if (sub < kInf) best = std::min(best, sub + gdeg[t]);
        }
        if (best < kInf) {
          next[idx] = best;
          istar[idx] = layer;
          best_d[idx] = best;
        }
      }
      // odometer over the dense box
      int v = 0;
      for (; v < n; ++v) {
        ++mu[v];
        idx += box.stride[v];
        deg += 1;
        if (mu[v] <= (int)L) break;
        deg -= mu[v];
        idx -= box.stride[v] * mu[v];
        mu[v] = 0;
      }
      if (v == n) break;
    }
    std::swap(prev, next);
  }

  // bin monomials by (i*, j*) or by (i*, total degree)
  std::fill(mu.e.begin(), mu.e.end(), 0);
  long idx = 0, deg = 0;
  for (;;) {
    if (deg <= L && istar[idx] <= I_max) {
      long j = mode == BigradedMode::AssociatedGraded ? deg - best_d[idx] : deg;
      if (j <= J_max) T.H[istar[idx]][j] += 1;
    }
    int v = 0;
    for (; v < n; ++v) {
      ++mu[v];
      idx += box.stride[v];
      deg += 1;
      if (mu[v] <= (int)L) break;
      deg -= mu[v];
      idx -= box.stride[v] * mu[v];
      mu[v] = 0;
    }
    if (v == n) break;
  }
  return T;
}

std::int64_t bigraded_dimension(const MonomialIdeal& J, int i, int j) {
  if (i < 0 || j < 0) return 0;
  BigradedTable T = bigraded_table(J, i, j, BigradedMode::TotalDegree);
  return T.H[i][j];
}

namespace {

// k-th mixed finite difference in i, (order_i, order_j), of the summed table
std::int64_t mixed_difference(const std::vector<std::vector<std::int64_t>>& S, int i, int j,
                              int a, int b) {
  // delta_i^a delta_j^b S at base (i,j); requires i+a, j+b within bounds
  std::int64_t acc = 0;
  for (int s = 0; s <= a; ++s) {
    for (int t = 0; t <= b; ++t) {
      std::int64_t term = S[i + s][j + t];
      long sign = ((a - s) + (b - t)) % 2 ? -1 : 1;
      std::int64_t binom = 1;
      for (int u = 0; u < s; ++u) binom = binom * (a - u) / (u + 1);
      std::int64_t binom2 = 1;
      for (int u = 0; u < t; ++u) binom2 = binom2 * (b - u) / (u + 1);
      acc += sign * binom * binom2 * term;
    }
  }
  return acc;
}

std::vector<std::vector<std::int64_t>> summed_table(const BigradedTable& T) {
  const int I = T.I_max, J = T.J_max;
  std::vector<std::vector<std::int64_t>> S(I + 1, std::vector<std::int64_t>(J + 1, 0));
  for (int i = 0; i <= I; ++i)
    for (int j = 0; j <= J; ++j) {
      std::int64_t v = T.H[i][j];
      if (i > 0) v += S[i - 1][j];
      if (j > 0) v += S[i][j - 1];
      if (i > 0 && j > 0) v -= S[i - 1][j - 1];
      S[i][j] = v;
    }
  return S;
}

}  // namespace

MultiplicitySequence multiplicity_sequence(const MonomialIdeal& J) {
  const int n = J.n;
  if (n > 4) throw DimensionError("multiplicity_sequence: n <= 4 supported");
  MultiplicitySequence out;
  if (J.is_unit()) {
    out.c.assign(n + 1, 0);
    return out;
  }
  const long D = std::max(1L, J.max_generator_degree());
  int W = (int)(4 * D * n);
  const int W_cap = 1024;
  for (;;) {
    BigradedTable T;
    try {
      T = bigraded_table(J, W, W, BigradedMode::AssociatedGraded);
    } catch (const BudgetError& e) {
      throw BudgetError(std::string(e.what()) + " (largest window tried: " +
                        std::to_string(W) + ")");
    }
    auto S = summed_table(T);
    // certify: all order-(n+1) mixed differences vanish on the top window
    const int lo = W / 2;
    bool ok = true;
    for (int a = 0; a <= n + 1 && ok; ++a) {
      int b = n + 1 - a;
      for (int i = lo; i + a <= W && ok; ++i)
        for (int j = lo; j + b <= W && ok; ++j)
          if (mixed_difference(S, i, j, a, b) != 0) ok = false;
    }
    if (ok) {
      // extract c_k = delta_i^k delta_j^(n-k) S, constant across the window
      out.c.assign(n + 1, 0);
      for (int k = 0; k <= n; ++k) {
        std::int64_t v = mixed_difference(S, lo, lo, k, n - k);
        for (int i = lo; i + k <= W; i += std::max(1, (W - lo) / 3))
          for (int j = lo; j + (n - k) <= W; j += std::max(1, (W - lo) / 3)) {
            if (mixed_difference(S, i, j, k, n - k) != v)
              throw DiscrepancyError("multiplicity_sequence: unstable coefficient c_" +
                                     std::to_string(k));
          }
        if (v < 0)
          throw DiscrepancyError("multiplicity_sequence: negative coefficient c_" +
                                 std::to_string(k));
        out.c[k] = v;
      }
      const int codim = codim_zero_set(J);
      for (int k = 0; k < codim && k <= n; ++k)
        if (out.c[k] != 0)
          throw DiscrepancyError("multiplicity_sequence: e_" + std::to_string(k) +
                                 " nonzero below codim Z");
      out.stable_window = {lo, W, lo, W};
      return out;
    }
    if (2 * W > W_cap)
      throw BudgetError("multiplicity_sequence: no stable window up to size " +
                        std::to_string(W));
    W *= 2;
  }
}

std::int64_t generic_segre_along(const MonomialIdeal& J, const CoordinateSubspace& S) {
  if (S.vanishing.empty()) throw Error("generic_segre_along: empty support");
  std::vector<Exponent> proj;
  for (const auto& g : J.generators) {
    std::vector<int> e;
    for (int i : S.vanishing) e.push_back(g[i]);
    proj.push_back(Exponent(std::move(e)));
  }
  MonomialIdeal Jp((int)S.vanishing.size(), std::move(proj));
  MultiplicitySequence ms = multiplicity_sequence(Jp);
  return ms.c.back();
}

SegreReport siu_report(const MonomialIdeal& J) {
  const int n = J.n;
  SegreReport R;
  R.n = n;
  MultiplicitySequence ms = multiplicity_sequence(J);
  R.e = ms.c;
  R.codimZ = codim_zero_set(J);

  std::vector<DistinguishedVariety> dist;
  if (J.is_proper()) dist = distinguished_varieties(J);

  std::ostringstream dump;
  bool bad = false;
  for (int k = 0; k <= n; ++k) {
    SegreReport::Level lvl;
    lvl.k = k;
    std::int64_t beta_sum = 0;
    for (const auto& d : dist) {
      if (d.V.codim() != k) continue;
      FixedPart fp;
      fp.V = d.V;
      fp.beta = generic_segre_along(J, d.V);
      beta_sum += fp.beta;
      lvl.fixed.push_back(std::move(fp));
      if (lvl.fixed.back().beta < 1) {
        bad = true;
        dump << "beta < 1 at k=" << k << "\n";
      }
    }
    lvl.n_k = R.e[k] - beta_sum;
    if (lvl.n_k < 0) {
      bad = true;
      dump << "n_" << k << " = " << lvl.n_k << " < 0 (e_k=" << R.e[k]
           << ", sum beta=" << beta_sum << ")\n";
    }
    R.decomposition.push_back(std::move(lvl));
  }
  if (R.codimZ <= n && R.decomposition[R.codimZ].n_k != 0) {
    bad = true;
    dump << "n_{codim Z} = " << R.decomposition[R.codimZ].n_k << " != 0\n";
  }
  if (R.decomposition[n].n_k != 0) {
    bad = true;
    dump << "n_n = " << R.decomposition[n].n_k << " != 0\n";
  }
  if (bad) throw DiscrepancyError("siu_report: decomposition invariant violated", dump.str());
  return R;
}

bool closure_invariance_check(const MonomialIdeal& J) {
  MultiplicitySequence a = multiplicity_sequence(J);
  MultiplicitySequence b = multiplicity_sequence(integral_closure(J));
  return a.c == b.c;
}

}  // namespace segre
