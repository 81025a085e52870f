#include "segre/newton.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hull.hpp"

namespace segre {

bool CoordinateSubspace::contains_index(int i) const {
  return std::find(vanishing.begin(), vanishing.end(), i) != vanishing.end();
}

bool CoordinateSubspace::subset_of(const CoordinateSubspace& other) const {
  return std::includes(other.vanishing.begin(), other.vanishing.end(), vanishing.begin(),
                       vanishing.end());
}

MonomialIdeal::MonomialIdeal(int ambient_dim, std::vector<Exponent> gens) : n(ambient_dim) {
  if (gens.empty()) throw Error("MonomialIdeal: no generators");
  for (const auto& g : gens) {
    if (g.size() != n) throw DimensionError("MonomialIdeal: generator dimension mismatch");
    for (int i = 0; i < n; ++i)
      if (g[i] < 0) throw Error("MonomialIdeal: negative exponent");
  }
  // minimalize: keep only generators not divisible by another generator
  for (size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < gens.size() && !dominated; ++j) {
      if (i == j) continue;
      if (gens[j].divides(gens[i]) && !(gens[i].divides(gens[j]) && j > i)) dominated = true;
    }
    if (!dominated) generators.push_back(gens[i]);
  }
  std::sort(generators.begin(), generators.end(),
            [](const Exponent& a, const Exponent& b) { return GrlexLess{}(a, b); });
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
}

bool MonomialIdeal::is_unit() const {
  for (const auto& g : generators)
    if (g.total_degree() == 0) return true;
  return false;
}

long MonomialIdeal::max_generator_degree() const {
  long d = 0;
  for (const auto& g : generators) d = std::max(d, g.total_degree());
  return d;
}

bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
  return a.n == b.n && a.generators == b.generators;
}

namespace {

long dot(const std::vector<long>& v, const Exponent& a) {
  long s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * a[(int)i];
  return s;
}

std::vector<long> primitive(std::vector<long> v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::abs(x));
  if (g > 1)
    for (long& x : v) x /= g;
  return v;
}

// kernel vector of (dim-1) x dim integer matrix via signed minors
std::vector<long> cross_kernel(const std::vector<std::vector<long>>& rows, int dim) {
  std::vector<long> w(dim, 0);
  for (int c = 0; c < dim; ++c) {
    // determinant of the minor dropping column c (size dim-1)
    std::vector<std::vector<long>> M;
    for (const auto& r : rows) {
      std::vector<long> row;
      for (int cc = 0; cc < dim; ++cc)
        if (cc != c) row.push_back(r[cc]);
      M.push_back(row);
    }
    long det = 0;
    const int k = dim - 1;
    if (k == 0)
      det = 1;
    else if (k == 1)
      det = M[0][0];
    else if (k == 2)
      det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    else {  // k == 3
      det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
            M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
            M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    }
    w[c] = (c % 2 == 0) ? det : -det;
  }
  return w;
}

int integer_rank(const std::vector<std::vector<long>>& rows, int dim) {
  std::vector<detail::QPoint> q;
  for (const auto& r : rows) {
    detail::QPoint p(dim);
    for (int c = 0; c < dim; ++c) p[c] = Rational(r[c]);
    q.push_back(p);
  }
  return detail::rational_rank(std::move(q));
}

}  // namespace

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& J) {
  const int n = J.n;
  if (n > 4) throw DimensionError("newton_polyhedron: dimension above supported range (n <= 4)");
  NewtonPolyhedron NP;
  NP.n = n;
  NP.generators = J.generators;

  // candidate facet normals: kernels of (n-1)-subsets of
  // {generator differences} union {coordinate directions}
  std::vector<std::vector<long>> pool;
  for (size_t i = 0; i < J.generators.size(); ++i)
    for (size_t j = i + 1; j < J.generators.size(); ++j) {
      std::vector<long> d(n);
      for (int c = 0; c < n; ++c) d[c] = J.generators[i][c] - J.generators[j][c];
      pool.push_back(d);
    }
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    pool.push_back(e);
  }

  std::set<std::vector<long>> candidates;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    candidates.insert(e);
  }
  std::vector<int> idx(n - 1);
  auto consider = [&](const std::vector<std::vector<long>>& rows) {
    std::vector<long> w = cross_kernel(rows, n);
    bool zero = true, pos = false, neg = false;
    for (long x : w) {
      if (x != 0) zero = false;
      if (x > 0) pos = true;
      if (x < 0) neg = true;
    }
    if (zero || (pos && neg)) return;
    if (neg)
      for (long& x : w) x = -x;
    candidates.insert(primitive(std::move(w)));
  };
  if (n >= 2) {
    // all (n-1)-subsets of the pool
    const int P = (int)pool.size();
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<std::vector<long>> rows;
      for (int k : idx) rows.push_back(pool[k]);
      consider(rows);
      int pos_i = n - 2;
      while (pos_i >= 0 && idx[pos_i] == P - (n - 1 - pos_i)) --pos_i;
      if (pos_i < 0) break;
      ++idx[pos_i];
      for (int k = pos_i + 1; k < n - 1; ++k) idx[k] = idx[k - 1] + 1;
    }
  }

  for (const auto& v : candidates) {
    long c = dot(v, J.generators[0]);
    for (const auto& g : J.generators) c = std::min(c, dot(v, g));
    // a facet must have affine dimension n-1
    std::vector<Exponent> active;
    for (const auto& g : J.generators)
      if (dot(v, g) == c) active.push_back(g);
    std::vector<std::vector<long>> span_rows;
    for (size_t i = 1; i < active.size(); ++i) {
      std::vector<long> d(n);
      for (int cc = 0; cc < n; ++cc) d[cc] = active[i][cc] - active[0][cc];
      span_rows.push_back(d);
    }
    for (int i = 0; i < n; ++i)
      if (v[i] == 0) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        span_rows.push_back(e);
      }
    if (integer_rank(span_rows, n) == n - 1) NP.facets.push_back({v, c});
  }
  std::sort(NP.facets.begin(), NP.facets.end(), [](const Facet& a, const Facet& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
  });

  // vertices: generators whose active facet normals span R^n
  for (const auto& g : J.generators) {
    std::vector<std::vector<long>> act;
    for (const auto& f : NP.facets)
      if (dot(f.normal, g) == f.offset) act.push_back(f.normal);
    if (integer_rank(act, n) == n) NP.vertices.push_back(g);
  }
  return NP;
}

bool np_contains(const NewtonPolyhedron& NP, const Exponent& a) {
  if (a.size() != NP.n) throw DimensionError("np_contains: dimension mismatch");
  for (const auto& f : NP.facets)
    if (dot(f.normal, a) < f.offset) return false;
  return true;
}

MonomialIdeal integral_closure(const MonomialIdeal& J) {
  NewtonPolyhedron NP = newton_polyhedron(J);
  const int n = J.n;
  std::vector<int> box(n, 0);
  for (const auto& v : NP.vertices)
    for (int i = 0; i < n; ++i) box[i] = std::max(box[i], v[i]);
  // minimal lattice points of NP lie within the vertex bounding box
  std::vector<Exponent> found;
  Exponent cur(std::vector<int>(n, 0));
  for (;;) {
    if (np_contains(NP, cur)) {
      bool dominated = false;
      for (const auto& g : found)
        if (g.divides(cur)) {
          dominated = true;
          break;
        }
      if (!dominated) found.push_back(cur);
    }
    int i = 0;
    while (i < n) {
      if (++cur[i] <= box[i]) break;
      cur[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return MonomialIdeal(n, std::move(found));
}

std::vector<CoordinateSubspace> minimal_primes(const MonomialIdeal& J) {
  const int n = J.n;
  std::vector<std::vector<int>> supports;
  for (const auto& g : J.generators) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (g[i] > 0) s.push_back(i);
    supports.push_back(s);
  }
  std::vector<CoordinateSubspace> transversals;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool hits_all = true;
    for (const auto& s : supports) {
      bool hit = false;
      for (int i : s)
        if (mask & (1u << i)) {
          hit = true;
          break;
        }
      if (!hit) {
        hits_all = false;
        break;
      }
    }
    if (!hits_all) continue;
    CoordinateSubspace S;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) S.vanishing.push_back(i);
    transversals.push_back(std::move(S));
  }
  // keep inclusion-minimal ones
  std::vector<CoordinateSubspace> minimal;
  for (const auto& s : transversals) {
    bool is_min = true;
    for (const auto& t : transversals)
      if (!(t == s) && t.subset_of(s)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

int codim_zero_set(const MonomialIdeal& J) {
  auto primes = minimal_primes(J);
  if (primes.empty()) return J.n + 1;  // Z empty
  int c = J.n;
  for (const auto& p : primes) c = std::min(c, p.codim());
  return c;
}

std::vector<DistinguishedVariety> distinguished_varieties(const MonomialIdeal& J) {
  NewtonPolyhedron NP = newton_polyhedron(J);
  std::vector<DistinguishedVariety> out;
  for (const auto& f : NP.facets) {
    long val = dot(f.normal, J.generators[0]);
    for (const auto& g : J.generators) val = std::min(val, dot(f.normal, g));
    if (val <= 0) continue;
    CoordinateSubspace S;
    for (int i = 0; i < J.n; ++i)
      if (f.normal[i] > 0) S.vanishing.push_back(i);
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const DistinguishedVariety& d) { return d.V == S; });
    if (it == out.end()) {
      out.push_back({S, val, {{f.normal, val}}});
    } else {
      it->order = std::min(it->order, val);
      it->normals.push_back({f.normal, val});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const DistinguishedVariety& a, const DistinguishedVariety& b) { return a.V < b.V; });
  return out;
}

std::optional<Rational> covolume(const NewtonPolyhedron& NP) {
  const int n = NP.n;
  // finite iff every coordinate axis eventually enters NP
  std::vector<long> d(n, 0);
  for (int i = 0; i < n; ++i) {
    long need = 0;
    for (const auto& f : NP.facets) {
      if (f.offset <= 0) continue;
      if (f.normal[i] == 0) return std::nullopt;  // axis direction never enters
      need = std::max(need, (f.offset + f.normal[i] - 1) / f.normal[i]);
    }
    d[i] = std::max(need, 1L);
  }
  // volume of NP within the box [0,d]: vertex-enumerate, then hull volume
  struct Ineq {
    std::vector<Rational> a;
    Rational b;  // <a,x> >= b
  };
  std::vector<Ineq> ineqs;
  for (const auto& f : NP.facets) {
    Ineq q;
    q.a.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) q.a[i] = Rational(f.normal[i]);
    q.b = Rational(f.offset);
    ineqs.push_back(q);
  }
  for (int i = 0; i < n; ++i) {
    Ineq lo, hi;
    lo.a.assign(n, Rational(0));
    hi.a.assign(n, Rational(0));
    lo.a[i] = 1;
    lo.b = 0;
    hi.a[i] = -1;
    hi.b = Rational(-d[i]);
    ineqs.push_back(lo);
    ineqs.push_back(hi);
  }
  const int F = (int)ineqs.size();
  std::vector<detail::QPoint> verts;
  std::vector<int> sel(n);
  std::iota(sel.begin(), sel.end(), 0);
  auto try_subset = [&](const std::vector<int>& s) {
    // solve a_s x = b_s by Gaussian elimination
    std::vector<detail::QPoint> M;
    for (int r : s) {
      detail::QPoint row = ineqs[r].a;
      row.push_back(ineqs[r].b);
      M.push_back(row);
    }
    for (int k = 0; k < n; ++k) {
      int piv = -1;
      for (int r = k; r < n; ++r)
        if (M[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return;
      std::swap(M[k], M[piv]);
      for (int r = 0; r < n; ++r) {
        if (r == k || M[r][k] == 0) continue;
        Rational fct = M[r][k] / M[k][k];
        for (int c = k; c <= n; ++c) M[r][c] -= fct * M[k][c];
      }
    }
    detail::QPoint x(n);
    for (int k = 0; k < n; ++k) x[k] = M[k][n] / M[k][k];
    for (const auto& q : ineqs) {
      Rational lhs(0);
      for (int i = 0; i < n; ++i) lhs += q.a[i] * x[i];
      if (lhs < q.b) return;
    }
    if (std::find(verts.begin(), verts.end(), x) == verts.end()) verts.push_back(x);
  };
  for (;;) {
    try_subset(sel);
    int i = n - 1;
    while (i >= 0 && sel[i] == F - (n - i)) --i;
    if (i < 0) break;
    ++sel[i];
    for (int k = i + 1; k < n; ++k) sel[k] = sel[k - 1] + 1;
  }
  Rational inner = detail::hull_volume(verts, n);
  Rational box(1);
  for (int i = 0; i < n; ++i) box *= Rational(d[i]);
  return box - inner;
}

}  // namespace segre
