#include "hull.hpp"

#include <algorithm>
#include <array>

#include "segre/errors.hpp"

namespace segre::detail {

int rational_rank(std::vector<QPoint> rows) {
  if (rows.empty()) return 0;
  const int m = (int)rows.size(), n = (int)rows[0].size();
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int r = rank; r < m; ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < m; ++r) {
      if (rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / rows[rank][col];
      for (int c = col; c < n; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

namespace {

// determinant of a dim x dim rational matrix
Rational qdet(std::vector<QPoint> M) {
  const int n = (int)M.size();
  Rational det(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (M[r][k] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != k) {
      std::swap(M[k], M[piv]);
      det = -det;
    }
    det *= M[k][k];
    for (int r = k + 1; r < n; ++r) {
      if (M[r][k] == 0) continue;
      Rational f = M[r][k] / M[k][k];
      for (int c = k; c < n; ++c) M[r][c] -= f * M[k][c];
    }
  }
  return det;
}

struct HullFacet {
  std::array<int, 4> vtx{};  // dim vertex indices
  QPoint normal;             // outward
  Rational offset;           // <normal, x> = offset on the facet
};

}  // namespace

Rational hull_volume(const std::vector<QPoint>& points, int dim) {
  if (dim < 1 || dim > 4) throw Error("hull_volume: dimension out of range");
  const int m = (int)points.size();
  if (dim == 1) {
    Rational lo = points[0][0], hi = points[0][0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }

  // greedily pick dim+1 affinely independent seed points
  std::vector<int> seed{0};
  for (int i = 1; i < m && (int)seed.size() <= dim; ++i) {
    std::vector<QPoint> rows;
    for (size_t s = 1; s < seed.size(); ++s) {
      QPoint d(dim);
      for (int c = 0; c < dim; ++c) d[c] = points[seed[s]][c] - points[seed[0]][c];
      rows.push_back(d);
    }
    QPoint d(dim);
    for (int c = 0; c < dim; ++c) d[c] = points[i][c] - points[seed[0]][c];
    rows.push_back(d);
    if (rational_rank(rows) == (int)seed.size()) seed.push_back(i);
  }
  if ((int)seed.size() != dim + 1) throw Error("hull_volume: points not full-dimensional");

  // interior reference point: centroid of the seed simplex
  QPoint center(dim, Rational(0));
  for (int s : seed)
    for (int c = 0; c < dim; ++c) center[c] += points[s][c];
  for (int c = 0; c < dim; ++c) center[c] /= Rational(dim + 1);

  auto make_facet = [&](const std::array<int, 4>& vtx) {
    HullFacet f;
    f.vtx = vtx;
    // normal = generalized cross product of edge vectors
    std::vector<QPoint> edges;
    for (int s = 1; s < dim; ++s) {
      QPoint d(dim);
      for (int c = 0; c < dim; ++c) d[c] = points[vtx[s]][c] - points[vtx[0]][c];
      edges.push_back(d);
    }
    f.normal.assign(dim, Rational(0));
    for (int c = 0; c < dim; ++c) {
      std::vector<QPoint> minor;
      for (int r = 0; r < dim - 1; ++r) {
        QPoint row;
        for (int cc = 0; cc < dim; ++cc)
          if (cc != c) row.push_back(edges[r][cc]);
        minor.push_back(row);
      }
      Rational d = qdet(minor);
      f.normal[c] = ((c % 2) == 0) ? d : -d;
    }
    f.offset = Rational(0);
    for (int c = 0; c < dim; ++c) f.offset += f.normal[c] * points[vtx[0]][c];
    // orient outward relative to the interior point
    Rational side(0);
    for (int c = 0; c < dim; ++c) side += f.normal[c] * center[c];
    if (side > f.offset) {
      for (auto& x : f.normal) x = -x;
      f.offset = -f.offset;
    }
    return f;
  };

  std::vector<HullFacet> facets;
  for (int drop = 0; drop <= dim; ++drop) {
    std::array<int, 4> vtx{};
    int k = 0;
    for (int s = 0; s <= dim; ++s)
      if (s != drop) vtx[k++] = seed[s];
    facets.push_back(make_facet(vtx));
  }

  // insert remaining points
  for (int i = 0; i < m; ++i) {
    if (std::find(seed.begin(), seed.end(), i) != seed.end()) continue;
    std::vector<int> visible;
    for (int fi = 0; fi < (int)facets.size(); ++fi) {
      Rational v(0);
      for (int c = 0; c < dim; ++c) v += facets[fi].normal[c] * points[i][c];
      if (v > facets[fi].offset) visible.push_back(fi);
    }
    if (visible.empty()) continue;  // inside (or on) the current hull
    // horizon ridges: (dim-1)-subsets occurring in exactly one visible facet
    std::vector<std::vector<int>> ridges;
    std::vector<int> count;
    for (int fi : visible) {
      for (int drop = 0; drop < dim; ++drop) {
        std::vector<int> ridge;
        for (int s = 0; s < dim; ++s)
          if (s != drop) ridge.push_back(facets[fi].vtx[s]);
        std::sort(ridge.begin(), ridge.end());
        auto it = std::find(ridges.begin(), ridges.end(), ridge);
        if (it == ridges.end()) {
          ridges.push_back(ridge);
          count.push_back(1);
        } else {
          ++count[it - ridges.begin()];
        }
      }
    }
    std::vector<HullFacet> next;
    for (int fi = 0; fi < (int)facets.size(); ++fi)
      if (std::find(visible.begin(), visible.end(), fi) == visible.end())
        next.push_back(facets[fi]);
    for (size_t ri = 0; ri < ridges.size(); ++ri) {
      if (count[ri] != 1) continue;
      std::array<int, 4> vtx{};
      for (int s = 0; s < dim - 1; ++s) vtx[s] = ridges[ri][s];
      vtx[dim - 1] = i;
      next.push_back(make_facet(vtx));
    }
    facets = std::move(next);
  }

  // cone volume from the interior point
  Rational vol(0);
  Rational nfact(1);
  for (int k = 2; k <= dim; ++k) nfact *= k;
  for (const auto& f : facets) {
    std::vector<QPoint> M;
    for (int s = 0; s < dim; ++s) {
      QPoint d(dim);
      for (int c = 0; c < dim; ++c) d[c] = points[f.vtx[s]][c] - center[c];
      M.push_back(d);
    }
    Rational d = qdet(M);
    if (d < 0) d = -d;
    vol += d / nfact;
  }
  return vol;
}

}  // namespace segre::detail
