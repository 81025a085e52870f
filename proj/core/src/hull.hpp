#ifndef SEGRE_SRC_HULL_HPP
#define SEGRE_SRC_HULL_HPP

#include <vector>

#include "segre/rational.hpp"

namespace segre::detail {

using QPoint = std::vector<Rational>;

// Exact volume of the convex hull of a full-dimensional point set, dim <= 4.
// Incremental (beneath-beyond) hull over rationals; throws Error if the
// points are not full-dimensional.
Rational hull_volume(const std::vector<QPoint>& points, int dim);

// rank of a set of rational vectors (exact Gaussian elimination)
int rational_rank(std::vector<QPoint> rows);

}  // namespace segre::detail

#endif
