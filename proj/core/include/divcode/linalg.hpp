#pragma once

#include <optional>
#include <vector>

#include "divcode/gf.hpp"

namespace divcode::linalg {

using Vec = std::vector<gf::Elem>;
using Mat = std::vector<Vec>;

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<unsigned> rref(const gf::Field& F, Mat& m);

unsigned rank(const gf::Field& F, Mat m);

/// Coordinates of `target` with respect to the rows of `basis` (which must be
/// linearly independent), or nullopt if target is outside the row span.
std::optional<Vec> coordinates(const gf::Field& F, const Mat& basis, const Vec& target);

/// Basis of {x : m x^T = 0}.
Mat nullspace(const gf::Field& F, const Mat& m, unsigned cols);

gf::Elem dot(const gf::Field& F, const Vec& x, const Vec& y);

}  // namespace divcode::linalg
