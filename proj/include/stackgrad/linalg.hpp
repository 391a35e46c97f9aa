#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "stackgrad/errors.hpp"

namespace stackgrad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline bool all_finite(const Vector& v) { return v.allFinite(); }
inline bool all_finite(const Matrix& m) { return m.allFinite(); }

/// Eigenvalues of the symmetrized matrix (M + M^T)/2, ascending.
/// Finite-difference Hessians are asymmetric at roundoff level, so every
/// definiteness test in the library goes through this.
inline Vector symmetric_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  return es.eigenvalues();
}

inline double max_eigenvalue(const Matrix& m) {
  const Vector ev = symmetric_eigenvalues(m);
  return ev(ev.size() - 1);
}

inline double min_abs_eigenvalue(const Matrix& m) {
  return symmetric_eigenvalues(m).cwiseAbs().minCoeff();
}

/// Solve A z = b for symmetric A via eigendecomposition.
/// Throws SingularHessianError when the smallest |eigenvalue| is below
/// min_abs_eig, unless a ridge is supplied; the ridge pushes offending
/// eigenvalues away from zero and sets *used_ridge.
inline Vector solve_symmetric(const Matrix& a, const Vector& b,
                              double min_abs_eig = 1e-10,
                              const double* ridge = nullptr,
                              bool* used_ridge = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.transpose()));
  Vector ev = es.eigenvalues();
  const double smallest = ev.cwiseAbs().minCoeff();
  if (smallest <= min_abs_eig) {
    if (ridge == nullptr) {
      throw SingularHessianError(
          "singular symmetric block: min |eigenvalue| = " +
              std::to_string(smallest),
          smallest);
    }
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      const double sign = ev(i) < 0.0 ? -1.0 : 1.0;
      if (std::abs(ev(i)) < *ridge) ev(i) = sign * *ridge;
    }
    if (used_ridge != nullptr) *used_ridge = true;
  }
  return es.eigenvectors() *
         (es.eigenvectors().transpose() * b).cwiseQuotient(ev);
}

/// Axis-aligned box in R^d; the strategy spaces X and Y are boxes so that
/// projection is a closed-form clamp.
struct Box {
  Vector lo;
  Vector hi;

  Box() = default;
  Box(Vector lo_, Vector hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size())
      throw DimensionError("box bounds have mismatched dimensions");
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
      if (!(lo(i) < hi(i)) || !std::isfinite(lo(i)) || !std::isfinite(hi(i)))
        throw ConfigError("box requires finite lo < hi per coordinate");
    }
  }

  /// Cube [-half_width, half_width]^dim.
  static Box centered(int dim, double half_width) {
    return Box(Vector::Constant(dim, -half_width),
               Vector::Constant(dim, half_width));
  }

  int dim() const { return static_cast<int>(lo.size()); }

  Vector project(const Vector& v) const {
    return v.cwiseMax(lo).cwiseMin(hi);
  }

  bool contains(const Vector& v, double tol = 0.0) const {
    return v.size() == lo.size() && (v.array() >= lo.array() - tol).all() &&
           (v.array() <= hi.array() + tol).all();
  }

  Vector center() const { return 0.5 * (lo + hi); }

  /// Euclidean diameter of the box.
  double diameter() const { return (hi - lo).norm(); }
};

}  // namespace stackgrad
