#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "stackgrad/game.hpp"
#include "stackgrad/linalg.hpp"
#include "stackgrad/rng.hpp"

namespace stackgrad {

/// Matrix-parameterized benchmark family with a closed-form best response:
///
///   f1(x,y) = -1/2 x'Q1x - 1/2 y'R1y + x'Sy + b1'x + b2'y + f1_const
///   f2(x,y) = -1/2 (y - Ax - c)' M (y - Ax - c)
///
/// M is symmetric positive definite, so r(x) = Ax + c exactly and the
/// leader objective g(x) = f1(x, r(x)) is quadratic. b2 and f1_const are
/// zero in the minimal family; they let benchmarks place the leader optimum
/// and payoff scale independently of the stationarity structure.
struct QuadraticGameSpec {
  Matrix Q1, R1, S;
  Vector b1, b2;
  double f1_const = 0.0;
  Matrix M, A;
  Vector c;
  Box x_box, y_box;
  std::string id = "quadratic";

  int d1() const { return static_cast<int>(Q1.rows()); }
  int d2() const { return static_cast<int>(M.rows()); }

  void validate() const {
    const auto square = [](const Matrix& m) { return m.rows() == m.cols(); };
    if (!square(Q1) || !square(R1) || !square(M))
      throw DimensionError("Q1, R1, M must be square");
    if (S.rows() != d1() || S.cols() != d2())
      throw DimensionError("S must be d1 x d2");
    if (A.rows() != d2() || A.cols() != d1())
      throw DimensionError("A must be d2 x d1");
    if (R1.rows() != d2() || b1.size() != d1() || b2.size() != d2() ||
        c.size() != d2())
      throw DimensionError("quadratic spec dimensions inconsistent");
    if (x_box.dim() != d1() || y_box.dim() != d2())
      throw DimensionError("quadratic spec boxes inconsistent");
    const auto sym_err = [](const Matrix& m) {
      return (m - m.transpose()).cwiseAbs().maxCoeff();
    };
    if (sym_err(Q1) > 1e-8 || sym_err(R1) > 1e-8 || sym_err(M) > 1e-8)
      throw ConfigError("Q1, R1, M must be symmetric");
    if (symmetric_eigenvalues(M).minCoeff() <= 0.0)
      throw ConfigError("M must be positive definite (strong concavity)");
  }

  double mu() const { return symmetric_eigenvalues(M).minCoeff(); }
  double k2() const { return symmetric_eigenvalues(M).maxCoeff(); }

  double payoff1(const Vector& x, const Vector& y) const {
    return -0.5 * x.dot(Q1 * x) - 0.5 * y.dot(R1 * y) + x.dot(S * y) +
           b1.dot(x) + b2.dot(y) + f1_const;
  }
  double payoff2(const Vector& x, const Vector& y) const {
    const Vector e = y - A * x - c;
    return -0.5 * e.dot(M * e);
  }

  Vector grad1_x(const Vector& x, const Vector& y) const {
    return -Q1 * x + S * y + b1;
  }
  Vector grad1_y(const Vector& x, const Vector& y) const {
    return -R1 * y + S.transpose() * x + b2;
  }
  Vector grad2_x(const Vector& x, const Vector& y) const {
    return A.transpose() * (M * (y - A * x - c));
  }
  Vector grad2_y(const Vector& x, const Vector& y) const {
    return -(M * (y - A * x - c));
  }

  Matrix second(int player, Block block) const {
    if (player == 1) {
      switch (block) {
        case Block::xx: return -Q1;
        case Block::xy: return S;
        case Block::yx: return S.transpose();
        case Block::yy: return -R1;
      }
    }
    switch (block) {
      case Block::xx: return -A.transpose() * M * A;
      case Block::xy: return A.transpose() * M;
      case Block::yx: return M * A;
      case Block::yy: return -M;
    }
    throw DimensionError("unknown block");
  }

  /// Exact follower best response.
  Vector best_response(const Vector& x) const { return A * x + c; }

  /// Hessian of the leader objective g(x) = f1(x, Ax + c).
  Matrix leader_hessian() const {
    const Matrix SA = S * A;
    return -Q1 + SA + SA.transpose() - A.transpose() * R1 * A;
  }

  /// Linear coefficient of grad g: grad g(x) = H_g x + leader_linear().
  Vector leader_linear() const {
    return S * c - A.transpose() * (R1 * c) + b1 + A.transpose() * b2;
  }

  Vector leader_gradient(const Vector& x) const {
    return leader_hessian() * x + leader_linear();
  }

  double leader_objective(const Vector& x) const {
    return payoff1(x, best_response(x));
  }

  /// GameDefinition view with exact derivatives and smoothness metadata.
  GameDefinition to_game() const {
    validate();
    QuadraticGameSpec spec = *this;
    GameMeta meta;
    meta.strong_concavity = spec.mu();
    meta.smoothness_f2 = spec.k2();
    meta.br_lipschitz = spec.A.jacobiSvd().singularValues()(0);
    meta.br_smoothness = 0.0;
    meta.strategy_bound = spec.y_box.diameter();
    // Joint Hessian of f1 is constant; its spectral norm is a valid K1 and
    // bounds the gradient growth over the (bounded) boxes for L1.
    Matrix h1(spec.d1() + spec.d2(), spec.d1() + spec.d2());
    h1 << -spec.Q1, spec.S, spec.S.transpose(), -spec.R1;
    const double k1 = h1.cwiseAbs().maxCoeff() == 0.0
                          ? 0.0
                          : symmetric_eigenvalues(h1).cwiseAbs().maxCoeff();
    meta.smoothness_f1 = k1;
    Vector center(spec.d1() + spec.d2());
    center << spec.x_box.center(), spec.y_box.center();
    Vector g_center(spec.d1() + spec.d2());
    g_center << spec.grad1_x(spec.x_box.center(), spec.y_box.center()),
        spec.grad1_y(spec.x_box.center(), spec.y_box.center());
    const double radius =
        0.5 * std::hypot(spec.x_box.diameter(), spec.y_box.diameter());
    meta.lipschitz_f1 = g_center.norm() + k1 * radius;

    return GameDefinition(
        spec.id, spec.x_box, spec.y_box,
        [spec](int player, const Vector& x, const Vector& y) {
          return player == 1 ? spec.payoff1(x, y) : spec.payoff2(x, y);
        },
        [spec](int player, Wrt wrt, const Vector& x, const Vector& y) {
          if (player == 1)
            return wrt == Wrt::x ? spec.grad1_x(x, y) : spec.grad1_y(x, y);
          return wrt == Wrt::x ? spec.grad2_x(x, y) : spec.grad2_y(x, y);
        },
        [spec](int player, Block block, const Vector&, const Vector&) {
          return spec.second(player, block);
        },
        meta,
        [spec](const Vector& x) { return spec.best_response(x); });
  }
};

namespace detail {
inline Matrix random_orthogonal(StreamRng& rng, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.next_gaussian();
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ();
}

inline Matrix random_spd(StreamRng& rng, int n, double eig_lo,
                         double eig_hi) {
  const Matrix v = random_orthogonal(rng, n);
  Vector eigs(n);
  for (int i = 0; i < n; ++i) eigs(i) = rng.next_uniform(eig_lo, eig_hi);
  return v * eigs.asDiagonal() * v.transpose();
}
}  // namespace detail

/// Draw a well-conditioned random spec: M positive definite, leader Hessian
/// negative definite with margin, and the stationary point inside the box.
inline QuadraticGameSpec random_quadratic_spec(StreamRng& rng, int d1,
                                               int d2) {
  QuadraticGameSpec spec;
  spec.Q1 = detail::random_spd(rng, d1, 1.5, 3.0);
  spec.R1 = detail::random_spd(rng, d2, 0.2, 0.6);
  spec.M = detail::random_spd(rng, d2, 0.8, 2.0);
  spec.A = Matrix(d2, d1);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d1; ++j)
      spec.A(i, j) = rng.next_uniform(-0.8, 0.8);
  spec.c = Vector(d2);
  for (int i = 0; i < d2; ++i) spec.c(i) = rng.next_uniform(-0.5, 0.5);
  spec.S = Matrix(d1, d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j)
      spec.S(i, j) = rng.next_uniform(-0.5, 0.5);
  // Damp the coupling until the leader objective is strictly concave.
  while (max_eigenvalue(spec.leader_hessian()) > -0.3) spec.S *= 0.7;

  spec.b1 = Vector(d1);
  for (int i = 0; i < d1; ++i) spec.b1(i) = rng.next_uniform(-1.0, 1.0);
  spec.b2 = Vector(d2);
  for (int i = 0; i < d2; ++i) spec.b2(i) = rng.next_uniform(-1.0, 1.0);
  // Keep the stationary point comfortably interior.
  for (;;) {
    const Vector x_star =
        spec.leader_hessian().ldlt().solve(-spec.leader_linear());
    if (x_star.cwiseAbs().maxCoeff() <= 3.0) break;
    spec.b1 *= 0.5;
    spec.b2 *= 0.5;
  }
  spec.x_box = Box::centered(d1, 6.0);
  spec.y_box = Box::centered(d2, 6.0);
  spec.validate();
  return spec;
}

}  // namespace stackgrad
