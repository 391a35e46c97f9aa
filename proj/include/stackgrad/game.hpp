#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackgrad/errors.hpp"
#include "stackgrad/linalg.hpp"

namespace stackgrad {

/// Which player's strategy a derivative is taken with respect to.
enum class Wrt { x, y };

/// Second-derivative block: d/da d/db f with (a,b) named in order.
/// xy has shape d1 x d2 with entry (i,j) = d^2 f / dx_i dy_j; yx is its
/// transpose for C^2 payoffs.
enum class Block { xx, xy, yx, yy };

inline const char* to_string(Wrt w) { return w == Wrt::x ? "x" : "y"; }
inline const char* to_string(Block b) {
  switch (b) {
    case Block::xx: return "xx";
    case Block::xy: return "xy";
    case Block::yx: return "yx";
    case Block::yy: return "yy";
  }
  return "?";
}

/// A strategy with its box; values stay inside the box after projection.
struct StrategyVec {
  Vector values;
  Box bounds;

  StrategyVec() = default;
  StrategyVec(Vector v, Box b) : values(std::move(v)), bounds(std::move(b)) {
    if (values.size() != bounds.dim())
      throw DimensionError("strategy dimension does not match its box");
    if (!all_finite(values))
      throw Error("strategy vector has non-finite entries");
  }

  int dim() const { return static_cast<int>(values.size()); }

  /// Clamp into the box (the projection the dynamics rely on).
  StrategyVec projected() const {
    return StrategyVec(bounds.project(values), bounds);
  }
};

/// Optional smoothness constants. Operations that need an absent constant
/// throw MissingMetaError instead of estimating it; a silently estimated
/// constant would corrupt every schedule derived from it.
struct GameMeta {
  std::optional<double> lipschitz_f1;        // L1
  std::optional<double> smoothness_f1;       // K1
  std::optional<double> smoothness_f2;       // K2
  std::optional<double> strong_concavity;    // mu
  std::optional<double> br_lipschitz;        // L_r
  std::optional<double> br_smoothness;       // K_r
  std::optional<double> strategy_bound;      // B

  double require(const std::optional<double>& v, const char* name) const {
    if (!v.has_value())
      throw MissingMetaError(std::string("game meta constant '") + name +
                             "' required but absent");
    return *v;
  }
};

/// Two-player differentiable game: payoffs, analytic derivatives when
/// available, and a central finite-difference fallback otherwise.
/// Evaluators are pure and re-entrant; parallel runs may share one instance.
class GameDefinition {
 public:
  using PayoffFn =
      std::function<double(int, const Vector&, const Vector&)>;
  using GradFn =
      std::function<Vector(int, Wrt, const Vector&, const Vector&)>;
  using SecondFn =
      std::function<Matrix(int, Block, const Vector&, const Vector&)>;
  using BestResponseFn = std::function<Vector(const Vector&)>;

  GameDefinition(std::string id, Box x_box, Box y_box, PayoffFn payoff,
                 GradFn grad = nullptr, SecondFn second = nullptr,
                 GameMeta meta = {}, BestResponseFn best_response = nullptr)
      : id_(std::move(id)),
        x_box_(std::move(x_box)),
        y_box_(std::move(y_box)),
        payoff_(std::move(payoff)),
        grad_(std::move(grad)),
        second_(std::move(second)),
        meta_(std::move(meta)),
        best_response_(std::move(best_response)) {
    if (x_box_.dim() < 1 || y_box_.dim() < 1)
      throw ConfigError("degenerate game: both players need dimension >= 1");
    if (!payoff_) throw ConfigError("game requires a payoff evaluator");
  }

  const std::string& id() const { return id_; }
  int d1() const { return x_box_.dim(); }
  int d2() const { return y_box_.dim(); }
  const Box& x_box() const { return x_box_; }
  const Box& y_box() const { return y_box_; }
  const GameMeta& meta() const { return meta_; }

  bool has_analytic_gradient() const { return static_cast<bool>(grad_); }
  bool has_analytic_second() const { return static_cast<bool>(second_); }
  bool has_best_response_oracle() const {
    return static_cast<bool>(best_response_);
  }

  /// Closed-form best response r(x), when the game ships one.
  Vector best_response(const Vector& x) const {
    if (!best_response_)
      throw MissingMetaError("game '" + id_ + "' has no best-response oracle");
    check_x(x);
    return best_response_(x);
  }

  double payoff(int player, const Vector& x, const Vector& y) const {
    check_player(player);
    check_x(x);
    check_y(y);
    const double v = payoff_(player, x, y);
    if (!std::isfinite(v))
      throw Error("non-finite payoff for player " + std::to_string(player) +
                  " in game '" + id_ + "' (ill-posed game or state)");
    return v;
  }

  Vector gradient(int player, Wrt wrt, const Vector& x,
                  const Vector& y) const {
    check_player(player);
    check_x(x);
    check_y(y);
    Vector g = grad_ ? grad_(player, wrt, x, y) : fd_gradient(player, wrt, x, y);
    const int want = wrt == Wrt::x ? d1() : d2();
    if (g.size() != want)
      throw DimensionError("gradient evaluator returned wrong dimension");
    return g;
  }

  Matrix second(int player, Block block, const Vector& x,
                const Vector& y) const {
    check_player(player);
    check_x(x);
    check_y(y);
    Matrix m = second_ ? second_(player, block, x, y)
                       : fd_second(player, block, x, y);
    const auto [rows, cols] = block_shape(block);
    if (m.rows() != rows || m.cols() != cols)
      throw DimensionError("second-derivative evaluator returned wrong shape");
    return m;
  }

  /// Central finite-difference gradient of the payoff. Exposed so callers
  /// can tell whether they got the analytic path or the fallback.
  Vector fd_gradient(int player, Wrt wrt, const Vector& x, const Vector& y,
                     double eps_scale = default_fd_step()) const {
    const bool wx = wrt == Wrt::x;
    const Vector& v = wx ? x : y;
    Vector g(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double h = eps_scale * std::max(1.0, std::abs(v(i)));
      Vector vp = v, vm = v;
      vp(i) += h;
      vm(i) -= h;
      const double fp = wx ? payoff_(player, vp, y) : payoff_(player, x, vp);
      const double fm = wx ? payoff_(player, vm, y) : payoff_(player, x, vm);
      g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
  }

  /// Central finite differences of the gradient (analytic when present).
  Matrix fd_second(int player, Block block, const Vector& x, const Vector& y,
                   double eps_scale = default_fd_step()) const {
    const auto [rows, cols] = block_shape(block);
    const Wrt inner = (block == Block::xx || block == Block::xy) ? Wrt::x
                                                                 : Wrt::y;
    const bool outer_x = (block == Block::xx || block == Block::yx);
    const Vector& v = outer_x ? x : y;
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double h = eps_scale * std::max(1.0, std::abs(v(j)));
      Vector vp = v, vm = v;
      vp(j) += h;
      vm(j) -= h;
      const Vector gp =
          outer_x ? gradient(player, inner, vp, y) : gradient(player, inner, x, vp);
      const Vector gm =
          outer_x ? gradient(player, inner, vm, y) : gradient(player, inner, x, vm);
      m.col(j) = (gp - gm) / (2.0 * h);
    }
    // Blocks are named (inner, outer-diff): xy = d/dy of grad_x, stored d1 x d2.
    return m;
  }

  static double default_fd_step() {
    return std::cbrt(std::numeric_limits<double>::epsilon());
  }

  std::pair<Eigen::Index, Eigen::Index> block_shape(Block block) const {
    switch (block) {
      case Block::xx: return {d1(), d1()};
      case Block::xy: return {d1(), d2()};
      case Block::yx: return {d2(), d1()};
      case Block::yy: return {d2(), d2()};
    }
    return {0, 0};
  }

 private:
  void check_player(int player) const {
    if (player != 1 && player != 2)
      throw DimensionError("player must be 1 or 2");
  }
  void check_x(const Vector& x) const {
    if (x.size() != d1())
      throw DimensionError("x has dimension " + std::to_string(x.size()) +
                           ", game expects " + std::to_string(d1()));
  }
  void check_y(const Vector& y) const {
    if (y.size() != d2())
      throw DimensionError("y has dimension " + std::to_string(y.size()) +
                           ", game expects " + std::to_string(d2()));
  }

  std::string id_;
  Box x_box_;
  Box y_box_;
  PayoffFn payoff_;
  GradFn grad_;
  SecondFn second_;
  GameMeta meta_;
  BestResponseFn best_response_;
};

/// One row of a derivative cross-check report.
struct FdBlockReport {
  std::string block;       // "grad_1_x", "second_2_yy", ...
  double max_rel_error;
};

struct FdValidationReport {
  std::vector<FdBlockReport> blocks;
  double worst_rel_error = 0.0;
  /// True when some block disagrees with finite differences beyond tol.
  bool flagged = false;
  double tolerance = 0.0;
};

namespace detail {
inline double rel_error(double got, double want) {
  const double scale = std::max({1.0, std::abs(got), std::abs(want)});
  return std::abs(got - want) / scale;
}
inline double max_rel_error(const Matrix& got, const Matrix& want) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < got.rows(); ++i)
    for (Eigen::Index j = 0; j < got.cols(); ++j)
      worst = std::max(worst, rel_error(got(i, j), want(i, j)));
  return worst;
}
}  // namespace detail

/// Compare analytic gradients and second derivatives against central finite
/// differences at one point. Report-only: never throws on disagreement.
inline FdValidationReport fd_validate(const GameDefinition& game,
                                      const Vector& x, const Vector& y,
                                      double eps, double flag_tol = 1e-2) {
  if (eps <= 0.0) throw ConfigError("fd_validate requires eps > 0");
  FdValidationReport report;
  report.tolerance = flag_tol;
  for (int player : {1, 2}) {
    for (Wrt wrt : {Wrt::x, Wrt::y}) {
      const Vector analytic = game.gradient(player, wrt, x, y);
      const Vector fd = game.fd_gradient(player, wrt, x, y, eps);
      const double err = detail::max_rel_error(analytic, fd);
      report.blocks.push_back({"grad_" + std::to_string(player) + "_" +
                                   to_string(wrt),
                               err});
    }
    for (Block block : {Block::xx, Block::xy, Block::yx, Block::yy}) {
      const Matrix analytic = game.second(player, block, x, y);
      const Matrix fd = game.fd_second(player, block, x, y, eps);
      const double err = detail::max_rel_error(analytic, fd);
      report.blocks.push_back({"second_" + std::to_string(player) + "_" +
                                   to_string(block),
                               err});
    }
  }
  for (const auto& b : report.blocks)
    report.worst_rel_error = std::max(report.worst_rel_error, b.max_rel_error);
  report.flagged = report.worst_rel_error > flag_tol;
  return report;
}

}  // namespace stackgrad
