#pragma once

#include <stdexcept>
#include <string>

namespace stackgrad {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vector/matrix dimensions inconsistent with the game.
struct DimensionError : Error {
  using Error::Error;
};

/// Invalid experiment configuration (bad schedule, unresolved game, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Schedule parameter outside its admissible range at use time.
struct ScheduleError : Error {
  using Error::Error;
};

/// A required smoothness constant is missing from the game metadata.
struct MissingMetaError : Error {
  using Error::Error;
};

/// The follower Hessian block is numerically singular.
struct SingularHessianError : Error {
  SingularHessianError(const std::string& what, double min_abs_eig)
      : Error(what), min_abs_eigenvalue(min_abs_eig) {}
  double min_abs_eigenvalue;
};

/// Iterative solve ran out of iterations.
struct NonConvergenceError : Error {
  NonConvergenceError(const std::string& what, double grad_norm)
      : Error(what), final_gradient_norm(grad_norm) {}
  double final_gradient_norm;
};

/// Trajectory left the admissible region or produced non-finite state.
struct DivergedError : Error {
  DivergedError(const std::string& what, long long last_valid_step)
      : Error(what), last_valid_step(last_valid_step) {}
  long long last_valid_step;
};

/// Quadratic game whose leader objective has a singular Hessian.
struct DegenerateGameError : Error {
  using Error::Error;
};

}  // namespace stackgrad
