#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "biofilm/block_tridiagonal.hpp"
#include "biofilm/scheme.hpp"

namespace biofilm {

/// Analytic Jacobian of assemble_residual with respect to the packed unknowns.
BlockTridiagonalMatrix assemble_jacobian(const State& candidate, std::span<const double> u_bar,
                                         const Grid& grid, double dt, const SchemeConfig& cfg,
                                         TimeFormula formula);

/// Jacobian matching residual(candidate, history, ...).
BlockTridiagonalMatrix assemble_jacobian(const State& candidate, const History& history,
                                         std::span<const double> u_bar, const Grid& grid,
                                         double dt, const SchemeConfig& cfg);

enum class Damping { None, Armijo };

struct NewtonConfig {
  double abs_tol = 1e-10;  ///< on the max-norm of the residual
  double rel_tol = 1e-12;  ///< converged also when max|r| <= rel_tol * max|r_0|
  int max_iters = 25;
  Damping damping = Damping::Armijo;
  double armijo_factor = 0.5;
  double armijo_min_step = 1.0 / 1024.0;

  void validate() const;
};

struct NewtonReport {
  int iterations = 0;
  double final_residual_norm = 0.0;
  bool converged = false;
  /// Max-norm of the residual at the initial guess and after every update.
  std::vector<double> residual_norms;
};

class NewtonError : public std::runtime_error {
 public:
  NewtonError(const std::string& what, NewtonReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const NewtonReport& report() const noexcept { return report_; }

 private:
  NewtonReport report_;
};

using ResidualFn = std::function<void(std::span<const double> x, std::span<double> r)>;
using JacobianFn = std::function<BlockTridiagonalMatrix(std::span<const double> x)>;

struct NewtonResult {
  std::vector<double> x;
  NewtonReport report;
};

/// Newton iteration with block-tridiagonal linear solves. Converged means
/// max|r| <= max(abs_tol, rel_tol max|r_0|); anything else throws NewtonError
/// carrying the report.
NewtonResult newton_solve(std::vector<double> initial_guess, const ResidualFn& residual,
                          const JacobianFn& jacobian, const NewtonConfig& cfg);

struct StepResult {
  State state;
  NewtonReport report;
};

/// Solves for level history.step_index from the guess (v^{k-1}, u_bar, mu^{k-1}).
StepResult solve_step(const History& history, const Grid& grid, double dt,
                      const SchemeConfig& scheme, const NewtonConfig& newton);

}  // namespace biofilm
