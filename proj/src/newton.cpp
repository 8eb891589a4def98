#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "biofilm/solver.hpp"

namespace biofilm {

namespace {

double max_norm(std::span<const double> r) {
  double m = 0.0;
  for (double x : r) {
    if (!std::isfinite(x)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

void NewtonConfig::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (!(rel_tol >= 0.0)) throw std::invalid_argument("rel_tol must be nonnegative");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (damping == Damping::Armijo) {
    if (!(armijo_factor > 0.0 && armijo_factor < 1.0)) {
      throw std::invalid_argument("armijo_factor must lie in (0, 1)");
    }
    if (!(armijo_min_step > 0.0 && armijo_min_step <= 1.0)) {
      throw std::invalid_argument("armijo_min_step must lie in (0, 1]");
    }
  }
}

NewtonResult newton_solve(std::vector<double> x, const ResidualFn& residual,
                          const JacobianFn& jacobian, const NewtonConfig& cfg) {
  cfg.validate();
  NewtonReport report;
  std::vector<double> r(x.size());
  residual(x, r);
  double norm = max_norm(r);
  report.residual_norms.push_back(norm);
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * norm);

  std::vector<double> trial(x.size());
  std::vector<double> r_trial(x.size());

  while (norm > target && report.iterations < cfg.max_iters) {
    const BlockTridiagonalMatrix jac = jacobian(x);
    std::vector<double> step = solve_block_tridiagonal(jac, r);

    double alpha = 1.0;
    double trial_norm = 0.0;
    for (;;) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - alpha * step[i];
      try {
        residual(trial, r_trial);
        trial_norm = max_norm(r_trial);
      } catch (const SchemeError&) {
        trial_norm = std::numeric_limits<double>::infinity();
      }
      if (cfg.damping == Damping::None) break;
      if (trial_norm <= (1.0 - 1e-4 * alpha) * norm) break;
      const double next = alpha * cfg.armijo_factor;
      if (next < cfg.armijo_min_step) break;  // take the smallest step and move on
      alpha = next;
    }
    if (!std::isfinite(trial_norm)) {
      report.final_residual_norm = norm;
      throw NewtonError("Newton step produced a non-finite residual", std::move(report));
    }

    x.swap(trial);
    r.swap(r_trial);
    norm = trial_norm;
    ++report.iterations;
    report.residual_norms.push_back(norm);
  }

  report.final_residual_norm = norm;
  report.converged = norm <= target;
  if (!report.converged) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "Newton iteration did not converge after %d iterations (residual %.3e)",
                  report.iterations, norm);
    throw NewtonError(buf, std::move(report));
  }
  return {std::move(x), std::move(report)};
}

StepResult solve_step(const History& history, const Grid& grid, double dt,
                      const SchemeConfig& scheme, const NewtonConfig& newton) {
  const std::vector<double> u_bar = extrapolate(history);
  const bool first = history.step_index < 2;
  const TimeFormula formula = first ? TimeFormula::ImplicitEuler : TimeFormula::Bdf2;
  const State& prev2 = first ? history.prev : history.prev2;

  State guess = history.prev;
  guess.u = u_bar;

  ResidualFn res = [&](std::span<const double> x, std::span<double> r) {
    assemble_residual(unpack(x), history.prev, prev2, u_bar, grid, dt, scheme, formula, r);
  };
  JacobianFn jac = [&](std::span<const double> x) {
    return assemble_jacobian(unpack(x), u_bar, grid, dt, scheme, formula);
  };
  NewtonResult result = newton_solve(pack(guess), res, jac, newton);
  return {unpack(result.x), std::move(result.report)};
}

}  // namespace biofilm
