#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "biofilm/params.hpp"
#include "biofilm/potential.hpp"

namespace biofilm {

/// Uniform cell-centred mesh of (0, 1).
class Grid {
 public:
  explicit Grid(int n_cells);

  int n_cells() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double center(int i) const noexcept { return (i + 0.5) * dx_; }
  std::vector<double> centers() const;

  bool operator==(const Grid&) const = default;

 private:
  int n_;
  double dx_;
};

/// Cell values of substrate v, biomass fraction u and chemical potential mu.
struct State {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> mu;

  State() = default;
  explicit State(std::size_t n) : u(n, 0.0), v(n, 0.0), mu(n, 0.0) {}

  std::size_t size() const noexcept { return u.size(); }
  bool consistent() const noexcept { return v.size() == u.size() && mu.size() == u.size(); }
  bool operator==(const State&) const = default;
};

/// Unknowns are interleaved per cell as (v_i, u_i, mu_i).
inline constexpr int kFieldsPerCell = 3;
inline constexpr int kV = 0;
inline constexpr int kU = 1;
inline constexpr int kMu = 2;

std::vector<double> pack(const State& s);
State unpack(std::span<const double> x);

/// The two time levels preceding the step being computed. step_index is the
/// index k of the level being solved for; at k = 1 only `prev` is used.
struct History {
  State prev;
  State prev2;
  int step_index = 1;
};

enum class Model {
  VolumeFilling,  ///< solvent factor (1-u) in mobility and production
  WangZhang,      ///< time derivative on (1-u)v, Monod consumption, mobility M0 u
};

enum class CoefficientTreatment {
  Extrapolated,  ///< D_+ and M evaluated at faces of the extrapolation 2u^{k-1} - u^{k-2}
  Implicit,      ///< D_+ and M evaluated at faces of the unknown u^k
};

struct SchemeConfig {
  Model model = Model::VolumeFilling;
  CoefficientTreatment treatment = CoefficientTreatment::Extrapolated;
  double delta = 1e-8;
  ScaledParams params = default_scaled_params();
  bool include_gamma_factors = true;

  void validate() const;

  double gradient_weight() const noexcept {
    return include_gamma_factors ? params.Gamma1_0 : 1.0;
  }
  double potential_weight() const noexcept {
    return include_gamma_factors ? params.Gamma2_0 : 1.0;
  }
  PotentialParams potential() const noexcept { return {params.N, params.lambda, delta}; }
};

std::string to_string(Model m);
std::string to_string(CoefficientTreatment t);

class SchemeError : public std::runtime_error {
 public:
  SchemeError(const std::string& what, int cell)
      : std::runtime_error(what + " (cell " + std::to_string(cell) + ")"), cell_(cell) {}
  int cell() const noexcept { return cell_; }

 private:
  int cell_;
};

/// Time-difference weights: dy/dt ~ (a0 y^k + a1 y^{k-1} + a2 y^{k-2}) / dt.
struct TimeWeights {
  double a0, a1, a2;
};

enum class TimeFormula { ImplicitEuler, Bdf2 };

constexpr TimeWeights time_weights(TimeFormula f) {
  return f == TimeFormula::Bdf2 ? TimeWeights{1.5, -2.0, 0.5} : TimeWeights{1.0, -1.0, 0.0};
}

/// Second-order predictor 2u^{k-1} - u^{k-2}; u^0 at the startup step.
std::vector<double> extrapolate(const History& history);

inline double face_average(double left, double right) { return 0.5 * (left + right); }

/// Substrate flux -D0 D_+(u_face) (v_right - v_left) / dx.
inline double flux_G(double u_face, double v_left, double v_right, double dx,
                     const ScaledParams& p) {
  return -p.D0 * truncated_diffusivity(u_face) * (v_right - v_left) / dx;
}

/// Biomass flux -M0 u_face (1 - u_face) (mu_right - mu_left) / dx.
inline double flux_F(double u_face, double mu_left, double mu_right, double dx,
                     const ScaledParams& p) {
  return -p.M0 * mobility(u_face) * (mu_right - mu_left) / dx;
}

/// Wang-Zhang biomass flux -M0 u_face (mu_right - mu_left) / dx.
inline double flux_F_wang_zhang(double u_face, double mu_left, double mu_right, double dx,
                                const ScaledParams& p) {
  return -p.M0 * u_face * (mu_right - mu_left) / dx;
}

/// Gradient-energy flux -Gamma1 (u_right - u_left) / dx (Gamma1 = 1 without gamma factors).
inline double flux_H(double u_left, double u_right, double dx, const SchemeConfig& cfg) {
  return -cfg.gradient_weight() * (u_right - u_left) / dx;
}

/// Full residual of one implicit step, 3 n_cells entries interleaved as in pack().
/// `prev2` is ignored for the implicit Euler formula.
void assemble_residual(const State& candidate, const State& prev, const State& prev2,
                       std::span<const double> u_bar, const Grid& grid, double dt,
                       const SchemeConfig& cfg, TimeFormula formula, std::span<double> out);

/// BDF2 residual (k >= 2) for the model selected in cfg.
std::vector<double> residual_bdf2(const State& candidate, const History& history,
                                  std::span<const double> u_bar, const Grid& grid, double dt,
                                  const SchemeConfig& cfg);

/// Implicit Euler startup residual; the extrapolation is u^0 itself.
std::vector<double> residual_first_step(const State& candidate, const State& initial,
                                        const Grid& grid, double dt, const SchemeConfig& cfg);

/// Dispatches on history.step_index.
std::vector<double> residual(const State& candidate, const History& history,
                             std::span<const double> u_bar, const Grid& grid, double dt,
                             const SchemeConfig& cfg);

/// mu = -Gamma1 (discrete Neumann Laplacian of u) + Gamma2 f'_delta(u).
std::vector<double> chemical_potential(std::span<const double> u, const Grid& grid,
                                       const SchemeConfig& cfg);

/// Midpoint projection of initial profiles, with mu computed from u.
template <class UFn, class VFn>
State project_initial(const Grid& grid, UFn&& u0, VFn&& v0, const SchemeConfig& cfg) {
  State s(static_cast<std::size_t>(grid.n_cells()));
  for (int i = 0; i < grid.n_cells(); ++i) {
    s.u[i] = u0(grid.center(i));
    s.v[i] = v0(grid.center(i));
  }
  s.mu = chemical_potential(s.u, grid, cfg);
  return s;
}

}  // namespace biofilm
