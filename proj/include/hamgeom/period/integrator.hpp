#pragma once

// Adaptive Dormand-Prince 5(4) integration with continuous (dense) output.

#include "hamgeom/period/flow.hpp"

#include <stdexcept>
#include <vector>

namespace hamgeom::period {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 50'000'000;
  bool record = true;  // keep step-end states in the trajectory
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quartic interpolant of one accepted step on [t0, t0 + h].
struct DenseStep {
  double t0 = 0, h = 0;
  Eigen::VectorXd r1, r2, r3, r4, r5;
  Eigen::VectorXd operator()(double t) const;
};

/// One-step-at-a-time driver used by integrate and by period detection.
class Dopri5 {
 public:
  /// Throws std::invalid_argument for non-positive tolerances.
  Dopri5(const FlowSystem& sys, Eigen::VectorXd x0, double t0, IntegratorOptions options);

  /// Advances by one accepted step without passing t_limit. Throws
  /// StepSizeUnderflow, PoleError or std::domain_error.
  void step(double t_limit);

  double time() const { return t_; }
  const Eigen::VectorXd& state() const { return x_; }
  /// Field value at the current state.
  const Eigen::VectorXd& derivative() const { return k1_; }
  const DenseStep& last_step() const { return dense_; }
  std::size_t steps() const { return steps_; }

 private:
  double initial_step() const;

  const FlowSystem& sys_;
  IntegratorOptions opt_;
  double t_;
  Eigen::VectorXd x_, k1_;
  double h_;
  DenseStep dense_;
  std::size_t steps_ = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  Eigen::VectorXd final_state;
  double max_energy_drift = 0;  // max |H(x(t)) - H(x0)| over step ends
  std::size_t steps = 0;
};

/// Integrates from t = 0 to t_end. Throws std::invalid_argument when
/// t_end <= 0 or tolerances are not positive.
Trajectory integrate(const FlowSystem& sys, const Eigen::VectorXd& x0, double t_end, const IntegratorOptions& options = {});

}  // namespace hamgeom::period
