#include "hamgeom/period/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hamgeom::period {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                  const IntegratorOptions& opt) {
  double sum = 0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sk = opt.atol + opt.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    sum += (err(i) / sk) * (err(i) / sk);
  }
  return std::sqrt(sum / static_cast<double>(err.size()));
}

}  // namespace

Eigen::VectorXd DenseStep::operator()(double t) const {
  const double th = (t - t0) / h;
  const double th1 = 1 - th;
  return r1 + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
}

Dopri5::Dopri5(const FlowSystem& sys, Eigen::VectorXd x0, double t0, IntegratorOptions options)
    : sys_(sys), opt_(options), t_(t0), x_(std::move(x0)) {
  if (!(opt_.rtol > 0) || !(opt_.atol > 0)) throw std::invalid_argument("tolerances must be positive");
  k1_ = sys_.rhs(x_);
  h_ = initial_step();
}

double Dopri5::initial_step() const {
  // Starting step heuristic of Hairer, Norsett and Wanner.
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(x_.size());
  const double dnf = error_norm(k1_, x_, x_, opt_);
  const double dny = error_norm(x_, zero, zero, opt_);
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
  const Eigen::VectorXd x1 = x_ + h * k1_;
  const Eigen::VectorXd f1 = sys_.rhs(x1);
  const double der2 = error_norm(f1 - k1_, x_, x_, opt_) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 1.0 / 5);
  return std::min(100 * h, h1);
}

void Dopri5::step(double t_limit) {
  if (!(t_limit > t_)) throw std::invalid_argument("step limit must lie ahead of the current time");
  const double tiny = 16 * std::numeric_limits<double>::epsilon();
  for (;;) {
    if (++steps_ > opt_.max_steps) throw StepSizeUnderflow("step budget exhausted");
    double h = std::min(h_, t_limit - t_);
    if (h < tiny * std::max(1.0, std::abs(t_))) throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t_));
    const Eigen::VectorXd& k1 = k1_;
    const Eigen::VectorXd k2 = sys_.rhs(x_ + h * a21 * k1);
    const Eigen::VectorXd k3 = sys_.rhs(x_ + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = sys_.rhs(x_ + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = sys_.rhs(x_ + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 = sys_.rhs(x_ + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd y1 = x_ + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Eigen::VectorXd k7 = sys_.rhs(y1);
    const Eigen::VectorXd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, x_, y1, opt_);
    if (!std::isfinite(en)) {
      h_ = 0.2 * h;
      continue;
    }
    const double fac = en == 0 ? 10.0 : std::clamp(0.9 * std::pow(en, -1.0 / 5), 0.2, 10.0);
    if (en <= 1) {
      dense_.t0 = t_;
      dense_.h = h;
      dense_.r1 = x_;
      dense_.r2 = y1 - x_;
      dense_.r3 = h * k1 - dense_.r2;
      dense_.r4 = dense_.r2 - h * k7 - dense_.r3;
      dense_.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      t_ = (t_limit - (t_ + h) <= tiny * std::max(1.0, std::abs(t_limit))) ? t_limit : t_ + h;
      x_ = y1;
      k1_ = k7;
      h_ = h * fac;
      return;
    }
    h_ = h * std::min(fac, 1.0);
  }
}

Trajectory integrate(const FlowSystem& sys, const Eigen::VectorXd& x0, double t_end, const IntegratorOptions& options) {
  if (!(t_end > 0)) throw std::invalid_argument("t_end must be positive");
  Trajectory out;
  Dopri5 stepper(sys, x0, 0.0, options);
  const double e0 = sys.energy(x0);
  if (options.record) {
    out.times.push_back(0);
    out.states.push_back(x0);
  }
  while (stepper.time() < t_end) {
    stepper.step(t_end);
    out.max_energy_drift = std::max(out.max_energy_drift, std::abs(sys.energy(stepper.state()) - e0));
    if (options.record) {
      out.times.push_back(stepper.time());
      out.states.push_back(stepper.state());
    }
  }
  out.final_state = stepper.state();
  out.steps = stepper.steps();
  return out;
}

}  // namespace hamgeom::period
