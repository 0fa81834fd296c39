#include "hamgeom/period/period.hpp"

#include "hamgeom/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <thread>

namespace hamgeom::period {

namespace {

// Golden-section minimization of |x(t) - x0|^2 over one dense step.
std::pair<double, double> closest_approach(const DenseStep& step, const Eigen::VectorXd& x0, double a, double b) {
  const double invphi = (std::sqrt(5.0) - 1) / 2;
  auto dist2 = [&](double t) { return (step(t) - x0).squaredNorm(); };
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = dist2(c), fd = dist2(d);
  const double tol = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b));
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = dist2(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = dist2(d);
    }
  }
  const double t = (a + b) / 2;
  return {t, std::sqrt(dist2(t))};
}

Eigen::VectorXd random_direction(std::size_t dim, std::uint64_t seed, std::size_t level, std::size_t index,
                                 std::size_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(level), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  Eigen::VectorXd u(static_cast<Eigen::Index>(dim));
  do {
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
  } while (u.norm() == 0);
  return u.normalized();
}

struct Task {
  std::size_t level, index;
  double target;
  Eigen::VectorXd seed;
};

PeriodRecord run_task(const FlowSystem& sys, const Task& task, const PeriodOptions& options) {
  PeriodRecord r;
  r.level = task.level;
  r.seed_index = task.index;
  r.target_energy = task.target;
  r.seed = task.seed;
  r.energy = sys.energy(task.seed);
  try {
    const auto result = detect_period(sys, task.seed, options);
    if (const auto* p = std::get_if<Period>(&result)) {
      r.period = p->tau;
      r.converged = true;
      r.ambiguous = p->ambiguous;
      r.energy_drift = p->energy_drift;
    } else {
      const auto& np = std::get<NotPeriodic>(result);
      r.energy_drift = np.energy_drift;
      r.note = np.reason;
    }
  } catch (const std::exception& e) {
    r.note = e.what();
  }
  return r;
}

// Runs the tasks on a small worker pool; results keep task order.
std::vector<PeriodRecord> run_tasks(const FlowSystem& sys, const std::vector<Task>& tasks,
                                    const PeriodOptions& options) {
  std::vector<PeriodRecord> out(tasks.size());
  const std::size_t workers =
      std::min<std::size_t>(tasks.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futures;
  for (std::size_t w = 0; w < workers; ++w)
    futures.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = run_task(sys, tasks[i], options);
    }));
  for (auto& f : futures) f.get();
  return out;
}

PeriodTable scan(const FlowSystem& sys, const std::vector<double>& energies, std::size_t per_level,
                 const std::function<std::optional<Eigen::VectorXd>(std::size_t, std::size_t, double)>& seed_for,
                 const PeriodOptions& options) {
  PeriodTable table;
  std::vector<Task> tasks;
  for (std::size_t level = 0; level < energies.size(); ++level) {
    std::vector<Task> level_tasks;
    for (std::size_t i = 0; i < per_level; ++i) {
      auto seed = seed_for(level, i, energies[level]);
      if (!seed) break;
      level_tasks.push_back(Task{level, i, energies[level], std::move(*seed)});
    }
    if (level_tasks.size() < per_level) {
      table.empty_energies.push_back(energies[level]);
      continue;
    }
    for (auto& t : level_tasks) tasks.push_back(std::move(t));
  }
  table.records = run_tasks(sys, tasks, options);
  return table;
}

std::vector<double> periods_of(const PeriodTable& t) {
  std::vector<double> out;
  for (const auto& r : t.records)
    if (r.period) out.push_back(*r.period);
  return out;
}

}  // namespace

std::variant<Period, NotPeriodic> detect_period(const FlowSystem& sys, const Eigen::VectorXd& x0,
                                                const PeriodOptions& options) {
  if (!(options.eps > 0)) throw std::invalid_argument("eps must be positive");
  if (!(options.t_max > 0)) throw std::invalid_argument("t_max must be positive");
  Dopri5 stepper(sys, x0, 0.0, options.integrator);
  const double e0 = sys.energy(x0);
  double drift = 0;
  bool left = false;
  double g_prev = 0;
  while (stepper.time() < options.t_max) {
    stepper.step(options.t_max);
    const Eigen::VectorXd& x = stepper.state();
    drift = std::max(drift, std::abs(sys.energy(x) - e0));
    const double g = (x - x0).dot(stepper.derivative());
    if (!left) {
      left = (x - x0).norm() > options.eps;
      g_prev = g;
      continue;
    }
    if (g_prev < 0 && g >= 0) {
      const DenseStep& step = stepper.last_step();
      const auto [tau, dmin] = closest_approach(step, x0, step.t0, step.t0 + step.h);
      if (dmin < options.eps) return Period{tau, dmin, dmin > options.eps / 10, drift};
    }
    g_prev = g;
  }
  return NotPeriodic{left ? "no return within t_max" : "orbit never leaves the return ball", drift};
}

std::optional<Eigen::VectorXd> seed_on_level(const FlowSystem& sys, const Eigen::VectorXd& direction, double energy) {
  if (direction.norm() == 0) return std::nullopt;
  const Eigen::VectorXd u = direction.normalized();
  try {
    auto phi = [&](double s) { return sys.energy(s * u) - energy; };
    double lo = 0, hi = 1;
    if (!(phi(lo) < 0)) return std::nullopt;
    while (!(phi(hi) > 0)) {
      lo = hi;
      hi *= 2;
      if (hi > 1e8) return std::nullopt;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
      const double mid = (lo + hi) / 2;
      (phi(mid) > 0 ? hi : lo) = mid;
    }
    double s = (lo + hi) / 2;
    for (int i = 0; i < 3; ++i) {
      const double slope = sys.energy_gradient(s * u).dot(u);
      if (slope == 0) break;
      const double next = s - phi(s) / slope;
      if (!(next > 0) || !std::isfinite(next)) break;
      if (std::abs(phi(next)) > std::abs(phi(s))) break;
      s = next;
    }
    return Eigen::VectorXd(s * u);
  } catch (const PoleError&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

PeriodTable period_energy_scan(const FlowSystem& sys, const std::vector<double>& energies,
                               std::size_t seeds_per_energy, std::uint64_t seed, const PeriodOptions& options) {
  constexpr std::size_t kAttempts = 32;
  auto seed_for = [&](std::size_t level, std::size_t index, double e) -> std::optional<Eigen::VectorXd> {
    for (std::size_t attempt = 0; attempt < kAttempts; ++attempt)
      if (auto x = seed_on_level(sys, random_direction(sys.dimension(), seed, level, index, attempt), e)) return x;
    return std::nullopt;
  };
  return scan(sys, energies, seeds_per_energy, seed_for, options);
}

PeriodTable period_direction_scan(const FlowSystem& sys, const std::vector<double>& energies,
                                  const std::vector<Eigen::VectorXd>& directions, const PeriodOptions& options) {
  for (const auto& d : directions)
    if (static_cast<std::size_t>(d.size()) != sys.dimension())
      throw std::invalid_argument("direction has wrong dimension");
  auto seed_for = [&](std::size_t, std::size_t index, double e) { return seed_on_level(sys, directions[index], e); };
  return scan(sys, energies, directions.size(), seed_for, options);
}

DependenceResult dependence_test(const PeriodTable& table, double rel_tol) {
  DependenceResult out;
  std::size_t periods = 0;
  bool sampled = false;
  std::size_t i = 0;
  while (i < table.records.size()) {
    const std::size_t level = table.records[i].level;
    LevelSpread ls{level, table.records[i].target_energy, 0, {}};
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (; i < table.records.size() && table.records[i].level == level; ++i) {
      const auto& r = table.records[i];
      if (!r.period) continue;
      ls.records.push_back(i);
      lo = std::min(lo, *r.period);
      hi = std::max(hi, *r.period);
    }
    periods += ls.records.size();
    if (ls.records.size() < 2) continue;
    sampled = true;
    ls.spread = (hi - lo) / lo;
    if (ls.spread > rel_tol) {
      out.dependent = false;
      out.violations.push_back(std::move(ls));
    }
  }
  if (periods == 0) throw InsufficientData("period table contains no periods");
  out.insufficient_sampling = !sampled;
  return out;
}

ObstructionResult equivalence_obstruction(const PeriodTable& a, const PeriodTable& b, double rel_tol) {
  if (!dependence_test(a, rel_tol).dependent) throw std::invalid_argument("first table fails the dependence test");
  if (!dependence_test(b, rel_tol).dependent) throw std::invalid_argument("second table fails the dependence test");
  const auto pa = periods_of(a), pb = periods_of(b);
  const auto [a_lo, a_hi] = std::minmax_element(pa.begin(), pa.end());
  const auto [b_lo, b_hi] = std::minmax_element(pb.begin(), pb.end());
  const bool a_const = (*a_hi - *a_lo) / *a_lo <= rel_tol;
  const bool b_const = (*b_hi - *b_lo) / *b_lo <= rel_tol;
  if (a_const != b_const) return {true, kConstantVsVarying};
  if (*a_hi * (1 + rel_tol) < *b_lo || *b_hi * (1 + rel_tol) < *a_lo) return {true, kDisjointRanges};
  return {false, ""};
}

}  // namespace hamgeom::period
