#pragma once

// Period detection by full phase-space return, energy-period tables and the
// energy-period obstruction to equivalence of flows.

#include "hamgeom/period/integrator.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hamgeom::period {

struct PeriodOptions {
  IntegratorOptions integrator;
  double eps = 1e-6;     // radius of the return ball
  double t_max = 1e3;
};

struct Period {
  double tau = 0;
  double min_distance = 0;  // |x(tau) - x0| after refinement
  bool ambiguous = false;   // min_distance > eps / 10
  double energy_drift = 0;
};

struct NotPeriodic {
  std::string reason;
  double energy_drift = 0;
};

/// Integrates until the orbit returns within eps of x0 after leaving that
/// ball, then refines the closest approach on the dense output.
std::variant<Period, NotPeriodic> detect_period(const FlowSystem& sys, const Eigen::VectorXd& x0,
                                                const PeriodOptions& options = {});

struct PeriodRecord {
  std::size_t level = 0;       // index into the requested energies
  std::size_t seed_index = 0;  // index within the level
  double target_energy = 0;
  Eigen::VectorXd seed;
  double energy = 0;  // H(seed)
  std::optional<double> period;
  bool converged = false;  // a return was found and integration succeeded
  bool ambiguous = false;
  double energy_drift = 0;
  std::string note;
};

struct PeriodTable {
  std::vector<PeriodRecord> records;        // ordered by (level, seed_index)
  std::vector<double> empty_energies;       // no seed point found
};

/// Point s*u with H(s*u) = energy along direction u, s > 0, by bracketing,
/// bisection and Newton polishing. Returns nullopt if no such point is found.
std::optional<Eigen::VectorXd> seed_on_level(const FlowSystem& sys, const Eigen::VectorXd& direction, double energy);

/// seeds_per_energy random directions per level; the direction of record
/// (level, i) depends only on (seed, level, i). Integrations run in parallel
/// and are merged in (level, seed_index) order.
PeriodTable period_energy_scan(const FlowSystem& sys, const std::vector<double>& energies,
                               std::size_t seeds_per_energy, std::uint64_t seed, const PeriodOptions& options = {});

/// Same, with explicit seed directions used on every level.
PeriodTable period_direction_scan(const FlowSystem& sys, const std::vector<double>& energies,
                                  const std::vector<Eigen::VectorXd>& directions, const PeriodOptions& options = {});

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LevelSpread {
  std::size_t level = 0;
  double target_energy = 0;
  double spread = 0;  // (max - min) / min over the periods on the level
  std::vector<std::size_t> records;  // indices into the table
};

struct DependenceResult {
  bool dependent = true;
  bool insufficient_sampling = false;  // no level has two periods
  std::vector<LevelSpread> violations;
};

/// Throws InsufficientData when the table holds no period at all.
DependenceResult dependence_test(const PeriodTable& table, double rel_tol);

struct ObstructionResult {
  bool obstructed = false;
  std::string reason;  // empty when inconclusive
};

inline constexpr const char* kConstantVsVarying = "constant vs. energy-dependent period";
inline constexpr const char* kDisjointRanges = "disjoint period ranges";

/// One-sided: obstructed or inconclusive. Throws std::invalid_argument when
/// either table fails dependence_test and InsufficientData when either
/// table has no periods.
ObstructionResult equivalence_obstruction(const PeriodTable& a, const PeriodTable& b, double rel_tol);

}  // namespace hamgeom::period
