#pragma once

// Resonance lattices {k in Z^n : k . omega = 0} for frequencies given as
// rational combinations of basis symbols assumed independent over Q.

#include "hamgeom/scalar.hpp"

#include <string>
#include <vector>

namespace hamgeom::torus {

struct FrequencySpec {
  std::vector<std::string> basis;  // symbols assumed algebraically independent
  ExactMatrix coeffs;              // n x m, omega_i = sum_j coeffs(i, j) basis_j

  Eigen::Index size() const { return coeffs.rows(); }
  /// Throws std::invalid_argument on shape mismatch, m = 0, n = 0 or a zero row.
  void validate() const;
};

inline constexpr const char* kIndependenceAssumption = "basis symbols assumed algebraically independent over Q";

/// Row Hermite normal form: U * a = h with U unimodular, h in row echelon
/// form, positive pivots, entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  Eigen::Index rank = 0;
};
HermiteForm hermite_normal_form(const IntMatrix& a);

struct ResonanceLattice {
  IntMatrix basis;  // r x n, rows in Hermite normal form
  Eigen::Index rank() const { return basis.rows(); }
};

ResonanceLattice resonance_lattice(const FrequencySpec& spec);

/// True iff k is an integer combination of the lattice rows.
bool contains(const ResonanceLattice& lattice, const IntVector& k);

/// n - rank of the resonance lattice.
Eigen::Index orbit_closure_dimension(const FrequencySpec& spec);

struct Classification {
  enum class Kind { integrable, superintegrable, maximally_superintegrable };
  Kind kind;
  Eigen::Index extra = 0;  // additional independent integrals
  Eigen::Index closure_dimension = 0;
};
std::string to_string(const Classification& c);

Classification classify(const FrequencySpec& spec);

/// Frequencies 2 s_a H_a(x0) of H = sum_a s_a H_a^2 at one initial condition,
/// with each mode energy H_a(x0) given as a row of coefficients over basis.
/// Unexcited modes (H_a(x0) = 0) are dropped. Throws std::invalid_argument
/// when no mode is excited or a sign is not +-1.
FrequencySpec nonlinear_oscillator_frequencies(const std::vector<std::string>& basis,
                                               const ExactMatrix& mode_energies, const std::vector<int>& signs);

}  // namespace hamgeom::torus
