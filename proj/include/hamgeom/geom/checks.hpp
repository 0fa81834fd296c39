#pragma once

// Verification of the structural identities: Hamiltonian descriptions,
// descriptions generated by invariant (1,1)-tensors, the normal-form
// conditions of an integrable system and tangent/cotangent/linear
// structures. Symbolic conditions are decided exactly; conditions that are
// only pointwise meaningful are sampled at reproducible rational points.

#include "hamgeom/geom/calculus.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

namespace hamgeom::geom {

enum class Tri { no, yes, unknown };
std::string to_string(Tri t);

using Point = std::vector<Rational>;

struct SampleOptions {
  std::size_t count = 8;
  std::uint64_t seed = 42;
};

/// Random rational points with coordinates in [-10, 10] and constants in
/// [1, 10], skipping points where any function in `avoid` has a pole.
std::vector<Point> sample_points(const Chart& chart, const SampleOptions& opts,
                                 const std::vector<RationalFunction>& avoid);

struct HamiltonianReport {
  bool holds = false;           // i_G w = dH and dw = 0
  bool closed = false;
  Tri nondegenerate = Tri::unknown;
  DifferentialForm residual;    // i_G w - dH
  RationalFunction determinant; // det of the coefficient matrix of w
  std::vector<Point> degenerate_samples;
};

/// Throws std::invalid_argument unless `w` is a 2-form on the field's chart.
HamiltonianReport is_hamiltonian_description(const VectorField& gamma, const DifferentialForm& w,
                                             const RationalFunction& h, const SampleOptions& opts = {});

/// Description generated by an invariant tensor and a constant of motion:
/// w = d d_T F with Hamiltonian -dF(T G).
struct TwistedDescriptionReport {
  bool tensor_invariant = false;  // L_G T = 0
  bool conserved = false;         // L_G F = 0
  DifferentialForm omega;
  RationalFunction hamiltonian;
  HamiltonianReport description;
};

RationalFunction twisted_hamiltonian(const VectorField& gamma, const Tensor11& t, const RationalFunction& f);
TwistedDescriptionReport twisted_description(const VectorField& gamma, const Tensor11& t,
                                             const RationalFunction& f, const SampleOptions& opts = {});

struct NormalFormReport {
  // (i)
  bool integrals_independent = false;  // df1 ^ ... ^ dfn != 0 as a form
  bool integrals_conserved = false;    // L_G f_l = 0
  std::size_t integral_rank_deficient_samples = 0;
  bool condition_i = false;
  // (ii)
  std::vector<std::pair<std::size_t, std::size_t>> noncommuting;
  std::size_t field_dependent_samples = 0;
  bool completeness_assumed = true;
  bool condition_ii = false;
  // (iii)
  std::vector<std::pair<std::size_t, std::size_t>> invariance_violations;  // (field, integral)
  bool condition_iii = false;
  // G = nu^j X_j
  std::optional<bool> decomposition_exact;     // when nu is supplied
  std::optional<double> decomposition_residual;  // pointwise least squares otherwise
  std::size_t samples = 0;

  bool passes() const;
};

/// Throws std::invalid_argument when the counts of integrals, fields and nu disagree.
NormalFormReport check_normal_form(const VectorField& gamma, const std::vector<RationalFunction>& integrals,
                                   const std::vector<VectorField>& fields,
                                   const std::optional<std::vector<RationalFunction>>& nu,
                                   const SampleOptions& opts = {});

struct TangentReport {
  bool square_zero = false;        // S o S = 0
  bool annihilates_delta = false;  // S(D) = 0
  Tri kernel_equals_image = Tri::unknown;  // rank S = dim/2, constant S only
  bool twisted_square_zero = false;  // d_S d_S x_i = 0 for every coordinate
  Tri valid() const;
};

struct CotangentReport {
  bool liouville = false;  // i_D d(theta) = theta
  Tri nondegenerate = Tri::unknown;
  Tri valid() const;
};

struct LinearReport {
  bool euler_coordinates = false;  // L_D x_i = x_i for each coordinate
  bool vanishes_at_origin = false;
  std::size_t zero_samples = 0;
  Tri unique_zero = Tri::unknown;
  Tri valid() const;
};

TangentReport validate_tangent(const Tensor11& s, const VectorField& delta);
CotangentReport validate_cotangent(const DifferentialForm& theta, const VectorField& delta);
LinearReport validate_linear(const VectorField& delta, const SampleOptions& opts = {});

}  // namespace hamgeom::geom
