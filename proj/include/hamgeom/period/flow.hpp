#pragma once

// Numeric view of a vector field on a chart (q_1..q_n, p_1..p_n).

#include "hamgeom/geom/objects.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hamgeom::period {

/// A polynomial flattened for fast double evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);
  double operator()(const double* point) const;

 private:
  std::size_t nvars_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> exponents_;  // nvars_ entries per term
};

class CompiledFunction {
 public:
  CompiledFunction() = default;
  explicit CompiledFunction(const RationalFunction& f);
  /// Throws PoleError when the denominator vanishes.
  double operator()(const double* point) const;

 private:
  CompiledPolynomial num_, den_;
  bool polynomial_ = true;
  double den_constant_ = 1;
};

/// Positions are the first half of the chart coordinates, momenta the
/// second half. Constants are bound to numeric values.
class FlowSystem {
 public:
  /// Field q' = dH/dp, p' = -dH/dq. Throws std::invalid_argument for an odd
  /// chart, a wrong number of constant values, or if i_X(sum dq^dp) = dH
  /// fails symbolically.
  static FlowSystem hamiltonian(const Chart& chart, const RationalFunction& h, std::vector<double> constants = {});
  /// A user supplied field; h is only used for energy bookkeeping.
  static FlowSystem with_field(const geom::VectorField& field, const RationalFunction& h,
                               std::vector<double> constants = {});

  const Chart& chart() const { return field_.chart(); }
  const RationalFunction& hamiltonian() const { return h_; }
  const geom::VectorField& field() const { return field_; }
  std::size_t dimension() const { return field_.dimension(); }
  const std::vector<double>& constant_values() const { return constants_; }

  /// Throws PoleError at poles and std::domain_error on non-finite values.
  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const;
  double energy(const Eigen::VectorXd& x) const;
  /// Gradient of H with respect to the coordinates.
  Eigen::VectorXd energy_gradient(const Eigen::VectorXd& x) const;

 private:
  FlowSystem(geom::VectorField field, RationalFunction h, std::vector<double> constants);
  std::vector<double> point(const Eigen::VectorXd& x) const;

  geom::VectorField field_;
  RationalFunction h_;
  std::vector<double> constants_;
  std::vector<CompiledFunction> rhs_;
  CompiledFunction energy_;
  std::vector<CompiledFunction> gradient_;
};

}  // namespace hamgeom::period
