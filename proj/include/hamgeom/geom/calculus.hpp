#pragma once

// Exterior calculus on a single chart. All operations are exact and throw
// std::invalid_argument when their operands live on different charts.

#include "hamgeom/geom/objects.hpp"

namespace hamgeom::geom {

/// Partial derivative along coordinate `i` (constants are scalars).
RationalFunction partial(const RationalFunction& f, const Chart& chart, std::size_t i);
/// Partial derivative along a named coordinate; throws std::invalid_argument
/// for names that are not coordinates of the chart.
RationalFunction partial(const RationalFunction& f, const Chart& chart, std::string_view coordinate);

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);

/// d; the derivative of a top-degree form is the zero form of degree dim.
DifferentialForm exterior_derivative(const DifferentialForm& a);
/// df for a function.
DifferentialForm differential(const Chart& chart, const RationalFunction& f);

/// i_X a; for a 0-form the result is the zero 0-form.
DifferentialForm interior_product(const VectorField& x, const DifferentialForm& a);
/// a(X) for a 1-form a.
RationalFunction pairing(const DifferentialForm& a, const VectorField& x);

RationalFunction lie_derivative(const VectorField& x, const RationalFunction& f);
/// Cartan: L_X = i_X d + d i_X.
DifferentialForm lie_derivative(const VectorField& x, const DifferentialForm& a);
VectorField lie_derivative(const VectorField& x, const VectorField& y);
Tensor11 lie_derivative(const VectorField& x, const Tensor11& t);

/// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// d_T f with (d_T f)(X) = df(T X).
DifferentialForm twisted_differential(const Tensor11& t, const RationalFunction& f);
/// omega_{T,F} = d d_T F; closed by construction.
DifferentialForm omega_tf(const Tensor11& t, const RationalFunction& f);

/// Degree-zero derivation i_T: (i_T a)(X1..Xk) = sum_s a(X1,..,T Xs,..,Xk).
DifferentialForm tensor_derivation(const Tensor11& t, const DifferentialForm& a);
/// Twisted differential on forms, d_T = i_T d - d i_T; agrees with
/// twisted_differential on functions.
DifferentialForm twisted_exterior_derivative(const Tensor11& t, const DifferentialForm& a);

/// Coefficient matrix w_ij = w(d/dx_i, d/dx_j) of a 2-form, row-major.
std::vector<RationalFunction> two_form_matrix(const DifferentialForm& w);
/// Exact determinant of a square matrix of rational functions (row-major).
RationalFunction determinant(std::vector<RationalFunction> m, std::size_t n);

}  // namespace hamgeom::geom
