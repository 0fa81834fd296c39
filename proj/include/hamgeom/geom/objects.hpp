#pragma once

#include "hamgeom/expr/parser.hpp"
#include "hamgeom/expr/rational_function.hpp"

#include <map>
#include <string>
#include <vector>

namespace hamgeom::geom {

/// Strictly increasing coordinate indices of a basis form dx_i1 ^ ... ^ dx_ik.
using IndexTuple = std::vector<std::size_t>;

class VectorField {
 public:
  /// Throws std::invalid_argument unless there is one component per coordinate.
  VectorField(Chart chart, std::vector<RationalFunction> components);

  static VectorField zero(const Chart& chart);
  /// The coordinate field d/dx_i.
  static VectorField coordinate(const Chart& chart, std::size_t i);

  const Chart& chart() const { return chart_; }
  std::size_t dimension() const { return components_.size(); }
  const RationalFunction& operator[](std::size_t i) const { return components_.at(i); }
  const std::vector<RationalFunction>& components() const { return components_; }
  bool is_zero() const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const RationalFunction& f, const VectorField& x);
  friend bool operator==(const VectorField& a, const VectorField& b);

 private:
  Chart chart_;
  std::vector<RationalFunction> components_;
};

class DifferentialForm {
 public:
  using CoefficientMap = std::map<IndexTuple, RationalFunction>;

  DifferentialForm() : DifferentialForm(Chart(), 0) {}
  /// The zero form of the given degree.
  DifferentialForm(Chart chart, std::size_t degree);

  static DifferentialForm function(const Chart& chart, const RationalFunction& f);
  /// dx_i
  static DifferentialForm differential(const Chart& chart, std::size_t i);

  const Chart& chart() const { return chart_; }
  std::size_t degree() const { return degree_; }
  const CoefficientMap& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of dx_{indices} in any index order (antisymmetric);
  /// zero for repeated indices.
  RationalFunction component(std::vector<std::size_t> indices) const;

  /// Adds f dx_{indices}; the indices may be unordered, repeated indices
  /// contribute nothing.
  void add(std::vector<std::size_t> indices, const RationalFunction& f);

  DifferentialForm operator-() const;
  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator*(const RationalFunction& f, const DifferentialForm& a);
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b);

  /// Value of a 0-form. Throws std::logic_error for higher degrees.
  RationalFunction as_function() const;

 private:
  Chart chart_;
  std::size_t degree_;
  CoefficientMap coeffs_;
};

/// Mixed (1,1)-tensor; component(out, in) is the coefficient of
/// dx_in (x) d/dx_out.
class Tensor11 {
 public:
  /// Row-major components, row = output index.
  Tensor11(Chart chart, std::vector<RationalFunction> components);

  static Tensor11 identity(const Chart& chart);
  static Tensor11 zero(const Chart& chart);

  const Chart& chart() const { return chart_; }
  std::size_t dimension() const { return chart_.dimension(); }
  const RationalFunction& operator()(std::size_t out, std::size_t in) const;
  bool is_zero() const;
  /// True when every component is a constant.
  bool is_constant() const;

  VectorField apply(const VectorField& x) const;
  /// (this ∘ other)(X) = this(other(X)).
  Tensor11 compose(const Tensor11& other) const;

  friend bool operator==(const Tensor11& a, const Tensor11& b);

 private:
  Chart chart_;
  std::vector<RationalFunction> components_;
};

// Text forms mirror the system-file syntax and re-parse to equal values:
//   "2-form: (1) dq1^dp1 + (-1/2*q1) dq2^dp2"     "0-form: (q1^2)"
//   "field: [p1, -q1]"                             "tensor: [[0, 1], [0, 0]]"
std::string to_string(const DifferentialForm& a);
std::string to_string(const VectorField& x);
std::string to_string(const Tensor11& t);

DifferentialForm parse_form(std::string_view text, const Chart& chart);
VectorField parse_field(std::string_view text, const Chart& chart);
Tensor11 parse_tensor(std::string_view text, const Chart& chart);

namespace syntax_detail {
// Token-level entry points shared with the system-file reader. Each accepts
// an optional "k-form:" / "field:" / "tensor:" prefix.
DifferentialForm parse_form(const std::vector<syntax::Token>& t, std::size_t& pos, const Chart& chart);
VectorField parse_field(const std::vector<syntax::Token>& t, std::size_t& pos, const Chart& chart);
std::vector<std::vector<RationalFunction>> parse_matrix(const std::vector<syntax::Token>& t,
                                                        std::size_t& pos, const Chart& chart);
}  // namespace syntax_detail

}  // namespace hamgeom::geom
