#include "hamgeom/period/flow.hpp"

#include "hamgeom/errors.hpp"
#include "hamgeom/geom/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace hamgeom::period {

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) : nvars_(p.num_variables()) {
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(to_double(c));
    exponents_.insert(exponents_.end(), e.begin(), e.end());
  }
}

double CompiledPolynomial::operator()(const double* point) const {
  double sum = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double term = coeffs_[t];
    const std::uint32_t* e = exponents_.data() + t * nvars_;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (e[v]) term *= detail::ipow(point[v], e[v]);
    sum += term;
  }
  return sum;
}

CompiledFunction::CompiledFunction(const RationalFunction& f)
    : num_(f.numerator()), den_(f.denominator()), polynomial_(f.is_polynomial()) {
  if (polynomial_) den_constant_ = to_double(f.denominator().constant_term());
}

double CompiledFunction::operator()(const double* point) const {
  if (polynomial_) return num_(point) / den_constant_;
  const double d = den_(point);
  if (d == 0) throw PoleError("denominator vanishes at evaluation point");
  return num_(point) / d;
}

FlowSystem::FlowSystem(geom::VectorField field, RationalFunction h, std::vector<double> constants)
    : field_(std::move(field)), h_(std::move(h)), constants_(std::move(constants)), energy_(h_) {
  const Chart& chart = field_.chart();
  if (chart.dimension() == 0 || chart.dimension() % 2 != 0)
    throw std::invalid_argument("flow systems need an even-dimensional chart");
  if (constants_.size() != chart.num_constants())
    throw std::invalid_argument("expected " + std::to_string(chart.num_constants()) + " constant values");
  if (h_.num_variables() != chart.num_variables()) throw std::invalid_argument("hamiltonian is not on the chart");
  for (const auto& c : field_.components()) rhs_.emplace_back(c);
  for (std::size_t i = 0; i < chart.dimension(); ++i) gradient_.emplace_back(geom::partial(h_, chart, i));
}

FlowSystem FlowSystem::hamiltonian(const Chart& chart, const RationalFunction& h, std::vector<double> constants) {
  const std::size_t dim = chart.dimension();
  if (dim == 0 || dim % 2 != 0) throw std::invalid_argument("flow systems need an even-dimensional chart");
  const std::size_t n = dim / 2;
  std::vector<RationalFunction> comps(dim, RationalFunction(chart.num_variables()));
  for (std::size_t k = 0; k < n; ++k) {
    comps[k] = geom::partial(h, chart, n + k);
    comps[n + k] = -geom::partial(h, chart, k);
  }
  geom::VectorField field(chart, std::move(comps));

  geom::DifferentialForm omega(chart, 2);
  for (std::size_t k = 0; k < n; ++k) omega.add({k, n + k}, RationalFunction::constant(chart.num_variables(), 1));
  if (!(geom::interior_product(field, omega) == geom::differential(chart, h)))
    throw std::logic_error("derived field does not satisfy i_X(sum dq^dp) = dH");
  return FlowSystem(std::move(field), h, std::move(constants));
}

FlowSystem FlowSystem::with_field(const geom::VectorField& field, const RationalFunction& h,
                                  std::vector<double> constants) {
  return FlowSystem(field, h, std::move(constants));
}

std::vector<double> FlowSystem::point(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) throw std::invalid_argument("state has wrong dimension");
  std::vector<double> p(x.data(), x.data() + x.size());
  p.insert(p.end(), constants_.begin(), constants_.end());
  return p;
}

Eigen::VectorXd FlowSystem::rhs(const Eigen::VectorXd& x) const {
  const auto p = point(x);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out(i) = rhs_[static_cast<std::size_t>(i)](p.data());
    if (!std::isfinite(out(i))) throw std::domain_error("vector field is not finite");
  }
  return out;
}

double FlowSystem::energy(const Eigen::VectorXd& x) const { return energy_(point(x).data()); }

Eigen::VectorXd FlowSystem::energy_gradient(const Eigen::VectorXd& x) const {
  const auto p = point(x);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = gradient_[static_cast<std::size_t>(i)](p.data());
  return out;
}

}  // namespace hamgeom::period
