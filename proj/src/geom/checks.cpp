#include "hamgeom/geom/checks.hpp"

#include "hamgeom/exact_linalg.hpp"

#include <algorithm>

namespace hamgeom::geom {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: break;
  }
  return "unknown";
}

namespace {

Tri combine(std::initializer_list<Tri> parts) {
  bool unknown = false;
  for (Tri t : parts) {
    if (t == Tri::no) return Tri::no;
    if (t == Tri::unknown) unknown = true;
  }
  return unknown ? Tri::unknown : Tri::yes;
}

Tri from_bool(bool b) { return b ? Tri::yes : Tri::no; }

bool defined_at(const RationalFunction& f, const Point& x) {
  return f.denominator().evaluate<Rational>(x) != 0;
}

// Exact rows of component values at a point.
ExactMatrix evaluate_rows(const std::vector<std::vector<RationalFunction>>& rows, const Point& x) {
  ExactMatrix m(static_cast<Eigen::Index>(rows.size()),
                rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].evaluate<Rational>(x);
  return m;
}

}  // namespace

std::vector<Point> sample_points(const Chart& chart, const SampleOptions& opts,
                                 const std::vector<RationalFunction>& avoid) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> den_dist(1, 9);
  std::vector<Point> points;
  const std::size_t max_attempts = std::max<std::size_t>(100, opts.count * 100);
  for (std::size_t attempt = 0; attempt < max_attempts && points.size() < opts.count; ++attempt) {
    Point x(chart.num_variables());
    for (std::size_t v = 0; v < x.size(); ++v) {
      const int den = den_dist(rng);
      const int lo = chart.is_constant(v) ? den : -10 * den;
      std::uniform_int_distribution<int> num_dist(lo, 10 * den);
      x[v] = Rational(num_dist(rng), den);
    }
    if (std::all_of(avoid.begin(), avoid.end(), [&](const auto& f) { return defined_at(f, x); }))
      points.push_back(std::move(x));
  }
  return points;
}

HamiltonianReport is_hamiltonian_description(const VectorField& gamma, const DifferentialForm& w,
                                             const RationalFunction& h, const SampleOptions& opts) {
  if (w.degree() != 2) throw std::invalid_argument("Hamiltonian description needs a 2-form");
  if (!(gamma.chart() == w.chart())) throw std::invalid_argument("field and form on different charts");
  const Chart& chart = w.chart();
  HamiltonianReport r;
  r.residual = interior_product(gamma, w) - differential(chart, h);
  r.closed = exterior_derivative(w).is_zero();
  r.holds = r.residual.is_zero() && r.closed;
  r.determinant = determinant(two_form_matrix(w), chart.dimension());
  r.nondegenerate = from_bool(!r.determinant.is_zero());
  if (!r.determinant.is_zero()) {
    for (auto& x : sample_points(chart, opts, {r.determinant}))
      if (r.determinant.evaluate<Rational>(x) == 0) r.degenerate_samples.push_back(std::move(x));
  }
  return r;
}

RationalFunction twisted_hamiltonian(const VectorField& gamma, const Tensor11& t, const RationalFunction& f) {
  return -pairing(differential(gamma.chart(), f), t.apply(gamma));
}

TwistedDescriptionReport twisted_description(const VectorField& gamma, const Tensor11& t,
                                             const RationalFunction& f, const SampleOptions& opts) {
  TwistedDescriptionReport r;
  r.tensor_invariant = lie_derivative(gamma, t).is_zero();
  r.conserved = lie_derivative(gamma, f).is_zero();
  r.omega = omega_tf(t, f);
  r.hamiltonian = twisted_hamiltonian(gamma, t, f);
  r.description = is_hamiltonian_description(gamma, r.omega, r.hamiltonian, opts);
  return r;
}

bool NormalFormReport::passes() const {
  const bool decomposition = decomposition_exact.value_or(true) &&
                             (!decomposition_residual || *decomposition_residual < 1e-9);
  return condition_i && condition_ii && condition_iii && decomposition;
}

NormalFormReport check_normal_form(const VectorField& gamma, const std::vector<RationalFunction>& integrals,
                                   const std::vector<VectorField>& fields,
                                   const std::optional<std::vector<RationalFunction>>& nu,
                                   const SampleOptions& opts) {
  const Chart& chart = gamma.chart();
  const std::size_t n = integrals.size();
  if (n == 0 || n > chart.dimension()) throw std::invalid_argument("need between 1 and dim integrals");
  if (fields.size() != n) throw std::invalid_argument("number of fields must equal number of integrals");
  if (nu && nu->size() != n) throw std::invalid_argument("number of frequencies must equal number of fields");
  for (const auto& x : fields)
    if (!(x.chart() == chart)) throw std::invalid_argument("field on a different chart");

  NormalFormReport r;
  std::vector<RationalFunction> avoid(integrals);
  for (const auto& x : fields) avoid.insert(avoid.end(), x.components().begin(), x.components().end());
  avoid.insert(avoid.end(), gamma.components().begin(), gamma.components().end());
  if (nu) avoid.insert(avoid.end(), nu->begin(), nu->end());
  const auto points = sample_points(chart, opts, avoid);
  r.samples = points.size();

  // (i)
  std::vector<DifferentialForm> dfs;
  for (const auto& f : integrals) dfs.push_back(differential(chart, f));
  DifferentialForm top = dfs[0];
  for (std::size_t l = 1; l < n; ++l) top = wedge(top, dfs[l]);
  r.integrals_independent = !top.is_zero();
  r.integrals_conserved = std::all_of(integrals.begin(), integrals.end(),
                                      [&](const auto& f) { return lie_derivative(gamma, f).is_zero(); });
  std::vector<std::vector<RationalFunction>> jac;
  for (const auto& df : dfs) {
    std::vector<RationalFunction> row;
    for (std::size_t i = 0; i < chart.dimension(); ++i) row.push_back(df.component({i}));
    jac.push_back(std::move(row));
  }
  std::vector<std::vector<RationalFunction>> frame;
  for (const auto& x : fields) frame.push_back(x.components());
  for (const auto& x : points) {
    if (exact::rank(evaluate_rows(jac, x)) < static_cast<Eigen::Index>(n)) ++r.integral_rank_deficient_samples;
    if (exact::rank(evaluate_rows(frame, x)) < static_cast<Eigen::Index>(n)) ++r.field_dependent_samples;
  }
  r.condition_i = r.integrals_independent && r.integrals_conserved && r.integral_rank_deficient_samples == 0;

  // (ii)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j + 1; l < n; ++l)
      if (!lie_bracket(fields[j], fields[l]).is_zero()) r.noncommuting.emplace_back(j, l);
  r.condition_ii = r.noncommuting.empty() && r.field_dependent_samples == 0;

  // (iii)
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      if (!lie_derivative(fields[j], integrals[l]).is_zero()) r.invariance_violations.emplace_back(j, l);
  r.condition_iii = r.invariance_violations.empty();

  if (nu) {
    VectorField sum = VectorField::zero(chart);
    for (std::size_t j = 0; j < n; ++j) sum = sum + (*nu)[j] * fields[j];
    r.decomposition_exact = (sum - gamma).is_zero();
  } else {
    double worst = 0.0;
    for (const auto& x : points) {
      const ExactMatrix xt = evaluate_rows(frame, x);  // n x dim
      ExactVector g(static_cast<Eigen::Index>(chart.dimension()));
      for (std::size_t i = 0; i < chart.dimension(); ++i)
        g(static_cast<Eigen::Index>(i)) = gamma[i].evaluate<Rational>(x);
      const ExactMatrix normal = xt * xt.transpose();
      if (exact::determinant(normal) == 0) continue;
      const ExactVector coeff = exact::inverse(normal) * (xt * g);
      const ExactVector resid = g - xt.transpose() * coeff;
      for (Eigen::Index i = 0; i < resid.size(); ++i) worst = std::max(worst, std::abs(to_double(resid(i))));
    }
    r.decomposition_residual = worst;
  }
  return r;
}

Tri TangentReport::valid() const {
  return combine({from_bool(square_zero), from_bool(annihilates_delta), kernel_equals_image,
                  from_bool(twisted_square_zero)});
}

Tri CotangentReport::valid() const { return combine({from_bool(liouville), nondegenerate}); }

Tri LinearReport::valid() const {
  return combine({from_bool(vanishes_at_origin), unique_zero});
}

TangentReport validate_tangent(const Tensor11& s, const VectorField& delta) {
  const Chart& chart = s.chart();
  const auto n = chart.dimension();
  TangentReport r;
  r.square_zero = s.compose(s).is_zero();
  r.annihilates_delta = s.apply(delta).is_zero();
  if (s.is_constant()) {
    ExactMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s(i, j).constant_value();
    // With S^2 = 0, Im S lies in ker S; equal dimensions force equality.
    r.kernel_equals_image = from_bool(n % 2 == 0 && r.square_zero &&
                                      exact::rank(m) == static_cast<Eigen::Index>(n / 2));
  }
  r.twisted_square_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = DifferentialForm::function(chart, RationalFunction::variable(chart.num_variables(), i));
    if (!twisted_exterior_derivative(s, twisted_exterior_derivative(s, x)).is_zero()) {
      r.twisted_square_zero = false;
      break;
    }
  }
  return r;
}

CotangentReport validate_cotangent(const DifferentialForm& theta, const VectorField& delta) {
  if (theta.degree() != 1) throw std::invalid_argument("Liouville form must be a 1-form");
  CotangentReport r;
  const DifferentialForm w = exterior_derivative(theta);
  r.liouville = interior_product(delta, w) == theta;
  r.nondegenerate = from_bool(!determinant(two_form_matrix(w), theta.chart().dimension()).is_zero());
  return r;
}

LinearReport validate_linear(const VectorField& delta, const SampleOptions& opts) {
  const Chart& chart = delta.chart();
  LinearReport r;
  r.euler_coordinates = true;
  for (std::size_t i = 0; i < chart.dimension(); ++i) {
    const auto xi = RationalFunction::variable(chart.num_variables(), i);
    if (!(lie_derivative(delta, xi) == xi)) {
      r.euler_coordinates = false;
      break;
    }
  }
  Point origin(chart.num_variables(), Rational(0));
  for (std::size_t v = chart.dimension(); v < origin.size(); ++v) origin[v] = 1;
  r.vanishes_at_origin = std::all_of(delta.components().begin(), delta.components().end(), [&](const auto& c) {
    return defined_at(c, origin) && c.template evaluate<Rational>(origin) == 0;
  });
  for (const auto& x : sample_points(chart, opts, delta.components())) {
    if (std::all_of(delta.components().begin(), delta.components().end(),
                    [&](const auto& c) { return c.template evaluate<Rational>(x) == 0; }))
      ++r.zero_samples;
  }
  // An Euler field in these coordinates is sum x_i d/dx_i: its only zero is the origin.
  if (r.euler_coordinates) r.unique_zero = Tri::yes;
  else if (r.zero_samples > 0) r.unique_zero = Tri::no;
  return r;
}

}  // namespace hamgeom::geom
