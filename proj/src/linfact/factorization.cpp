#include "hamgeom/linfact/factorization.hpp"

#include "hamgeom/exact_linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <stdexcept>

namespace hamgeom::linfact {

namespace {

bool is_skew(const ExactMatrix& m) { return m == ExactMatrix(-m.transpose()); }
bool is_symmetric(const ExactMatrix& m) { return m == ExactMatrix(m.transpose()); }

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

double tolerance_for(const Eigen::MatrixXd& a) { return kFloatTolerance * std::max(1.0, inf_norm(a)); }

}  // namespace

OddTraceResult odd_trace_test(const ExactMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("expected a non-empty square matrix");
  const Eigen::Index n = a.rows();
  const ExactMatrix a2 = a * a;
  ExactMatrix power = a;
  OddTraceResult r;
  for (int k = 0; 2 * k + 1 <= 2 * n - 1; ++k) {
    const Rational tr = power.trace();
    if (tr != 0) {
      r.pass = false;
      r.k = k;
      r.value = tr;
      return r;
    }
    power = power * a2;
  }
  return r;
}

void verify(const Factorization& f) {
  if (!is_skew(f.lambda)) throw std::logic_error("lambda is not skew-symmetric");
  if (!is_symmetric(f.ham)) throw std::logic_error("ham is not symmetric");
  if (exact::determinant(f.lambda) == 0) throw std::logic_error("lambda is singular");
  if (f.lambda * f.ham != f.source) throw std::logic_error("lambda * ham differs from the source matrix");
}

std::variant<Factorization, NotDecomposable> hamiltonian_factorize(const ExactMatrix& a, std::mt19937_64& rng,
                                                                   const SearchBudget& budget) {
  if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("expected a non-empty square matrix");
  const Eigen::Index n = a.rows();
  const auto trace = odd_trace_test(a);
  auto witness = [&]() -> std::optional<OddTraceResult> {
    if (trace.pass) return std::nullopt;
    return trace;
  };

  // Unknowns: Omega_ij for i < j. Equations: the strictly upper entries of
  // the skew matrix Omega A + A^t Omega.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const auto m = static_cast<Eigen::Index>(pairs.size());
  if (m == 0) return NotDecomposable{kNoSkewSolution, witness()};

  ExactMatrix system = ExactMatrix::Zero(m, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    const auto [r, c] = pairs[static_cast<std::size_t>(e)];
    for (Eigen::Index u = 0; u < m; ++u) {
      const auto [i, j] = pairs[static_cast<std::size_t>(u)];
      Rational coef = 0;
      if (r == i) coef += a(j, c);
      if (r == j) coef -= a(i, c);
      if (c == j) coef += a(i, r);
      if (c == i) coef -= a(j, r);
      system(e, u) = coef;
    }
  }
  const ExactMatrix basis = exact::kernel(system);
  const Eigen::Index d = basis.cols();
  if (d == 0) return NotDecomposable{kNoSkewSolution, witness()};
  if (n % 2 == 1) return NotDecomposable{kNoInvertibleElement, witness()};

  auto omega_from = [&](const std::vector<Integer>& coeffs) {
    ExactVector x = ExactVector::Zero(m);
    for (Eigen::Index l = 0; l < d; ++l)
      if (coeffs[static_cast<std::size_t>(l)] != 0) x += Rational(coeffs[static_cast<std::size_t>(l)]) * basis.col(l);
    ExactMatrix omega = ExactMatrix::Zero(n, n);
    for (Eigen::Index u = 0; u < m; ++u) {
      const auto [i, j] = pairs[static_cast<std::size_t>(u)];
      omega(i, j) = x(u);
      omega(j, i) = -x(u);
    }
    return omega;
  };
  auto attempt = [&](const std::vector<Integer>& coeffs) -> std::optional<Factorization> {
    const ExactMatrix omega = omega_from(coeffs);
    if (exact::determinant(omega) == 0) return std::nullopt;
    Factorization f{exact::inverse(omega), omega * a, a};
    verify(f);
    return f;
  };

  std::vector<Integer> coeffs(static_cast<std::size_t>(d), 0);
  // Basis elements first, then an odometer sweep over [-r, r]^d.
  for (Eigen::Index l = 0; l < d; ++l) {
    std::fill(coeffs.begin(), coeffs.end(), 0);
    coeffs[static_cast<std::size_t>(l)] = 1;
    if (auto f = attempt(coeffs)) return *f;
  }
  const int r = budget.sweep_radius;
  std::fill(coeffs.begin(), coeffs.end(), -r);
  for (std::size_t swept = 0; swept < budget.max_sweep; ++swept) {
    if (std::any_of(coeffs.begin(), coeffs.end(), [](const Integer& z) { return z != 0; }))
      if (auto f = attempt(coeffs)) return *f;
    std::size_t pos = 0;
    while (pos < coeffs.size() && coeffs[pos] == r) coeffs[pos++] = -r;
    if (pos == coeffs.size()) break;
    coeffs[pos] += 1;
  }
  std::uniform_int_distribution<int> dist(-budget.random_radius, budget.random_radius);
  for (std::size_t t = 0; t < budget.random_trials; ++t) {
    for (auto& c : coeffs) c = dist(rng);
    if (auto f = attempt(coeffs)) return *f;
  }
  return NotDecomposable{kNoInvertibleElement, witness()};
}

Eigen::Index LinearMap::dimension() const {
  return std::visit(
      [](const auto& v) -> Eigen::Index {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ScaledIdentity>) return v.dim;
        else return v.rows();
      },
      repr_);
}

Eigen::MatrixXd LinearMap::to_double() const {
  return std::visit(
      [](const auto& v) -> Eigen::MatrixXd {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, ScaledIdentity>)
          return std::exp(hamgeom::to_double(v.log_scale)) * Eigen::MatrixXd::Identity(v.dim, v.dim);
        else if constexpr (std::is_same_v<V, ExactMatrix>)
          return hamgeom::to_double(v);
        else
          return v;
      },
      repr_);
}

LinearMap noncanonical_symmetry(const ExactMatrix& a, int k, const Rational& lam) {
  if (k < 1) throw std::invalid_argument("symmetry exponent k must be positive");
  const Eigen::Index n = a.rows();
  ExactMatrix power = ExactMatrix::Identity(n, n);
  const ExactMatrix a2 = a * a;
  for (int i = 0; i < k; ++i) power = power * a2;
  const Rational c = power(0, 0);
  if (power == ExactMatrix(c * ExactMatrix::Identity(n, n))) {
    const Rational s = lam * c;
    if (s == 0) return LinearMap(ExactMatrix(ExactMatrix::Identity(n, n)));
    return LinearMap(LinearMap::ScaledIdentity{n, s});
  }
  const Eigen::MatrixXd arg = hamgeom::to_double(lam) * hamgeom::to_double(power);
  Eigen::MatrixXd t = arg.exp();
  const Eigen::MatrixXd ad = hamgeom::to_double(a);
  const double err = inf_norm(t * ad * t.inverse() - ad);
  if (err > tolerance_for(ad)) throw std::runtime_error("matrix exponential failed the symmetry check");
  return LinearMap(std::move(t));
}

bool is_canonical(const LinearMap& t, const ExactMatrix& lambda) {
  if (t.dimension() != lambda.rows()) throw std::invalid_argument("dimension mismatch");
  if (const auto* m = t.exact()) return ExactMatrix(*m * lambda * m->transpose()) == lambda;
  if (const auto* s = t.scaled_identity()) return s->log_scale == 0 || exact::is_zero(lambda);
  const Eigen::MatrixXd tm = t.to_double();
  const Eigen::MatrixXd l = hamgeom::to_double(lambda);
  return inf_norm(tm * l * tm.transpose() - l) <= tolerance_for(l);
}

TransformedDescription transform_description(const Factorization& f, const LinearMap& t) {
  if (t.dimension() != f.source.rows()) throw std::invalid_argument("dimension mismatch");
  TransformedDescription out;
  out.differs = !is_canonical(t, f.lambda);
  if (const auto* m = t.exact()) {
    if (exact::determinant(*m) == 0) throw std::invalid_argument("symmetry is singular");
    if (ExactMatrix(*m * f.source) != ExactMatrix(f.source * *m))
      throw std::invalid_argument("T is not a symmetry of A");
    const ExactMatrix inv = exact::inverse(*m);
    Factorization g{*m * f.lambda * m->transpose(), inv.transpose() * f.ham * inv, f.source};
    verify(g);
    out.value = std::move(g);
    return out;
  }
  if (const auto* s = t.scaled_identity()) {
    // exp(s) scales Lambda by exp(2s) and H by exp(-2s); the product is unchanged.
    out.value = TransformedDescription::Scaled{f, 2 * s->log_scale, -2 * s->log_scale};
    return out;
  }
  const Eigen::MatrixXd tm = t.to_double();
  const Eigen::MatrixXd ad = hamgeom::to_double(f.source);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(tm);
  if (!lu.isInvertible()) throw std::invalid_argument("symmetry is singular");
  const Eigen::MatrixXd inv = lu.inverse();
  if (inf_norm(tm * ad * inv - ad) > tolerance_for(ad)) throw std::invalid_argument("T is not a symmetry of A");
  TransformedDescription::Float g{tm * hamgeom::to_double(f.lambda) * tm.transpose(),
                                  inv.transpose() * hamgeom::to_double(f.ham) * inv};
  const double cond = std::max(1.0, inf_norm(tm) * inf_norm(inv));
  if (inf_norm(g.lambda * g.ham - ad) > tolerance_for(ad) * cond)
    throw std::logic_error("transformed description does not reproduce A");
  out.value = std::move(g);
  return out;
}

}  // namespace hamgeom::linfact
