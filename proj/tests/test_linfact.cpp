#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hamgeom/exact_linalg.hpp"
#include "hamgeom/linfact/factorization.hpp"
#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace hamgeom;
using namespace hamgeom::linfact;

namespace {

ExactMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  ExactMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

ExactMatrix oscillator() { return mat({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}); }
ExactMatrix two_frequency() { return mat({{0, 0, 1, 0}, {0, 0, 0, 2}, {-1, 0, 0, 0}, {0, -2, 0, 0}}); }

ExactMatrix random_skew_invertible(support::Rng& rng, Eigen::Index n) {
  for (;;) {
    ExactMatrix s = ExactMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        s(i, j) = rng.rational(3, 2);
        s(j, i) = -s(i, j);
      }
    if (exact::determinant(s) != 0) return s;
  }
}

ExactMatrix random_symmetric(support::Rng& rng, Eigen::Index n) {
  ExactMatrix s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) s(i, j) = s(j, i) = rng.rational(3, 2);
  return s;
}

ExactMatrix random_invertible(support::Rng& rng, Eigen::Index n) {
  for (;;) {
    ExactMatrix p(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) p(i, j) = rng.integer(-2, 2);
    if (exact::determinant(p) != 0) return p;
  }
}

Rational trace_power(const ExactMatrix& a, int e) {
  ExactMatrix p = ExactMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < e; ++i) p = p * a;
  return p.trace();
}

}  // namespace

TEST_CASE("odd trace test examples") {
  CHECK(odd_trace_test(oscillator()).pass);
  const auto id = odd_trace_test(ExactMatrix::Identity(2, 2));
  CHECK_FALSE(id.pass);
  CHECK(id.k == 0);
  CHECK(id.value == 2);
  const auto cubic = odd_trace_test(mat({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, 0}}));
  CHECK_FALSE(cubic.pass);
  CHECK(cubic.k == 1);
  CHECK(cubic.value == -6);
}

TEST_CASE("factorize examples") {
  std::mt19937_64 rng(42);
  const auto osc = hamiltonian_factorize(oscillator(), rng);
  REQUIRE(std::holds_alternative<Factorization>(osc));
  const auto& f = std::get<Factorization>(osc);
  CHECK_NOTHROW(verify(f));
  CHECK(f.lambda * f.ham == oscillator());

  const auto id = hamiltonian_factorize(ExactMatrix::Identity(2, 2), rng);
  REQUIRE(std::holds_alternative<NotDecomposable>(id));
  const auto& nd = std::get<NotDecomposable>(id);
  CHECK(nd.reason == kNoSkewSolution);
  REQUIRE(nd.trace_witness.has_value());
  CHECK(nd.trace_witness->k == 0);
  CHECK(nd.trace_witness->value == 2);

  const auto odd = hamiltonian_factorize(ExactMatrix::Zero(3, 3), rng);
  REQUIRE(std::holds_alternative<NotDecomposable>(odd));
  CHECK(std::get<NotDecomposable>(odd).reason == kNoInvertibleElement);

  const auto two = hamiltonian_factorize(two_frequency(), rng);
  REQUIRE(std::holds_alternative<Factorization>(two));
  CHECK_NOTHROW(verify(std::get<Factorization>(two)));

  // nilpotent, passes every trace test, yet has an unpaired odd Jordan block
  const ExactMatrix j31 = mat({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  CHECK(odd_trace_test(j31).pass);
  CHECK(std::holds_alternative<NotDecomposable>(hamiltonian_factorize(j31, rng)));
}

TEST_CASE("verify names violated invariants") {
  Factorization f{ExactMatrix::Identity(2, 2), ExactMatrix::Identity(2, 2), ExactMatrix::Identity(2, 2)};
  CHECK_THROWS_AS(verify(f), std::logic_error);
  f.lambda = mat({{0, 1}, {-1, 0}});
  f.ham = mat({{0, 1}, {0, 0}});
  f.source = f.lambda * f.ham;
  CHECK_THROWS_AS(verify(f), std::logic_error);
}

TEST_CASE("random products Lambda0 H0 factorize") {
  support::Rng rng(7);
  std::mt19937_64 search(7);
  int count = 0;
  for (int i = 0; i < 120; ++i) {
    const Eigen::Index n = 2 * rng.integer(1, 4);
    const ExactMatrix a = random_skew_invertible(rng, n) * random_symmetric(rng, n);
    const auto r = hamiltonian_factorize(a, search);
    REQUIRE(std::holds_alternative<Factorization>(r));
    const auto& f = std::get<Factorization>(r);
    CHECK_NOTHROW(verify(f));
    CHECK(f.lambda * f.ham == a);
    CHECK(f.lambda.transpose() == -f.lambda);
    CHECK(f.ham.transpose() == f.ham);
    CHECK(exact::determinant(f.lambda) != 0);
    ++count;
  }
  CHECK(count >= 100);
}

TEST_CASE("odd traces vanish for every decomposable matrix") {
  support::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index n = 2 * rng.integer(1, 4);
    const ExactMatrix a = random_skew_invertible(rng, n) * random_symmetric(rng, n);
    for (int e = 1; e < 2 * n; e += 2) CHECK(trace_power(a, e) == 0);
    CHECK(odd_trace_test(a).pass);
  }
}

TEST_CASE("matrices violating the trace condition are rejected") {
  support::Rng rng(9);
  std::mt19937_64 search(9);
  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Index n = 2 * rng.integer(1, 4);
    ExactMatrix a(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) a(r, c) = rng.integer(-3, 3);
    const auto t = odd_trace_test(a);
    if (t.pass) continue;
    const auto r = hamiltonian_factorize(a, search);
    REQUIRE(std::holds_alternative<NotDecomposable>(r));
    CHECK(std::get<NotDecomposable>(r).trace_witness.has_value());
    ++rejected;
  }
  CHECK(rejected >= 50);
}

TEST_CASE("spectrum {1, -1, 2i, -2i} by similarity") {
  // q1' = q1, p1' = -p1, q2' = 2 p2, p2' = -2 q2 in (q1, q2, p1, p2) order
  const ExactMatrix a0 = mat({{1, 0, 0, 0}, {0, 0, 0, 2}, {0, 0, -1, 0}, {0, -2, 0, 0}});
  support::Rng rng(10);
  std::mt19937_64 search(10);
  for (int i = 0; i < 10; ++i) {
    const ExactMatrix p = random_invertible(rng, 4);
    const ExactMatrix a = p * a0 * exact::inverse(p);
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(to_double(a)).eigenvalues();
    std::vector<double> re, im;
    for (Eigen::Index k = 0; k < 4; ++k) {
      re.push_back(ev(k).real());
      im.push_back(ev(k).imag());
    }
    std::sort(re.begin(), re.end());
    std::sort(im.begin(), im.end());
    CHECK(re[0] == doctest::Approx(-1).epsilon(1e-8));
    CHECK(re[3] == doctest::Approx(1).epsilon(1e-8));
    CHECK(im[0] == doctest::Approx(-2).epsilon(1e-8));
    CHECK(im[3] == doctest::Approx(2).epsilon(1e-8));
    const auto r = hamiltonian_factorize(a, search);
    REQUIRE(std::holds_alternative<Factorization>(r));
    CHECK_NOTHROW(verify(std::get<Factorization>(r)));
  }
}

TEST_CASE("noncanonical symmetry on the oscillator is an exact scaling") {
  const auto t = noncanonical_symmetry(oscillator(), 1, Rational(1, 10));
  REQUIRE(t.scaled_identity() != nullptr);
  CHECK(t.scaled_identity()->log_scale == Rational(-1, 10));
  CHECK(t.is_exact());
  CHECK(t.dimension() == 4);
  CHECK(t.to_double().isApprox(std::exp(-0.1) * Eigen::MatrixXd::Identity(4, 4)));

  const auto id = noncanonical_symmetry(oscillator(), 1, Rational(0));
  REQUIRE(id.exact() != nullptr);
  CHECK(*id.exact() == ExactMatrix::Identity(4, 4));

  CHECK_THROWS_AS(noncanonical_symmetry(oscillator(), 0, Rational(1)), std::invalid_argument);
}

TEST_CASE("float exponential agrees with power-series partial sums") {
  support::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const ExactMatrix a = random_skew_invertible(rng, 4) * random_symmetric(rng, 4);
    const Rational lam(rng.integer(1, 5), 50);
    LinearMap t = ExactMatrix(ExactMatrix::Identity(4, 4));
    try {
      t = noncanonical_symmetry(a, 1, lam);
    } catch (const std::runtime_error&) {
      continue;  // commutation check failed for a badly conditioned draw
    }
    const ExactMatrix a2 = a * a;
    const Eigen::MatrixXd m = to_double(a2) * to_double(lam);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(4, 4), term = sum;
    for (int j = 1; j < 60; ++j) {
      term = term * m / j;
      sum += term;
    }
    const double scale = std::max(1.0, sum.cwiseAbs().maxCoeff());
    CHECK((t.to_double() - sum).cwiseAbs().maxCoeff() < 1e-9 * scale);
  }
  const auto two = noncanonical_symmetry(two_frequency(), 1, Rational(1, 10));
  CHECK_FALSE(two.is_exact());
  const Eigen::Vector4d diag(std::exp(-0.1), std::exp(-0.4), std::exp(-0.1), std::exp(-0.4));
  CHECK((two.to_double() - Eigen::MatrixXd(diag.asDiagonal())).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("is_canonical and transform_description") {
  std::mt19937_64 rng(12);
  const auto f = std::get<Factorization>(hamiltonian_factorize(oscillator(), rng));
  const auto scaled = noncanonical_symmetry(oscillator(), 1, Rational(1, 10));
  CHECK_FALSE(is_canonical(scaled, f.lambda));
  const auto d = transform_description(f, scaled);
  REQUIRE(std::holds_alternative<TransformedDescription::Scaled>(d.value));
  const auto& s = std::get<TransformedDescription::Scaled>(d.value);
  CHECK(s.lambda_log_scale == Rational(-1, 5));
  CHECK(s.ham_log_scale == Rational(1, 5));
  CHECK(d.differs);

  const LinearMap identity(ExactMatrix(ExactMatrix::Identity(4, 4)));
  CHECK(is_canonical(identity, f.lambda));
  const auto same = transform_description(f, identity);
  REQUIRE(std::holds_alternative<Factorization>(same.value));
  CHECK_FALSE(same.differs);
  CHECK(std::get<Factorization>(same.value).lambda == f.lambda);

  // the flow itself is a canonical linear symmetry
  const LinearMap flow(oscillator());
  CHECK(is_canonical(flow, f.lambda));
  const auto moved = transform_description(f, flow);
  REQUIRE(std::holds_alternative<Factorization>(moved.value));
  CHECK_NOTHROW(verify(std::get<Factorization>(moved.value)));

  const ExactMatrix noncommuting = mat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK_THROWS_AS(transform_description(f, LinearMap(noncommuting)), std::invalid_argument);
  CHECK_THROWS_AS(transform_description(f, LinearMap(ExactMatrix(ExactMatrix::Zero(4, 4)))), std::invalid_argument);

  const auto two = std::get<Factorization>(hamiltonian_factorize(two_frequency(), rng));
  const auto tf = transform_description(two, noncanonical_symmetry(two_frequency(), 1, Rational(1, 10)));
  REQUIRE(std::holds_alternative<TransformedDescription::Float>(tf.value));
  const auto& fl = std::get<TransformedDescription::Float>(tf.value);
  CHECK((fl.lambda * fl.ham - to_double(two_frequency())).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fl.lambda + fl.lambda.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((fl.ham - fl.ham.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(tf.differs);
}
