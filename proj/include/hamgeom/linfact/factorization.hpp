#pragma once

// Factorization of linear vector fields x' = A x as A = Lambda * H with
// Lambda skew-symmetric invertible (Poisson) and H symmetric (Hamiltonian),
// and alternative descriptions obtained from linear symmetries T of A:
//   A = (T Lambda T^t) ((T^-1)^t H T^-1).

#include "hamgeom/scalar.hpp"

#include <optional>
#include <random>
#include <string>
#include <variant>

namespace hamgeom::linfact {

struct OddTraceResult {
  bool pass = true;
  int k = -1;          // first failing exponent is 2k+1
  Rational value = 0;  // Tr A^{2k+1} at the failure
  /// The criterion is necessary; it is sufficient only for generic A.
  static constexpr const char* note = "necessary; sufficient for generic (semisimple) A only";
};

/// Checks Tr A^{2k+1} = 0 for every odd exponent up to 2n-1.
OddTraceResult odd_trace_test(const ExactMatrix& a);

struct Factorization {
  ExactMatrix lambda;  // skew, invertible
  ExactMatrix ham;     // symmetric
  ExactMatrix source;  // lambda * ham
};

/// Throws std::logic_error naming the first violated invariant.
void verify(const Factorization& f);

struct NotDecomposable {
  std::string reason;
  std::optional<OddTraceResult> trace_witness;
};

inline constexpr const char* kNoSkewSolution = "no skew solution";
inline constexpr const char* kNoInvertibleElement = "no invertible element found within budget";

struct SearchBudget {
  int sweep_radius = 3;                 // integer coefficients in [-r, r]
  std::size_t max_sweep = 20000;        // cap on swept combinations
  std::size_t random_trials = 1000;
  int random_radius = 20;
};

/// Solves Omega A + A^t Omega = 0 over skew Omega, picks an invertible
/// kernel element and returns Lambda = Omega^-1, H = Omega A.
std::variant<Factorization, NotDecomposable> hamiltonian_factorize(const ExactMatrix& a, std::mt19937_64& rng,
                                                                   const SearchBudget& budget = {});

/// A linear map that is either exact, a symbolic multiple exp(s)·I, or
/// floating point.
class LinearMap {
 public:
  struct ScaledIdentity {
    Eigen::Index dim;
    Rational log_scale;  // the map is exp(log_scale) * I
  };

  LinearMap(ExactMatrix m) : repr_(std::move(m)) {}
  LinearMap(ScaledIdentity s) : repr_(std::move(s)) {}
  LinearMap(Eigen::MatrixXd m) : repr_(std::move(m)) {}

  Eigen::Index dimension() const;
  bool is_exact() const { return !std::holds_alternative<Eigen::MatrixXd>(repr_); }
  const ExactMatrix* exact() const { return std::get_if<ExactMatrix>(&repr_); }
  const ScaledIdentity* scaled_identity() const { return std::get_if<ScaledIdentity>(&repr_); }
  Eigen::MatrixXd to_double() const;

 private:
  std::variant<ExactMatrix, ScaledIdentity, Eigen::MatrixXd> repr_;
};

/// Absolute tolerance for floating-point symmetry checks, scaled by max(1, |A|_inf).
inline constexpr double kFloatTolerance = 1e-12;

/// T = exp(lam A^{2k}). Exact (as exp(lam c)·I) when A^{2k} = c·I, otherwise
/// floating point via scaling and squaring with a Pade approximant.
/// Throws std::invalid_argument for k < 1 and std::runtime_error when the
/// float result fails T A T^-1 = A.
LinearMap noncanonical_symmetry(const ExactMatrix& a, int k, const Rational& lam);

/// True iff T Lambda T^t = Lambda (exactly, or within tolerance for float T).
bool is_canonical(const LinearMap& t, const ExactMatrix& lambda);

/// Description produced by transform_description. For T = exp(s)·I the
/// matrices are kept exact with symbolic factors exp(lambda_log_scale) and
/// exp(ham_log_scale).
struct TransformedDescription {
  struct Scaled {
    Factorization base;
    Rational lambda_log_scale;
    Rational ham_log_scale;
  };
  struct Float {
    Eigen::MatrixXd lambda, ham;
  };
  std::variant<Factorization, Scaled, Float> value;
  bool differs = false;  // T is not canonical for the original Lambda
};

/// Throws std::invalid_argument when T is singular or does not commute with A.
TransformedDescription transform_description(const Factorization& f, const LinearMap& t);

}  // namespace hamgeom::linfact
