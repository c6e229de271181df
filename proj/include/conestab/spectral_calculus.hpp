#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conestab/rational.hpp"
#include "conestab/spectrum.hpp"
#include "conestab/weight.hpp"

namespace conestab {

/// Fully symmetric n×n×n tensor of third derivatives u_{ijk}, expressed in
/// the eigenbasis of D²u. Index order must match the eigenvalue order passed
/// alongside it.
class ThirdDerivatives {
 public:
  explicit ThirdDerivatives(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n), 0.0) {}

  int dimension() const { return n_; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  /// Writes all six permutations of (i, j, k).
  void set(int i, int j, int k, double value);

  /// Largest |u_{ijk} − u_{σ(ijk)}| over permutations.
  double asymmetry() const;
  double norm() const;

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  int n_;
  std::vector<double> data_;
};

/// w_k = Σ_i f_{λ_i} u_{iik}. Throws NonSmoothPoint outside the guard.
std::vector<double> weight_gradient(const WeightSpec& spec, std::span<const double> lambda,
                                    const ThirdDerivatives& third);

/// Δw for w = f(λ(D²u)) with u harmonic:
///   Σ_k [ Σ_{i,j} f_{λ_iλ_j} u_{iik} u_{jjk} + 2 Σ_{i<j} F_{e_ij,e_ij} u_{ijk}² ].
/// The Σ_i f_{λ_i} Δu_{ii} term vanishes for harmonic u and is omitted.
double weight_laplacian(const WeightSpec& spec, std::span<const double> lambda,
                        const ThirdDerivatives& third);

struct PairingIdentity {
  double pairing_sum = 0.0;  // Σ_{i<j} (λ_i − λ_j)(f_i − f_j)
  double nf = 0.0;
  double residual = 0.0;     // |pairing_sum − nf|
  std::vector<double> per_k; // Σ_{i≠k} (λ_i − λ_k)(f_i − f_k), each ≤ nf
  double min_pairing = 0.0;  // min over pairs of (f_i − f_j)(λ_i − λ_j)
};

/// Requires a trace-free spectrum at a guarded smooth point.
PairingIdentity identity_nf(const WeightSpec& spec, const Spectrum& lambda);

/// Boundary Hessian spectrum split into its structural parts: one radial 0,
/// one normal −H, and the n−2 tangential curvatures.
template <class T>
struct BoundarySplit {
  std::vector<T> tangential;
  T H{};
  int n = 0;
};

BoundarySplit<double> split_boundary(const Spectrum& lambda, double H);
BoundarySplit<Rational> split_boundary(const ExactSpectrum& lambda, const Rational& H);

/// L = 2 + Σ λ_k³ / (H w²), w the frobenius weight.
double boundary_L(const Spectrum& lambda, double H);
Rational boundary_L(const ExactSpectrum& lambda, const Rational& H);

enum class BoundaryCase { not_applicable, case1, case2 };
std::string to_string(BoundaryCase c);

struct BoundaryFunctionalResult {
  WeightSpec weight;
  int n = 0;
  double H = 0.0;
  double L = 0.0;                   // frobenius functional
  double B = 0.0;                   // −w_ν/(H w) for `weight`
  std::optional<Rational> L_exact;  // present for rational inputs
  std::optional<Rational> B_exact;
  BoundaryCase boundary_case = BoundaryCase::not_applicable;  // n = 4 only
  double case_mu = 0.0;
  bool equality_case = false;       // λ_2 > 0, λ_3 = λ_4 < 0 (n = 4)
  bool tangential_distinct = false; // two tangential eigenvalues differ
};

/// Signed weight with parameter a: B = 1 + (Σ λ_i³ + a Σ λ_s³ + a H Σ λ_k²)/(H w²).
/// For a = 1 the result equals boundary_L bit for bit.
BoundaryFunctionalResult boundary_B(const Spectrum& lambda, double H, const Rational& a);
BoundaryFunctionalResult boundary_B(const ExactSpectrum& lambda, const Rational& H,
                                    const Rational& a);

/// Same functional for any shipped weight.
BoundaryFunctionalResult boundary_functional(const WeightSpec& weight, const Spectrum& lambda,
                                             double H);
BoundaryFunctionalResult boundary_functional(const WeightSpec& weight,
                                             const ExactSpectrum& lambda, const Rational& H);

/// −w_ν/(H w) from the gradient route, Σ_i f_{λ_i} u_{iiν}, with u_{iiν} from
/// the free boundary relations. Independent of the closed forms above.
double boundary_B_from_gradient(const WeightSpec& weight, const Spectrum& lambda, double H);

struct LStarResult {
  int n = 0;
  double sup = 0.0;  // +inf when divergence is detected
  bool infinite = false;
  bool attained = false;
  std::vector<double> witness;  // μ-vector, Σμ = 1
  std::vector<std::pair<double, double>> history;  // (radius, incumbent)
};

/// sup of G(μ) = 2 + (Σμ³ − 1)/(1 + Σμ²) over Σμ = 1 in n−2 variables.
LStarResult lstar_optimize(int n, double radius_max = 1048576.0);

struct SubsolutionWindow {
  double alpha_min = 0.0;  // (n−2)²/(4(n−1))
  double alpha_max = 0.0;  // 1/B (+inf when B ≤ 0)
  std::optional<Rational> alpha_min_exact;
  std::optional<Rational> alpha_max_exact;
  bool nonempty = false;
  bool strict = false;
  std::string strict_reason;
  double alpha = 0.0;  // exponent used for v̄ = w^α
  double gamma = 0.0;  // α(α + 1)
};

SubsolutionWindow subsolution_window(const BoundaryFunctionalResult& bd, int n);

/// True iff (n−2)²/(4(n−1)) < 1/L.
bool criterion37(double L, int n, const std::optional<Rational>& L_exact = std::nullopt);

struct IdentityRecord {
  std::string identity;
  std::vector<Rational> lhs_coeffs;  // ascending powers of μ
  std::vector<Rational> rhs_coeffs;
  bool verdict = false;
  std::string detail;
};

struct IdentityProof {
  std::vector<IdentityRecord> records;
  bool verdict = false;
};

/// Exact verification of the two algebraic facts behind B ≤ 3 for n = 4,
/// a = 4. Throws IdentityViolated if any record fails.
IdentityProof case_identity_check();

}  // namespace conestab
