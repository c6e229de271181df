#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conestab/cone_solver.hpp"
#include "conestab/spectral_calculus.hpp"

namespace conestab {

enum class SpectralMethod { finite_difference, shooting };
std::string to_string(SpectralMethod m);

/// Λ = −inf (∫|∇ψ|² − ∫_{∂} Hψ²)/∫ψ² over the cross-section, restricted to
/// (k,h)-symmetric ψ (the ground state is symmetric).
struct SpectralResult {
  double Lambda = 0.0;
  SpectralMethod method = SpectralMethod::shooting;
  int gridN = 0;
  double convergence_estimate = 0.0;
  SampledProfile psi;  // ground state, max ψ = 1
  double H = 0.0;
};

/// Default marginal band on Λ − (n−2)²/4.
inline constexpr double kMarginalTol = 1e-7;

SpectralResult rayleigh_lambda(const ConeSolution& cone, SpectralMethod method,
                               int gridN = 4096);

/// Smallest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence
/// bisection.
double smallest_tridiagonal_eigenvalue(const std::vector<double>& diag,
                                       const std::vector<double>& off);

/// Eigenvalue count below x (number of negative pivots of T − xI).
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x);

enum class Verdict { stable, unstable, marginal };
std::string to_string(Verdict v);

struct WeightWindow {
  WeightSpec weight;
  BoundaryFunctionalResult boundary;
  SubsolutionWindow window;
};

struct StabilityReport {
  int k = 0, h = 0, n = 0;
  double theta_star = 0.0;
  double H = 0.0;
  double Lambda = 0.0;
  double Lambda_fd = 0.0;
  double Lambda_shoot = 0.0;
  double convergence_estimate = 0.0;
  double threshold = 0.0;  // (n−2)²/4
  double tol = kMarginalTol;
  Verdict verdict = Verdict::stable;
  WeightSpec selected_weight;
  double L = 0.0;     // frobenius boundary functional
  double B_a4 = 0.0;  // signed(4) boundary functional
  std::vector<WeightWindow> windows;  // frobenius, signed(4), max, plus selected if different
  bool criterion37_fired = false;
  bool methods_agree = true;          // |Λ_FD − Λ_shoot| ≤ 1e−6·max(1, Λ)
  bool consistent = true;             // strict window or criterion37 ⇒ unstable
  std::string consistency_detail;

  const WeightWindow* window_for(const WeightSpec& w) const;
};

struct StabilityOptions {
  double tol = kMarginalTol;
  int gridN = 4096;
  WeightSpec weight = WeightSpec::frobenius();
};

StabilityReport stability_verdict(const ConeSolution& cone, const StabilityOptions& options = {});

struct PositiveSolution {
  double decay_exponent = 0.0;  // γ̂, with f̄ = r^γ̂ ψ̄ harmonic
  SampledProfile psi;
  double residual = 0.0;
  double min_psi = 0.0;
};

/// Throws UnstableCone when Λ > (n−2)²/4.
PositiveSolution positive_solution(const ConeSolution& cone, const SpectralResult& spectral);
PositiveSolution positive_solution(const ConeSolution& cone);

struct CertificateLevel {
  int quadN = 0;
  double Q = 0.0;
  double weighted_l2 = 0.0;  // ∫ v²/|x|²
};

/// Explicit perturbation v = f(r) ψ̄(t), f(r) = r^{−(n−2)/2} cos(ω log r) on
/// one positive lobe, with Q(v) = ∫_Ω |∇v|² − ∫_{∂Ω} H v² < 0.
struct Certificate {
  int k = 0, h = 0, n = 0;
  double Lambda = 0.0;
  double beta = 0.0;
  double omega = 0.0;
  double r1 = 0.0, r2 = 0.0;
  double Q_value = 0.0;
  double margin_floor = 0.0;  // 0.5 (Λ − β) ∫ v²/|x|²
  std::vector<CertificateLevel> refinement_history;
};

/// Throws StableCone unless Λ > (n−2)²/4 + tol, MarginTooSmall when the sign
/// or the 1% agreement fails under quadrature doubling.
Certificate instability_certificate(const ConeSolution& cone, const SpectralResult& spectral,
                                    int quadN = 64, double tol = kMarginalTol);
Certificate instability_certificate(const ConeSolution& cone, int quadN = 64,
                                    double tol = kMarginalTol);

/// Q(v) for v = c·f(r)ψ̄(t); exposed for property tests.
double certificate_quadratic_form(const ConeSolution& cone, const SpectralResult& spectral,
                                  double beta, int quadN, double scale = 1.0,
                                  double* weighted_l2 = nullptr);

struct EulerZeros {
  bool oscillates = false;
  std::optional<double> spacing;          // closed form π/√(β − (α−1)²/4), in log r
  std::optional<double> numeric_spacing;  // from integrating the ODE
};

/// f'' + α f'/r + β f/r² = 0.
EulerZeros euler_zeros(double alpha, double beta, bool integrate = true);

}  // namespace conestab
