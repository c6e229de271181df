#pragma once

#include <optional>
#include <vector>

#include "conestab/spectrum.hpp"
#include "conestab/weight.hpp"

namespace conestab {

/// Uniformly sampled solution of a profile ODE y'' + p(t) y' + q y = 0 with
/// quintic Hermite interpolation (y'' is recovered from the equation).
class SampledProfile {
 public:
  struct Sample {
    double t = 0.0;
    double y = 0.0;
    double dy = 0.0;
    double d2y = 0.0;
  };

  SampledProfile() = default;
  explicit SampledProfile(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const { return samples_; }
  double t_begin() const { return samples_.front().t; }
  double t_end() const { return samples_.back().t; }

  double value(double t) const;
  double derivative(double t) const;

 private:
  std::size_t cell(double t) const;
  std::vector<Sample> samples_;
  double step_ = 0.0;
};

/// Degree-one solution u = c·r·φ(t) on the Lawson cone
/// C(k,h) = {arctan(|z|/|y|) < θ*}, y ∈ R^k, z ∈ R^h, t = arctan(|z|/|y|).
/// The stored profile is already normalized so that φ'(θ*) = −1.
struct ConeSolution {
  int k = 0;
  int h = 0;
  double theta_star = 0.0;
  double normalization = 1.0;  // c, with |c·φ_raw'(θ*)| = 1
  SampledProfile profile;      // normalized φ on [0, θ*]
  double base_step = 0.0;

  int n() const { return k + h; }
  bool is_half_space() const { return k == 1; }
};

struct ConeSolveOptions {
  double tol = 1e-10;       // sets the RK4 base step, step = 0.05·tol^{1/4}
  int samples = 4096;
  double base_step = 0.0;   // overrides tol when positive
};

/// Integrates φ'' + ((h−1)cot t − (k−1)tan t)φ' + (n−1)φ = 0 from the regular
/// series start at t = 0 and returns the cone cut out by the first zero.
ConeSolution solve_cross_section(int k, int h, const ConeSolveOptions& options = {});

/// Coefficient of φ' in the cross-section ODE.
double profile_drift(int k, int h, double t);

struct BoundaryData {
  double theta = 0.0;
  Spectrum kappas;            // n−2 tangential curvatures w.r.t. the outer normal, at r = 1
  double H = 0.0;
  Spectrum hessian_spectrum;  // 0 radial, κ tangential, −H normal
  /// Hessian spectrum divided by H when that ratio is structurally rational
  /// (a single tangential family, h = 1).
  std::optional<ExactSpectrum> normalized_exact;
};

BoundaryData boundary_data(const ConeSolution& cone);

/// Eigenvalue families of D²u at r = 1 along the cross-section.
struct HessianFamilies {
  double lambda_y = 0.0;  // multiplicity k−1
  double lambda_z = 0.0;  // multiplicity h−1
  double lambda_p = 0.0;  // multiplicity 1, the (|y|,|z|)-plane direction
};

/// Valid on the closed interval [0, θ*] (limits taken at the ends).
HessianFamilies hessian_families(const ConeSolution& cone, double t);
Spectrum to_spectrum(const ConeSolution& cone, const HessianFamilies& fam);

/// D²u spectrum at angle t ∈ (0, θ*); throws OutOfDomain otherwise.
Spectrum hessian_field(const ConeSolution& cone, double t);

struct InteriorCheckResult {
  bool skipped = false;  // w ≡ 0 (half-space)
  double min_margin = 0.0;
  double argmin_t = 0.0;
  double scale = 0.0;
  int points_checked = 0;
  int points_guarded = 0;
  bool passed(double rel_tol = 1e-6) const {
    return skipped || min_margin >= -rel_tol * scale;
  }
};

/// Evaluates, at r = 1,
///   ŵ(Δ_Sŵ − (n−3)ŵ) − (2/(n−1))(ŵ² + ŵ'²) − 2(n−2)/(n−1) ŵ²
/// on gridN points of (0, θ*] with 4th-order finite differences, where
/// ŵ(t) = f(λ(t)). Stencils straddling a non-smooth point of f are excluded.
InteriorCheckResult interior_inequality_check(const ConeSolution& cone, const WeightSpec& spec,
                                              int gridN = 2048);

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at x0.
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& nodes,
                                            int max_order);

}  // namespace conestab
