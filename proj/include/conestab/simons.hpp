#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conestab/cone_solver.hpp"
#include "conestab/rational.hpp"
#include "conestab/weight.hpp"

namespace conestab {

/// Counter-based stream: value i of stream s depends only on (seed, s, i).
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x9e37))) {}

  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Homogeneous polynomial of degree d in n variables with rational
/// coefficients, indexed by exponent vectors in graded-lex order.
struct HarmonicPoly {
  int n = 0;
  int d = 0;
  std::vector<std::vector<int>> exponents;
  std::vector<Rational> coefficients;
};

/// All exponent vectors of total degree d in n variables.
std::vector<std::vector<int>> monomial_basis(int n, int d);

/// Coefficients of Δp in the degree d−2 basis.
std::vector<Rational> laplacian_coefficients(const HarmonicPoly& p);

/// Exact rank of Δ: P_d → P_{d−2}; its kernel has dimension
/// C(n+d−1, d) − C(n+d−3, d−2).
int laplacian_rank(int n, int d);
int harmonic_dimension(int n, int d);

/// Random coefficients in [−10, 10] with denominators ≤ 64, projected onto
/// the harmonic subspace along |x|²·P_{d−2}.
HarmonicPoly random_harmonic_poly(int n, int d, std::uint64_t seed);

/// Dense evaluation of D²u and D³u of a polynomial at a point.
class PolyDerivatives {
 public:
  explicit PolyDerivatives(const HarmonicPoly& p);
  int n() const { return n_; }
  /// Row-major n×n Hessian.
  std::vector<double> hessian(std::span<const double> x) const;
  /// Row-major n×n×n third derivatives.
  std::vector<double> third(std::span<const double> x) const;

 private:
  struct Term {
    double coeff;
    std::vector<int> exps;
  };
  using Poly = std::vector<Term>;
  static double eval(const Poly& p, std::span<const double> x);
  int n_;
  std::vector<Poly> second_;  // index i*n+j
  std::vector<Poly> third_;   // index (i*n+j)*n+k
};

/// Weight value, analytic gradient and Laplacian at a point in the original
/// coordinates. Returns false when the point is outside the smoothness guard.
struct PointEvaluation {
  double w = 0.0;
  std::vector<double> grad;
  double laplacian = 0.0;
  double third_sq = 0.0;  // Σ u_{ijk}²
  double margin_to_nonsmooth = 0.0;
  double third_norm = 0.0;
};
bool evaluate_weight_at(const PolyDerivatives& dp, const WeightSpec& spec,
                        std::span<const double> x, PointEvaluation& out);

struct ViolationReport {
  std::uint64_t seed = 0;
  int samples_tested = 0;
  int samples_guarded = 0;
  double worst_margin = 0.0;        // min of (wΔw − (2/n)|∇w|²)/scale
  std::vector<double> worst_point;
  int hard_violations = 0;          // normalized margin < −tol_fd
  double tol_fd = 0.0;
  int fd_disagreements = 0;
  double max_gradient_rel_error = 0.0;
  double max_laplacian_rel_error = 0.0;
  double max_pairing_residual = 0.0;  // pairing identity, relative to f
  double min_pairing = 0.0;           // (fij), relative to f²
  bool passed() const { return hard_violations == 0 && fd_disagreements == 0; }
};

inline constexpr double kGradientFdTol = 1e-6;
inline constexpr double kLaplacianFdTol = 1e-5;
inline constexpr double kInequalityTol = 1e-9;

/// Checks wΔw ≥ (2/n)|∇w|² at `samples` points of the shell 0.1 ≤ |x| ≤ 1,
/// cross-checking ∇w and Δw against Richardson-extrapolated central
/// differences. Throws AllPointsGuarded if no point clears the guard.
ViolationReport verify_general_inequality(const HarmonicPoly& poly, const WeightSpec& spec,
                                          int samples, std::uint64_t seed);

/// Max over samples of |wΔw + |∇w|² − Σu_{ijk}²| / Σu_{ijk}² for the
/// frobenius weight.
double frobenius_identity(const HarmonicPoly& poly, int samples, std::uint64_t seed);

/// Improved inequality for homogeneous degree-one solutions, i.e. cones.
InteriorCheckResult homogeneous_improved_check(const ConeSolution& cone, const WeightSpec& spec,
                                               int gridN = 2048);

/// Sample point i of stream `seed` in the shell 0.1 ≤ |x| ≤ 1.
std::vector<double> shell_point(int n, std::uint64_t seed, std::uint64_t index);

}  // namespace conestab
