#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carpetlab/carpet.hpp"
#include "carpetlab/real.hpp"

namespace carpetlab {

/// beta(t) = t log_m N - log_m sum_{j nonvacant} a_j^{sigma + (1-sigma) t},
/// the moment-scaling exponent of the uniform Bernoulli measure. Concave and
/// increasing, with beta(1) = 0 and beta(0) = -dim_H.
Real beta(const CarpetProfile& prof, const Real& t);
Real beta(const CarpetProfile& prof, double t, long precision = Real::kDefaultPrecision);

/// Analytic derivative
///   log_m N - (1-sigma) (sum a_j^{e(t)} ln a_j) / (ln m * sum a_j^{e(t)}),
/// strictly decreasing from alpha_max (t -> -inf) to alpha_min (t -> +inf)
/// for non-regular carpets; constant for regular ones.
Real beta_prime(const CarpetProfile& prof, const Real& t);
Real beta_prime(const CarpetProfile& prof, double t, long precision = Real::kDefaultPrecision);

/// alpha_min = (sigma-1) log(max a_j)/log m + log N/log m, alpha_max the same
/// with the min nonzero row count; equal exactly when the carpet is regular.
std::pair<Real, Real> alpha_range(const CarpetProfile& prof,
                                  long precision = Real::kDefaultPrecision);

struct SpectrumPoint {
  Real t;      // argmin; +/-inf at the extrapolated endpoints
  Real h;      // Hausdorff dimension of the level set
  bool extrapolated_endpoint = false;
};

/// h(alpha) = alpha t* - beta(t*) with t* the bisection solution of
/// beta'(t*) = alpha (beta concave makes beta' monotone). Interior alphas
/// only; at alpha_min/alpha_max the one-sided limit is returned and flagged.
/// errors: AlphaOutOfRange outside the closed range; RegularDegenerate when a
/// regular carpet is queried away from its single admissible alpha = dim_H.
SpectrumPoint spectrum_value(const CarpetProfile& prof, const Real& alpha);

struct SpectrumSample {
  Real t;
  Real beta;
  Real alpha;  // beta'(t); strictly decreasing in t
  Real h;      // alpha * t - beta(t), in [0, 2]
};

struct SpectrumCurve {
  std::vector<SpectrumSample> samples;  // ordered by t
  Real alpha_min{Real::kDefaultPrecision};
  Real alpha_max{Real::kDefaultPrecision};
  long precision_bits = Real::kDefaultPrecision;
};

/// grid_points interior alphas, uniformly spaced in (alpha_min, alpha_max),
/// each solved by bisection. A regular carpet yields the single degenerate
/// sample at t = 0.
SpectrumCurve sample_curve(const CarpetProfile& prof, int grid_points,
                           long precision = Real::kDefaultPrecision);

/// Direct sampling on a uniform t grid (no bisection): every sample is a
/// tangent datum (alpha, h) of the curve.
SpectrumCurve sample_curve_uniform_t(const CarpetProfile& prof, double t_lo, double t_hi,
                                     int steps, long precision = Real::kDefaultPrecision);

/// Double transform: beta(t) recovered as min over samples of alpha_i t - h_i
/// (lower envelope of the tangents through the computed spectrum).
Real legendre_reconstruct_beta(const SpectrumCurve& curve, const Real& t);

/// log_n(N s^{1/sigma - 1})
Real dim_box(const CarpetProfile& prof, long precision = Real::kDefaultPrecision);
/// log_m sum_{j nonvacant} a_j^sigma
Real dim_hausdorff(const CarpetProfile& prof, long precision = Real::kDefaultPrecision);
/// log_m s + log_n max a_j
Real dim_assouad(const CarpetProfile& prof, long precision = Real::kDefaultPrecision);

/// Rigorous enclosures of the dimensions (directed rounding end to end).
Interval dim_box_enclosure(const CarpetProfile& prof, long precision = Real::kDefaultPrecision);
Interval dim_hausdorff_enclosure(const CarpetProfile& prof,
                                 long precision = Real::kDefaultPrecision);
Interval dim_assouad_enclosure(const CarpetProfile& prof,
                               long precision = Real::kDefaultPrecision);

/// Exact decision of dim_box equality where one exists: shared (s, N), or
/// rational sigma = p/q, where equality reduces to (N/N')^p = (s'/s)^{q-p}.
/// nullopt when only a precision comparison is available.
std::optional<bool> dim_box_equal_exact(const CarpetProfile& prof_e, const CarpetProfile& prof_f);

struct TriVerdict {
  enum class Value { Equal, NotEqual, UndecidedAtPrecision };
  Value value = Value::UndecidedAtPrecision;
  std::string certificate;
};

std::string to_string(TriVerdict::Value v);

/// Exact decision of multifractal-spectrum equality for carpets sharing
/// (n, m). Chain: count of distinct values; multiplicity ratios; a common
/// rational ratio rho = a_i*/b_i* forced to equal (s'/s)(N/N'); then the one
/// transcendental condition rho^sigma = s'/s resolved exactly when sigma is
/// rational or when rho (resp. s'/s) is a rational power of n (resp. m), and
/// by rigorous interval separation otherwise. The exact branches use no
/// floating arithmetic.
TriVerdict spectra_equal(const CarpetProfile& prof_e, const CarpetProfile& prof_f,
                         long precision = Real::kDefaultPrecision);

}  // namespace carpetlab
