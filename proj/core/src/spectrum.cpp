#include "carpetlab/spectrum.hpp"

#include <algorithm>
#include <numeric>

#include "carpetlab/errors.hpp"

namespace carpetlab {

namespace {

// Shared transcendental context for one profile at one precision.
struct Evaluator {
  const CarpetProfile& prof;
  long prec;
  Real ln_m, ln_n, ln_N, sigma, one_minus_sigma;
  std::vector<Real> ln_a;  // ln a_i*, aligned with prof.a_star

  Evaluator(const CarpetProfile& p, long precision)
      : prof(p),
        prec(precision),
        ln_m(ln_long(p.m, precision)),
        ln_n(ln_long(p.n, precision)),
        ln_N(ln_long(p.N, precision)),
        sigma(ln_m / ln_n),
        one_minus_sigma(Real(1L, precision) - sigma) {
    ln_a.reserve(p.a_star.size());
    for (long v : p.a_star) ln_a.push_back(ln_long(v, precision));
  }

  // sum M_i a_i^{e(t)} and sum M_i a_i^{e(t)} ln a_i, e(t) = sigma + (1-sigma) t
  std::pair<Real, Real> weighted_sums(const Real& t) const {
    const Real e = sigma + one_minus_sigma * t;
    Real sum(0L, prec), sum_ln(0L, prec);
    for (size_t i = 0; i < ln_a.size(); ++i) {
      const Real term = Real(static_cast<long>(prof.mult[i]), prec) * (e * ln_a[i]).exp();
      sum = sum + term;
      sum_ln = sum_ln + term * ln_a[i];
    }
    return {sum, sum_ln};
  }

  Real beta(const Real& t) const {
    const auto [sum, sum_ln] = weighted_sums(t);
    return (t * ln_N - sum.ln()) / ln_m;
  }

  Real beta_prime(const Real& t) const {
    const auto [sum, sum_ln] = weighted_sums(t);
    return (ln_N - one_minus_sigma * (sum_ln / sum)) / ln_m;
  }

  Real alpha_of_count(long a_value) const {
    return (ln_N - one_minus_sigma * ln_long(a_value, prec)) / ln_m;
  }
};

}  // namespace

Real beta(const CarpetProfile& prof, const Real& t) {
  return Evaluator(prof, t.precision()).beta(t);
}

Real beta(const CarpetProfile& prof, double t, long precision) {
  return beta(prof, Real(t, precision));
}

Real beta_prime(const CarpetProfile& prof, const Real& t) {
  return Evaluator(prof, t.precision()).beta_prime(t);
}

Real beta_prime(const CarpetProfile& prof, double t, long precision) {
  return beta_prime(prof, Real(t, precision));
}

std::pair<Real, Real> alpha_range(const CarpetProfile& prof, long precision) {
  Evaluator ev(prof, precision);
  return {ev.alpha_of_count(prof.a_max()), ev.alpha_of_count(prof.a_min())};
}

namespace {

// Endpoint limits of the spectrum: h -> log_m(M a^sigma) as the weights
// concentrate on the extreme row count a with multiplicity M.
Real endpoint_spectrum(const Evaluator& ev, long a_value, long multiplicity) {
  return (ln_long(multiplicity, ev.prec) + ev.sigma * ln_long(a_value, ev.prec)) / ev.ln_m;
}

SpectrumPoint solve_interior(const Evaluator& ev, const Real& alpha) {
  // expand a bracket [lo, hi] with beta'(lo) > alpha > beta'(hi)
  Real lo(-1L, ev.prec), hi(1L, ev.prec);
  const Real two(2L, ev.prec);
  for (int i = 0; i < 256 && !(ev.beta_prime(lo) > alpha); ++i) lo = lo * two;
  for (int i = 0; i < 256 && !(ev.beta_prime(hi) < alpha); ++i) hi = hi * two;

  Real tol(1L, ev.prec);
  mpfr_mul_2si(tol.raw(), tol.raw(), -(ev.prec / 2), MPFR_RNDN);

  Real mid = (lo + hi) / two;
  for (long it = 0; it < ev.prec + 80; ++it) {
    const Real d = ev.beta_prime(mid);
    if ((d - alpha).abs() <= tol) break;
    if (d > alpha)
      lo = mid;
    else
      hi = mid;
    mid = (lo + hi) / two;
  }
  SpectrumPoint p{mid, alpha * mid - ev.beta(mid), false};
  return p;
}

}  // namespace

SpectrumPoint spectrum_value(const CarpetProfile& prof, const Real& alpha) {
  Evaluator ev(prof, alpha.precision());
  if (is_regular(prof)) {
    const Real dimension = endpoint_spectrum(ev, prof.a_max(), prof.mult.front());
    Real tol(1L, ev.prec);
    mpfr_mul_2si(tol.raw(), tol.raw(), -(ev.prec / 2), MPFR_RNDN);
    if ((alpha - dimension).abs() > tol)
      throw Error(Errc::RegularDegenerate, "regular carpet: only alpha = dim_H admissible");
    return {Real(0L, ev.prec), dimension, false};
  }

  const Real amin = ev.alpha_of_count(prof.a_max());
  const Real amax = ev.alpha_of_count(prof.a_min());
  if (alpha < amin || alpha > amax)
    throw Error(Errc::AlphaOutOfRange, "alpha outside the closed spectrum range");
  if (!(alpha > amin)) {
    Real t_inf(ev.prec);
    mpfr_set_inf(t_inf.raw(), 1);
    return {t_inf, endpoint_spectrum(ev, prof.a_max(), prof.mult.front()), true};
  }
  if (!(alpha < amax)) {
    Real t_inf(ev.prec);
    mpfr_set_inf(t_inf.raw(), -1);
    return {t_inf, endpoint_spectrum(ev, prof.a_min(), prof.mult.back()), true};
  }
  return solve_interior(ev, alpha);
}

SpectrumCurve sample_curve(const CarpetProfile& prof, int grid_points, long precision) {
  Evaluator ev(prof, precision);
  SpectrumCurve curve;
  curve.precision_bits = precision;
  auto [amin, amax] = alpha_range(prof, precision);
  curve.alpha_min = amin;
  curve.alpha_max = amax;
  if (is_regular(prof)) {
    const Real t0(0L, precision);
    const Real b0 = ev.beta(t0);
    const Real a0 = ev.beta_prime(t0);
    curve.samples.push_back({t0, b0, a0, a0 * t0 - b0});
    return curve;
  }
  const Real step = (amax - amin) / Real(grid_points + 1L, precision);
  for (int i = 1; i <= grid_points; ++i) {
    const Real alpha = amin + step * Real(static_cast<long>(i), precision);
    SpectrumPoint p = solve_interior(ev, alpha);
    curve.samples.push_back({p.t, ev.beta(p.t), alpha, p.h});
  }
  std::sort(curve.samples.begin(), curve.samples.end(),
            [](const SpectrumSample& a, const SpectrumSample& b) { return a.t < b.t; });
  return curve;
}

SpectrumCurve sample_curve_uniform_t(const CarpetProfile& prof, double t_lo, double t_hi,
                                     int steps, long precision) {
  Evaluator ev(prof, precision);
  SpectrumCurve curve;
  curve.precision_bits = precision;
  auto [amin, amax] = alpha_range(prof, precision);
  curve.alpha_min = amin;
  curve.alpha_max = amax;
  const Real lo(t_lo, precision);
  const Real span(t_hi - t_lo, precision);
  for (int i = 0; i <= steps; ++i) {
    const Real t = lo + span * Real(static_cast<long>(i), precision) / Real(static_cast<long>(steps), precision);
    const Real b = ev.beta(t);
    const Real a = ev.beta_prime(t);
    curve.samples.push_back({t, b, a, a * t - b});
  }
  return curve;
}

Real legendre_reconstruct_beta(const SpectrumCurve& curve, const Real& t) {
  if (curve.samples.empty()) throw Error(Errc::ParseError, "empty spectrum curve");
  Real best = curve.samples.front().alpha * t - curve.samples.front().h;
  for (size_t i = 1; i < curve.samples.size(); ++i) {
    const Real v = curve.samples[i].alpha * t - curve.samples[i].h;
    if (v < best) best = v;
  }
  return best;
}

Real dim_box(const CarpetProfile& prof, long precision) {
  const Real ln_n = ln_long(prof.n, precision);
  const Real ln_m = ln_long(prof.m, precision);
  const Real ln_N = ln_long(prof.N, precision);
  const Real ln_s = ln_long(prof.s, precision);
  // 1/sigma - 1 = (ln n - ln m)/ln m
  return (ln_N + (ln_n - ln_m) / ln_m * ln_s) / ln_n;
}

Real dim_hausdorff(const CarpetProfile& prof, long precision) {
  Evaluator ev(prof, precision);
  Real sum(0L, precision);
  for (size_t i = 0; i < prof.a_star.size(); ++i)
    sum = sum + Real(static_cast<long>(prof.mult[i]), precision) * (ev.sigma * ev.ln_a[i]).exp();
  return sum.ln() / ev.ln_m;
}

Real dim_assouad(const CarpetProfile& prof, long precision) {
  return ln_long(prof.s, precision) / ln_long(prof.m, precision) +
         ln_long(prof.a_max(), precision) / ln_long(prof.n, precision);
}

Interval dim_box_enclosure(const CarpetProfile& prof, long precision) {
  const Interval ln_n = Interval::ln_of_long(prof.n, precision);
  const Interval ln_m = Interval::ln_of_long(prof.m, precision);
  const Interval ln_N = Interval::ln_of_long(prof.N, precision);
  const Interval ln_s = Interval::ln_of_long(prof.s, precision);
  return (ln_N + (ln_n - ln_m).div(ln_m).mul(ln_s)).div(ln_n);
}

Interval dim_hausdorff_enclosure(const CarpetProfile& prof, long precision) {
  const Interval ln_n = Interval::ln_of_long(prof.n, precision);
  const Interval ln_m = Interval::ln_of_long(prof.m, precision);
  const Interval sigma = ln_m.div(ln_n);
  Interval sum = Interval::exact(Rational(0), precision);
  for (size_t i = 0; i < prof.a_star.size(); ++i) {
    const Interval term =
        Interval::exact(Rational(prof.mult[i]), precision)
            .mul(sigma.mul(Interval::ln_of_long(prof.a_star[i], precision)).exp());
    sum = sum + term;
  }
  // ln of an interval with positive lower end
  Real lo(precision), hi(precision);
  mpfr_log(lo.raw(), sum.lo().raw(), MPFR_RNDD);
  mpfr_log(hi.raw(), sum.hi().raw(), MPFR_RNDU);
  return Interval(lo, hi).div(ln_m);
}

Interval dim_assouad_enclosure(const CarpetProfile& prof, long precision) {
  const Interval ln_n = Interval::ln_of_long(prof.n, precision);
  const Interval ln_m = Interval::ln_of_long(prof.m, precision);
  return Interval::ln_of_long(prof.s, precision).div(ln_m) +
         Interval::ln_of_long(prof.a_max(), precision).div(ln_n);
}

std::optional<bool> dim_box_equal_exact(const CarpetProfile& e, const CarpetProfile& f) {
  if (e.n != f.n || e.m != f.m) return std::nullopt;
  if (e.s == f.s) return e.N == f.N;
  if (e.sigma_class.kind == SigmaClass::Kind::Rational) {
    // equality <=> N s^{(q-p)/p} matches <=> (N/N')^p = (s'/s)^{q-p}
    const long p = e.sigma_class.p, q = e.sigma_class.q;
    return Rational::pow(Rational(e.N, f.N), p) == Rational::pow(Rational(f.s, e.s), q - p);
  }
  return std::nullopt;
}

std::string to_string(TriVerdict::Value v) {
  switch (v) {
    case TriVerdict::Value::Equal: return "equal";
    case TriVerdict::Value::NotEqual: return "not-equal";
    case TriVerdict::Value::UndecidedAtPrecision: return "undecided-at-precision";
  }
  return "undecided-at-precision";
}

namespace {

// x = base^{u/v} with gcd(u, v) = 1, decided by prime-exponent
// proportionality and confirmed by a verification power.
std::optional<std::pair<long, long>> rational_power_of(const Rational& x, long base) {
  if (x.sign() <= 0 || base < 2) return std::nullopt;
  if (x == Rational(1)) return std::make_pair(0L, 1L);
  const BigInt num = x.numerator(), den = x.denominator();
  if (!num.fits_long() || !den.fits_long()) return std::nullopt;

  auto base_f = factorize_u64(static_cast<std::uint64_t>(base));
  std::vector<std::pair<std::uint64_t, long>> xf;
  for (auto [p, m] : factorize_u64(static_cast<std::uint64_t>(num.to_long()))) xf.emplace_back(p, m);
  for (auto [p, m] : factorize_u64(static_cast<std::uint64_t>(den.to_long()))) xf.emplace_back(p, -m);

  // exponent vector of x must be (u/v) times that of base
  long u = 0, v = 0;
  for (auto [p, e] : xf) {
    auto it = std::find_if(base_f.begin(), base_f.end(), [&](auto& b) { return b.first == p; });
    if (it == base_f.end()) return std::nullopt;
    if (v == 0) {
      u = e;
      v = it->second;
    } else if (static_cast<long long>(e) * v != static_cast<long long>(u) * it->second) {
      return std::nullopt;
    }
  }
  for (auto [p, f] : base_f) {
    (void)f;
    if (std::find_if(xf.begin(), xf.end(), [&](auto& b) { return b.first == p; }) == xf.end())
      return std::nullopt;  // base prime missing from x
  }
  const long g = std::gcd(std::abs(u), v);
  u /= g;
  v /= g;
  if (Rational::pow(x, v) != Rational::pow(Rational(base), u)) return std::nullopt;
  return std::make_pair(u, v);
}

std::string ratio_str(const Rational& r) { return r.to_string(); }

}  // namespace

TriVerdict spectra_equal(const CarpetProfile& e, const CarpetProfile& f, long precision) {
  if (e.n != f.n || e.m != f.m)
    throw Error(Errc::ShapeMismatch, "spectra_equal needs a shared expansion pair");

  TriVerdict out;
  const size_t pe = e.a_star.size(), pf = f.a_star.size();
  if (pe != pf) {
    out.value = TriVerdict::Value::NotEqual;
    out.certificate = "distinct row-count multiplicities differ: " + std::to_string(pe) + " vs " +
                      std::to_string(pf);
    return out;
  }

  // multiplicity ratios must all equal s'/s (exact integers cross-multiplied)
  for (size_t i = 0; i < pe; ++i) {
    if (static_cast<long>(f.mult[i]) * e.s != static_cast<long>(e.mult[i]) * f.s) {
      out.value = TriVerdict::Value::NotEqual;
      out.certificate = "multiplicity ratio M'_" + std::to_string(i + 1) + "/M_" +
                        std::to_string(i + 1) + " != s'/s";
      return out;
    }
  }

  // one common ratio rho = a_i*/b_i*, forced to equal (s'/s)(N/N')
  const Rational rho(e.a_star[0], f.a_star[0]);
  for (size_t i = 1; i < pe; ++i) {
    if (Rational(e.a_star[i], f.a_star[i]) != rho) {
      out.value = TriVerdict::Value::NotEqual;
      out.certificate = "value ratios a_i*/b_i* are not a single rational";
      return out;
    }
  }
  const Rational forced = Rational(f.s, e.s) * Rational(e.N, f.N);
  if (rho != forced) {
    out.value = TriVerdict::Value::NotEqual;
    out.certificate = "rho = " + ratio_str(rho) + " differs from (s'/s)(N/N') = " + ratio_str(forced);
    return out;
  }

  if (rho == Rational(1)) {
    const bool same = e.N == f.N && e.s == f.s && e.a_star == f.a_star;
    out.value = same ? TriVerdict::Value::Equal : TriVerdict::Value::NotEqual;
    out.certificate = same ? "identical distribution data (rho = 1)"
                           : "rho = 1 but profiles differ";
    return out;
  }

  const Rational s_ratio(f.s, e.s);  // the residual condition is rho^sigma = s'/s

  if (e.sigma_class.kind == SigmaClass::Kind::Rational) {
    const long p = e.sigma_class.p, q = e.sigma_class.q;
    const bool ok = Rational::pow(rho, p) == Rational::pow(s_ratio, q);
    out.value = ok ? TriVerdict::Value::Equal : TriVerdict::Value::NotEqual;
    out.certificate = "sigma = " + std::to_string(p) + "/" + std::to_string(q) +
                      " rational: rho^p = (s'/s)^q checked exactly";
    return out;
  }

  if (auto uv = rational_power_of(rho, e.n)) {
    const auto [u, v] = *uv;
    const bool ok = Rational::pow(s_ratio, v) == Rational::pow(Rational(e.m), u);
    out.value = ok ? TriVerdict::Value::Equal : TriVerdict::Value::NotEqual;
    out.certificate = "rho = " + ratio_str(rho) + " = n^(" + std::to_string(u) + "/" +
                      std::to_string(v) + "); m^(u/v) vs s'/s checked exactly";
    return out;
  }
  if (auto uv = rational_power_of(s_ratio, e.m)) {
    const auto [u, v] = *uv;
    const bool ok = Rational::pow(rho, v) == Rational::pow(Rational(e.n), u);
    out.value = ok ? TriVerdict::Value::Equal : TriVerdict::Value::NotEqual;
    out.certificate = "s'/s = " + ratio_str(s_ratio) + " = m^(" + std::to_string(u) + "/" +
                      std::to_string(v) + "); n^(u/v) vs rho checked exactly";
    return out;
  }

  // interval fallback: enclose rho^sigma rigorously and compare with s'/s
  const Interval ln_rho = Interval::ln_of(rho, precision);
  const Interval sigma =
      Interval::ln_of_long(e.m, precision).div(Interval::ln_of_long(e.n, precision));
  const Interval rho_sigma = sigma.mul(ln_rho).exp();
  if (!rho_sigma.contains(s_ratio)) {
    out.value = TriVerdict::Value::NotEqual;
    out.certificate = "interval separation of rho^sigma from s'/s at " +
                      std::to_string(precision) + " bits";
    return out;
  }
  out.value = TriVerdict::Value::UndecidedAtPrecision;
  out.certificate = "rho^sigma indistinguishable from s'/s at " + std::to_string(precision) + " bits";
  return out;
}

}  // namespace carpetlab
