#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carpetlab/errors.hpp"
#include "carpetlab/spectrum.hpp"
#include "test_util.hpp"

using namespace carpetlab;

namespace {

// Frozen expectations for the figure-2 carpet (n = 27, m = 8), computed by a
// standalone 320-bit MPFR evaluation of the defining formulas, with 3^sigma
// checked equal to 2 exactly.
constexpr double kDimH = 0.783227940065192524;
constexpr double kDimB = 0.789690082142847521;  // = 1 - log2/(3 log3)
constexpr double kDimA = 0.876976584523819146;
constexpr double kAlphaMin = 0.738630751430871206;
constexpr double kAlphaMax = 0.861654166907052060;
constexpr double kHAtAlphaMin = 0.543643251190485812;  // log_8 6^sigma
constexpr double kHAtAlphaMax = 1.0 / 3.0;             // log_8 2
constexpr double kAlphaAtT1 = 0.779638556589598158;

double dbl(const Real& r) { return r.to_double(); }

CarpetProfile regular_profile() {
  // n = 4, m = 2, two digits in one row: uniform fibers
  return profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[1,0]]})"));
}

}  // namespace

TEST_CASE("beta identities") {
  const CarpetProfile e = profile(testutil::ex18_D());

  SUBCASE("beta(1) = 0 exactly up to rounding") {
    CHECK(beta(e, 1.0).abs().to_double() < 1e-60);
  }
  SUBCASE("beta(0) = -dim_H") {
    CHECK(dbl(beta(e, 0.0)) == doctest::Approx(-kDimH).epsilon(1e-12));
    CHECK((beta(e, 0.0) + dim_hausdorff(e)).abs().to_double() < 1e-60);
  }
  SUBCASE("beta is affine for regular carpets") {
    const CarpetProfile reg = regular_profile();
    const Real b0 = beta(reg, -2.0), b1 = beta(reg, 0.5), b2 = beta(reg, 3.0);
    // collinearity of three points
    const Real lhs = (b1 - b0) * Real(3.0 - (-2.0), 256);
    const Real rhs = (b2 - b0) * Real(0.5 - (-2.0), 256);
    CHECK((lhs - rhs).abs().to_double() < 1e-60);
    CHECK((beta_prime(reg, -5.0) - beta_prime(reg, 7.0)).abs().to_double() < 1e-60);
  }
  SUBCASE("concavity: second differences never positive beyond rounding") {
    for (const CarpetProfile& prof : {e, profile(testutil::ex17_Dprime())}) {
      Real prev = beta(prof, -5.0), cur = beta(prof, -5.0 + 0.25);
      for (int i = 2; i <= 40; ++i) {
        const Real next = beta(prof, -5.0 + 0.25 * i);
        CHECK(dbl(next - cur - (cur - prev)) < 1e-12);
        prev = cur;
        cur = next;
      }
    }
  }
}

TEST_CASE("beta_prime agrees with central finite differences") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const Real h(1e-12, 256);
  for (double t : {-3.0, -0.7, 0.0, 1.0, 2.5}) {
    const Real t0(t, 256);
    const Real numeric = (beta(e, t0 + h) - beta(e, t0 - h)) / (h + h);
    CHECK((beta_prime(e, t0) - numeric).abs().to_double() < 1e-12);
  }
  SUBCASE("monotone non-increasing on a grid") {
    Real prev = beta_prime(e, -6.0);
    for (int i = 1; i <= 48; ++i) {
      const Real cur = beta_prime(e, -6.0 + 0.25 * i);
      CHECK(cur <= prev);
      prev = cur;
    }
  }
  SUBCASE("limits approach the alpha endpoints") {
    CHECK(dbl(beta_prime(e, 80.0)) == doctest::Approx(kAlphaMin).epsilon(1e-9));
    CHECK(dbl(beta_prime(e, -80.0)) == doctest::Approx(kAlphaMax).epsilon(1e-9));
  }
}

TEST_CASE("alpha range") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const CarpetProfile f = profile(testutil::ex18_Dprime());

  auto [amin_e, amax_e] = alpha_range(e);
  auto [amin_f, amax_f] = alpha_range(f);
  CHECK(dbl(amin_e) == doctest::Approx(kAlphaMin).epsilon(1e-12));
  CHECK(dbl(amax_e) == doctest::Approx(kAlphaMax).epsilon(1e-12));
  CHECK(amin_e < amax_e);

  // the figure-2 pair has identical ranges (their spectra coincide)
  CHECK((amin_e - amin_f).abs().to_double() < 1e-12);
  CHECK((amax_e - amax_f).abs().to_double() < 1e-12);

  SUBCASE("regular carpets collapse the range") {
    auto [lo, hi] = alpha_range(regular_profile());
    CHECK((lo - hi).abs().to_double() < 1e-60);
  }
}

TEST_CASE("spectrum values") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const CarpetProfile f = profile(testutil::ex18_Dprime());

  SUBCASE("at alpha(1) the minimizer is t* = 1 and h = alpha") {
    const Real alpha = beta_prime(e, 1.0);
    CHECK(dbl(alpha) == doctest::Approx(kAlphaAtT1).epsilon(1e-12));
    const SpectrumPoint p = spectrum_value(e, alpha);
    CHECK((p.t - Real(1L, 256)).abs().to_double() < 1e-12);
    CHECK((p.h - alpha).abs().to_double() < 1e-25);
    // the bisection residual contract
    CHECK((beta_prime(e, p.t) - alpha).abs().to_double() < 1e-10);
  }

  SUBCASE("the figure-2 pair agrees on a 9-point interior grid") {
    auto [amin, amax] = alpha_range(e);
    const Real step = (amax - amin) / Real(10L, 256);
    for (int i = 1; i <= 9; ++i) {
      const Real alpha = amin + step * Real(static_cast<long>(i), 256);
      const SpectrumPoint pe = spectrum_value(e, alpha);
      const SpectrumPoint pf = spectrum_value(f, alpha);
      CHECK((pe.h - pf.h).abs().to_double() < 1e-10);
      CHECK(dbl(pe.h) >= 0.0);
      CHECK(dbl(pe.h) <= 2.0);
    }
  }

  SUBCASE("endpoints extrapolate to the frozen limits") {
    auto [amin, amax] = alpha_range(e);
    const SpectrumPoint lo = spectrum_value(e, amin);
    CHECK(lo.extrapolated_endpoint);
    CHECK(dbl(lo.h) == doctest::Approx(kHAtAlphaMin).epsilon(1e-12));
    const SpectrumPoint hi = spectrum_value(e, amax);
    CHECK(hi.extrapolated_endpoint);
    CHECK(dbl(hi.h) == doctest::Approx(kHAtAlphaMax).epsilon(1e-12));
  }

  SUBCASE("error paths") {
    auto [amin, amax] = alpha_range(e);
    CHECK_THROWS_WITH_AS(spectrum_value(e, amax + Real(0.25, 256)),
                         doctest::Contains("AlphaOutOfRange"), Error);
    const CarpetProfile reg = regular_profile();
    const SpectrumPoint p = spectrum_value(reg, dim_hausdorff(reg));
    CHECK((p.h - dim_hausdorff(reg)).abs().to_double() < 1e-40);
    CHECK_THROWS_WITH_AS(spectrum_value(reg, dim_hausdorff(reg) + Real(0.1, 256)),
                         doctest::Contains("RegularDegenerate"), Error);
  }
}

TEST_CASE("sampled curve invariants") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const SpectrumCurve curve = sample_curve(e, 17);
  REQUIRE(curve.samples.size() == 17);
  for (size_t i = 1; i < curve.samples.size(); ++i) {
    CHECK(curve.samples[i].t > curve.samples[i - 1].t);
    CHECK(curve.samples[i].alpha < curve.samples[i - 1].alpha);  // alpha decreasing in t
  }
  for (const auto& s : curve.samples) {
    CHECK(s.alpha >= curve.alpha_min);
    CHECK(s.alpha <= curve.alpha_max);
    CHECK(dbl(s.h) >= 0.0);
    CHECK(dbl(s.h) <= 2.0);
    CHECK((s.h - (s.alpha * s.t - s.beta)).abs().to_double() < 1e-40);
  }
}

TEST_CASE("Legendre duality reconstructs beta") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const SpectrumCurve tangents = sample_curve_uniform_t(e, -0.5, 3.5, 1000, 192);
  for (double t = 0.1; t <= 3.0; t += 0.145) {
    const Real direct = beta(e, t, 192);
    const Real rebuilt = legendre_reconstruct_beta(tangents, Real(t, 192));
    CHECK((direct - rebuilt).abs().to_double() < 1e-6);
    CHECK(dbl(rebuilt - direct) > -1e-30);  // envelope of tangents sits above the graph
  }
}

TEST_CASE("dimension formulas on the worked examples") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const CarpetProfile f = profile(testutil::ex18_Dprime());

  CHECK(dbl(dim_box(e)) == doctest::Approx(kDimB).epsilon(1e-12));
  CHECK(dbl(dim_hausdorff(e)) == doctest::Approx(kDimH).epsilon(1e-12));
  CHECK(dbl(dim_assouad(e)) == doctest::Approx(kDimA).epsilon(1e-12));

  // the pair shares all three dimensions; Hausdorff agrees through the exact
  // identity 6^sigma + 3^sigma = 2*2^sigma + 2
  CHECK((dim_box(e) - dim_box(f)).abs().to_double() < 1e-70);
  CHECK((dim_hausdorff(e) - dim_hausdorff(f)).abs().to_double() < 1e-70);
  CHECK((dim_assouad(e) - dim_assouad(f)).abs().to_double() < 1e-70);

  SUBCASE("full grid has dimension 2") {
    const CarpetProfile grid = profile(testutil::load_fixture("full_grid_3x2.json"));
    CHECK(dbl(dim_box(grid)) == doctest::Approx(2.0).epsilon(1e-40));
    CHECK(dbl(dim_hausdorff(grid)) == doctest::Approx(2.0).epsilon(1e-40));
    CHECK(dbl(dim_assouad(grid)) == doctest::Approx(2.0).epsilon(1e-40));
  }
  SUBCASE("regular carpets: box = hausdorff = assouad") {
    const CarpetProfile reg = regular_profile();
    CHECK((dim_box(reg) - dim_hausdorff(reg)).abs().to_double() < 1e-12);
    CHECK((dim_box(reg) - dim_assouad(reg)).abs().to_double() < 1e-12);
  }
  SUBCASE("ordering and the regularity gap over random profiles") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
      const CarpetProfile prof = profile(testutil::random_spec(rng));
      const double dh = dbl(dim_hausdorff(prof));
      const double db = dbl(dim_box(prof));
      const double da = dbl(dim_assouad(prof));
      CHECK(dh <= db + 1e-12);
      CHECK(db <= da + 1e-12);
      if (is_regular(prof))
        CHECK(std::abs(db - dh) < 1e-12);
      else
        CHECK(std::abs(db - dh) > 1e-12);
    }
  }
  SUBCASE("rigorous enclosures bracket the point values") {
    for (const CarpetProfile& prof : {e, f}) {
      const Interval box = dim_box_enclosure(prof);
      CHECK(dbl(box.lo()) <= dbl(dim_box(prof)));
      CHECK(dbl(dim_box(prof)) <= dbl(box.hi()));
      CHECK(dbl(box.hi() - box.lo()) < 1e-60);  // tight at 256 bits
      const Interval hd = dim_hausdorff_enclosure(prof);
      CHECK(dbl(hd.lo()) <= dbl(dim_hausdorff(prof)));
      CHECK(dbl(dim_hausdorff(prof)) <= dbl(hd.hi()));
      const Interval as = dim_assouad_enclosure(prof);
      CHECK(dbl(as.lo()) <= dbl(dim_assouad(prof)));
      CHECK(dbl(dim_assouad(prof)) <= dbl(as.hi()));
    }
  }
}

TEST_CASE("beta(1) = 0 over randomized profiles") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const CarpetProfile prof = profile(testutil::random_spec(rng));
    CHECK(beta(prof, 1.0).abs().to_double() < 1e-12);
  }
}

TEST_CASE("spectra_equal decision pipeline") {
  const CarpetProfile e18 = profile(testutil::ex18_D());
  const CarpetProfile f18 = profile(testutil::ex18_Dprime());
  const CarpetProfile e17 = profile(testutil::ex17_D());
  const CarpetProfile f17 = profile(testutil::ex17_Dprime());

  SUBCASE("figure-2 pair: Equal through the exact power branch") {
    const TriVerdict v = spectra_equal(e18, f18);
    CHECK(v.value == TriVerdict::Value::Equal);
    CHECK(v.certificate.find("n^(1/3)") != std::string::npos);
  }
  SUBCASE("identical profiles and the figure-1 pair: Equal degenerately") {
    CHECK(spectra_equal(e18, e18).value == TriVerdict::Value::Equal);
    const TriVerdict v = spectra_equal(e17, f17);
    CHECK(v.value == TriVerdict::Value::Equal);
    CHECK(v.certificate.find("rho = 1") != std::string::npos);
  }
  SUBCASE("rational sigma: decidable beyond power-of-n ratios") {
    // n = 4, m = 2: E one full row of 4, F one digit per row
    const CarpetProfile a = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[1,0],[2,0],[3,0]]})"));
    const CarpetProfile b = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[0,1]]})"));
    const TriVerdict v = spectra_equal(a, b);
    CHECK(v.value == TriVerdict::Value::Equal);  // rho = 4, (s'/s)^2 = 4
    CHECK(v.certificate.find("rational") != std::string::npos);

    const CarpetProfile c = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[1,0],[2,0]]})"));
    const CarpetProfile d = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0]]})"));
    CHECK(spectra_equal(c, d).value == TriVerdict::Value::NotEqual);  // rho = 3 != (s'/s)^2 = 1
  }
  SUBCASE("interval separation handles the transcendental leftovers") {
    // n = 6, m = 4: rho = 3 is no rational power of 6, s'/s = 3 none of 4
    const CarpetProfile a = profile(parse_spec(
        R"({"n":6,"m":4,"digits":[[0,0],[1,0],[2,0],[3,0],[4,0],[5,0]]})"));
    const CarpetProfile b = profile(parse_spec(
        R"({"n":6,"m":4,"digits":[[0,0],[1,0],[0,1],[1,1],[0,2],[1,2]]})"));
    const TriVerdict v = spectra_equal(a, b);
    CHECK(v.value == TriVerdict::Value::NotEqual);
    CHECK(v.certificate.find("interval") != std::string::npos);
  }
  SUBCASE("distinct-value-count exit") {
    (void)e17;
    (void)f17;
    const CarpetProfile uniform27 =
        profile(parse_spec(R"({"n":27,"m":8,"digits":[[0,0],[1,0],[2,0]]})"));
    const TriVerdict v = spectra_equal(e18, uniform27);  // p~ = 2 vs 1
    CHECK(v.value == TriVerdict::Value::NotEqual);
    CHECK(v.certificate.find("multiplicities differ") != std::string::npos);
  }
}

TEST_CASE("spectra_equal rejects mismatched expansion pairs") {
  CHECK_THROWS_WITH_AS(
      spectra_equal(profile(testutil::ex18_D()), profile(testutil::ex17_D())),
      doctest::Contains("ShapeMismatch"), Error);
}

TEST_CASE("spectra_equal is symmetric") {
  const std::vector<std::pair<CarpetProfile, CarpetProfile>> pairs = {
      {profile(testutil::ex18_D()), profile(testutil::ex18_Dprime())},
      {profile(testutil::ex17_D()), profile(testutil::ex17_Dprime())},
      {profile(parse_spec(R"({"n":6,"m":4,"digits":[[0,0],[1,0],[2,0],[3,0],[4,0],[5,0]]})")),
       profile(parse_spec(R"({"n":6,"m":4,"digits":[[0,0],[1,0],[0,1],[1,1],[0,2],[1,2]]})"))},
      {profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[1,0],[2,0],[3,0]]})")),
       profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[0,1]]})"))},
  };
  for (const auto& [a, b] : pairs)
    CHECK(spectra_equal(a, b).value == spectra_equal(b, a).value);
}

TEST_CASE("exact box-dimension equality decisions") {
  const CarpetProfile e18 = profile(testutil::ex18_D());
  const CarpetProfile f18 = profile(testutil::ex18_Dprime());
  CHECK(!dim_box_equal_exact(e18, f18).has_value());  // irrational sigma, s differs

  const CarpetProfile a = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[1,0],[2,0],[3,0]]})"));
  const CarpetProfile b = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[0,1]]})"));
  const auto exact = dim_box_equal_exact(a, b);
  REQUIRE(exact.has_value());
  CHECK(*exact);  // both have box dimension 1

  const CarpetProfile c = profile(parse_spec(R"({"n":4,"m":2,"digits":[[0,0],[1,0]]})"));
  const auto same_s = dim_box_equal_exact(a, c);  // same s, different N
  REQUIRE(same_s.has_value());
  CHECK(!*same_s);
}
