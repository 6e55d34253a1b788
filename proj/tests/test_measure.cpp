#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "carpetlab/errors.hpp"
#include "carpetlab/measure.hpp"
#include "test_util.hpp"

using namespace carpetlab;

namespace {

const EnumBudget kBudget{};

ApproximateSquare square_with_y3(const CarpetSpec& spec, int y3) {
  // any rank-2 square of the figure-2 carpet whose extension row is y3
  ApproximateSquare found;
  bool ok = false;
  for_each_square(spec, 2, kBudget, [&](const ApproximateSquare& q) {
    if (!ok && q.y_word.symbols[2] == y3) {
      found = q;
      ok = true;
    }
  });
  REQUIRE(ok);
  return found;
}

std::vector<std::vector<ApproximateSquare>> component_members(const CarpetSpec& spec, long k) {
  const std::vector<ApproximateSquare> squares = collect_squares(spec, k, kBudget);
  const ComponentPartition part = components(spec, k, ApproxKind::SquareApprox, kBudget);
  std::vector<std::vector<ApproximateSquare>> members;
  for (const auto& cell : part.cells) {
    members.emplace_back();
    for (std::uint32_t idx : cell) members.back().push_back(squares[idx]);
  }
  return members;
}

}  // namespace

TEST_CASE("colors of approximate squares") {
  const CarpetSpec spec = testutil::ex18_D();
  const CarpetProfile prof = profile(spec);

  ApproximateSquare rank1;
  for_each_square(spec, 1, kBudget, [&](const ApproximateSquare& q) { rank1 = q; });
  CHECK(color_of(prof, rank1).word.empty());  // ell(1) = 1

  CHECK(color_of(prof, square_with_y3(spec, 4)).word == std::vector<long>{6});
  CHECK(color_of(prof, square_with_y3(spec, 1)).word == std::vector<long>{3});
  CHECK(Color{}.product() == BigInt(1));  // empty word has product 1
}

TEST_CASE("measures of squares and cylinders") {
  const CarpetSpec spec = testutil::ex18_D();
  const CarpetProfile prof = profile(spec);

  ApproximateSquare rank1;
  for_each_square(spec, 1, kBudget, [&](const ApproximateSquare& q) { rank1 = q; });
  CHECK(mu_square(prof, rank1) == Rational(1, 9));
  CHECK(mu_square(prof, square_with_y3(spec, 4)) == Rational(2, 243));  // 6/729

  CHECK(mu_cylinder(prof, 2) == Rational(1, 81));
  CHECK(mu_cylinder(prof, 0) == Rational(1));
  CHECK(mu_cylinder(profile(testutil::ex17_D()), 3) == Rational(1, 216));

  // ell(k) = k forces mu = N^{-k}: true on figure-1 carpets up to rank 3
  const CarpetSpec f1 = testutil::ex17_D();
  const CarpetProfile p1 = profile(f1);
  for_each_square(f1, 3, kBudget, [&](const ApproximateSquare& q) {
    CHECK(mu_square(p1, q) == Rational(1, 216));
  });
}

TEST_CASE("offspring color census follows the combinatorial formulas") {
  const CarpetSpec spec = testutil::ex18_D();
  const CarpetProfile prof = profile(spec);

  SUBCASE("rank 1: domain {(6), (3)}, count 9 each") {
    ApproximateSquare rank1;
    for_each_square(spec, 1, kBudget, [&](const ApproximateSquare& q) { rank1 = q; });
    const auto census = offspring_color_census(prof, rank1);
    REQUIRE(census.size() == 2);
    CHECK(census.at(Color{{6}}) == 9);
    CHECK(census.at(Color{{3}}) == 9);
  }
  SUBCASE("rank 2, color (6): each successor color counted 6") {
    const auto census = offspring_color_census(prof, square_with_y3(spec, 4));
    REQUIRE(census.size() == 2);
    CHECK(census.at(Color{{6}}) == 6);
    CHECK(census.at(Color{{3}}) == 6);
  }
  SUBCASE("rank 2, color (3): each successor color counted 3") {
    const auto census = offspring_color_census(prof, square_with_y3(spec, 1));
    CHECK(census.at(Color{{6}}) == 3);
    CHECK(census.at(Color{{3}}) == 3);
  }

  SUBCASE("census equals the brute-force color histogram of the offsprings") {
    for (const CarpetSpec& s : {testutil::ex18_D(), testutil::ex18_Dprime()}) {
      const CarpetProfile p = profile(s);
      for (long k = 1; k <= 3; ++k) {
        for_each_square(s, k, kBudget, [&](const ApproximateSquare& q) {
          std::map<Color, long> histogram;
          for (const auto& kid : direct_offsprings(s, q)) ++histogram[color_of(p, kid)];
          CHECK(offspring_color_census(p, q) == histogram);
        });
      }
    }
  }
}

TEST_CASE("measure additivity and total mass") {
  for (const CarpetSpec& spec : {testutil::ex18_D(), testutil::ex18_Dprime()}) {
    const CarpetProfile prof = profile(spec);
    for (long k = 1; k <= 3; ++k) {
      Rational mass(0);
      for_each_square(spec, k, kBudget, [&](const ApproximateSquare& q) {
        const Rational mine = mu_square(prof, q);
        mass += mine;
        Rational from_kids(0);
        for (const auto& kid : direct_offsprings(spec, q)) from_kids += mu_square(prof, kid);
        CHECK(mine == from_kids);

        // census route to the same sum
        Rational from_census(0);
        const long lk1 = ell(prof, k + 1);
        for (const auto& [color, count] : offspring_color_census(prof, q))
          from_census += Rational(count) * Rational(color.product(),
                                                    BigInt::pow(BigInt(prof.N),
                                                                static_cast<unsigned long>(lk1)));
        CHECK(mine == from_census);
      });
      CHECK(mass == Rational(1));
    }
  }
}

TEST_CASE("component measures on the figure-1 carpet") {
  const CarpetSpec spec = testutil::ex17_D();
  const CarpetProfile prof = profile(spec);
  const auto members = component_members(spec, 1);
  REQUIRE(members.size() == 2);

  std::multiset<std::string> values;
  for (const auto& cell : members) values.insert(mu_component(prof, cell).to_string());
  CHECK(values == std::multiset<std::string>{"5/6", "1/6"});
}

TEST_CASE("arithmetic doubling: integrality witnesses") {
  SUBCASE("class gate refuses uncertified carpets") {
    const CarpetProfile ungated = profile(testutil::load_fixture("full_grid_3x2.json"));
    CHECK_THROWS_WITH_AS(require_arithmetic_class(ungated), doctest::Contains("ClassViolation"),
                         Error);
  }

  SUBCASE("ratio witness is integral on all components up to rank 3") {
    for (const CarpetSpec& spec :
         {testutil::ex18_D(), testutil::ex18_Dprime(), testutil::ex17_D()}) {
      const CarpetProfile prof = profile(spec);
      for (long k = 1; k <= 3; ++k) {
        for (const auto& cell : component_members(spec, k)) {
          for (const auto& member : cell) {
            const RatioWitness w = ratio_witness(prof, cell, member);
            CHECK(w.is_positive_integer);
          }
        }
      }
    }
  }

  SUBCASE("singleton components scale to exactly (prod a*)^2") {
    const CarpetSpec spec = testutil::ex18_D();
    const CarpetProfile prof = profile(spec);
    const auto members = component_members(spec, 2);
    const RatioWitness w = ratio_witness(prof, members.front(), members.front().front());
    CHECK(w.scaled == Rational(18 * 18));  // (6*3)^2
    CHECK(w.magnitude_factor == BigInt::pow(27UL, 16UL));
  }

  SUBCASE("offspring denominator bound holds for all parent/offspring pairs") {
    for (const CarpetSpec& spec :
         {testutil::ex18_D(), testutil::ex18_Dprime(), testutil::ex17_D()}) {
      const CarpetProfile prof = profile(spec);
      for (long k = 1; k <= 3; ++k) {
        for_each_square(spec, k, kBudget, [&](const ApproximateSquare& q) {
          for (const auto& kid : direct_offsprings(spec, q))
            CHECK(offspring_ratio_denominator_check(prof, q, kid));
        });
      }
    }
  }
}

TEST_CASE("color rigidity inside components") {
  for (const CarpetSpec& spec : {testutil::ex17_D(), testutil::ex18_D(), testutil::ex18_Dprime()}) {
    const CarpetProfile prof = profile(spec);
    for (long k = 1; k <= 3; ++k)
      for (const auto& cell : component_members(spec, k))
        CHECK(color_rigidity_check(prof, cell));
  }
  // deeper rank with nonempty colors on the figure-1 carpet (ell(4) = 5)
  const CarpetSpec spec = testutil::ex17_D();
  const CarpetProfile prof = profile(spec);
  for (const auto& cell : component_members(spec, 4)) CHECK(color_rigidity_check(prof, cell));
}

TEST_CASE("p-adic valuations") {
  CHECK(vp(Rational(8, 9), BigInt(2)) == 3);
  CHECK(vp(Rational(8, 9), BigInt(3)) == -2);
  CHECK(vp(Rational(1), BigInt(5)) == 0);
  CHECK(p_adic_abs(Rational(8, 9), BigInt(3)) == Rational(9));
  CHECK(p_adic_abs(Rational(8, 9), BigInt(2)) == Rational(1, 8));

  CHECK_THROWS_WITH_AS(vp(Rational(0), BigInt(3)), doctest::Contains("ZeroValuation"), Error);
  CHECK_THROWS_WITH_AS(vp(Rational(1, 2), BigInt(6)), doctest::Contains("NotPrime"), Error);

  SUBCASE("additivity over random rationals") {
    std::mt19937_64 rng(11);
    const BigInt primes[] = {BigInt(2), BigInt(3), BigInt(5), BigInt(7)};
    for (int trial = 0; trial < 200; ++trial) {
      const Rational x(static_cast<long>(rng() % 5000) + 1, static_cast<long>(rng() % 5000) + 1);
      const Rational y(static_cast<long>(rng() % 5000) + 1, static_cast<long>(rng() % 5000) + 1);
      const BigInt& p = primes[trial % 4];
      CHECK(vp(x * y, p) == vp(x, p) + vp(y, p));
    }
  }
}

TEST_CASE("gamma obstruction sequence for the figure-2 pair") {
  const CarpetProfile e = profile(testutil::ex18_D());
  const CarpetProfile f = profile(testutil::ex18_Dprime());

  CHECK(gamma(1, e, f) == Rational(2, 3));
  CHECK(gamma(2, e, f) == Rational(8, 9));
  CHECK(gamma(3, e, f) == Rational(16, 27));

  SUBCASE("gamma_k < m, pairwise distinct, v_3 = -k for k <= 30") {
    std::set<std::string> seen;
    for (long k = 1; k <= 30; ++k) {
      const Rational g = gamma(k, e, f);
      CHECK(g < Rational(8));
      CHECK(seen.insert(g.to_string()).second);
      CHECK(vp(g, BigInt(3)) == -k);
    }
    // the valuation prime divides b_1* N = 2 * 9
    CHECK(BigInt(18) % BigInt(3) == BigInt(0));
  }

  SUBCASE("shape mismatch is rejected") {
    CHECK_THROWS_WITH_AS(gamma(1, e, profile(testutil::ex17_D())),
                         doctest::Contains("ShapeMismatch"), Error);
  }
}
