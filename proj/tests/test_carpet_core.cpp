#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "carpetlab/carpet.hpp"
#include "carpetlab/errors.hpp"
#include "test_util.hpp"

using namespace carpetlab;

TEST_CASE("parse_spec accepts the figure-1 digit set and rejects bad input") {
  const CarpetSpec spec = parse_spec(
      R"({"n":6,"m":4,"digits":[[0,0],[2,0],[4,0],[1,1],[2,1],[1,2]]})");
  CHECK(spec.n() == 6);
  CHECK(spec.m() == 4);
  CHECK(spec.digit_count() == 6);

  CHECK_THROWS_WITH_AS(parse_spec(R"({"n":4,"m":4,"digits":[[0,0]]})"),
                       doctest::Contains("BadShape"), Error);
  CHECK_THROWS_WITH_AS(parse_spec(R"({"n":6,"m":4,"digits":[[0,0],[0,0]]})"),
                       doctest::Contains("DuplicateDigit"), Error);
  CHECK_THROWS_WITH_AS(parse_spec(R"({"n":6,"m":4,"digits":[]})"),
                       doctest::Contains("EmptyDigitSet"), Error);
  CHECK_THROWS_WITH_AS(parse_spec(R"({"n":6,"m":4,"digits":[[6,0]]})"),
                       doctest::Contains("GridViolation"), Error);
  CHECK_THROWS_WITH_AS(parse_spec(R"({"n":6,"m":4,"digits":[[0,-1]]})"),
                       doctest::Contains("GridViolation"), Error);
  CHECK_THROWS_AS(parse_spec("not json"), Error);
  CHECK_THROWS_WITH_AS(parse_spec(R"({"n":4,"m":1,"digits":[[0,0]]})"),
                       doctest::Contains("BadShape"), Error);
}

TEST_CASE("digit order in the file does not matter") {
  const CarpetSpec a = parse_spec(R"({"n":6,"m":4,"digits":[[1,2],[0,0],[2,1],[4,0],[1,1],[2,0]]})");
  CHECK(a == testutil::ex17_D());
}

TEST_CASE("profiles of the worked examples") {
  SUBCASE("figure 1, D") {
    const CarpetProfile p = profile(testutil::ex17_D());
    CHECK(p.a == std::vector<long>{3, 2, 1, 0});
    CHECK(p.N == 6);
    CHECK(p.s == 3);
    CHECK(p.a_star == std::vector<long>{3, 2, 1});
    CHECK(p.mult == std::vector<int>{1, 1, 1});
    CHECK(p.has_vacant_row);
  }
  SUBCASE("figure 2, D") {
    const CarpetProfile p = profile(testutil::ex18_D());
    CHECK(p.N == 9);
    CHECK(p.s == 2);
    CHECK(p.a_star == std::vector<long>{6, 3});
    CHECK(p.mult == std::vector<int>{1, 1});
    CHECK(p.has_vacant_row);
  }
  SUBCASE("figure 2, D'") {
    const CarpetProfile p = profile(testutil::ex18_Dprime());
    CHECK(p.N == 6);
    CHECK(p.s == 4);
    CHECK(p.a_star == std::vector<long>{2, 1});
    CHECK(p.mult == std::vector<int>{2, 2});
  }
}

TEST_CASE("profile is a pure function with consistent bookkeeping") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const CarpetSpec spec = testutil::random_spec(rng);
    const CarpetProfile p1 = profile(spec), p2 = profile(spec);
    CHECK(p1.a == p2.a);
    CHECK(p1.a_star == p2.a_star);
    CHECK(p1.mult == p2.mult);
    CHECK(p1.rows == p2.rows);

    long row_sum = 0, mult_sum = 0;
    for (long a : p1.a) row_sum += a;
    for (int m : p1.mult) mult_sum += m;
    CHECK(row_sum == p1.N);
    CHECK(mult_sum == p1.s);
    for (size_t i = 1; i < p1.a_star.size(); ++i) CHECK(p1.a_star[i] < p1.a_star[i - 1]);
    bool any_zero = false;
    for (long a : p1.a) any_zero = any_zero || a == 0;
    CHECK(p1.has_vacant_row == any_zero);
  }
}

TEST_CASE("sigma classification by exact root extraction") {
  SUBCASE("log 8 / log 27 is irrational") {
    CHECK(sigma_classify(27, 8).kind == SigmaClass::Kind::Irrational);
  }
  SUBCASE("powers of a common base") {
    const SigmaClass c42 = sigma_classify(4, 2);
    CHECK(c42.kind == SigmaClass::Kind::Rational);
    CHECK(c42.base == 2);
    CHECK(c42.p == 1);
    CHECK(c42.q == 2);

    const SigmaClass c93 = sigma_classify(9, 3);
    CHECK(c93.kind == SigmaClass::Kind::Rational);
    CHECK(c93.base == 3);
    CHECK(c93.p == 1);
    CHECK(c93.q == 2);

    const SigmaClass c84 = sigma_classify(8, 4);
    CHECK(c84.kind == SigmaClass::Kind::Rational);
    CHECK(c84.base == 2);
    CHECK(c84.p == 2);
    CHECK(c84.q == 3);

    // reduced exponent pair forces the base up: 4 = 4^1, 16 = 4^2
    const SigmaClass c164 = sigma_classify(16, 4);
    CHECK(c164.kind == SigmaClass::Kind::Rational);
    CHECK(c164.base == 4);
    CHECK(c164.p == 1);
    CHECK(c164.q == 2);
  }
  SUBCASE("classification agrees with a brute-force common-base search") {
    for (int n = 3; n <= 64; ++n) {
      for (int m = 2; m < n; ++m) {
        const SigmaClass sc = sigma_classify(n, m);
        bool some_base = false;
        for (int c = 2; c <= n && !some_base; ++c) {
          bool m_power = false, n_power = false;
          BigInt v(1);
          while (v <= BigInt(n)) {
            v *= BigInt(c);
            m_power = m_power || v == BigInt(m);
            n_power = n_power || v == BigInt(n);
          }
          some_base = m_power && n_power;
        }
        CHECK((sc.kind == SigmaClass::Kind::Rational) == some_base);
        if (sc.kind != SigmaClass::Kind::Rational) continue;
        CHECK(BigInt::pow(BigInt(sc.base), static_cast<unsigned long>(sc.p)) == BigInt(m));
        CHECK(BigInt::pow(BigInt(sc.base), static_cast<unsigned long>(sc.q)) == BigInt(n));
        CHECK(std::gcd(sc.p, sc.q) == 1);
      }
    }
  }
}

TEST_CASE("ell by exact power comparison") {
  CHECK(ell(27, 8, 0) == 0);
  CHECK(ell(27, 8, 1) == 1);
  CHECK(ell(27, 8, 2) == 3);  // 8^3 = 512 <= 729 < 8^4
  CHECK(ell(27, 8, 3) == 4);  // 8^4 = 4096 <= 19683 < 8^5
  CHECK(ell(6, 4, 4) == 5);

  SUBCASE("sandwich m^l <= n^k < m^{l+1} holds exactly up to k = 1000") {
    for (auto [n, m] : {std::pair{27, 8}, std::pair{6, 4}, std::pair{1000, 999}}) {
      for (long k : {0L, 1L, 7L, 100L, 999L, 1000L}) {
        const long l = ell(n, m, k);
        const BigInt nk = BigInt::pow(BigInt(n), static_cast<unsigned long>(k));
        CHECK(BigInt::pow(BigInt(m), static_cast<unsigned long>(l)) <= nk);
        CHECK(nk < BigInt::pow(BigInt(m), static_cast<unsigned long>(l + 1)));
      }
    }
  }
  SUBCASE("increments are ell(1) or ell(1)+1") {
    for (auto [n, m] : {std::pair{27, 8}, std::pair{6, 4}, std::pair{12, 5}}) {
      const long step = ell(n, m, 1);
      long prev = 0;
      for (long k = 1; k <= 1000; ++k) {
        const long cur = ell(n, m, k);
        const long d = cur - prev;
        CHECK((d == step || d == step + 1));
        prev = cur;
      }
    }
  }
  SUBCASE("rational sigma cross-check: ell(k) = floor(k q / p)") {
    for (auto [n, m] : {std::pair{4, 2}, std::pair{8, 4}, std::pair{27, 9}, std::pair{64, 16}}) {
      const SigmaClass sc = sigma_classify(n, m);
      REQUIRE(sc.kind == SigmaClass::Kind::Rational);
      for (long k = 0; k <= 1000; ++k) CHECK(ell(n, m, k) == (k * sc.q) / sc.p);
    }
  }
}

TEST_CASE("doubling criterion") {
  auto prof_of = [](int n, int m, std::vector<long> rows_counts) {
    // build a spec realizing the given distribution sequence
    std::vector<Digit> digits;
    for (int j = 0; j < m; ++j)
      for (long c = 0; c < rows_counts[static_cast<size_t>(j)]; ++c)
        digits.push_back({static_cast<int>(c), j});
    return profile(CarpetSpec::create(n, m, digits));
  };
  CHECK(is_doubling(profile(testutil::ex17_D())));
  CHECK(!is_doubling(profile(testutil::ex17_Dprime())));
  CHECK(is_doubling(prof_of(5, 4, {2, 0, 2, 0})));   // alternating vacancies
  CHECK(is_doubling(prof_of(5, 4, {2, 1, 1, 2})));   // a_0 = a_{m-1}
  CHECK(!is_doubling(prof_of(5, 4, {2, 1, 0, 3})));
}

TEST_CASE("regularity = uniform horizontal fibers") {
  CHECK(!is_regular(profile(testutil::ex18_D())));
  auto mk = [](int n, int m, std::vector<long> counts) {
    std::vector<Digit> digits;
    for (int j = 0; j < m; ++j)
      for (long c = 0; c < counts[static_cast<size_t>(j)]; ++c) digits.push_back({static_cast<int>(c), j});
    return profile(CarpetSpec::create(n, m, digits));
  };
  CHECK(is_regular(mk(5, 4, {2, 2, 0, 2})));
  CHECK(is_regular(mk(5, 4, {1, 1, 1, 1})));
}

TEST_CASE("total disconnectedness certified only under vacant rows") {
  CHECK(total_disconnectedness(profile(testutil::ex17_D())) == TriState::Yes);
  CHECK(total_disconnectedness(profile(testutil::load_fixture("row_segment_3x2.json"))) ==
        TriState::No);
  CHECK(total_disconnectedness(profile(parse_spec(
            R"({"n":3,"m":2,"digits":[[0,0],[1,0],[0,1],[1,1]]})"))) == TriState::Unknown);
}

TEST_CASE("doubling and regularity depend only on the distribution sequence") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const CarpetSpec spec = testutil::random_spec(rng);
    const CarpetProfile base = profile(spec);

    // permute columns within each row
    std::vector<Digit> moved;
    for (int j = 0; j < spec.m(); ++j) {
      std::vector<int> cols(static_cast<size_t>(spec.n()));
      for (int i = 0; i < spec.n(); ++i) cols[static_cast<size_t>(i)] = i;
      std::shuffle(cols.begin(), cols.end(), rng);
      const auto& present = spec.columns_of_row()[static_cast<size_t>(j)];
      for (size_t c = 0; c < present.size(); ++c) moved.push_back({cols[c], j});
    }
    const CarpetProfile shuffled = profile(CarpetSpec::create(spec.n(), spec.m(), moved));
    CHECK(is_doubling(base) == is_doubling(shuffled));
    CHECK(is_regular(base) == is_regular(shuffled));
    CHECK(base.a == shuffled.a);
  }
}

TEST_CASE("integer roots: Newton with verification multiply") {
  CHECK(integer_kth_root(BigInt(0), 3) == BigInt(0));
  CHECK(integer_kth_root(BigInt(1), 7) == BigInt(1));
  CHECK(integer_kth_root(BigInt(26), 3) == BigInt(2));
  CHECK(integer_kth_root(BigInt(27), 3) == BigInt(3));
  CHECK(integer_kth_root(BigInt(28), 3) == BigInt(3));
  CHECK(exact_kth_root(BigInt(729), 6).has_value());
  CHECK(!exact_kth_root(BigInt(730), 6).has_value());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const long v = static_cast<long>(rng() % 1000000 + 2);
    const unsigned e = static_cast<unsigned>(rng() % 7 + 1);
    const BigInt x = BigInt::pow(BigInt(v), e);
    CHECK(integer_kth_root(x, e) == BigInt(v));
    CHECK(integer_kth_root(x - 1, e) == BigInt(v - 1));
  }
}
