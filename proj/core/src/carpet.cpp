#include "carpetlab/carpet.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>

#include "carpetlab/errors.hpp"

namespace carpetlab {

CarpetSpec CarpetSpec::create(int n, int m, std::vector<Digit> digits) {
  if (m < 2 || m >= n)
    throw Error(Errc::BadShape, "need 2 <= m < n, got n=" + std::to_string(n) + " m=" + std::to_string(m));
  if (digits.empty()) throw Error(Errc::EmptyDigitSet, "digit set is empty");
  for (const Digit& d : digits) {
    if (d.i < 0 || d.i >= n || d.j < 0 || d.j >= m)
      throw Error(Errc::GridViolation, "digit (" + std::to_string(d.i) + "," + std::to_string(d.j) +
                                           ") outside " + std::to_string(n) + "x" + std::to_string(m) + " grid");
  }
  std::sort(digits.begin(), digits.end());
  auto dup = std::adjacent_find(digits.begin(), digits.end());
  if (dup != digits.end())
    throw Error(Errc::DuplicateDigit,
                "digit (" + std::to_string(dup->i) + "," + std::to_string(dup->j) + ") repeated");

  CarpetSpec spec;
  spec.n_ = n;
  spec.m_ = m;
  spec.digits_ = std::move(digits);
  spec.columns_of_row_.assign(m, {});
  for (const Digit& d : spec.digits_) spec.columns_of_row_[d.j].push_back(d.i);
  return spec;
}

CarpetSpec parse_spec(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("m") || !doc.contains("digits"))
    throw Error(Errc::ParseError, "carpet document needs fields n, m, digits");
  if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer() || !doc["digits"].is_array())
    throw Error(Errc::ParseError, "n, m must be integers and digits an array of [i, j] pairs");

  std::vector<Digit> digits;
  digits.reserve(doc["digits"].size());
  for (const auto& entry : doc["digits"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer())
      throw Error(Errc::ParseError, "each digit must be an [i, j] integer pair");
    digits.push_back(Digit{entry[0].get<int>(), entry[1].get<int>()});
  }
  return CarpetSpec::create(doc["n"].get<int>(), doc["m"].get<int>(), std::move(digits));
}

namespace {

// Largest e with v = c^e for some integer c >= 2, together with that c.
// v itself (e = 1) when v is not a perfect power.
std::pair<long, unsigned long> primitive_power_base(long v) {
  const BigInt big(v);
  for (unsigned long e = big.bit_length(); e >= 2; --e) {
    if (auto r = exact_kth_root(big, e); r && *r >= BigInt(2)) return {r->to_long(), e};
  }
  return {v, 1};
}

}  // namespace

SigmaClass sigma_classify(int n, int m) {
  if (m < 2 || m >= n) throw Error(Errc::BadShape, "sigma_classify needs 2 <= m < n");
  auto [cm, dm] = primitive_power_base(m);
  auto [cn, dn] = primitive_power_base(n);
  SigmaClass out;
  if (cm != cn) {
    out.kind = SigmaClass::Kind::Irrational;
    return out;
  }
  const unsigned long g = std::gcd(dm, dn);
  out.kind = SigmaClass::Kind::Rational;
  out.base = BigInt::pow(static_cast<unsigned long>(cm), g).to_long();
  out.p = static_cast<long>(dm / g);
  out.q = static_cast<long>(dn / g);
  return out;
}

CarpetProfile profile(const CarpetSpec& spec) {
  CarpetProfile p;
  p.n = spec.n();
  p.m = spec.m();
  p.a.assign(spec.m(), 0);
  for (const Digit& d : spec.digits()) ++p.a[d.j];
  p.N = spec.digit_count();
  for (int j = 0; j < spec.m(); ++j) {
    if (p.a[j] > 0)
      p.rows.push_back(j);
    else
      p.has_vacant_row = true;
  }
  p.s = static_cast<int>(p.rows.size());

  std::vector<long> distinct;
  for (int j : p.rows) distinct.push_back(p.a[j]);
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  p.a_star = distinct;
  p.mult.assign(distinct.size(), 0);
  for (int j : p.rows) {
    auto it = std::find(distinct.begin(), distinct.end(), p.a[j]);
    ++p.mult[static_cast<size_t>(it - distinct.begin())];
  }
  p.sigma_class = sigma_classify(spec.n(), spec.m());
  return p;
}

long ell(int n, int m, long k) {
  if (k < 0) throw Error(Errc::ParseError, "ell needs k >= 0");
  if (k == 0) return 0;
  const BigInt npow = BigInt::pow(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  BigInt mpow(m);  // m^{j+1} while testing rank j+1
  long j = 0;
  const BigInt mb(m);
  while (mpow <= npow) {
    mpow *= mb;
    ++j;
  }
  return j;
}

long ell(const CarpetProfile& prof, long k) { return ell(prof.n, prof.m, k); }

bool is_doubling(const CarpetProfile& prof) {
  const auto& a = prof.a;
  const size_t m = a.size();
  if (a.front() * a.back() == 0) return true;
  if (a.front() == a.back()) return true;
  bool alternating = true;
  for (size_t j = 0; j + 1 < m; ++j) {
    if (a[j] * a[j + 1] != 0) {
      alternating = false;
      break;
    }
  }
  return alternating;
}

bool is_regular(const CarpetProfile& prof) { return prof.a_star.size() == 1; }

TriState total_disconnectedness(const CarpetProfile& prof) {
  if (!prof.has_vacant_row) return TriState::Unknown;
  for (long aj : prof.a)
    if (aj >= prof.n) return TriState::No;  // a full row contains a line segment
  return TriState::Yes;
}

std::string to_string(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    case TriState::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace carpetlab
