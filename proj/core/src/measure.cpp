#include "carpetlab/measure.hpp"

#include <algorithm>

#include "carpetlab/errors.hpp"

namespace carpetlab {

namespace {

long mult_of(const CarpetProfile& prof, long a_value) {
  for (size_t i = 0; i < prof.a_star.size(); ++i)
    if (prof.a_star[i] == a_value) return prof.mult[i];
  throw Error(Errc::ParseError, "value " + std::to_string(a_value) + " is not a row count");
}

long word_multiplicity(const CarpetProfile& prof, const std::vector<long>& word) {
  long m = 1;
  for (long v : word) m *= mult_of(prof, v);
  return m;
}

BigInt a_star_product(const CarpetProfile& prof) {
  BigInt p(1);
  for (long v : prof.a_star) p *= BigInt(v);
  return p;
}

// All words of the given length over the distinct row counts, lexicographic
// in a_star order (descending values).
std::vector<std::vector<long>> words_over_a_star(const CarpetProfile& prof, long length) {
  std::vector<std::vector<long>> out;
  std::vector<size_t> idx(static_cast<size_t>(length), 0);
  while (true) {
    std::vector<long> w(idx.size());
    for (size_t p = 0; p < idx.size(); ++p) w[p] = prof.a_star[idx[p]];
    out.push_back(std::move(w));
    size_t pos = idx.size();
    bool advanced = false;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < prof.a_star.size()) {
        advanced = true;
        break;
      }
      idx[pos] = 0;
    }
    if (!advanced) return out;
  }
}

}  // namespace

Color color_of(const CarpetProfile& prof, const ApproximateSquare& q) {
  Color c;
  const size_t k = static_cast<size_t>(q.rank);
  for (size_t j = k; j < q.y_word.length(); ++j)
    c.word.push_back(prof.a[static_cast<size_t>(q.y_word.symbols[j])]);
  return c;
}

Rational mu_square(const CarpetProfile& prof, const ApproximateSquare& q) {
  const unsigned long lk = q.y_word.length();
  return Rational(color_of(prof, q).product(), BigInt::pow(BigInt(prof.N), lk));
}

Rational mu_cylinder(const CarpetProfile& prof, long k) {
  if (k < 0) throw Error(Errc::ParseError, "mu_cylinder needs k >= 0");
  return Rational(BigInt(1), BigInt::pow(BigInt(prof.N), static_cast<unsigned long>(k)));
}

std::map<Color, long> offspring_color_census(const CarpetProfile& prof,
                                             const ApproximateSquare& q) {
  const long k = q.rank;
  const long lk = static_cast<long>(q.y_word.length());
  const long lk1 = ell(prof, k + 1);
  std::map<Color, long> census;
  if (lk == k) {
    for (auto& w : words_over_a_star(prof, lk1 - k - 1))
      census[Color{w}] = prof.N * word_multiplicity(prof, w);
  } else {
    const Color c = color_of(prof, q);
    const long chi = c.word.front();
    for (auto& z : words_over_a_star(prof, lk1 - lk)) {
      Color shifted;  // S(c * z): drop the first entry, append z
      shifted.word.assign(c.word.begin() + 1, c.word.end());
      shifted.word.insert(shifted.word.end(), z.begin(), z.end());
      census[shifted] += chi * word_multiplicity(prof, z);
    }
  }
  return census;
}

Rational mu_component(const CarpetProfile& prof, const std::vector<ApproximateSquare>& members) {
  Rational total(0);
  for (const auto& q : members) total += mu_square(prof, q);
  return total;
}

void require_arithmetic_class(const CarpetProfile& prof) {
  if (total_disconnectedness(prof) != TriState::Yes)
    throw Error(Errc::ClassViolation, "total disconnectedness not certified");
  if (!prof.has_vacant_row) throw Error(Errc::ClassViolation, "no vacant row");
  if (!is_doubling(prof)) throw Error(Errc::ClassViolation, "measure is not doubling");
}

RatioWitness ratio_witness(const CarpetProfile& prof,
                           const std::vector<ApproximateSquare>& component_members,
                           const ApproximateSquare& member) {
  require_arithmetic_class(prof);
  if (std::find(component_members.begin(), component_members.end(), member) ==
      component_members.end())
    throw Error(Errc::ParseError, "member does not belong to the component");

  RatioWitness w;
  w.ratio = mu_component(prof, component_members) / mu_square(prof, member);
  const BigInt prod = a_star_product(prof);
  w.scaled = w.ratio * Rational(prod * prod, BigInt(1));
  w.is_positive_integer = w.scaled.is_integer() && w.scaled.sign() > 0;
  w.magnitude_factor =
      BigInt::pow(BigInt(prof.n), static_cast<unsigned long>(2 * prof.m));
  return w;
}

bool offspring_ratio_denominator_check(const CarpetProfile& prof, const ApproximateSquare& parent,
                                       const ApproximateSquare& offspring) {
  if (offspring.rank != parent.rank + 1)
    throw Error(Errc::ParseError, "offspring rank must be parent rank + 1");
  const Rational ratio = mu_square(prof, offspring) / mu_square(prof, parent);
  const BigInt denom_bound =
      a_star_product(prof) *
      BigInt::pow(BigInt(prof.N), static_cast<unsigned long>(ell(prof, 1) + 1));
  return (ratio * Rational(denom_bound, BigInt(1))).is_integer();
}

bool color_rigidity_check(const CarpetProfile& prof,
                          const std::vector<ApproximateSquare>& component_members) {
  require_arithmetic_class(prof);
  std::vector<Color> colors;
  colors.reserve(component_members.size());
  for (const auto& q : component_members) colors.push_back(color_of(prof, q));
  for (size_t i = 0; i < colors.size(); ++i) {
    for (size_t j = i + 1; j < colors.size(); ++j) {
      if (colors[i].word.size() != colors[j].word.size()) return false;
      int differ = 0;
      for (size_t p = 0; p < colors[i].word.size(); ++p)
        if (colors[i].word[p] != colors[j].word[p]) ++differ;
      if (differ > 2) return false;
    }
  }
  return true;
}

Rational gamma(long k, const CarpetProfile& prof_e, const CarpetProfile& prof_f) {
  if (k < 1) throw Error(Errc::ParseError, "gamma needs k >= 1");
  if (prof_e.n != prof_f.n || prof_e.m != prof_f.m)
    throw Error(Errc::ShapeMismatch, "gamma needs a shared expansion pair");
  const long lk = ell(prof_e, k);
  const Rational head = Rational::pow(Rational(prof_e.a_star.front(), prof_f.a_star.front()), lk - k);
  const Rational tail = Rational::pow(Rational(prof_f.N, prof_e.N), lk);
  return head * tail;
}

}  // namespace carpetlab
