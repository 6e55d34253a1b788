#pragma once

#include <map>
#include <vector>

#include "carpetlab/geometry.hpp"

namespace carpetlab {

/// Color of an approximate square: the word of row counts a(y_{k+1})...a(y_{ell(k)})
/// along the extended vertical address. Empty when ell(k) = k; the product of
/// the empty word is 1. The color determines the square's measure.
struct Color {
  std::vector<long> word;

  BigInt product() const {
    BigInt p(1);
    for (long v : word) p *= BigInt(v);
    return p;
  }
  friend auto operator<=>(const Color&, const Color&) = default;
};

Color color_of(const CarpetProfile& prof, const ApproximateSquare& q);

/// mu(Q) = prod(color) / N^{ell(k)} for the uniform Bernoulli measure.
Rational mu_square(const CarpetProfile& prof, const ApproximateSquare& q);

/// Every rank-k cylinder has measure N^{-k}.
Rational mu_cylinder(const CarpetProfile& prof, long k);

/// Offspring colors with their counts:
///   ell(k) = k: every word over the distinct row counts of length
///               ell(k+1)-k-1, counted N * M(word);
///   ell(k) > k: shift(color + z) for z over distinct-count words of length
///               ell(k+1)-ell(k), counted (first color entry) * M(z).
/// The census total equals the direct-offspring count.
std::map<Color, long> offspring_color_census(const CarpetProfile& prof,
                                             const ApproximateSquare& q);

/// Exact sum of member measures.
Rational mu_component(const CarpetProfile& prof, const std::vector<ApproximateSquare>& members);

/// Certifies membership needed by the arithmetic-doubling operations:
/// totally disconnected (certified), vacant row present, doubling measure.
/// errors: ClassViolation when any leg is not certified.
void require_arithmetic_class(const CarpetProfile& prof);

struct RatioWitness {
  Rational ratio;            // mu(U)/mu(B)
  Rational scaled;           // ratio * (a_1* ... a_p*)^2
  bool is_positive_integer = false;
  BigInt magnitude_factor;   // n^{2m}; the full bound is L0 * n^{2m} with L0 empirical
};

/// mu(U)/mu(B) * (prod a_i*)^2 must land in the positive integers for any
/// member B of a component U. The magnitude bound is reported, not asserted.
/// pre: carpet certified totally disconnected + vacant + doubling; B in U.
RatioWitness ratio_witness(const CarpetProfile& prof,
                           const std::vector<ApproximateSquare>& component_members,
                           const ApproximateSquare& member);

/// mu(B')/mu(B) * (prod a_i*) * N^{ell(1)+1} integral, for B' a direct
/// offspring of B.
bool offspring_ratio_denominator_check(const CarpetProfile& prof, const ApproximateSquare& parent,
                                       const ApproximateSquare& offspring);

/// Colors of any two members of one component differ in at most two entries.
/// pre: carpet certified totally disconnected + vacant + doubling.
bool color_rigidity_check(const CarpetProfile& prof,
                          const std::vector<ApproximateSquare>& component_members);

/// gamma_k = (a_1*/b_1*)^{ell(k)-k} * (N'/N)^{ell(k)}, the exact rational
/// obstruction sequence of a carpet pair sharing (n, m).
/// pre: k >= 1, same expansion pair. errors: ShapeMismatch.
Rational gamma(long k, const CarpetProfile& prof_e, const CarpetProfile& prof_f);

}  // namespace carpetlab
