#pragma once

#include <compare>
#include <string>
#include <vector>

#include "carpetlab/rational.hpp"

namespace carpetlab {

/// One selected cell of the subdivision grid: column i in [0,n), row j in [0,m).
/// Rows are indexed bottom-up (j is the y coordinate of the cell).
struct Digit {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Digit&, const Digit&) = default;
};

/// Defining data of a self-affine carpet: expansion pair (n, m) with
/// 2 <= m < n, and a nonempty duplicate-free digit set inside the n x m grid.
/// Digits are kept sorted by (i, j); instances are immutable once built.
class CarpetSpec {
 public:
  /// Validates and canonicalizes.
  /// errors: BadShape, EmptyDigitSet, DuplicateDigit, GridViolation.
  static CarpetSpec create(int n, int m, std::vector<Digit> digits);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<Digit>& digits() const { return digits_; }
  long digit_count() const { return static_cast<long>(digits_.size()); }

  /// Columns i with (i, j) in the digit set, ascending, per row j.
  const std::vector<std::vector<int>>& columns_of_row() const { return columns_of_row_; }

  friend bool operator==(const CarpetSpec&, const CarpetSpec&) = default;

 private:
  CarpetSpec() = default;
  int n_ = 0;
  int m_ = 0;
  std::vector<Digit> digits_;
  std::vector<std::vector<int>> columns_of_row_;
};

/// Parses the on-disk carpet document {"n": int, "m": int, "digits": [[i,j],...]}.
/// Duplicate digits are an error, not a silent fix.
CarpetSpec parse_spec(const std::string& json_text);

/// Rationality classification of sigma = log m / log n.
struct SigmaClass {
  enum class Kind { Rational, Irrational };
  Kind kind = Kind::Irrational;
  // Rational only: sigma = p/q in lowest terms, with m = base^p and n = base^q.
  long p = 0;
  long q = 0;
  long base = 0;
};

/// sigma is rational iff m and n are integer powers of a common base c >= 2;
/// decided by exact integer root extraction, never by floating logs.
SigmaClass sigma_classify(int n, int m);

enum class TriState { Yes, No, Unknown };

/// Derived statistics of a carpet: the distribution sequence a_j (digits per
/// row), its nonzero support, the distinct values with multiplicities, and
/// the sigma classification. Pure function of the spec.
struct CarpetProfile {
  int n = 0;
  int m = 0;
  std::vector<long> a;          // distribution sequence, size m
  long N = 0;                   // total digit count
  std::vector<int> rows;        // nonzero rows, ascending
  int s = 0;                    // count of nonzero rows
  std::vector<long> a_star;     // distinct nonzero values, strictly decreasing
  std::vector<int> mult;        // multiplicity of each a_star value
  bool has_vacant_row = false;
  SigmaClass sigma_class;

  long a_max() const { return a_star.front(); }
  long a_min() const { return a_star.back(); }
};

CarpetProfile profile(const CarpetSpec& spec);

/// ell(k): the largest j with m^j <= n^k, by exact big-integer power
/// comparison. Floating floor(k log n / log m) can be off by one near
/// commensurability boundaries, and downstream measures need ell exactly.
/// pre: k >= 0.
long ell(int n, int m, long k);
long ell(const CarpetProfile& prof, long k);

/// Doubling of the uniform Bernoulli measure: a_0 a_{m-1} = 0, or
/// a_j a_{j+1} = 0 for all j, or a_0 = a_{m-1}.
bool is_doubling(const CarpetProfile& prof);

/// Uniform horizontal fibers: all nonzero a_j equal.
bool is_regular(const CarpetProfile& prof);

/// Certified only under vacant rows (Yes iff every a_j < n, No iff some row
/// is full); without a vacant row there is no decision procedure, so Unknown.
TriState total_disconnectedness(const CarpetProfile& prof);

std::string to_string(TriState t);

}  // namespace carpetlab
