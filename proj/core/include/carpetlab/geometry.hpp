#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "carpetlab/carpet.hpp"

namespace carpetlab {

/// Finite word over {0, ..., alphabet_bound-1}; the empty word is allowed.
struct SymbolWord {
  int alphabet_bound = 0;
  std::vector<int> symbols;

  size_t length() const { return symbols.size(); }
  bool in_range() const {
    for (int s : symbols)
      if (s < 0 || s >= alphabet_bound) return false;
    return true;
  }
  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;
};

/// Rank-k basic rectangle R(x_1...x_k, y_1...y_k): the (x_j, y_j) must be digits.
/// Its region is [X, X+1]/n^k x [Y, Y+1]/m^k with X, Y the base-n/base-m values.
struct BasicRectangle {
  long rank = 0;
  SymbolWord x_word;  // base n, length rank
  SymbolWord y_word;  // base m, length rank
  friend bool operator==(const BasicRectangle&, const BasicRectangle&) = default;
};

/// Rank-k approximate square Q(x, y): x of length k over digits' columns,
/// y of length ell(k) whose tail rows (positions k+1..ell(k)) are nonvacant.
/// Width n^{-k}, height m^{-ell(k)}: the nearly-square covering object.
struct ApproximateSquare {
  long rank = 0;
  SymbolWord x_word;  // base n, length rank
  SymbolWord y_word;  // base m, length ell(rank)
  friend bool operator==(const ApproximateSquare&, const ApproximateSquare&) = default;
};

/// Enumeration ceilings. Streaming keeps memory at component-bookkeeping
/// size, but the piece count itself is capped to keep runs tractable.
struct EnumBudget {
  std::uint64_t max_pieces = 5'000'000;
};

/// Throws Error::ClassViolation-free validation of square structure.
bool is_valid_square(const CarpetSpec& spec, const ApproximateSquare& q);
bool is_valid_rectangle(const CarpetSpec& spec, const BasicRectangle& r);

/// Exactly N^k rectangles, lexicographic in the digit word.
/// errors: BudgetExceeded.
void for_each_basic(const CarpetSpec& spec, long k, const EnumBudget& budget,
                    const std::function<void(const BasicRectangle&)>& fn);

/// Exactly N^k * s^{ell(k)-k} squares: lexicographic in (digit word, row extension).
/// errors: BudgetExceeded.
void for_each_square(const CarpetSpec& spec, long k, const EnumBudget& budget,
                     const std::function<void(const ApproximateSquare&)>& fn);

std::uint64_t count_basic(const CarpetSpec& spec, long k, const EnumBudget& budget);
std::uint64_t count_squares(const CarpetSpec& spec, long k, const EnumBudget& budget);

/// Materialized enumeration; intended for the small ranks the measure and
/// component suites work at.
std::vector<ApproximateSquare> collect_squares(const CarpetSpec& spec, long k,
                                               const EnumBudget& budget);

/// Direct offsprings of q (rank k+1 squares contained in q):
///   ell(k) > k: x extends by any column u with (u, y_{k+1}) a digit and y by
///               any nonvacant-row word of length ell(k+1)-ell(k); count
///               a_{y_{k+1}} * s^{ell(k+1)-ell(k)}.
///   ell(k) = k: x extends by u and y by v then the row word, over digits
///               (u, v); count N * s^{ell(k+1)-(k+1)}.
std::vector<ApproximateSquare> direct_offsprings(const CarpetSpec& spec,
                                                 const ApproximateSquare& q);

enum class ApproxKind { TildeApprox, SquareApprox };

/// Connected components of the rank-k approximation (closed union of pieces).
/// Pieces are unit cells on the n^k x m^k grid (TildeApprox) or the
/// n^k x m^{ell(k)} grid (SquareApprox); two pieces touch iff their Chebyshev
/// distance is at most 1 - corner contact connects, matching closed-set
/// topology. Cells hold indices into the lexicographic enumeration.
struct ComponentPartition {
  long rank = 0;
  ApproxKind kind = ApproxKind::TildeApprox;
  std::vector<std::vector<std::uint32_t>> cells;

  size_t piece_count() const;
  size_t max_cardinality() const;
};

ComponentPartition components(const CarpetSpec& spec, long k, ApproxKind kind,
                              const EnumBudget& budget);

struct ComponentStats {
  long rank = 0;
  std::uint64_t pieces = 0;
  std::uint64_t component_count = 0;
  std::uint64_t max_cardinality = 0;
};

/// Empirical per-rank component table for k = 1..k_max (no boundedness
/// certificate; the uniform bound exists but is not computable here).
std::vector<ComponentStats> component_stats(const CarpetSpec& spec, long k_max, ApproxKind kind,
                                            const EnumBudget& budget);

/// Mesh-box count of the rank-q approximate-square cover against the
/// delta = n^{-q} grid (the cover count, not an exact emptiness test of the
/// attractor). Each square fills one mesh column and between 1 and m+2 rows;
/// the result is the size of the union of covered (column, row) cells.
/// restrict, when given, limits the cover to squares lying inside that basic
/// rectangle (pre: restrict.rank <= q).
std::uint64_t box_count(const CarpetSpec& spec, long q,
                        const std::optional<BasicRectangle>& restrict_to,
                        const EnumBudget& budget);

/// Cover count together with the two-sided comparability envelope
/// C^{-1} mu(R) delta^{-dim_B} <= count <= C mu(R) delta^{-dim_B}, C = 2s(m+2).
struct BoxCountReport {
  long depth = 0;
  std::uint64_t count = 0;
  long comparability_constant = 0;  // 2s(m+2)
  Rational mu_restrict{1};          // N^{-rank(restrict)}, 1 when unrestricted
  double envelope_center = 0.0;     // mu * delta^{-dim_B}
  bool within_envelope = false;
};

BoxCountReport box_count_report(const CarpetSpec& spec, long q,
                                const std::optional<BasicRectangle>& restrict_to,
                                const EnumBudget& budget);

}  // namespace carpetlab
