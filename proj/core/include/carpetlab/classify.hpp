#pragma once

#include <string>
#include <vector>

#include "carpetlab/carpet.hpp"
#include "carpetlab/spectrum.hpp"

namespace carpetlab {

/// Nested class membership: totally disconnected; additionally with a vacant
/// row; additionally with doubling uniform Bernoulli measure. The first leg
/// is a tri-state (no certification without vacant rows); the other two are
/// decisive once vacancy is known.
struct ClassFlags {
  TriState totally_disconnected = TriState::Unknown;
  TriState disconnected_vacant = TriState::Unknown;
  TriState disconnected_vacant_doubling = TriState::Unknown;
};

ClassFlags class_membership(const CarpetProfile& prof);

/// Multiset equality of the distribution sequences, zeros included.
/// pre: same m. errors: ShapeMismatch.
bool permutation_equal(const CarpetProfile& prof_e, const CarpetProfile& prof_f);

struct CompareConfig {
  long precision_bits = Real::kDefaultPrecision;
  int spectrum_grid = 9;
};

struct InvariantEntry {
  std::string name;
  bool applicable = false;   // hypotheses certified; only these can witness
  bool conditional = false;  // computed anyway, hypotheses not certified
  bool differs = false;      // certified difference
  std::string status;        // equal | differs | equal-at-precision | undecided | not-applicable
  std::string detail;
};

/// Battery outcome for a carpet pair. The verdict claims non-equivalence
/// only: the invariants here are necessary conditions, so matching ones
/// leave the pair Inconclusive, never "equivalent".
struct InvariantReport {
  enum class Verdict { NotEquivalent, Inconclusive };
  ClassFlags flags_e, flags_f;
  std::vector<InvariantEntry> entries;
  Verdict verdict = Verdict::Inconclusive;
  std::string witness;  // first differing applicable invariant
};

std::string to_string(InvariantReport::Verdict v);

/// Runs, cheapest first: vacant-row parity, doubling parity, spectrum
/// equality, dimension comparisons, distribution permutation (irrational
/// sigma, both carpets certified disconnected+vacant+doubling), regularity
/// parity. Entries needing uncertified hypotheses are computed but labeled
/// conditional and never used as witness. Differing expansion pairs leave
/// only the dimension comparisons applicable.
InvariantReport compare(const CarpetSpec& spec_e, const CarpetSpec& spec_f,
                        const CompareConfig& config = {});

}  // namespace carpetlab
