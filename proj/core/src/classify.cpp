#include "carpetlab/classify.hpp"

#include <algorithm>

#include "carpetlab/errors.hpp"

namespace carpetlab {

ClassFlags class_membership(const CarpetProfile& prof) {
  ClassFlags flags;
  flags.totally_disconnected = total_disconnectedness(prof);
  if (!prof.has_vacant_row) {
    flags.disconnected_vacant = TriState::No;
    flags.disconnected_vacant_doubling = TriState::No;
    return flags;
  }
  flags.disconnected_vacant = flags.totally_disconnected;  // decisive under vacancy
  flags.disconnected_vacant_doubling =
      (flags.disconnected_vacant == TriState::Yes && is_doubling(prof)) ? TriState::Yes
                                                                        : TriState::No;
  return flags;
}

bool permutation_equal(const CarpetProfile& e, const CarpetProfile& f) {
  if (e.m != f.m) throw Error(Errc::ShapeMismatch, "permutation test needs the same m");
  std::vector<long> ae = e.a, af = f.a;
  std::sort(ae.begin(), ae.end());
  std::sort(af.begin(), af.end());
  return ae == af;
}

std::string to_string(InvariantReport::Verdict v) {
  return v == InvariantReport::Verdict::NotEquivalent ? "not-equivalent" : "inconclusive";
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

InvariantEntry parity_entry(const std::string& name, bool val_e, bool val_f, bool certified,
                            const std::string& uncertified_reason) {
  InvariantEntry entry;
  entry.name = name;
  entry.applicable = certified;
  entry.conditional = !certified;
  entry.differs = certified && (val_e != val_f);
  entry.status = certified ? (val_e == val_f ? "equal" : "differs") : "conditional";
  entry.detail = "E: " + bool_str(val_e) + ", F: " + bool_str(val_f) +
                 (certified ? "" : " (" + uncertified_reason + ")");
  return entry;
}

// Certified-difference / exact-equality / precision-equality comparison of a
// dimension through rigorous enclosures.
InvariantEntry dimension_entry(const std::string& name, const Interval& enc_e,
                               const Interval& enc_f, std::optional<bool> exact_equal,
                               int print_digits) {
  InvariantEntry entry;
  entry.name = name;
  entry.applicable = true;
  const bool disjoint = enc_e.disjoint_from(enc_f);
  if (exact_equal.has_value()) {
    entry.differs = !*exact_equal;
    entry.status = *exact_equal ? "equal" : "differs";
  } else if (disjoint) {
    entry.differs = true;
    entry.status = "differs";
  } else {
    entry.differs = false;
    entry.status = "equal-at-precision";
  }
  entry.detail = "E: " + enc_e.lo().to_string(print_digits) + ", F: " + enc_f.lo().to_string(print_digits);
  return entry;
}

}  // namespace

InvariantReport compare(const CarpetSpec& spec_e, const CarpetSpec& spec_f,
                        const CompareConfig& config) {
  const CarpetProfile prof_e = profile(spec_e);
  const CarpetProfile prof_f = profile(spec_f);
  const long prec = config.precision_bits;

  InvariantReport report;
  report.flags_e = class_membership(prof_e);
  report.flags_f = class_membership(prof_f);

  const bool same_pair = prof_e.n == prof_f.n && prof_e.m == prof_f.m;
  const bool both_disconnected = report.flags_e.totally_disconnected == TriState::Yes &&
                                 report.flags_f.totally_disconnected == TriState::Yes;
  const std::string gate_reason = same_pair
                                      ? "total disconnectedness not certified for both carpets"
                                      : "expansion pairs differ";

  // (1) vacant-row parity
  {
    InvariantEntry entry = parity_entry("vacant-row-parity", prof_e.has_vacant_row,
                                        prof_f.has_vacant_row, same_pair && both_disconnected,
                                        gate_reason);
    report.entries.push_back(entry);
  }

  // (2) doubling parity
  {
    InvariantEntry entry = parity_entry("doubling", is_doubling(prof_e), is_doubling(prof_f),
                                        same_pair && both_disconnected, gate_reason);
    report.entries.push_back(entry);
  }

  // (3) spectrum equality
  {
    InvariantEntry entry;
    entry.name = "spectrum";
    if (same_pair) {
      const TriVerdict verdict = spectra_equal(prof_e, prof_f, prec);
      entry.applicable = both_disconnected;
      entry.conditional = !both_disconnected;
      entry.differs = entry.applicable && verdict.value == TriVerdict::Value::NotEqual;
      entry.status = !both_disconnected ? "conditional" : to_string(verdict.value);
      entry.detail = to_string(verdict.value) + "; " + verdict.certificate +
                     (both_disconnected ? "" : " (" + gate_reason + ")");
    } else {
      entry.status = "not-applicable";
      entry.detail = gate_reason;
    }
    report.entries.push_back(entry);
  }

  // (4) dimension comparisons: always applicable, witness only via exact or
  // enclosure-separation certificates
  const bool spectra_forced_equal =
      same_pair && spectra_equal(prof_e, prof_f, prec).value == TriVerdict::Value::Equal;
  const int digits = std::max(17, static_cast<int>(static_cast<double>(prec) * 0.30103) / 2);
  {
    std::optional<bool> box_exact = dim_box_equal_exact(prof_e, prof_f);
    if (!box_exact.has_value() && spectra_forced_equal) box_exact = true;
    report.entries.push_back(dimension_entry("dimension-box", dim_box_enclosure(prof_e, prec),
                                             dim_box_enclosure(prof_f, prec), box_exact, digits));
    std::optional<bool> implied =
        spectra_forced_equal ? std::optional<bool>(true) : std::nullopt;
    report.entries.push_back(dimension_entry("dimension-hausdorff",
                                             dim_hausdorff_enclosure(prof_e, prec),
                                             dim_hausdorff_enclosure(prof_f, prec), implied, digits));
    report.entries.push_back(dimension_entry("dimension-assouad",
                                             dim_assouad_enclosure(prof_e, prec),
                                             dim_assouad_enclosure(prof_f, prec), implied, digits));
  }

  // (5) distribution permutation under irrational sigma
  {
    InvariantEntry entry;
    entry.name = "distribution-permutation";
    if (same_pair) {
      const bool sigma_irrational =
          prof_e.sigma_class.kind == SigmaClass::Kind::Irrational;
      const bool both_tvd =
          report.flags_e.disconnected_vacant_doubling == TriState::Yes &&
          report.flags_f.disconnected_vacant_doubling == TriState::Yes;
      const bool equal = permutation_equal(prof_e, prof_f);
      entry.applicable = sigma_irrational && both_tvd;
      entry.conditional = !entry.applicable;
      entry.differs = entry.applicable && !equal;
      entry.status = entry.applicable ? (equal ? "equal" : "differs") : "conditional";
      entry.detail = std::string(equal ? "distribution sequences are permutations"
                                       : "distribution sequences are not permutations") +
                     (entry.applicable
                          ? ""
                          : (sigma_irrational
                                 ? " (class membership not certified for both carpets)"
                                 : " (sigma is rational, the permutation invariant needs irrational sigma)"));
    } else {
      entry.status = "not-applicable";
      entry.detail = gate_reason;
    }
    report.entries.push_back(entry);
  }

  // (6) regularity parity (Hausdorff = box dimension is Lipschitz-invariant)
  {
    InvariantEntry entry;
    entry.name = "regularity";
    if (same_pair) {
      const bool reg_e = is_regular(prof_e), reg_f = is_regular(prof_f);
      entry.applicable = true;
      entry.differs = reg_e != reg_f;
      entry.status = entry.differs ? "differs" : "equal";
      entry.detail = "E: " + bool_str(reg_e) + ", F: " + bool_str(reg_f);
    } else {
      entry.status = "not-applicable";
      entry.detail = gate_reason;
    }
    report.entries.push_back(entry);
  }

  for (const InvariantEntry& entry : report.entries) {
    if (entry.applicable && entry.differs) {
      report.verdict = InvariantReport::Verdict::NotEquivalent;
      report.witness = entry.name;
      break;
    }
  }
  return report;
}

}  // namespace carpetlab
