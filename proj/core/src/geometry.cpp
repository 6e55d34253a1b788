#include "carpetlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "carpetlab/errors.hpp"

namespace carpetlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct U128Hash {
  size_t operator()(u128 v) const noexcept {
    u64 x = static_cast<u64>(v) ^ (static_cast<u64>(v >> 64) * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return static_cast<size_t>(x);
  }
};

// n^k when it fits below 2^62, nullopt otherwise.
std::optional<u64> pow_u64(u64 base, u64 e) {
  u64 r = 1;
  for (u64 i = 0; i < e; ++i) {
    if (r > (u64{1} << 62) / base) return std::nullopt;
    r *= base;
  }
  return r;
}

void check_piece_budget(const BigInt& total, const EnumBudget& budget, const char* what) {
  if (total > BigInt(static_cast<long>(budget.max_pieces)))
    throw Error(Errc::BudgetExceeded, std::string(what) + " needs " + total.to_string() +
                                          " pieces, budget is " + std::to_string(budget.max_pieces));
}

// Number of nonvacant rows, without building a full profile.
long nonvacant_row_count(const CarpetSpec& spec) {
  long s = 0;
  for (const auto& cols : spec.columns_of_row())
    if (!cols.empty()) ++s;
  return s;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

bool is_valid_rectangle(const CarpetSpec& spec, const BasicRectangle& r) {
  if (r.rank < 1 || r.x_word.length() != static_cast<size_t>(r.rank) ||
      r.y_word.length() != static_cast<size_t>(r.rank))
    return false;
  if (r.x_word.alphabet_bound != spec.n() || r.y_word.alphabet_bound != spec.m()) return false;
  for (size_t j = 0; j < r.x_word.length(); ++j) {
    Digit d{r.x_word.symbols[j], r.y_word.symbols[j]};
    if (!std::binary_search(spec.digits().begin(), spec.digits().end(), d)) return false;
  }
  return true;
}

bool is_valid_square(const CarpetSpec& spec, const ApproximateSquare& q) {
  const long lk = ell(spec.n(), spec.m(), q.rank);
  if (q.rank < 1 || q.x_word.length() != static_cast<size_t>(q.rank) ||
      q.y_word.length() != static_cast<size_t>(lk))
    return false;
  if (q.x_word.alphabet_bound != spec.n() || q.y_word.alphabet_bound != spec.m()) return false;
  for (long j = 0; j < q.rank; ++j) {
    Digit d{q.x_word.symbols[static_cast<size_t>(j)], q.y_word.symbols[static_cast<size_t>(j)]};
    if (!std::binary_search(spec.digits().begin(), spec.digits().end(), d)) return false;
  }
  for (long j = q.rank; j < lk; ++j) {
    const int row = q.y_word.symbols[static_cast<size_t>(j)];
    if (row < 0 || row >= spec.m()) return false;
    if (spec.columns_of_row()[static_cast<size_t>(row)].empty()) return false;
  }
  return true;
}

void for_each_basic(const CarpetSpec& spec, long k, const EnumBudget& budget,
                    const std::function<void(const BasicRectangle&)>& fn) {
  if (k < 1) throw Error(Errc::ParseError, "enumeration needs rank k >= 1");
  check_piece_budget(BigInt::pow(BigInt(spec.digit_count()), static_cast<unsigned long>(k)), budget,
                     "basic-rectangle enumeration");

  BasicRectangle r;
  r.rank = k;
  r.x_word = {spec.n(), std::vector<int>(static_cast<size_t>(k), 0)};
  r.y_word = {spec.m(), std::vector<int>(static_cast<size_t>(k), 0)};
  const auto& digits = spec.digits();
  std::vector<size_t> idx(static_cast<size_t>(k), 0);
  for (size_t pos = 0; pos < idx.size(); ++pos) {
    r.x_word.symbols[pos] = digits[0].i;
    r.y_word.symbols[pos] = digits[0].j;
  }
  while (true) {
    fn(r);
    // odometer over digit indices, last position fastest
    size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < digits.size()) {
        r.x_word.symbols[pos] = digits[idx[pos]].i;
        r.y_word.symbols[pos] = digits[idx[pos]].j;
        break;
      }
      idx[pos] = 0;
      r.x_word.symbols[pos] = digits[0].i;
      r.y_word.symbols[pos] = digits[0].j;
      if (pos == 0) return;
    }
  }
}

namespace {

// Shared square enumerator: the first prefix.size() digit positions are
// pinned (used by the restricted cover count); pass {} for the full stream.
void enumerate_squares_impl(const CarpetSpec& spec, long k, const std::vector<Digit>& prefix,
                            const EnumBudget& budget,
                            const std::function<void(const ApproximateSquare&)>& fn) {
  if (k < 1) throw Error(Errc::ParseError, "enumeration needs rank k >= 1");
  const long lk = ell(spec.n(), spec.m(), k);
  const long s = nonvacant_row_count(spec);
  const long free_digits = k - static_cast<long>(prefix.size());
  check_piece_budget(BigInt::pow(BigInt(spec.digit_count()), static_cast<unsigned long>(free_digits)) *
                         BigInt::pow(BigInt(s), static_cast<unsigned long>(lk - k)),
                     budget, "approximate-square enumeration");

  std::vector<int> rows;
  for (int j = 0; j < spec.m(); ++j)
    if (!spec.columns_of_row()[static_cast<size_t>(j)].empty()) rows.push_back(j);

  ApproximateSquare q;
  q.rank = k;
  q.x_word = {spec.n(), std::vector<int>(static_cast<size_t>(k), 0)};
  q.y_word = {spec.m(), std::vector<int>(static_cast<size_t>(lk), 0)};
  for (size_t pos = 0; pos < prefix.size(); ++pos) {
    q.x_word.symbols[pos] = prefix[pos].i;
    q.y_word.symbols[pos] = prefix[pos].j;
  }

  const auto& digits = spec.digits();
  std::vector<size_t> didx(static_cast<size_t>(free_digits), 0);
  std::vector<size_t> ridx(static_cast<size_t>(lk - k), 0);
  auto set_digit = [&](size_t pos) {
    q.x_word.symbols[prefix.size() + pos] = digits[didx[pos]].i;
    q.y_word.symbols[prefix.size() + pos] = digits[didx[pos]].j;
  };
  auto set_row = [&](size_t pos) {
    q.y_word.symbols[static_cast<size_t>(k) + pos] = rows[ridx[pos]];
  };
  for (size_t pos = 0; pos < didx.size(); ++pos) set_digit(pos);
  for (size_t pos = 0; pos < ridx.size(); ++pos) set_row(pos);

  while (true) {
    fn(q);
    // row extension is the fast odometer, digit word the slow one
    size_t pos = ridx.size();
    bool advanced = false;
    while (pos > 0) {
      --pos;
      if (++ridx[pos] < rows.size()) {
        set_row(pos);
        advanced = true;
        break;
      }
      ridx[pos] = 0;
      set_row(pos);
    }
    if (advanced) continue;
    pos = didx.size();
    while (pos > 0) {
      --pos;
      if (++didx[pos] < digits.size()) {
        set_digit(pos);
        advanced = true;
        break;
      }
      didx[pos] = 0;
      set_digit(pos);
    }
    if (!advanced) return;
  }
}

}  // namespace

void for_each_square(const CarpetSpec& spec, long k, const EnumBudget& budget,
                     const std::function<void(const ApproximateSquare&)>& fn) {
  enumerate_squares_impl(spec, k, {}, budget, fn);
}

std::uint64_t count_basic(const CarpetSpec& spec, long k, const EnumBudget& budget) {
  std::uint64_t c = 0;
  for_each_basic(spec, k, budget, [&](const BasicRectangle&) { ++c; });
  return c;
}

std::uint64_t count_squares(const CarpetSpec& spec, long k, const EnumBudget& budget) {
  std::uint64_t c = 0;
  for_each_square(spec, k, budget, [&](const ApproximateSquare&) { ++c; });
  return c;
}

std::vector<ApproximateSquare> collect_squares(const CarpetSpec& spec, long k,
                                               const EnumBudget& budget) {
  std::vector<ApproximateSquare> out;
  for_each_square(spec, k, budget, [&](const ApproximateSquare& q) { out.push_back(q); });
  return out;
}

std::vector<ApproximateSquare> direct_offsprings(const CarpetSpec& spec,
                                                 const ApproximateSquare& q) {
  if (!is_valid_square(spec, q)) throw Error(Errc::ParseError, "invalid approximate square");
  const long k = q.rank;
  const long lk = static_cast<long>(q.y_word.length());
  const long lk1 = ell(spec.n(), spec.m(), k + 1);

  std::vector<int> rows;
  for (int j = 0; j < spec.m(); ++j)
    if (!spec.columns_of_row()[static_cast<size_t>(j)].empty()) rows.push_back(j);

  std::vector<ApproximateSquare> out;
  ApproximateSquare child;
  child.rank = k + 1;
  child.x_word = {spec.n(), q.x_word.symbols};
  child.x_word.symbols.push_back(0);
  child.y_word = {spec.m(), q.y_word.symbols};
  child.y_word.symbols.resize(static_cast<size_t>(lk1), 0);

  // tail positions of the child's y word that range over nonvacant rows
  const long tail_from = (lk > k) ? lk : k + 1;
  std::vector<size_t> ridx(static_cast<size_t>(lk1 - tail_from), 0);
  auto emit_tails = [&]() {
    for (auto& i : ridx) i = 0;
    while (true) {
      for (size_t pos = 0; pos < ridx.size(); ++pos)
        child.y_word.symbols[static_cast<size_t>(tail_from) + pos] = rows[ridx[pos]];
      out.push_back(child);
      size_t pos = ridx.size();
      bool advanced = false;
      while (pos > 0) {
        --pos;
        if (++ridx[pos] < rows.size()) {
          advanced = true;
          break;
        }
        ridx[pos] = 0;
      }
      if (!advanced) return;
    }
  };

  if (lk > k) {
    // x_{k+1} pairs with the already-fixed row y_{k+1}
    const int row = q.y_word.symbols[static_cast<size_t>(k)];
    for (int u : spec.columns_of_row()[static_cast<size_t>(row)]) {
      child.x_word.symbols[static_cast<size_t>(k)] = u;
      emit_tails();
    }
  } else {
    for (const Digit& d : spec.digits()) {
      child.x_word.symbols[static_cast<size_t>(k)] = d.i;
      child.y_word.symbols[static_cast<size_t>(k)] = d.j;
      emit_tails();
    }
  }
  return out;
}

size_t ComponentPartition::piece_count() const {
  size_t total = 0;
  for (const auto& c : cells) total += c.size();
  return total;
}

size_t ComponentPartition::max_cardinality() const {
  size_t best = 0;
  for (const auto& c : cells) best = std::max(best, c.size());
  return best;
}

ComponentPartition components(const CarpetSpec& spec, long k, ApproxKind kind,
                              const EnumBudget& budget) {
  const long lk = ell(spec.n(), spec.m(), k);
  const long y_rank = (kind == ApproxKind::TildeApprox) ? k : lk;
  const auto x_range = pow_u64(static_cast<u64>(spec.n()), static_cast<u64>(k));
  const auto y_range = pow_u64(static_cast<u64>(spec.m()), static_cast<u64>(y_rank));
  if (!x_range || !y_range)
    throw Error(Errc::BudgetExceeded, "rank too deep for grid coordinates");

  std::vector<std::pair<u64, u64>> coords;
  auto push_cell = [&](const SymbolWord& xw, const SymbolWord& yw) {
    u64 x = 0, y = 0;
    for (int sx : xw.symbols) x = x * static_cast<u64>(spec.n()) + static_cast<u64>(sx);
    for (int sy : yw.symbols) y = y * static_cast<u64>(spec.m()) + static_cast<u64>(sy);
    coords.emplace_back(x, y);
  };
  if (kind == ApproxKind::TildeApprox) {
    for_each_basic(spec, k, budget, [&](const BasicRectangle& r) { push_cell(r.x_word, r.y_word); });
  } else {
    for_each_square(spec, k, budget, [&](const ApproximateSquare& q) { push_cell(q.x_word, q.y_word); });
  }

  std::unordered_map<u128, std::uint32_t, U128Hash> at;
  at.reserve(coords.size() * 2);
  for (std::uint32_t i = 0; i < coords.size(); ++i)
    at.emplace((static_cast<u128>(coords[i].first) << 64) | coords[i].second, i);

  UnionFind uf(coords.size());
  for (std::uint32_t i = 0; i < coords.size(); ++i) {
    const auto [x, y] = coords[i];
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        if ((dx < 0 && x == 0) || (dy < 0 && y == 0)) continue;
        const u64 nx = x + static_cast<u64>(dx), ny = y + static_cast<u64>(dy);
        if (nx >= *x_range || ny >= *y_range) continue;
        auto it = at.find((static_cast<u128>(nx) << 64) | ny);
        if (it != at.end()) uf.unite(i, it->second);
      }
    }
  }

  ComponentPartition part;
  part.rank = k;
  part.kind = kind;
  std::unordered_map<std::uint32_t, size_t> slot;
  for (std::uint32_t i = 0; i < coords.size(); ++i) {
    const std::uint32_t root = uf.find(i);
    auto [it, fresh] = slot.emplace(root, part.cells.size());
    if (fresh) part.cells.emplace_back();
    part.cells[it->second].push_back(i);  // ascending: i grows monotonically
  }
  return part;
}

std::vector<ComponentStats> component_stats(const CarpetSpec& spec, long k_max, ApproxKind kind,
                                            const EnumBudget& budget) {
  std::vector<ComponentStats> out;
  for (long k = 1; k <= k_max; ++k) {
    ComponentPartition part = components(spec, k, kind, budget);
    out.push_back({k, part.piece_count(), part.cells.size(), part.max_cardinality()});
  }
  return out;
}

std::uint64_t box_count(const CarpetSpec& spec, long q,
                        const std::optional<BasicRectangle>& restrict_to,
                        const EnumBudget& budget) {
  if (q < 1) throw Error(Errc::ParseError, "box_count needs depth q >= 1");
  std::vector<Digit> prefix;
  if (restrict_to) {
    if (!is_valid_rectangle(spec, *restrict_to))
      throw Error(Errc::ParseError, "restriction is not a basic rectangle of this carpet");
    if (restrict_to->rank > q)
      throw Error(Errc::ParseError, "restriction rank exceeds the mesh depth");
    for (long j = 0; j < restrict_to->rank; ++j)
      prefix.push_back(Digit{restrict_to->x_word.symbols[static_cast<size_t>(j)],
                             restrict_to->y_word.symbols[static_cast<size_t>(j)]});
  }

  const long lq = ell(spec.n(), spec.m(), q);
  const auto npow = pow_u64(static_cast<u64>(spec.n()), static_cast<u64>(q));
  const auto mpow = pow_u64(static_cast<u64>(spec.m()), static_cast<u64>(lq));
  if (!npow || !mpow) throw Error(Errc::BudgetExceeded, "depth too deep for mesh coordinates");

  std::unordered_set<u128, U128Hash> cells;
  enumerate_squares_impl(spec, q, prefix, budget, [&](const ApproximateSquare& sq) {
    u64 x = 0, y = 0;
    for (int sx : sq.x_word.symbols) x = x * static_cast<u64>(spec.n()) + static_cast<u64>(sx);
    for (int sy : sq.y_word.symbols) y = y * static_cast<u64>(spec.m()) + static_cast<u64>(sy);
    // y interval [y, y+1]/m^lq against rows of height 1/n^q, half-open cells
    const u128 lo_num = static_cast<u128>(y) * *npow;
    const u128 hi_num = static_cast<u128>(y + 1) * *npow;
    const u64 row_lo = static_cast<u64>(lo_num / *mpow);
    const u64 row_hi = static_cast<u64>((hi_num + *mpow - 1) / *mpow) - 1;
    for (u64 r = row_lo; r <= row_hi; ++r)
      cells.insert((static_cast<u128>(x) << 64) | r);
  });
  return cells.size();
}

BoxCountReport box_count_report(const CarpetSpec& spec, long q,
                                const std::optional<BasicRectangle>& restrict_to,
                                const EnumBudget& budget) {
  BoxCountReport rep;
  rep.depth = q;
  rep.count = box_count(spec, q, restrict_to, budget);
  const long s = nonvacant_row_count(spec);
  rep.comparability_constant = 2 * s * (spec.m() + 2);
  const long restrict_rank = restrict_to ? restrict_to->rank : 0;
  rep.mu_restrict = Rational(BigInt(1), BigInt::pow(BigInt(spec.digit_count()),
                                                    static_cast<unsigned long>(restrict_rank)));
  const double sigma = std::log(spec.m()) / std::log(spec.n());
  const double dim_b =
      std::log(static_cast<double>(spec.digit_count()) * std::pow(static_cast<double>(s), 1.0 / sigma - 1.0)) /
      std::log(spec.n());
  const double mu = std::pow(static_cast<double>(spec.digit_count()), -static_cast<double>(restrict_rank));
  rep.envelope_center = mu * std::pow(static_cast<double>(spec.n()), static_cast<double>(q) * dim_b);
  const double c2 = static_cast<double>(rep.comparability_constant);
  const double count = static_cast<double>(rep.count);
  rep.within_envelope = count >= rep.envelope_center / c2 && count <= rep.envelope_center * c2;
  return rep;
}

}  // namespace carpetlab
