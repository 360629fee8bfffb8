#include "sdpi/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "sdpi/arith.hpp"
#include "sdpi/errors.hpp"

namespace sdpi {

void require_qudit_dimension(unsigned d) {
  if (d < 3 || d % 2 == 0) {
    throw InvalidInput("qudit dimension must be odd and at least 3, got " + std::to_string(d));
  }
  if (d > OccupationVector::kMaxDim) {
    throw InvalidInput("qudit dimension " + std::to_string(d) + " exceeds the supported maximum " +
                       std::to_string(OccupationVector::kMaxDim));
  }
}

OccupationVector::OccupationVector(std::initializer_list<unsigned> entries)
    : OccupationVector(std::span<const unsigned>(entries.begin(), entries.size())) {}

OccupationVector::OccupationVector(std::span<const unsigned> entries) {
  if (entries.empty() || entries.size() > kMaxDim) {
    throw InvalidInput("occupation vector length must be between 1 and " +
                       std::to_string(kMaxDim));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] > 0xFFFF) throw InvalidInput("occupation entry too large");
    entries_[i] = static_cast<std::uint16_t>(entries[i]);
  }
  size_ = static_cast<std::uint8_t>(entries.size());
}

unsigned OccupationVector::total() const {
  unsigned s = 0;
  for (std::size_t i = 0; i < size_; ++i) s += entries_[i];
  return s;
}

std::string OccupationVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size_; ++i) os << (i ? "," : "") << entries_[i];
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const OccupationVector& a, const OccupationVector& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t i = 0; i < a.size_; ++i) {
    if (auto c = a.entries_[i] <=> b.entries_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Residue weight(const OccupationVector& u) {
  const std::size_t d = u.dim();
  std::uint64_t s = 0;
  for (std::size_t j = 1; j < d; ++j) s += j * u[j];
  return static_cast<Residue>(s % d);
}

OccupationVector cyclic_shift(const OccupationVector& u, Residue a) {
  const std::size_t d = u.dim();
  OccupationVector r = u;
  for (std::size_t j = 0; j < d; ++j) r[(j + a) % d] = u[j];
  return r;
}

bool is_in_w(const OccupationVector& u) {
  const std::size_t d = u.dim();
  for (std::size_t j = 2; j < d; ++j) {
    if (u[j] % d != u[1] % d) return false;
  }
  return weight(u) == 0;
}

std::vector<OccupationVector> all_compositions(unsigned d, unsigned n) {
  std::vector<OccupationVector> out;
  std::vector<unsigned> cur(d, 0);
  auto rec = [&](auto&& self, unsigned pos, unsigned left) -> void {
    if (pos + 1 == d) {
      cur[pos] = left;
      out.emplace_back(std::span<const unsigned>(cur));
      return;
    }
    for (unsigned x = 0; x <= left; ++x) {
      cur[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  rec(rec, 0, n);
  return out;
}

OccupationVector canonical_tail(const OccupationVector& u) {
  OccupationVector r = u;
  std::vector<std::uint16_t> tail(u.entries().begin() + 1, u.entries().end());
  std::sort(tail.begin(), tail.end(), std::greater<>());
  for (std::size_t j = 0; j < tail.size(); ++j) r[j + 1] = tail[j];
  return r;
}

TailOrbit tail_orbit(const OccupationVector& u) {
  TailOrbit o{canonical_tail(u), 1};
  std::map<unsigned, std::uint16_t> counts;
  for (std::size_t j = 1; j < u.dim(); ++j) ++counts[u[j]];
  std::vector<std::uint16_t> mults;
  unsigned k = 0;
  for (const auto& [value, c] : counts) {
    mults.push_back(c);
    k += c;
  }
  BigInt size = multinomial(k, mults);
  if (!size.fits_ulong_p()) throw CapExceeded("tail orbit size does not fit in 64 bits");
  o.size = size.get_ui();
  return o;
}

std::vector<OccupationVector> expand_orbit(const OccupationVector& rep) {
  std::vector<std::uint16_t> tail(rep.entries().begin() + 1, rep.entries().end());
  std::sort(tail.begin(), tail.end());
  std::vector<OccupationVector> out;
  do {
    OccupationVector v = rep;
    for (std::size_t j = 0; j < tail.size(); ++j) v[j + 1] = tail[j];
    out.push_back(v);
  } while (std::next_permutation(tail.begin(), tail.end()));
  return out;
}

// SupportEnumerator

namespace {

// Non-increasing sequences of `parts` naturals summing to `total`, each at most `cap`.
void partitions(unsigned total, unsigned parts, unsigned cap, std::vector<unsigned>& cur,
                std::vector<std::vector<unsigned>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  unsigned lo = (total + parts - 1) / parts;
  for (unsigned x = lo; x <= std::min(cap, total); ++x) {
    cur.push_back(x);
    partitions(total - x, parts - 1, x, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SupportEnumerator::SupportEnumerator(unsigned d, unsigned n) : d_(d), n_(n) {
  require_qudit_dimension(d);
  if (n < 1) throw InvalidInput("N must be positive");
}

std::optional<TailOrbit> SupportEnumerator::next() {
  while (pos_ == batch_.size()) {
    if (exhausted_) return std::nullopt;
    fill_batch();
  }
  return tail_orbit(batch_[pos_++]);
}

// Tails congruent to r mod d are r + d*m with m a partition; for odd d the
// weight of such a vector is r*d(d-1)/2 = 0 mod d, but it is checked anyway.
void SupportEnumerator::fill_batch() {
  batch_.clear();
  pos_ = 0;
  const unsigned rest = n_ - head_;
  const unsigned k = d_ - 1;
  for (unsigned r = 0; r < d_ && k * r <= rest; ++r) {
    if ((rest - k * r) % d_ != 0) continue;
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    partitions((rest - k * r) / d_, k, rest, cur, parts);
    for (const auto& m : parts) {
      std::vector<unsigned> entries{head_};
      for (unsigned x : m) entries.push_back(r + d_ * x);
      OccupationVector v(entries);
      if (weight(v) == 0) batch_.push_back(v);
    }
  }
  std::sort(batch_.begin(), batch_.end());
  if (head_ == n_) {
    exhausted_ = true;
  } else {
    ++head_;
  }
}

std::vector<TailOrbit> enumerate_supports(unsigned d, unsigned n, std::optional<std::size_t> cap) {
  std::vector<TailOrbit> out;
  SupportEnumerator e(d, n);
  while (auto o = e.next()) {
    if (cap && out.size() >= *cap) break;
    out.push_back(*o);
  }
  return out;
}

SparsityDistance sparsity_distance(const OccupationVector& u, const OccupationVector& v,
                                   bool exclude_zero_shift) {
  if (u.dim() != v.dim()) throw InvalidInput("sparsity_distance: dimension mismatch");
  const std::size_t d = u.dim();
  SparsityDistance best;
  bool found = false;
  for (Residue s = exclude_zero_shift ? 1 : 0; s < d; ++s) {
    unsigned dist = 0;
    for (std::size_t j = 0; j < d; ++j) {
      int diff = int(u[j]) - int(v[(j + s) % d]);
      dist += static_cast<unsigned>(std::abs(diff));
    }
    if (!found || dist < best.distance) {
      best.distance = dist;
      best.shift = s;
      found = true;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    int diff = int(u[j]) - int(v[(j + best.shift) % d]);
    if (diff != 0) best.pattern.push_back(diff);
  }
  std::sort(best.pattern.begin(), best.pattern.end());
  return best;
}

namespace {

using PairRule = bool (*)(unsigned distance, const std::vector<int>& pattern);

bool effective_rule(unsigned distance, const std::vector<int>& pattern) {
  if (distance == 2) return false;
  if (distance == 4) return pattern == std::vector<int>{-2, 2};
  return true;
}

bool literal_rule(unsigned distance, const std::vector<int>&) { return distance > 4; }

std::optional<SparsityWitness> scan_pair(const OccupationVector& u, const OccupationVector& v,
                                         PairRule rule) {
  const std::size_t d = u.dim();
  for (Residue s = 0; s < d; ++s) {
    unsigned dist = 0;
    std::vector<int> pattern;
    for (std::size_t j = 0; j < d; ++j) {
      int diff = int(u[j]) - int(v[(j + s) % d]);
      dist += static_cast<unsigned>(std::abs(diff));
      if (diff != 0) pattern.push_back(diff);
    }
    if (dist == 0) continue;  // exact coincidence
    std::sort(pattern.begin(), pattern.end());
    if (!rule(dist, pattern)) return SparsityWitness{u, v, s, dist, std::move(pattern)};
  }
  return std::nullopt;
}

SparsityVerdict scan_members(const std::vector<OccupationVector>& a,
                             const std::vector<OccupationVector>& b, bool same, PairRule rule) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = same ? i : 0; j < b.size(); ++j) {
      if (auto w = scan_pair(a[i], b[j], rule)) return {false, std::move(w)};
    }
  }
  return {};
}

SparsityVerdict scan_support(std::span<const OccupationVector> reps, PairRule rule) {
  std::vector<OccupationVector> members;
  for (const auto& r : reps) {
    auto m = expand_orbit(r);
    members.insert(members.end(), m.begin(), m.end());
  }
  return scan_members(members, members, true, rule);
}

}  // namespace

SparsityVerdict is_effectively_sparse(std::span<const OccupationVector> representatives) {
  return scan_support(representatives, effective_rule);
}

SparsityVerdict is_literally_sparse(std::span<const OccupationVector> representatives) {
  return scan_support(representatives, literal_rule);
}

SparsityVerdict orbits_compatible(const OccupationVector& a, const OccupationVector& b) {
  auto ma = expand_orbit(a);
  if (a == b) return scan_members(ma, ma, true, effective_rule);
  return scan_members(ma, expand_orbit(b), false, effective_rule);
}

}  // namespace sdpi
