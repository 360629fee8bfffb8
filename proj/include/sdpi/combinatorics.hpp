#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdpi {

using Residue = unsigned;

// Odd d >= 3 within the supported range; throws InvalidInput otherwise.
void require_qudit_dimension(unsigned d);

// Occupation counts (u_0, ..., u_{d-1}) stored inline.
class OccupationVector {
 public:
  static constexpr std::size_t kMaxDim = 31;

  OccupationVector() = default;
  OccupationVector(std::initializer_list<unsigned> entries);
  explicit OccupationVector(std::span<const unsigned> entries);

  std::size_t dim() const { return size_; }
  unsigned total() const;
  std::uint16_t operator[](std::size_t i) const { return entries_[i]; }
  std::uint16_t& operator[](std::size_t i) { return entries_[i]; }
  std::span<const std::uint16_t> entries() const { return {entries_.data(), size_}; }
  std::string to_string() const;

  friend bool operator==(const OccupationVector& a, const OccupationVector& b) {
    return a.size_ == b.size_ && std::equal(a.entries_.begin(), a.entries_.begin() + a.size_,
                                            b.entries_.begin());
  }
  friend std::strong_ordering operator<=>(const OccupationVector& a, const OccupationVector& b);

 private:
  std::array<std::uint16_t, kMaxDim> entries_{};
  std::uint8_t size_ = 0;
};

Residue weight(const OccupationVector& u);
// result[j] = u[j - a mod d]
OccupationVector cyclic_shift(const OccupationVector& u, Residue a);
bool is_in_w(const OccupationVector& u);
// Every composition of n into d parts, lexicographically ordered.
std::vector<OccupationVector> all_compositions(unsigned d, unsigned n);

struct TailOrbit {
  OccupationVector representative;
  std::uint64_t size = 1;
  friend bool operator==(const TailOrbit&, const TailOrbit&) = default;
};

OccupationVector canonical_tail(const OccupationVector& u);
TailOrbit tail_orbit(const OccupationVector& u);
// All members, lexicographically sorted.
std::vector<OccupationVector> expand_orbit(const OccupationVector& rep);

// Streams the orbit representatives of W_{d,N} in lexicographic order.
class SupportEnumerator {
 public:
  SupportEnumerator(unsigned d, unsigned n);
  std::optional<TailOrbit> next();

 private:
  void fill_batch();
  unsigned d_, n_;
  unsigned head_ = 0;
  bool exhausted_ = false;
  std::vector<OccupationVector> batch_;
  std::size_t pos_ = 0;
};

std::vector<TailOrbit> enumerate_supports(unsigned d, unsigned n,
                                          std::optional<std::size_t> cap = std::nullopt);

struct SparsityDistance {
  unsigned distance = 0;
  Residue shift = 0;
  std::vector<int> pattern;  // sorted nonzero differences u_j - u'_{j+shift}
};

// Minimum over shifts of sum_j |u_j - v_{j+shift}|; ties go to the smallest shift.
SparsityDistance sparsity_distance(const OccupationVector& u, const OccupationVector& v,
                                   bool exclude_zero_shift = false);

struct SparsityWitness {
  OccupationVector u, v;
  Residue shift = 0;
  unsigned distance = 0;
  std::vector<int> pattern;
};

struct SparsityVerdict {
  bool sparse = true;
  std::optional<SparsityWitness> witness;
};

// Forbids distance 2 at every shift and distance 4 unless the pattern is {+2,-2};
// exact coincidence of a vector with itself at shift 0 is skipped.
SparsityVerdict is_effectively_sparse(std::span<const OccupationVector> representatives);
// Pair test on two orbits (including each against itself when a == b).
SparsityVerdict orbits_compatible(const OccupationVector& a, const OccupationVector& b);
// Literal "> 4 at every shift" reading, reported for information only.
SparsityVerdict is_literally_sparse(std::span<const OccupationVector> representatives);

}  // namespace sdpi

template <>
struct std::hash<sdpi::OccupationVector> {
  std::size_t operator()(const sdpi::OccupationVector& u) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : u.entries()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
