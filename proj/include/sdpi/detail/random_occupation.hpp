#pragma once

#include <algorithm>
#include <iterator>
#include <numeric>
#include <vector>

namespace sdpi {

template <class Rng>
OccupationVector random_occupation(unsigned d, unsigned n, Rng& rng) {
  // Stars and bars: d-1 bar positions among n+d-1 slots.
  std::vector<unsigned> slots(n + d - 1);
  std::iota(slots.begin(), slots.end(), 0u);
  std::vector<unsigned> bars;
  std::sample(slots.begin(), slots.end(), std::back_inserter(bars), d - 1, rng);
  std::vector<unsigned> entries;
  unsigned prev = 0;
  for (unsigned b : bars) {
    entries.push_back(b - prev);
    prev = b + 1;
  }
  entries.push_back(n + d - 1 - prev);
  return OccupationVector(entries);
}

}  // namespace sdpi
