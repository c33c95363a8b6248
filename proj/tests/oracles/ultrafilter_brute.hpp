#pragma once

// Exhaustive ultrafilter oracle: every family of sub-functions of a sigma
// with at most 4 atoms, filtered by the axioms. No up-set shortcut.

#include <cstdint>
#include <vector>

namespace specm::oracle {

/// Families are returned as ascending mask lists.
inline std::vector<std::vector<uint32_t>> all_ultrafilters(unsigned atoms) {
  const uint32_t full = (uint32_t(1) << atoms) - 1;
  const uint32_t subsets = full + 1;
  std::vector<std::vector<uint32_t>> out;
  for (uint64_t fam = 0; fam < (uint64_t(1) << subsets); ++fam) {
    auto in = [&](uint32_t m) { return (fam >> m & 1) != 0; };
    if (in(0) || !in(full)) continue;
    bool ok = true;
    for (uint32_t a = 0; a <= full && ok; ++a) {
      if (!in(a) && !in(full & ~a)) ok = false;
      for (uint32_t b = 0; b <= full && ok; ++b)
        if (in(a) && in(b) && !in(a & b)) ok = false;
    }
    if (!ok) continue;
    std::vector<uint32_t> members;
    for (uint32_t m = 0; m <= full; ++m)
      if (in(m)) members.push_back(m);
    out.push_back(members);
  }
  return out;
}

}  // namespace specm::oracle
