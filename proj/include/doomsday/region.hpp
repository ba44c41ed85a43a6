#pragma once

#include <boost/dynamic_bitset.hpp>
#include <initializer_list>
#include <vector>

namespace doomsday {

/// Set of states (or product vertices); dense bitset indexed by id.
using Region = boost::dynamic_bitset<>;

inline Region make_region(std::size_t n, bool full = false) {
  Region r(n);
  if (full)
    r.set();
  return r;
}

inline Region region_from(std::size_t n, std::initializer_list<int> ids) {
  Region r(n);
  for (int i : ids)
    r.set(static_cast<std::size_t>(i));
  return r;
}

inline Region region_from_ids(std::size_t n, const std::vector<int>& ids) {
  Region r(n);
  for (int i : ids)
    r.set(static_cast<std::size_t>(i));
  return r;
}

inline std::vector<int> region_ids(const Region& r) {
  std::vector<int> out;
  for (auto i = r.find_first(); i != Region::npos; i = r.find_next(i))
    out.push_back(static_cast<int>(i));
  return out;
}

} // namespace doomsday
