#include "codec/partition.hpp"

#include <stdexcept>

namespace codec {

std::vector<std::uint32_t> Partition::membership(std::size_t n) const {
  std::vector<std::uint32_t> ids(n, 0);
  for (std::size_t s = 0; s < classes.size(); ++s) {
    for (Vertex v : classes[s]) {
      if (v >= n) throw std::invalid_argument("partition refers to a vertex beyond n");
      ids[v] = static_cast<std::uint32_t>(s + 1);
    }
  }
  return ids;
}

bool Partition::covers(std::size_t n) const {
  std::vector<std::uint8_t> seen(n, 0);
  std::size_t count = 0;
  const std::size_t m = class_size();
  for (const auto& c : classes) {
    if (c.size() != m) return false;
    for (Vertex v : c) {
      if (v >= n || seen[v]) return false;
      seen[v] = 1;
      ++count;
    }
  }
  for (Vertex v : c0) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
    ++count;
  }
  return count == n;
}

}  // namespace codec
