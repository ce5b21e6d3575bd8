#include "ghyper/enumerate.hpp"

namespace ghyper {

std::int64_t composition_count(std::int64_t total, std::span<const std::int64_t> caps) {
  std::int64_t count = 0;
  for_each_composition(total, caps, [&](std::span<const std::int64_t>) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace ghyper
