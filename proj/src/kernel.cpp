#include "cachelab/kernel.hpp"

namespace cachelab {

RequestStream make_stream(const std::vector<std::uint64_t>& ids) {
  RequestStream stream;
  stream.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    stream.push_back(Request{ChunkId{ids[i]}, i, 0});
  }
  return stream;
}

std::string_view to_string(AccessKind kind) {
  switch (kind) {
    case AccessKind::Hit: return "hit";
    case AccessKind::Miss: return "miss";
    case AccessKind::GhostHit: return "ghost-hit";
  }
  return "?";
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::T1: return "T1";
    case Region::T2: return "T2";
    case Region::B1: return "B1";
    case Region::B2: return "B2";
  }
  return "?";
}

}  // namespace cachelab
