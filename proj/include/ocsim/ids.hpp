#pragma once

#include <cstdint>
#include <limits>

namespace ocsim {

using ObjectId  = std::uint32_t;
using ClassId   = std::uint32_t;
using PageId    = std::uint32_t;
using SegmentId = std::uint32_t;

inline constexpr ObjectId  kNoObject  = std::numeric_limits<ObjectId>::max();
inline constexpr PageId    kNoPage    = std::numeric_limits<PageId>::max();
inline constexpr SegmentId kNoSegment = std::numeric_limits<SegmentId>::max();

// The three structural relationship kinds plus the derived parent directions.
// Stored edges are kept directed (parent -> child); traversal code uses the
// Direction enum below to pick which side it walks.
enum class RelKind : std::uint8_t {
    VersionOf,      // version tree: parent version -> derived version
    PartOf,         // configuration: assembly -> component
    EquivalentTo,   // symmetric equivalence between objects
};

inline constexpr int kRelKindCount = 3;

} // namespace ocsim
