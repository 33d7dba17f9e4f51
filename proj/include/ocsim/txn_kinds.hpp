#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace ocsim {

// The fifteen transaction kinds the workload generator can draw.
// Twelve read kinds (name/range lookups, the three group lookups, the two
// reference lookups, sequential scan, four closure traversals) and three
// write kinds (two creations, one attribute update).
enum class TxnKind : std::uint8_t {
    NameLookup,
    RangeLookup,
    GroupLookupVersion,
    GroupLookupConfig,
    GroupLookupEquiv,
    RefLookupVersion,
    RefLookupConfig,
    SequentialScan,
    ClosureVersion,
    ClosureConfig,
    ClosureEquiv,
    ClosureRandom,
    CreateVersion,
    CreateComponent,
    UpdateAttribute,
};

inline constexpr int kTxnKindCount = 15;

// Config-file key for each kind, index-aligned with TxnKind.
inline constexpr std::array<std::string_view, kTxnKindCount> kTxnKindNames = {
    "name_lookup",
    "range_lookup",
    "group_lookup_version",
    "group_lookup_config",
    "group_lookup_equiv",
    "ref_lookup_version",
    "ref_lookup_config",
    "sequential_scan",
    "closure_version",
    "closure_config",
    "closure_equiv",
    "closure_random",
    "create_version",
    "create_component",
    "update_attribute",
};

inline constexpr bool is_write_kind(TxnKind k) {
    return k == TxnKind::CreateVersion || k == TxnKind::CreateComponent ||
           k == TxnKind::UpdateAttribute;
}

} // namespace ocsim
