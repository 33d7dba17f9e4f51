#pragma once

#include <vector>

#include "ocsim/config.hpp"
#include "ocsim/ids.hpp"
#include "ocsim/object_graph.hpp"
#include "ocsim/rng.hpp"
#include "ocsim/txn_kinds.hpp"

namespace ocsim {

// Interpreted primitives a transaction is made of. Fetching one object is
// always the triple AccessPageNumber (catalog lookup), AccessPage (buffer,
// possibly disk), ReadAttributes (memory cost per attribute).
enum class StepKind : std::uint8_t {
    SelectObject,     // pick the entry object (index probe, CPU only)
    AccessPageNumber, // catalog lookup; carries the usage notifications
    AccessPage,       // buffer access, read or write intent
    ReadAttributes,
    UpdateAttribute,
    CreateObject,     // graph mutation; target becomes "last created"
    PlaceObject,      // clustering policy places the last created object
};

struct Step {
    StepKind kind;
    ObjectId target = kNoObject; // kNoObject means the last created object
    ObjectId from = kNoObject;   // traversal source, kNoObject if none
    RelKind rel = RelKind::VersionOf;
    bool write = false;          // AccessPage intent
    std::uint8_t create_kind = 0; // 0 version child, 1 component
    std::uint32_t attr_idx = 0;
    double attr_value = 0.0;
};

struct Transaction {
    TxnKind kind = TxnKind::NameLookup;
    std::vector<Step> steps;
};

// Draws transaction kinds from the configured mix and expands each kind
// into its step list against the current graph. Expansion never mutates
// the graph; creations carry the anchor and mutate at execution time.
class WorkloadGenerator {
public:
    explicit WorkloadGenerator(const WorkloadSpec& spec);

    TxnKind draw_kind(Rng& rng) const;
    Transaction expand(TxnKind kind, const ObjectGraph& g, Rng& rng) const;
    Transaction next(const ObjectGraph& g, Rng& rng) const;

private:
    WorkloadSpec spec_;
    std::array<double, kTxnKindCount> cumulative_{};
};

} // namespace ocsim
