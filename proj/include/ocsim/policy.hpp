#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "ocsim/config.hpp"
#include "ocsim/ids.hpp"
#include "ocsim/object_graph.hpp"
#include "ocsim/page_store.hpp"

namespace ocsim {

struct ReorgReport {
    std::uint64_t ios = 0; // page transfers performed by the reorganization
};

// Clustering policy callbacks, invoked serially by the engine:
//  - bulk_load places the initial database,
//  - on_object_created places one new object and returns its page
//    (allocating when nothing fits, so it always succeeds),
//  - on_object_accessed / on_relationship_traversed feed usage statistics
//    (only Cactis cares),
//  - maybe_reorganize runs after every completed transaction and reports
//    I/O volume when the policy rewrote pages (the engine blocks all
//    transaction service for the corresponding disk time).
class ClusteringPolicy {
public:
    virtual ~ClusteringPolicy() = default;

    virtual std::string_view name() const = 0;
    virtual void bulk_load(const ObjectGraph& g, PageStore& ps) = 0;
    virtual PageId on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) = 0;
    virtual void on_object_accessed(ObjectId) {}
    virtual void on_relationship_traversed(ObjectId, ObjectId, RelKind) {}
    virtual std::optional<ReorgReport> maybe_reorganize(double now, const ObjectGraph& g,
                                                        PageStore& ps) = 0;

    // Clears any per-run bookkeeping kept beside the store's counters.
    // Called once after the bulk load, before measurement begins.
    virtual void reset_run_stats() {}
};

std::unique_ptr<ClusteringPolicy> make_policy(const PolicySpec& spec,
                                              const DatabaseSpec& db);

} // namespace ocsim
