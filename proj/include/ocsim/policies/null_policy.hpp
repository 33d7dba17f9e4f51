#pragma once

#include "ocsim/policy.hpp"

namespace ocsim {

// Baseline: objects go to the last allocated page until it is full, then a
// fresh one. No statistics, no reorganization ever.
class NullPolicy : public ClusteringPolicy {
public:
    std::string_view name() const override { return "null"; }
    void bulk_load(const ObjectGraph& g, PageStore& ps) override;
    PageId on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) override;
    std::optional<ReorgReport> maybe_reorganize(double, const ObjectGraph&,
                                                PageStore&) override {
        return std::nullopt;
    }

private:
    PageId append(ObjectId oid, PageStore& ps);

    PageId tail_ = kNoPage;
};

} // namespace ocsim
