#pragma once

#include "ocsim/policy.hpp"

namespace ocsim {

// Creation-time placement. A new object goes next to its highest-scoring
// direct relative: score = freq_kind(class of the new object), plus an
// inheritance bonus lambda * inherited_attrs when the relative is the
// version parent. No global statistics, no reorganization; room on a page
// is checked against the catalog and only the chosen page is fetched.
class CkPolicy : public ClusteringPolicy {
public:
    explicit CkPolicy(double lambda) : lambda_(lambda) {}

    std::string_view name() const override { return "ck"; }
    void bulk_load(const ObjectGraph& g, PageStore& ps) override;
    PageId on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) override;
    std::optional<ReorgReport> maybe_reorganize(double, const ObjectGraph&,
                                                PageStore&) override {
        return std::nullopt;
    }
    void reset_run_stats() override { probes_ = ProbeStats{}; }

    // Locality bookkeeping: per creation, clustering reads stay within
    // 1 + the number of distinct pages the direct relatives occupy,
    // whatever the database size.
    struct ProbeStats {
        std::uint64_t creations = 0;
        std::uint64_t probe_reads = 0;
        bool bound_ok = true;
    };
    const ProbeStats& probes() const { return probes_; }

private:
    PageId choose_and_place(ObjectId oid, const ObjectGraph& g, PageStore& ps);

    double lambda_;
    ProbeStats probes_;
};

} // namespace ocsim
