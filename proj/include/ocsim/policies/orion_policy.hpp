#pragma once

#include <string>
#include <vector>

#include "ocsim/policy.hpp"

namespace ocsim {

// Per-class segment clustering. Instances of a class are appended to the
// tail of their class's segment; cluster messages merge the segments of
// the listed classes so future instances interleave, and force a rewrite
// of the merged segment. The periodic reorganization rewrites every
// segment, reading each of its pages read_passes times.
class OrionPolicy : public ClusteringPolicy {
public:
    OrionPolicy(std::uint32_t reorg_interval_txns, std::uint32_t read_passes,
                const std::string& directives, std::uint32_t class_count);

    std::string_view name() const override { return "orion"; }
    void bulk_load(const ObjectGraph& g, PageStore& ps) override;
    PageId on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) override;
    std::optional<ReorgReport> maybe_reorganize(double now, const ObjectGraph& g,
                                                PageStore& ps) override;

    // Runtime cluster message: merge the classes' segments and rewrite the
    // result. The startup directives go through the same path, minus the
    // rewrite (nothing is placed yet).
    ReorgReport cluster_message(const std::vector<ClassId>& classes,
                                const ObjectGraph& g, PageStore& ps);

    SegmentId segment_of_class(ClassId cls) const;

private:
    struct Group {
        std::vector<ClassId> classes; // ascending; empty = dead group
        SegmentId segment = kNoSegment;
        PageId tail = kNoPage;
        std::vector<PageId> pages;
    };

    std::uint32_t merge_groups(const std::vector<ClassId>& classes);
    PageId append_to_group(std::uint32_t gi, ObjectId oid, PageStore& ps);
    std::uint64_t rewrite_group(std::uint32_t gi, const ObjectGraph& g, PageStore& ps,
                                std::vector<PageId>& written);

    std::uint32_t interval_;
    std::uint32_t passes_;
    std::uint32_t class_count_;
    std::uint32_t txns_since_reorg_ = 0;
    std::vector<std::uint32_t> group_of_; // class -> index into groups_
    std::vector<Group> groups_;
    SegmentId next_segment_ = 0;
};

} // namespace ocsim
