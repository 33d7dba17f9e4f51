#include "ocsim/policies/orion_policy.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ocsim/errors.hpp"

namespace ocsim {

namespace {

// Directive syntax: semicolon-separated merge lists of comma-separated
// class ids, e.g. "0,1;4,5".
std::vector<std::vector<ClassId>> parse_directives(const std::string& text) {
    std::vector<std::vector<ClassId>> out;
    if (text.empty()) return out;
    std::vector<ClassId> cur;
    std::string tok;
    auto flush_tok = [&]() {
        if (tok.empty())
            throw ConfigError("orion_cluster_directives: empty class id");
        for (char c : tok)
            if (c < '0' || c > '9')
                throw ConfigError("orion_cluster_directives: bad class id '" + tok + "'");
        cur.push_back(static_cast<ClassId>(std::stoul(tok)));
        tok.clear();
    };
    for (char c : text) {
        if (c == ' ' || c == '\t') continue;
        if (c == ',') {
            flush_tok();
        } else if (c == ';') {
            flush_tok();
            out.push_back(cur);
            cur.clear();
        } else {
            tok += c;
        }
    }
    flush_tok();
    out.push_back(cur);
    return out;
}

} // namespace

OrionPolicy::OrionPolicy(std::uint32_t reorg_interval_txns, std::uint32_t read_passes,
                         const std::string& directives, std::uint32_t class_count)
    : interval_(reorg_interval_txns), passes_(read_passes), class_count_(class_count) {
    group_of_.resize(class_count);
    groups_.resize(class_count);
    for (ClassId c = 0; c < class_count; ++c) {
        group_of_[c] = c;
        groups_[c].classes = {c};
        groups_[c].segment = next_segment_++;
    }
    for (const auto& merge : parse_directives(directives)) {
        for (ClassId c : merge)
            if (c >= class_count_)
                throw ConfigError("orion_cluster_directives: class id " +
                                  std::to_string(c) + " out of range");
        merge_groups(merge);
    }
}

std::uint32_t OrionPolicy::merge_groups(const std::vector<ClassId>& classes) {
    if (classes.empty()) throw ArgumentError("cluster message needs at least one class");
    std::set<ClassId> members;
    for (ClassId c : classes) {
        if (c >= class_count_)
            throw ArgumentError("cluster message: class id " + std::to_string(c) +
                                " out of range");
        auto& g = groups_[group_of_[c]];
        members.insert(g.classes.begin(), g.classes.end());
    }
    Group merged;
    merged.classes.assign(members.begin(), members.end());
    merged.segment = next_segment_++;
    for (ClassId c : merged.classes) {
        auto& old = groups_[group_of_[c]];
        // The merged group inherits the physical pages until a rewrite.
        merged.pages.insert(merged.pages.end(), old.pages.begin(), old.pages.end());
        old = Group{};
    }
    std::sort(merged.pages.begin(), merged.pages.end());
    groups_.push_back(std::move(merged));
    auto gi = static_cast<std::uint32_t>(groups_.size() - 1);
    for (ClassId c : groups_[gi].classes) group_of_[c] = gi;
    return gi;
}

PageId OrionPolicy::append_to_group(std::uint32_t gi, ObjectId oid, PageStore& ps) {
    Group& g = groups_[gi];
    if (g.tail == kNoPage || ps.free_slots(g.tail) == 0) {
        g.tail = ps.new_page(g.segment);
        g.pages.push_back(g.tail);
    }
    ps.place(oid, g.tail);
    return g.tail;
}

void OrionPolicy::bulk_load(const ObjectGraph& g, PageStore& ps) {
    for (std::uint32_t gi = 0; gi < groups_.size(); ++gi) {
        if (groups_[gi].classes.empty()) continue;
        for (ClassId cls : groups_[gi].classes)
            for (ObjectId oid : g.instances_of(cls))
                append_to_group(gi, oid, ps);
        for (PageId pid : groups_[gi].pages) ps.set_on_disk(pid);
    }
}

PageId OrionPolicy::on_object_created(ObjectId oid, const ObjectGraph& g, PageStore& ps) {
    return append_to_group(group_of_[g.class_of(oid)], oid, ps);
}

std::uint64_t OrionPolicy::rewrite_group(std::uint32_t gi, const ObjectGraph& g,
                                         PageStore& ps, std::vector<PageId>& written) {
    Group& grp = groups_[gi];
    std::vector<ObjectId> members;
    for (ClassId cls : grp.classes) {
        const auto& inst = g.instances_of(cls);
        members.insert(members.end(), inst.begin(), inst.end());
    }
    auto p = static_cast<std::uint64_t>(grp.pages.size());
    if (p == 0 && members.empty()) return 0;
    std::uint32_t slots = ps.objects_per_page();
    auto q = static_cast<std::uint64_t>((members.size() + slots - 1) / slots);
    ps.bump_peak(static_cast<std::uint32_t>(ps.pages_in_use() + q));
    ps.charge_bulk(IoPurpose::Clustering, passes_ * p, q);

    for (PageId pid : grp.pages) {
        ps.discard_resident(pid);
        auto objs = ps.page(pid).objects;
        for (ObjectId oid : objs) ps.remove(oid);
        ps.drop_page(pid);
    }
    grp.pages.clear();
    grp.tail = kNoPage;
    for (ObjectId oid : members) append_to_group(gi, oid, ps);
    for (PageId pid : grp.pages) {
        ps.set_on_disk(pid);
        written.push_back(pid);
    }
    return passes_ * p + q;
}

std::optional<ReorgReport> OrionPolicy::maybe_reorganize(double, const ObjectGraph& g,
                                                         PageStore& ps) {
    if (++txns_since_reorg_ < interval_) return std::nullopt;
    txns_since_reorg_ = 0;
    std::uint64_t total = 0;
    std::vector<PageId> written;
    for (std::uint32_t gi = 0; gi < groups_.size(); ++gi) {
        if (groups_[gi].classes.empty()) continue;
        total += rewrite_group(gi, g, ps, written);
    }
    // Keep the most recently written pages resident, newest most recent.
    std::size_t n = std::min<std::size_t>(written.size(), ps.buffer_capacity());
    for (std::size_t i = written.size() - n; i < written.size(); ++i)
        ps.prime_resident(written[i], IoPurpose::Clustering);
    return ReorgReport{total};
}

ReorgReport OrionPolicy::cluster_message(const std::vector<ClassId>& classes,
                                         const ObjectGraph& g, PageStore& ps) {
    std::uint32_t gi = merge_groups(classes);
    std::vector<PageId> written;
    std::uint64_t ios = rewrite_group(gi, g, ps, written);
    std::size_t n = std::min<std::size_t>(written.size(), ps.buffer_capacity());
    for (std::size_t i = written.size() - n; i < written.size(); ++i)
        ps.prime_resident(written[i], IoPurpose::Clustering);
    return ReorgReport{ios};
}

SegmentId OrionPolicy::segment_of_class(ClassId cls) const {
    if (cls >= class_count_)
        throw LookupError("no such class: " + std::to_string(cls));
    return groups_[group_of_[cls]].segment;
}

} // namespace ocsim
