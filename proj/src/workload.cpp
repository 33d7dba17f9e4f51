#include "ocsim/workload.hpp"

#include <deque>
#include <unordered_set>

namespace ocsim {

namespace {

void push_fetch(std::vector<Step>& steps, ObjectId target, ObjectId from,
                RelKind rel, bool write = false) {
    Step apn;
    apn.kind = StepKind::AccessPageNumber;
    apn.target = target;
    apn.from = from;
    apn.rel = rel;
    steps.push_back(apn);
    Step ap;
    ap.kind = StepKind::AccessPage;
    ap.target = target;
    ap.write = write;
    steps.push_back(ap);
    Step ra;
    ra.kind = StepKind::ReadAttributes;
    ra.target = target;
    steps.push_back(ra);
}

void push_select(std::vector<Step>& steps, ObjectId target) {
    Step s;
    s.kind = StepKind::SelectObject;
    s.target = target;
    steps.push_back(s);
}

ObjectId pick_object(const ObjectGraph& g, Rng& rng) {
    return static_cast<ObjectId>(rng.uniform_index(g.size()));
}

ClassId pick_class(const ObjectGraph& g, Rng& rng) {
    return static_cast<ClassId>(rng.uniform_index(g.class_count()));
}

} // namespace

WorkloadGenerator::WorkloadGenerator(const WorkloadSpec& spec) : spec_(spec) {
    double acc = 0.0;
    for (int i = 0; i < kTxnKindCount; ++i) {
        acc += spec_.mix[i];
        cumulative_[i] = acc;
    }
    cumulative_[kTxnKindCount - 1] = 1.0; // guard against rounding residue
}

TxnKind WorkloadGenerator::draw_kind(Rng& rng) const {
    double u = rng.u01();
    for (int i = 0; i < kTxnKindCount; ++i)
        if (u < cumulative_[i]) return static_cast<TxnKind>(i);
    return static_cast<TxnKind>(kTxnKindCount - 1);
}

Transaction WorkloadGenerator::expand(TxnKind kind, const ObjectGraph& g,
                                      Rng& rng) const {
    Transaction txn;
    txn.kind = kind;
    auto& steps = txn.steps;

    switch (kind) {
    case TxnKind::NameLookup: {
        ObjectId start = pick_object(g, rng);
        push_select(steps, start);
        push_fetch(steps, start, kNoObject, RelKind::VersionOf);
        break;
    }
    case TxnKind::RangeLookup: {
        ClassId cls = pick_class(g, rng);
        double width = spec_.range_selectivity;
        double lo = rng.u01() * (1.0 - width);
        push_select(steps, kNoObject);
        for (ObjectId oid : g.instances_of(cls)) {
            double v = g.object(oid).attrs.empty() ? 0.0 : g.object(oid).attrs[0];
            if (v >= lo && v < lo + width)
                push_fetch(steps, oid, kNoObject, RelKind::VersionOf);
        }
        break;
    }
    case TxnKind::GroupLookupVersion:
    case TxnKind::GroupLookupConfig: {
        RelKind rel = (kind == TxnKind::GroupLookupVersion) ? RelKind::VersionOf
                                                            : RelKind::PartOf;
        ObjectId start = pick_object(g, rng);
        push_select(steps, start);
        push_fetch(steps, start, kNoObject, rel);
        // Breadth-first over the subtree, noting the edge walked to reach
        // each member.
        std::deque<ObjectId> frontier{start};
        while (!frontier.empty()) {
            ObjectId cur = frontier.front();
            frontier.pop_front();
            const auto& kids = (rel == RelKind::VersionOf)
                                   ? g.object(cur).version_children
                                   : g.object(cur).components;
            for (ObjectId k : kids) {
                push_fetch(steps, k, cur, rel);
                frontier.push_back(k);
            }
        }
        break;
    }
    case TxnKind::GroupLookupEquiv: {
        ObjectId start = pick_object(g, rng);
        push_select(steps, start);
        push_fetch(steps, start, kNoObject, RelKind::EquivalentTo);
        for (ObjectId e : g.object(start).equivalents)
            push_fetch(steps, e, start, RelKind::EquivalentTo);
        break;
    }
    case TxnKind::RefLookupVersion:
    case TxnKind::RefLookupConfig: {
        RelKind rel = (kind == TxnKind::RefLookupVersion) ? RelKind::VersionOf
                                                          : RelKind::PartOf;
        ObjectId start = pick_object(g, rng);
        push_select(steps, start);
        ObjectId from = start;
        for (ObjectId anc : g.ancestor_chain(start, rel)) {
            push_fetch(steps, anc, from, rel);
            from = anc;
        }
        break;
    }
    case TxnKind::SequentialScan: {
        ClassId cls = pick_class(g, rng);
        push_select(steps, kNoObject);
        for (ObjectId oid : g.instances_of(cls))
            push_fetch(steps, oid, kNoObject, RelKind::VersionOf);
        break;
    }
    case TxnKind::ClosureVersion:
    case TxnKind::ClosureConfig:
    case TxnKind::ClosureEquiv:
    case TxnKind::ClosureRandom: {
        ObjectId start = pick_object(g, rng);
        push_select(steps, start);
        push_fetch(steps, start, kNoObject, RelKind::VersionOf);
        // Transitive closure: breadth-first ball of the start, capped at
        // closure_depth levels. Random re-draws the relationship per level.
        std::unordered_set<ObjectId> seen{start};
        std::vector<ObjectId> frontier{start};
        for (std::uint32_t hop = 0; hop < spec_.closure_depth && !frontier.empty(); ++hop) {
            RelKind rel;
            switch (kind) {
            case TxnKind::ClosureVersion: rel = RelKind::VersionOf; break;
            case TxnKind::ClosureConfig: rel = RelKind::PartOf; break;
            case TxnKind::ClosureEquiv: rel = RelKind::EquivalentTo; break;
            default:
                rel = static_cast<RelKind>(rng.uniform_index(kRelKindCount));
                break;
            }
            std::vector<ObjectId> next;
            for (ObjectId cur : frontier)
                for (ObjectId nb : g.neighbors(cur, rel))
                    if (seen.insert(nb).second) {
                        push_fetch(steps, nb, cur, rel);
                        next.push_back(nb);
                    }
            frontier = std::move(next);
        }
        break;
    }
    case TxnKind::CreateVersion:
    case TxnKind::CreateComponent: {
        ObjectId anchor = pick_object(g, rng);
        push_select(steps, anchor);
        push_fetch(steps, anchor, kNoObject, RelKind::VersionOf);
        Step create;
        create.kind = StepKind::CreateObject;
        create.target = anchor; // anchor; the engine registers the newcomer
        create.create_kind = (kind == TxnKind::CreateVersion) ? 0 : 1;
        steps.push_back(create);
        Step place;
        place.kind = StepKind::PlaceObject;
        steps.push_back(place);
        Step ap;
        ap.kind = StepKind::AccessPage;
        ap.target = kNoObject; // the last created object
        ap.write = true;
        steps.push_back(ap);
        break;
    }
    case TxnKind::UpdateAttribute: {
        ObjectId target = pick_object(g, rng);
        push_select(steps, target);
        push_fetch(steps, target, kNoObject, RelKind::VersionOf, /*write=*/true);
        Step up;
        up.kind = StepKind::UpdateAttribute;
        up.target = target;
        up.attr_idx = static_cast<std::uint32_t>(rng.uniform_index(g.attr_count()));
        up.attr_value = rng.u01();
        steps.push_back(up);
        break;
    }
    }
    return txn;
}

Transaction WorkloadGenerator::next(const ObjectGraph& g, Rng& rng) const {
    return expand(draw_kind(rng), g, rng);
}

} // namespace ocsim
