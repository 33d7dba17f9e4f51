#include "ocsim/object_graph.hpp"

#include <deque>
#include <string>

#include "ocsim/errors.hpp"

namespace ocsim {

ObjectGraph::ObjectGraph(const DatabaseSpec& spec)
    : spec_(spec), by_class_(spec.class_count) {
    profiles_.resize(spec.class_count);
    for (auto& p : profiles_) p.inherited_attrs = spec.attr_count / 2;
}

ObjectId ObjectGraph::new_object(Rng& rng) {
    ObjectRec rec;
    rec.id = static_cast<ObjectId>(objects_.size());
    rec.cls = static_cast<ClassId>(rr_counter_ % spec_.class_count);
    ++rr_counter_;
    rec.attrs.resize(spec_.attr_count);
    for (auto& a : rec.attrs) a = rng.u01();
    objects_.push_back(std::move(rec));
    by_class_[objects_.back().cls].push_back(objects_.back().id);
    return objects_.back().id;
}

ObjectRec& ObjectGraph::obj(ObjectId id) {
    if (id >= objects_.size())
        throw LookupError("no such object: " + std::to_string(id));
    return objects_[id];
}

const ObjectRec& ObjectGraph::object(ObjectId id) const {
    if (id >= objects_.size())
        throw LookupError("no such object: " + std::to_string(id));
    return objects_[id];
}

ObjectId ObjectGraph::add_root(Rng& rng) { return new_object(rng); }

ObjectId ObjectGraph::add_version_child(ObjectId anchor, Rng& rng) {
    obj(anchor); // validate before allocating
    ObjectId id = new_object(rng);
    objects_[id].version_parent = anchor;
    objects_[anchor].version_children.push_back(id);
    return id;
}

ObjectId ObjectGraph::add_component(ObjectId anchor, Rng& rng) {
    obj(anchor);
    ObjectId id = new_object(rng);
    objects_[id].config_parent = anchor;
    objects_[anchor].components.push_back(id);
    return id;
}

ObjectId ObjectGraph::add_equivalent(ObjectId anchor, Rng& rng) {
    obj(anchor);
    ObjectId id = new_object(rng);
    objects_[id].equivalents.push_back(anchor);
    objects_[anchor].equivalents.push_back(id);
    return id;
}

ObjectGraph ObjectGraph::generate(const DatabaseSpec& spec, Rng& rng) {
    ObjectGraph g(spec);
    g.add_root(rng);
    for (std::uint32_t i = 1; i < spec.initial_objects; ++i) {
        double u = rng.u01();
        ObjectId anchor = static_cast<ObjectId>(rng.uniform_index(g.size()));
        if (u < spec.version_branching) {
            g.add_version_child(anchor, rng);
        } else if (u < spec.version_branching + spec.config_fanout) {
            g.add_component(anchor, rng);
        } else if (u < spec.version_branching + spec.config_fanout +
                           spec.equivalence_prob) {
            g.add_equivalent(anchor, rng);
        } else {
            g.add_root(rng);
        }
    }
    return g;
}

const std::vector<ObjectId>& ObjectGraph::instances_of(ClassId cls) const {
    if (cls >= by_class_.size())
        throw LookupError("no such class: " + std::to_string(cls));
    return by_class_[cls];
}

std::vector<ObjectId> ObjectGraph::group_members(ObjectId start, RelKind kind) const {
    const ObjectRec& s = object(start);
    std::vector<ObjectId> out;
    if (kind == RelKind::EquivalentTo) {
        out.push_back(start);
        out.insert(out.end(), s.equivalents.begin(), s.equivalents.end());
        return out;
    }
    std::deque<ObjectId> frontier{start};
    while (!frontier.empty()) {
        ObjectId cur = frontier.front();
        frontier.pop_front();
        out.push_back(cur);
        const auto& kids = (kind == RelKind::VersionOf)
                               ? object(cur).version_children
                               : object(cur).components;
        for (ObjectId k : kids) frontier.push_back(k);
    }
    return out;
}

std::vector<ObjectId> ObjectGraph::ancestor_chain(ObjectId start, RelKind kind) const {
    if (kind == RelKind::EquivalentTo)
        throw StateError("equivalence has no ancestor chain");
    std::vector<ObjectId> out;
    ObjectId cur = start;
    for (;;) {
        const ObjectRec& rec = object(cur);
        ObjectId parent = (kind == RelKind::VersionOf) ? rec.version_parent
                                                       : rec.config_parent;
        if (parent == kNoObject) break;
        out.push_back(parent);
        cur = parent;
    }
    return out;
}

std::vector<ObjectId> ObjectGraph::neighbors(ObjectId id, RelKind kind) const {
    const ObjectRec& rec = object(id);
    std::vector<ObjectId> out;
    switch (kind) {
    case RelKind::VersionOf:
        if (rec.version_parent != kNoObject) out.push_back(rec.version_parent);
        out.insert(out.end(), rec.version_children.begin(), rec.version_children.end());
        break;
    case RelKind::PartOf:
        if (rec.config_parent != kNoObject) out.push_back(rec.config_parent);
        out.insert(out.end(), rec.components.begin(), rec.components.end());
        break;
    case RelKind::EquivalentTo:
        out = rec.equivalents;
        break;
    }
    return out;
}

const ClassProfile& ObjectGraph::class_profile(ClassId cls) const {
    if (cls >= profiles_.size())
        throw LookupError("no such class: " + std::to_string(cls));
    return profiles_[cls];
}

void ObjectGraph::set_attr(ObjectId id, std::uint32_t idx, double value) {
    ObjectRec& rec = obj(id);
    if (idx >= rec.attrs.size())
        throw LookupError("attribute index out of range: " + std::to_string(idx));
    rec.attrs[idx] = value;
}

} // namespace ocsim
