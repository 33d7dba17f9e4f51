#pragma once

#include <cstdint>
#include <vector>

#include "ocsim/config.hpp"
#include "ocsim/ids.hpp"
#include "ocsim/rng.hpp"

namespace ocsim {

struct ObjectRec {
    ObjectId id = kNoObject;
    ClassId cls = 0;
    ObjectId version_parent = kNoObject;
    ObjectId config_parent = kNoObject;
    std::vector<ObjectId> version_children;
    std::vector<ObjectId> components;
    std::vector<ObjectId> equivalents; // symmetric, stored on both sides
    std::vector<double> attrs;
};

// Static per-class figures the creation-time placement policy consults:
// expected traversal frequency along each relationship kind, and how many
// attribute values a version child shares with its parent.
struct ClassProfile {
    double freq_version = 0.8;
    double freq_config  = 0.5;
    double freq_equiv   = 0.3;
    std::uint32_t inherited_attrs = 0;
};

// In-memory logical database: objects, their classes and the three
// structural relationship kinds (version derivation, configuration
// composition, equivalence). Ids are dense and never reused. Placement is
// not represented here; that belongs to the page store.
class ObjectGraph {
public:
    explicit ObjectGraph(const DatabaseSpec& spec);

    // Builds the initial database: object i gets class i mod class_count;
    // each object after the first attaches to a uniformly drawn earlier
    // object as a version child, a component or an equivalent, or stands
    // alone as a root, weighted by the attachment probabilities.
    static ObjectGraph generate(const DatabaseSpec& spec, Rng& rng);

    // Runtime creation. Class assignment continues the same round-robin
    // counter the generator used. Attribute values are drawn from rng.
    ObjectId add_root(Rng& rng);
    ObjectId add_version_child(ObjectId anchor, Rng& rng);
    ObjectId add_component(ObjectId anchor, Rng& rng);
    ObjectId add_equivalent(ObjectId anchor, Rng& rng);

    std::uint32_t size() const { return static_cast<std::uint32_t>(objects_.size()); }
    std::uint32_t class_count() const { return spec_.class_count; }
    std::uint32_t attr_count() const { return spec_.attr_count; }

    const ObjectRec& object(ObjectId id) const; // LookupError on bad id
    ClassId class_of(ObjectId id) const { return object(id).cls; }
    const std::vector<ObjectId>& instances_of(ClassId cls) const; // ascending ids

    // Start object plus everything reachable through the kind:
    // transitive descendants for version/configuration (BFS order),
    // the direct partners for equivalence.
    std::vector<ObjectId> group_members(ObjectId start, RelKind kind) const;

    // Parent chain walking toward the root, start excluded. Only the two
    // hierarchical kinds have ancestors.
    std::vector<ObjectId> ancestor_chain(ObjectId start, RelKind kind) const;

    // Adjacent objects along the kind, both directions (parent and
    // children for the hierarchical kinds, partners for equivalence).
    std::vector<ObjectId> neighbors(ObjectId id, RelKind kind) const;

    const ClassProfile& class_profile(ClassId cls) const;

    void set_attr(ObjectId id, std::uint32_t idx, double value);

private:
    ObjectId new_object(Rng& rng);
    ObjectRec& obj(ObjectId id);

    DatabaseSpec spec_;
    std::vector<ObjectRec> objects_;
    std::vector<std::vector<ObjectId>> by_class_;
    std::vector<ClassProfile> profiles_;
    std::uint64_t rr_counter_ = 0; // next object's class index source
};

} // namespace ocsim
