#include "ocsim/policies/null_policy.hpp"

namespace ocsim {

PageId NullPolicy::append(ObjectId oid, PageStore& ps) {
    if (tail_ == kNoPage || ps.free_slots(tail_) == 0) tail_ = ps.new_page(0);
    ps.place(oid, tail_);
    return tail_;
}

void NullPolicy::bulk_load(const ObjectGraph& g, PageStore& ps) {
    for (ObjectId oid = 0; oid < g.size(); ++oid) append(oid, ps);
}

PageId NullPolicy::on_object_created(ObjectId oid, const ObjectGraph&, PageStore& ps) {
    return append(oid, ps);
}

} // namespace ocsim
