#include "ocsim/policy.hpp"

#include "ocsim/errors.hpp"
#include "ocsim/policies/cactis_policy.hpp"
#include "ocsim/policies/ck_policy.hpp"
#include "ocsim/policies/null_policy.hpp"
#include "ocsim/policies/orion_policy.hpp"

namespace ocsim {

std::unique_ptr<ClusteringPolicy> make_policy(const PolicySpec& spec,
                                              const DatabaseSpec& db) {
    if (spec.name == "null") return std::make_unique<NullPolicy>();
    if (spec.name == "cactis")
        return std::make_unique<CactisPolicy>(spec.reorg_interval_txns);
    if (spec.name == "orion")
        return std::make_unique<OrionPolicy>(spec.reorg_interval_txns,
                                             spec.orion_read_passes,
                                             spec.orion_cluster_directives,
                                             db.class_count);
    if (spec.name == "ck") return std::make_unique<CkPolicy>(spec.ck_lambda);
    throw ConfigError("unknown policy '" + spec.name + "'");
}

} // namespace ocsim
