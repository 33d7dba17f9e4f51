#include "ocsim/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "ocsim/errors.hpp"

namespace ocsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

double parse_double(const std::string& v, const std::string& origin, int line) {
    errno = 0;
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        fail(origin, line, "expected a number, got '" + v + "'");
    return d;
}

std::uint64_t parse_u64(const std::string& v, const std::string& origin, int line) {
    errno = 0;
    char* end = nullptr;
    unsigned long long u = std::strtoull(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0' || v[0] == '-')
        fail(origin, line, "expected a non-negative integer, got '" + v + "'");
    return static_cast<std::uint64_t>(u);
}

std::uint32_t parse_u32(const std::string& v, const std::string& origin, int line) {
    std::uint64_t u = parse_u64(v, origin, line);
    if (u > 0xffffffffULL)
        fail(origin, line, "value out of range: '" + v + "'");
    return static_cast<std::uint32_t>(u);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

} // namespace

WorkloadSpec::WorkloadSpec() {
    mix.fill(0.0);
    auto set = [this](TxnKind k, double p) { mix[static_cast<int>(k)] = p; };
    set(TxnKind::NameLookup, 0.02);
    set(TxnKind::RangeLookup, 0.00);
    set(TxnKind::GroupLookupVersion, 0.12);
    set(TxnKind::GroupLookupConfig, 0.11);
    set(TxnKind::GroupLookupEquiv, 0.02);
    set(TxnKind::RefLookupVersion, 0.10);
    set(TxnKind::RefLookupConfig, 0.07);
    set(TxnKind::SequentialScan, 0.00);
    set(TxnKind::ClosureVersion, 0.18);
    set(TxnKind::ClosureConfig, 0.17);
    set(TxnKind::ClosureEquiv, 0.04);
    set(TxnKind::ClosureRandom, 0.09);
    set(TxnKind::CreateVersion, 0.035);
    set(TxnKind::CreateComponent, 0.035);
    set(TxnKind::UpdateAttribute, 0.01);
}

void DatabaseSpec::validate() const {
    if (initial_objects == 0) throw ConfigError("database.initial_objects must be >= 1");
    if (class_count == 0) throw ConfigError("database.class_count must be >= 1");
    if (object_size_bytes == 0) throw ConfigError("database.object_size_bytes must be >= 1");
    if (attr_count == 0) throw ConfigError("database.attr_count must be >= 1");
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(version_branching) || !prob(config_fanout) || !prob(equivalence_prob))
        throw ConfigError("database attachment probabilities must lie in [0, 1]");
    if (version_branching + config_fanout + equivalence_prob > 1.0 + 1e-12)
        throw ConfigError("database attachment probabilities must sum to <= 1");
}

void StorageSpec::validate() const {
    if (page_bytes == 0) throw ConfigError("storage.page_bytes must be >= 1");
    if (buffer_pages == 0) throw ConfigError("storage.buffer_pages must be >= 1");
}

void CostModel::validate() const {
    if (t_disk_io <= 0.0 || t_mem <= 0.0 || t_cpu <= 0.0)
        throw ConfigError("cost model times must be > 0");
}

void EngineSpec::validate() const {
    if (users == 0) throw ConfigError("engine.users must be >= 1");
    if (transactions == 0) throw ConfigError("engine.transactions must be >= 1");
    if (think_time_mean_s < 0.0) throw ConfigError("engine.think_time_mean_s must be >= 0");
    if (warmup_fraction < 0.0 || warmup_fraction >= 1.0)
        throw ConfigError("engine.warmup_fraction must lie in [0, 1)");
}

void PolicySpec::validate() const {
    if (name != "null" && name != "cactis" && name != "orion" && name != "ck")
        throw ConfigError("policy.name must be one of null|cactis|orion|ck, got '" + name + "'");
    if (reorg_interval_txns == 0) throw ConfigError("policy.reorg_interval_txns must be >= 1");
    if (ck_lambda < 0.0) throw ConfigError("policy.ck_lambda must be >= 0");
    if (orion_read_passes == 0) throw ConfigError("policy.orion_read_passes must be >= 1");
}

void WorkloadSpec::validate() const {
    double sum = 0.0;
    for (double p : mix) {
        if (p < 0.0) throw ConfigError("workload mix probabilities must be >= 0");
        sum += p;
    }
    if (sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12f", sum);
        throw ConfigError(std::string("workload mix must sum to 1, sums to ") + buf);
    }
    if (range_selectivity < 0.0 || range_selectivity > 1.0)
        throw ConfigError("workload.range_selectivity must lie in [0, 1]");
}

void ExperimentSpec::validate() const {
    if (db_sizes.empty()) throw ConfigError("experiment.db_sizes must be non-empty");
    for (std::size_t i = 0; i < db_sizes.size(); ++i) {
        if (db_sizes[i] == 0)
            throw ConfigError("experiment.db_sizes entries must be >= 1");
        if (i > 0 && db_sizes[i] <= db_sizes[i - 1])
            throw ConfigError("experiment.db_sizes must be strictly ascending");
    }
    if (policies.empty()) throw ConfigError("experiment.policies must be non-empty");
    std::set<std::string> seen;
    for (const auto& p : policies) {
        if (p != "null" && p != "cactis" && p != "orion" && p != "ck")
            throw ConfigError("experiment.policies entry '" + p + "' is not a known policy");
        if (!seen.insert(p).second)
            throw ConfigError("experiment.policies lists '" + p + "' twice");
    }
    if (replications == 0) throw ConfigError("experiment.replications must be >= 1");
    if (out_dir.empty()) throw ConfigError("experiment.out_dir must be non-empty");
}

void SimConfig::validate() const {
    database.validate();
    storage.validate();
    cost.validate();
    engine.validate();
    policy.validate();
    workload.validate();
    experiment.validate();
    if (database.object_size_bytes > storage.page_bytes)
        throw ConfigError("database.object_size_bytes must not exceed storage.page_bytes");
}

SimConfig parse_config(const std::string& text, const std::string& origin) {
    SimConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    // One handler per (section, key). Anything else is an error.
    using Handler = std::function<void(const std::string&, int)>;
    std::map<std::string, Handler> handlers;
    auto add = [&](const std::string& sec, const std::string& key, Handler h) {
        handlers[sec + "." + key] = std::move(h);
    };

    add("database", "initial_objects", [&](const std::string& v, int ln) {
        cfg.database.initial_objects = parse_u32(v, origin, ln); });
    add("database", "class_count", [&](const std::string& v, int ln) {
        cfg.database.class_count = parse_u32(v, origin, ln); });
    add("database", "version_branching", [&](const std::string& v, int ln) {
        cfg.database.version_branching = parse_double(v, origin, ln); });
    add("database", "config_fanout", [&](const std::string& v, int ln) {
        cfg.database.config_fanout = parse_double(v, origin, ln); });
    add("database", "equivalence_prob", [&](const std::string& v, int ln) {
        cfg.database.equivalence_prob = parse_double(v, origin, ln); });
    add("database", "object_size_bytes", [&](const std::string& v, int ln) {
        cfg.database.object_size_bytes = parse_u32(v, origin, ln); });
    add("database", "attr_count", [&](const std::string& v, int ln) {
        cfg.database.attr_count = parse_u32(v, origin, ln); });

    add("storage", "page_bytes", [&](const std::string& v, int ln) {
        cfg.storage.page_bytes = parse_u32(v, origin, ln); });
    add("storage", "buffer_pages", [&](const std::string& v, int ln) {
        cfg.storage.buffer_pages = parse_u32(v, origin, ln); });

    add("cost", "t_disk_io", [&](const std::string& v, int ln) {
        cfg.cost.t_disk_io = parse_double(v, origin, ln); });
    add("cost", "t_mem", [&](const std::string& v, int ln) {
        cfg.cost.t_mem = parse_double(v, origin, ln); });
    add("cost", "t_cpu", [&](const std::string& v, int ln) {
        cfg.cost.t_cpu = parse_double(v, origin, ln); });

    add("engine", "users", [&](const std::string& v, int ln) {
        cfg.engine.users = parse_u32(v, origin, ln); });
    add("engine", "think_time_mean_s", [&](const std::string& v, int ln) {
        cfg.engine.think_time_mean_s = parse_double(v, origin, ln); });
    add("engine", "transactions", [&](const std::string& v, int ln) {
        cfg.engine.transactions = parse_u32(v, origin, ln); });
    add("engine", "warmup_fraction", [&](const std::string& v, int ln) {
        cfg.engine.warmup_fraction = parse_double(v, origin, ln); });
    add("engine", "seed", [&](const std::string& v, int ln) {
        cfg.engine.seed = parse_u64(v, origin, ln); });

    add("policy", "name", [&](const std::string& v, int) { cfg.policy.name = v; });
    add("policy", "reorg_interval_txns", [&](const std::string& v, int ln) {
        cfg.policy.reorg_interval_txns = parse_u32(v, origin, ln); });
    add("policy", "ck_lambda", [&](const std::string& v, int ln) {
        cfg.policy.ck_lambda = parse_double(v, origin, ln); });
    add("policy", "orion_read_passes", [&](const std::string& v, int ln) {
        cfg.policy.orion_read_passes = parse_u32(v, origin, ln); });
    add("policy", "orion_cluster_directives", [&](const std::string& v, int) {
        cfg.policy.orion_cluster_directives = v; });

    for (int i = 0; i < kTxnKindCount; ++i) {
        std::string key = "mix." + std::string(kTxnKindNames[i]);
        add("workload", key, [&cfg, i, &origin](const std::string& v, int ln) {
            cfg.workload.mix[i] = parse_double(v, origin, ln); });
    }
    add("workload", "closure_depth", [&](const std::string& v, int ln) {
        cfg.workload.closure_depth = parse_u32(v, origin, ln); });
    add("workload", "range_selectivity", [&](const std::string& v, int ln) {
        cfg.workload.range_selectivity = parse_double(v, origin, ln); });

    add("experiment", "db_sizes", [&](const std::string& v, int ln) {
        cfg.experiment.db_sizes.clear();
        for (const auto& tok : split_list(v)) {
            if (tok.empty()) fail(origin, ln, "empty entry in db_sizes list");
            cfg.experiment.db_sizes.push_back(parse_u32(tok, origin, ln));
        }
    });
    add("experiment", "policies", [&](const std::string& v, int ln) {
        cfg.experiment.policies.clear();
        for (const auto& tok : split_list(v)) {
            if (tok.empty()) fail(origin, ln, "empty entry in policies list");
            cfg.experiment.policies.push_back(tok);
        }
    });
    add("experiment", "replications", [&](const std::string& v, int ln) {
        cfg.experiment.replications = parse_u32(v, origin, ln); });
    add("experiment", "base_seed", [&](const std::string& v, int ln) {
        cfg.experiment.base_seed = parse_u64(v, origin, ln); });
    add("experiment", "out_dir", [&](const std::string& v, int) {
        cfg.experiment.out_dir = v; });

    static const std::set<std::string> known_sections = {
        "database", "storage", "cost", "engine", "policy", "workload", "experiment"};

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        // Strip comments, but not inside values: '#'/';' only start a
        // comment at start of line or after whitespace.
        for (std::size_t i = 0; i < line.size(); ++i) {
            if ((line[i] == '#' || line[i] == ';') &&
                (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, lineno, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (!known_sections.count(section))
                fail(origin, lineno, "unknown section '" + section + "'");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, lineno, "expected 'key = value', got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, lineno, "empty key");
        if (section.empty())
            fail(origin, lineno, "key '" + key + "' appears before any [section]");
        auto it = handlers.find(section + "." + key);
        if (it == handlers.end())
            fail(origin, lineno, "unknown key '" + key + "' in section [" + section + "]");
        it->second(value, lineno);
    }

    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str(), path);
}

std::string dump_config(const SimConfig& cfg) {
    std::ostringstream os;
    auto num = [](double d) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", d);
        return std::string(buf);
    };
    os << "[database]\n";
    os << "initial_objects = " << cfg.database.initial_objects << "\n";
    os << "class_count = " << cfg.database.class_count << "\n";
    os << "version_branching = " << num(cfg.database.version_branching) << "\n";
    os << "config_fanout = " << num(cfg.database.config_fanout) << "\n";
    os << "equivalence_prob = " << num(cfg.database.equivalence_prob) << "\n";
    os << "object_size_bytes = " << cfg.database.object_size_bytes << "\n";
    os << "attr_count = " << cfg.database.attr_count << "\n";
    os << "\n[storage]\n";
    os << "page_bytes = " << cfg.storage.page_bytes << "\n";
    os << "buffer_pages = " << cfg.storage.buffer_pages << "\n";
    os << "\n[cost]\n";
    os << "t_disk_io = " << num(cfg.cost.t_disk_io) << "\n";
    os << "t_mem = " << num(cfg.cost.t_mem) << "\n";
    os << "t_cpu = " << num(cfg.cost.t_cpu) << "\n";
    os << "\n[engine]\n";
    os << "users = " << cfg.engine.users << "\n";
    os << "think_time_mean_s = " << num(cfg.engine.think_time_mean_s) << "\n";
    os << "transactions = " << cfg.engine.transactions << "\n";
    os << "warmup_fraction = " << num(cfg.engine.warmup_fraction) << "\n";
    os << "seed = " << cfg.engine.seed << "\n";
    os << "\n[policy]\n";
    os << "name = " << cfg.policy.name << "\n";
    os << "reorg_interval_txns = " << cfg.policy.reorg_interval_txns << "\n";
    os << "ck_lambda = " << num(cfg.policy.ck_lambda) << "\n";
    os << "orion_read_passes = " << cfg.policy.orion_read_passes << "\n";
    os << "orion_cluster_directives = " << cfg.policy.orion_cluster_directives << "\n";
    os << "\n[workload]\n";
    for (int i = 0; i < kTxnKindCount; ++i)
        os << "mix." << kTxnKindNames[i] << " = " << num(cfg.workload.mix[i]) << "\n";
    os << "closure_depth = " << cfg.workload.closure_depth << "\n";
    os << "range_selectivity = " << num(cfg.workload.range_selectivity) << "\n";
    os << "\n[experiment]\n";
    os << "db_sizes = ";
    for (std::size_t i = 0; i < cfg.experiment.db_sizes.size(); ++i)
        os << (i ? "," : "") << cfg.experiment.db_sizes[i];
    os << "\n";
    os << "policies = ";
    for (std::size_t i = 0; i < cfg.experiment.policies.size(); ++i)
        os << (i ? "," : "") << cfg.experiment.policies[i];
    os << "\n";
    os << "replications = " << cfg.experiment.replications << "\n";
    os << "base_seed = " << cfg.experiment.base_seed << "\n";
    os << "out_dir = " << cfg.experiment.out_dir << "\n";
    return os.str();
}

} // namespace ocsim
