#include "cfilt/config.hpp"

#include "cfilt/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace cfilt {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError(join(path, key), "unknown key");
    }
}

double get_number(const json& j, const std::string& path, const std::string& key, std::optional<double> fallback) {
    const std::string p = join(path, key);
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(p, "missing required field");
    }
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(p, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(p, "expected a finite number");
    return d;
}

// null (or absence with an infinite fallback) maps to +inf.
double get_frequency_or_inf(const json& j, const std::string& path, const std::string& key,
                            std::optional<double> fallback) {
    if (j.contains(key) && j.at(key).is_null()) return kInf;
    return get_number(j, path, key, fallback);
}

std::int64_t get_integer(const json& j, const std::string& path, const std::string& key,
                         std::optional<std::int64_t> fallback) {
    const std::string p = join(path, key);
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(p, "missing required field");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(p, "expected an integer");
    return v.get<std::int64_t>();
}

template <class F>
void check(const std::string& path, F&& validate) {
    try {
        validate();
    } catch (const SpecError& e) {
        throw ConfigError(path, e.what());
    }
}

FilterSpec parse_filter(const json& j) {
    const std::string path = "filter";
    expect_object(j, path);
    reject_unknown(j, path, {"f0_hz", "delta", "order", "family", "ripple_db", "z0_ohm"});

    FilterSpec f;
    f.f0_hz = get_number(j, path, "f0_hz", std::nullopt);
    if (!(f.f0_hz > 0.0)) throw ConfigError("filter.f0_hz", "must be > 0");
    f.delta = get_number(j, path, "delta", std::nullopt);
    if (!(f.delta > 0.0 && f.delta < 1.0)) throw ConfigError("filter.delta", "must lie in (0, 1)");
    f.z0_ohm = get_number(j, path, "z0_ohm", 50.0);
    if (!(f.z0_ohm > 0.0)) throw ConfigError("filter.z0_ohm", "must be > 0");

    const auto order = get_integer(j, path, "order", std::nullopt);
    if (order < 1 || order > kMaxOrder)
        throw ConfigError("filter.order", "must lie in 1.." + std::to_string(kMaxOrder));
    f.prototype.order = static_cast<int>(order);

    if (!j.contains("family")) throw ConfigError("filter.family", "missing required field");
    if (!j.at("family").is_string()) throw ConfigError("filter.family", "expected a string");
    check("filter.family", [&] { f.prototype.family = parse_family(j.at("family").get<std::string>()); });

    f.prototype.ripple_db = get_number(j, path, "ripple_db", 0.5);
    if (f.prototype.family == Family::equal_ripple && !(f.prototype.ripple_db > 0.0))
        throw ConfigError("filter.ripple_db", "must be > 0 for an equal-ripple prototype");
    check(path, [&] { f.validate(); });
    return f;
}

SweepConfig parse_sweep(const json& j) {
    const std::string path = "sweep";
    expect_object(j, path);
    reject_unknown(j, path, {"f_start_hz", "f_stop_hz", "points"});
    SweepConfig s;
    s.f_start_hz = get_number(j, path, "f_start_hz", s.f_start_hz);
    if (!(s.f_start_hz > 0.0)) throw ConfigError("sweep.f_start_hz", "must be > 0");
    s.f_stop_hz = get_number(j, path, "f_stop_hz", s.f_stop_hz);
    if (!(s.f_stop_hz > s.f_start_hz)) throw ConfigError("sweep.f_stop_hz", "must exceed f_start_hz");
    const auto points = get_integer(j, path, "points", s.n_points);
    if (points < 2 || points > 10'000'000) throw ConfigError("sweep.points", "must lie in 2..10000000");
    s.n_points = static_cast<int>(points);
    return s;
}

StubSearchSpace parse_search(const json& j, const FilterSpec& filter) {
    const std::string path = "stubs.search";
    expect_object(j, path);
    reject_unknown(j, path, {"symmetric", "groups"});

    StubSearchSpace space;
    if (j.contains("symmetric")) {
        if (!j.at("symmetric").is_boolean()) throw ConfigError("stubs.search.symmetric", "expected true or false");
        space.symmetric = j.at("symmetric").get<bool>();
    }
    if (!j.contains("groups")) throw ConfigError("stubs.search.groups", "missing required field");
    const auto& groups = j.at("groups");
    if (!groups.is_array() || groups.empty())
        throw ConfigError("stubs.search.groups", "expected a non-empty array");

    const int n_sections = filter.prototype.order + 1;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const std::string gp = path + ".groups[" + std::to_string(i) + "]";
        const auto& g = groups[i];
        expect_object(g, gp);
        reject_unknown(g, gp, {"zt_min_ohm", "zt_max_ohm", "fz_min_hz", "fz_max_hz", "sites"});
        StubGroupBounds b;
        b.zt_min = get_number(g, gp, "zt_min_ohm", kStubZtMin);
        b.zt_max = get_number(g, gp, "zt_max_ohm", kStubZtMax);
        if (!(b.zt_min >= kStubZtMin && b.zt_min <= kStubZtMax))
            throw ConfigError(join(gp, "zt_min_ohm"), "must lie in [20, 150]");
        if (!(b.zt_max >= b.zt_min && b.zt_max <= kStubZtMax))
            throw ConfigError(join(gp, "zt_max_ohm"), "must lie in [zt_min_ohm, 150]");
        b.fz_min_hz = get_number(g, gp, "fz_min_hz", std::nullopt);
        if (!(b.fz_min_hz > filter.f0_hz)) throw ConfigError(join(gp, "fz_min_hz"), "must exceed filter.f0_hz");
        b.fz_max_hz = get_frequency_or_inf(g, gp, "fz_max_hz", kInf);
        if (!(b.fz_max_hz >= b.fz_min_hz)) throw ConfigError(join(gp, "fz_max_hz"), "must be >= fz_min_hz");
        if (g.contains("sites")) {
            const auto& sites = g.at("sites");
            if (!sites.is_array() || sites.empty()) throw ConfigError(join(gp, "sites"), "expected a non-empty array");
            const int top = space.symmetric ? n_sections / 2 : n_sections;
            for (std::size_t k = 0; k < sites.size(); ++k) {
                const std::string sp = join(gp, "sites") + "[" + std::to_string(k) + "]";
                if (!sites[k].is_number_integer()) throw ConfigError(sp, "expected an integer");
                const auto s = sites[k].get<std::int64_t>();
                if (s < 0 || s > top) throw ConfigError(sp, "junction must lie in 0.." + std::to_string(top));
                b.sites.push_back(static_cast<int>(s));
            }
        }
        space.groups.push_back(std::move(b));
    }
    check(path, [&] { space.validate(n_sections, filter.f0_hz); });
    return space;
}

StubConfig parse_stub_list(const json& j, const FilterSpec& filter) {
    const std::string path = "stubs.config";
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    const int n_sections = filter.prototype.order + 1;
    StubConfig cfg;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string sp = path + "[" + std::to_string(i) + "]";
        expect_object(j[i], sp);
        reject_unknown(j[i], sp, {"zt_ohm", "fz_hz", "site"});
        Stub st;
        st.zt_ohm = get_number(j[i], sp, "zt_ohm", std::nullopt);
        if (!(st.zt_ohm >= kStubZtMin && st.zt_ohm <= kStubZtMax))
            throw ConfigError(join(sp, "zt_ohm"), "must lie in [20, 150]");
        if (!j[i].contains("fz_hz")) throw ConfigError(join(sp, "fz_hz"), "missing required field");
        st.fz_hz = get_frequency_or_inf(j[i], sp, "fz_hz", std::nullopt);
        if (!(st.fz_hz > filter.f0_hz)) throw ConfigError(join(sp, "fz_hz"), "must exceed filter.f0_hz");
        const auto site = get_integer(j[i], sp, "site", std::nullopt);
        if (site < 0 || site > n_sections)
            throw ConfigError(join(sp, "site"), "junction must lie in 0.." + std::to_string(n_sections));
        st.site = static_cast<int>(site);
        cfg.stubs.push_back(st);
    }
    return cfg;
}

ObjectiveSpec parse_objective(const json& j) {
    const std::string path = "objective";
    expect_object(j, path);
    reject_unknown(j, path,
                   {"w_pass", "w_h2", "w_h3", "il_budget_db", "harmonic_window", "suppression_target_db"});
    ObjectiveSpec o;
    o.w_pass = get_number(j, path, "w_pass", o.w_pass);
    o.w_h2 = get_number(j, path, "w_h2", o.w_h2);
    o.w_h3 = get_number(j, path, "w_h3", o.w_h3);
    for (auto [key, v] : {std::pair{"w_pass", o.w_pass}, {"w_h2", o.w_h2}, {"w_h3", o.w_h3}})
        if (v < 0.0) throw ConfigError(join(path, key), "must be >= 0");
    if (!(o.w_pass > 0.0 || o.w_h2 > 0.0 || o.w_h3 > 0.0))
        throw ConfigError(path, "at least one weight must be > 0");
    o.il_budget_db = get_number(j, path, "il_budget_db", o.il_budget_db);
    if (o.il_budget_db < 0.0) throw ConfigError("objective.il_budget_db", "must be >= 0");
    o.harmonic_window = get_number(j, path, "harmonic_window", o.harmonic_window);
    if (!(o.harmonic_window > 0.0 && o.harmonic_window < 1.0))
        throw ConfigError("objective.harmonic_window", "must lie in (0, 1)");
    o.suppression_target_db = get_number(j, path, "suppression_target_db", o.suppression_target_db);
    if (!(o.suppression_target_db <= 0.0 && o.suppression_target_db >= kDbFloor))
        throw ConfigError("objective.suppression_target_db", "must lie in [-200, 0]");
    return o;
}

OptimizerSettings parse_optimizer(const json& j) {
    const std::string path = "optimizer";
    expect_object(j, path);
    reject_unknown(j, path, {"budget", "restarts", "refine"});
    OptimizerSettings s;
    const auto budget = get_integer(j, path, "budget", s.budget);
    if (budget < 50 || budget > 100'000'000) throw ConfigError("optimizer.budget", "must lie in 50..100000000");
    const auto restarts = get_integer(j, path, "restarts", s.restarts);
    if (restarts < 1 || restarts > 1000) throw ConfigError("optimizer.restarts", "must lie in 1..1000");
    const auto refine = get_integer(j, path, "refine", s.refine);
    if (refine < 1 || refine > 1000) throw ConfigError("optimizer.refine", "must lie in 1..1000");
    s.budget = static_cast<int>(budget);
    s.restarts = static_cast<int>(restarts);
    s.refine = static_cast<int>(refine);
    return s;
}

ojson frequency_or_null(double f) {
    if (std::isinf(f)) return nullptr;
    return f;
}

}  // namespace

DesignConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("syntax error: ") + e.what());
    }
    expect_object(root, "");
    reject_unknown(root, "", {"filter", "sweep", "stubs", "objective", "optimizer", "seed"});

    DesignConfig cfg;
    if (!root.contains("filter")) throw ConfigError("filter", "missing required section");
    cfg.filter = parse_filter(root.at("filter"));
    if (root.contains("sweep")) cfg.sweep = parse_sweep(root.at("sweep"));
    if (root.contains("stubs")) {
        const auto& st = root.at("stubs");
        expect_object(st, "stubs");
        reject_unknown(st, "stubs", {"search", "config"});
        if (st.contains("search")) cfg.stub_search = parse_search(st.at("search"), cfg.filter);
        if (st.contains("config")) cfg.stubs = parse_stub_list(st.at("config"), cfg.filter);
    }
    if (root.contains("objective")) cfg.objective = parse_objective(root.at("objective"));
    if (root.contains("optimizer")) cfg.optimizer = parse_optimizer(root.at("optimizer"));
    if (root.contains("seed")) {
        const auto& s = root.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
            throw ConfigError("seed", "expected a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    return cfg;
}

DesignConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const DesignConfig& cfg) {
    ojson root;
    const auto& f = cfg.filter;
    root["filter"] = {{"f0_hz", f.f0_hz},
                      {"delta", f.delta},
                      {"order", f.prototype.order},
                      {"family", std::string(to_string(f.prototype.family))},
                      {"ripple_db", f.prototype.ripple_db},
                      {"z0_ohm", f.z0_ohm}};
    root["sweep"] = {{"f_start_hz", cfg.sweep.f_start_hz},
                     {"f_stop_hz", cfg.sweep.f_stop_hz},
                     {"points", cfg.sweep.n_points}};

    if (cfg.stub_search || cfg.stubs) {
        ojson stubs = ojson::object();
        if (cfg.stub_search) {
            ojson groups = ojson::array();
            for (const auto& g : cfg.stub_search->groups) {
                ojson gj = {{"zt_min_ohm", g.zt_min},
                            {"zt_max_ohm", g.zt_max},
                            {"fz_min_hz", g.fz_min_hz},
                            {"fz_max_hz", frequency_or_null(g.fz_max_hz)}};
                if (!g.sites.empty()) gj["sites"] = g.sites;
                groups.push_back(std::move(gj));
            }
            stubs["search"] = {{"symmetric", cfg.stub_search->symmetric}, {"groups", std::move(groups)}};
        }
        if (cfg.stubs) {
            ojson list = ojson::array();
            for (const auto& s : cfg.stubs->stubs)
                list.push_back({{"zt_ohm", s.zt_ohm}, {"fz_hz", frequency_or_null(s.fz_hz)}, {"site", s.site}});
            stubs["config"] = std::move(list);
        }
        root["stubs"] = std::move(stubs);
    }

    const auto& o = cfg.objective;
    root["objective"] = {{"w_pass", o.w_pass},
                         {"w_h2", o.w_h2},
                         {"w_h3", o.w_h3},
                         {"il_budget_db", o.il_budget_db},
                         {"harmonic_window", o.harmonic_window},
                         {"suppression_target_db", o.suppression_target_db}};
    root["optimizer"] = {{"budget", cfg.optimizer.budget},
                         {"restarts", cfg.optimizer.restarts},
                         {"refine", cfg.optimizer.refine}};
    root["seed"] = cfg.seed;
    return root.dump(2) + "\n";
}

}  // namespace cfilt
