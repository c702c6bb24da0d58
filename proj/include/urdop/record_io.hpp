// JSON documents for instances, deployments, energy breakdowns and run
// records. Doubles are written in shortest round-trip form, so every value
// reloads bit-identically.
#ifndef URDOP_RECORD_IO_HPP
#define URDOP_RECORD_IO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "urdop/deployment.hpp"
#include "urdop/run_record.hpp"
#include "urdop/scenario.hpp"

namespace urdop {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io_detail {

inline const json& need(const json& doc, const char* key, const std::string& what) {
    if (!doc.is_object()) throw ParseError(what + ": expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(what + ": missing key '" + key + "'");
    return *it;
}

inline double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    return v.get<double>();
}

inline json points_to_json(const std::vector<Vec2>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

inline std::vector<Vec2> points_from_json(const json& arr, const std::string& what) {
    if (!arr.is_array()) throw ParseError(what + ": expected an array of [x, y]");
    std::vector<Vec2> pts;
    pts.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = what + "[" + std::to_string(i) + "]";
        const json& p = arr[i];
        if (!p.is_array() || p.size() != 2) throw ParseError(where + ": expected [x, y]");
        pts.push_back({number(p[0], where + "[0]"), number(p[1], where + "[1]")});
    }
    return pts;
}

} // namespace io_detail

inline json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes via a temporary file and rename, so readers never see a partial file.
inline void write_text_file_atomic(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string to_text(const json& doc) { return doc.dump(2) + "\n"; }

// ---- config ---------------------------------------------------------------

inline json config_to_json(const ScenarioConfig& cfg) {
    json out = json::object();
    ScenarioConfig copy = cfg;
    detail::for_each_field(copy, [&](const char* name, auto& field) { out[name] = field; });
    return out;
}

inline ScenarioConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("config: expected an object");
    RawParams raw;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_number_integer())
            raw[key] = std::to_string(value.get<long long>());
        else if (value.is_number())
            raw[key] = detail::format_double(value.get<double>());
        else
            throw ParseError("config." + key + ": expected a number");
    }
    return build_config(raw);
}

// ---- instance -------------------------------------------------------------

inline json instance_to_json(const Instance& inst, const ScenarioConfig& cfg) {
    json doc;
    doc["seed"] = inst.seed;
    doc["config_hash"] = config_hash(cfg);
    doc["config"] = config_to_json(cfg);
    doc["ues"] = io_detail::points_to_json(inst.ues);
    doc["demands_bits"] = inst.demands;
    return doc;
}

inline std::string save_instance(const Instance& inst, const ScenarioConfig& cfg) {
    return to_text(instance_to_json(inst, cfg));
}

/// Config embedded in an instance document, if any.
inline std::optional<ScenarioConfig> embedded_config(const json& doc) {
    if (!doc.is_object() || !doc.contains("config")) return std::nullopt;
    return config_from_json(doc["config"]);
}

/// Parses and validates an instance against `cfg`. A present config_hash
/// must match cfg.
inline Instance load_instance(const json& doc, const ScenarioConfig& cfg) {
    const std::string what = "instance";
    Instance inst;
    const json& seed = io_detail::need(doc, "seed", what);
    if (!seed.is_number_integer() || seed.get<long long>() < 0) throw ParseError("instance.seed: expected a non-negative integer");
    inst.seed = seed.get<std::uint64_t>();
    inst.ues = io_detail::points_from_json(io_detail::need(doc, "ues", what), "instance.ues");
    const json& d = io_detail::need(doc, "demands_bits", what);
    if (!d.is_array()) throw ParseError("instance.demands_bits: expected an array");
    for (std::size_t k = 0; k < d.size(); ++k)
        inst.demands.push_back(io_detail::number(d[k], "instance.demands_bits[" + std::to_string(k) + "]"));
    if (auto it = doc.find("config_hash"); it != doc.end()) {
        if (!it->is_string() || it->get<std::string>() != config_hash(cfg))
            throw ParseError("instance.config_hash does not match the scenario config");
    }
    validate_instance(inst, cfg);
    return inst;
}

inline Instance load_instance(const std::string& text, const ScenarioConfig& cfg) {
    return load_instance(parse_json_text(text, "instance"), cfg);
}

/// Loads an instance file, using its embedded config when present and
/// otherwise `fallback` with K set to the number of UEs.
inline std::pair<Instance, ScenarioConfig> load_instance_file(const std::string& path,
                                                              const RawParams& fallback = {}) {
    const json doc = parse_json_text(read_text_file(path), path);
    ScenarioConfig cfg;
    if (auto embedded = embedded_config(doc)) {
        cfg = *embedded;
    } else {
        RawParams raw = fallback;
        raw["K"] = std::to_string(io_detail::need(doc, "ues", path).size());
        cfg = build_config(raw);
    }
    return {load_instance(doc, cfg), cfg};
}

// ---- deployment and breakdown ---------------------------------------------

inline json deployment_to_json(const Deployment& dep) { return io_detail::points_to_json(dep.points); }

inline Deployment deployment_from_json(const json& doc) {
    return Deployment{io_detail::points_from_json(doc, "deployment")};
}

inline json breakdown_to_json(const EnergyBreakdown& b) {
    return {{"e_hover", b.e_hover},
            {"e_transmit", b.e_transmit},
            {"objective", b.objective},
            {"hover_times", b.hover_times}};
}

inline EnergyBreakdown breakdown_from_json(const json& doc) {
    const std::string what = "breakdown";
    EnergyBreakdown b;
    b.e_hover = io_detail::number(io_detail::need(doc, "e_hover", what), "breakdown.e_hover");
    b.e_transmit = io_detail::number(io_detail::need(doc, "e_transmit", what), "breakdown.e_transmit");
    b.objective = io_detail::number(io_detail::need(doc, "objective", what), "breakdown.objective");
    const json& t = io_detail::need(doc, "hover_times", what);
    if (!t.is_array()) throw ParseError("breakdown.hover_times: expected an array");
    for (const auto& v : t) b.hover_times.push_back(io_detail::number(v, "breakdown.hover_times"));
    return b;
}

// ---- run record -----------------------------------------------------------

inline json run_record_to_json(const RunRecord& rec) {
    json doc;
    doc["algorithm"] = std::string(to_string(rec.algorithm));
    doc["status"] = std::string(to_string(rec.status));
    doc["seed"] = rec.seed;
    doc["instance_seed"] = rec.instance_seed;
    doc["config_hash"] = rec.config_hash;
    doc["max_fe"] = rec.max_fe;
    doc["fe_used"] = rec.fe_used;
    doc["generations"] = rec.generations;
    doc["last_generation_size"] = rec.last_generation_size;
    json trace = json::array();
    for (const auto& t : rec.trace) trace.push_back({t.fe, t.best});
    doc["trace"] = std::move(trace);
    doc["final_deployment"] = deployment_to_json(rec.final_deployment);
    doc["breakdown"] = breakdown_to_json(rec.final_breakdown);
    return doc;
}

inline RunRecord run_record_from_json(const json& doc) try {
    const std::string what = "run record";
    RunRecord rec;
    const auto algo = parse_algorithm(io_detail::need(doc, "algorithm", what).get<std::string>());
    if (!algo) throw ParseError("run record: unknown algorithm");
    rec.algorithm = *algo;
    rec.status = io_detail::need(doc, "status", what).get<std::string>() == "ok" ? RunStatus::ok
                                                                                : RunStatus::init_failed;
    rec.seed = io_detail::need(doc, "seed", what).get<std::uint64_t>();
    rec.instance_seed = io_detail::need(doc, "instance_seed", what).get<std::uint64_t>();
    rec.config_hash = io_detail::need(doc, "config_hash", what).get<std::string>();
    rec.max_fe = io_detail::need(doc, "max_fe", what).get<long long>();
    rec.fe_used = io_detail::need(doc, "fe_used", what).get<long long>();
    rec.generations = io_detail::need(doc, "generations", what).get<std::size_t>();
    rec.last_generation_size = io_detail::need(doc, "last_generation_size", what).get<std::size_t>();
    for (const auto& t : io_detail::need(doc, "trace", what)) {
        if (!t.is_array() || t.size() != 2) throw ParseError("run record.trace: expected [fe, best]");
        rec.trace.push_back({t[0].get<long long>(), t[1].get<double>()});
    }
    rec.final_deployment = deployment_from_json(io_detail::need(doc, "final_deployment", what));
    rec.final_breakdown = breakdown_from_json(io_detail::need(doc, "breakdown", what));
    return rec;
} catch (const json::exception& e) {
    throw ParseError(std::string("run record: ") + e.what());
}

} // namespace urdop

#endif // URDOP_RECORD_IO_HPP
