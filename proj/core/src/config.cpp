#include "bcdi/config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "bcdi/io.hpp"

namespace bcdi {
namespace {

using json = nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) {
        throw InvalidInput(where + " must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
        if (!known) {
            throw InvalidInput("unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) {
        return;
    }
    const json& v = j.at(key);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) {
            throw InvalidInput(where + "." + key + " must be a boolean");
        }
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
            throw InvalidInput(where + "." + key + " must be a non-negative integer");
        }
    } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) {
            throw InvalidInput(where + "." + key + " must be a number");
        }
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) {
            throw InvalidInput(where + "." + key + " must be a string");
        }
    }
    out = v.get<T>();
}

template <typename T, std::size_t N>
void read_array(const json& j, const char* key, std::array<T, N>& out, const std::string& where) {
    if (!j.contains(key)) {
        return;
    }
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != N) {
        throw InvalidInput(where + "." + key + " must be an array of " + std::to_string(N) + " values");
    }
    for (std::size_t i = 0; i < N; ++i) {
        json wrapper{{"v", v[i]}};
        read(wrapper, "v", out[i], where + "." + key);
    }
}

template <typename T>
void read_list(const json& j, const char* key, std::vector<T>& out, const std::string& where) {
    if (!j.contains(key)) {
        return;
    }
    const json& v = j.at(key);
    if (!v.is_array()) {
        throw InvalidInput(where + "." + key + " must be an array");
    }
    out.clear();
    for (const auto& item : v) {
        json wrapper{{"v", item}};
        T value{};
        read(wrapper, "v", value, where + "." + key);
        out.push_back(value);
    }
}

PhaseModel parse_phase_model(const std::string& s) {
    if (s == "zero") {
        return PhaseModel::Zero;
    }
    if (s == "linear-gradient") {
        return PhaseModel::LinearGradient;
    }
    if (s == "gaussian-bump") {
        return PhaseModel::GaussianBump;
    }
    throw InvalidInput("crystal.phase.model must be zero, linear-gradient or gaussian-bump, got '" + s + "'");
}

std::string phase_model_name(PhaseModel m) {
    switch (m) {
    case PhaseModel::Zero:
        return "zero";
    case PhaseModel::LinearGradient:
        return "linear-gradient";
    case PhaseModel::GaussianBump:
        return "gaussian-bump";
    }
    return "zero";
}

void parse_crystal(const json& j, CrystalSpec& c) {
    check_keys(j, {"array_dims", "box_dims", "facet_cuts", "phase"}, "crystal");
    read_array(j, "array_dims", c.array_dims, "crystal");
    read_array(j, "box_dims", c.box_dims, "crystal");
    if (j.contains("facet_cuts")) {
        const json& cuts = j.at("facet_cuts");
        if (!cuts.is_array()) {
            throw InvalidInput("crystal.facet_cuts must be an array");
        }
        c.facet_cuts.clear();
        for (const auto& item : cuts) {
            check_keys(item, {"normal", "offset"}, "crystal.facet_cuts[]");
            if (!item.contains("normal") || !item.contains("offset")) {
                throw InvalidInput("every facet cut needs a normal and an offset");
            }
            FacetCut cut;
            read_array(item, "normal", cut.normal, "crystal.facet_cuts[]");
            read(item, "offset", cut.offset, "crystal.facet_cuts[]");
            c.facet_cuts.push_back(cut);
        }
    }
    if (j.contains("phase")) {
        const json& p = j.at("phase");
        check_keys(p, {"model", "amplitude", "length_scale"}, "crystal.phase");
        std::string model = phase_model_name(c.phase.model);
        read(p, "model", model, "crystal.phase");
        c.phase.model = parse_phase_model(model);
        read(p, "amplitude", c.phase.amplitude, "crystal.phase");
        read(p, "length_scale", c.phase.length_scale, "crystal.phase");
    }
}

void parse_geometry(const json& j, GeometryConfig& g) {
    check_keys(j, {"roi_fine", "pbf", "scheme", "positions", "offsets"}, "geometry");
    read(j, "roi_fine", g.roi_fine, "geometry");
    read(j, "pbf", g.pbf, "geometry");
    read(j, "positions", g.positions, "geometry");
    if (j.contains("scheme")) {
        std::string scheme;
        read(j, "scheme", scheme, "geometry");
        if (scheme == "diagonal") {
            g.scheme = OffsetScheme::Diagonal;
        } else if (scheme == "custom") {
            g.scheme = OffsetScheme::Custom;
        } else {
            throw InvalidInput("geometry.scheme must be diagonal or custom, got '" + scheme + "'");
        }
    }
    if (j.contains("offsets")) {
        const json& list = j.at("offsets");
        if (!list.is_array()) {
            throw InvalidInput("geometry.offsets must be an array of [row, col] pairs");
        }
        g.offsets.clear();
        for (const auto& item : list) {
            if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer()) {
                throw InvalidInput("geometry.offsets entries must be [row, col] integer pairs");
            }
            g.offsets.push_back({item[0].get<int>(), item[1].get<int>()});
        }
    }
}

void parse_recovery(const json& j, RecoveryConfig& r) {
    check_keys(j, {"alpha", "max_iterations", "convergence_tol", "normalize_slice", "negative_handling", "sparsity"},
               "recovery");
    read(j, "alpha", r.alpha, "recovery");
    read(j, "max_iterations", r.max_iterations, "recovery");
    read(j, "convergence_tol", r.convergence_tol, "recovery");
    read(j, "normalize_slice", r.normalize_slice, "recovery");
    read(j, "sparsity", r.sparsity, "recovery");
    if (j.contains("negative_handling")) {
        std::string mode;
        read(j, "negative_handling", mode, "recovery");
        if (mode == "threshold-to-zero") {
            r.negative_handling = NegativeHandling::ThresholdToZero;
        } else if (mode == "keep") {
            r.negative_handling = NegativeHandling::Keep;
        } else {
            throw InvalidInput("recovery.negative_handling must be threshold-to-zero or keep, got '" + mode + "'");
        }
    }
}

void parse_recipe(const json& j, Recipe& r) {
    check_keys(j, {"stages", "shrinkwrap_period", "shrinkwrap"}, "recipe");
    if (j.contains("stages")) {
        const json& stages = j.at("stages");
        if (!stages.is_array()) {
            throw InvalidInput("recipe.stages must be an array");
        }
        r.stages.clear();
        for (const auto& item : stages) {
            check_keys(item, {"algorithm", "iterations", "beta"}, "recipe.stages[]");
            std::string name;
            Stage stage;
            read(item, "algorithm", name, "recipe.stages[]");
            stage.algorithm = parse_algorithm(name);
            read(item, "iterations", stage.iterations, "recipe.stages[]");
            read(item, "beta", stage.beta, "recipe.stages[]");
            r.stages.push_back(stage);
        }
    }
    read(j, "shrinkwrap_period", r.shrinkwrap_period, "recipe");
    if (j.contains("shrinkwrap")) {
        const json& s = j.at("shrinkwrap");
        check_keys(s, {"sigma", "threshold"}, "recipe.shrinkwrap");
        read(s, "sigma", r.shrinkwrap.sigma, "recipe.shrinkwrap");
        read(s, "threshold", r.shrinkwrap.threshold, "recipe.shrinkwrap");
    }
}

void parse_evaluate(const json& j, SrtfSweepRequest& e) {
    check_keys(j, {"pbfs", "positions", "floor"}, "evaluate");
    read_list(j, "pbfs", e.pbfs, "evaluate");
    read_list(j, "positions", e.positions, "evaluate");
    read(j, "floor", e.floor, "evaluate");
}

void parse_tables(const json& j, DesignTableRequest& t) {
    check_keys(j, {"fine_roi", "pbfs", "min_positions", "max_positions", "sparsity", "with_shading"}, "tables");
    read(j, "fine_roi", t.fine_roi, "tables");
    read_list(j, "pbfs", t.pbfs, "tables");
    read(j, "min_positions", t.min_positions, "tables");
    read(j, "max_positions", t.max_positions, "tables");
    read(j, "sparsity", t.sparsity, "tables");
    read(j, "with_shading", t.with_shading, "tables");
}

} // namespace

DetectorGeometry GeometryConfig::resolve() const {
    DetectorGeometry g;
    g.roi_fine = roi_fine;
    g.pbf = pbf;
    g.scheme = scheme;
    if (scheme == OffsetScheme::Diagonal) {
        require(positions >= 1, "geometry.positions must be at least 1");
        require(pbf >= 1, "geometry.pbf must be at least 1");
        g.offsets = diagonal_positions(pbf, positions);
    } else {
        require(!offsets.empty(), "a custom geometry needs at least one offset");
        g.offsets = offsets;
    }
    return g;
}

void validate_config(const ExperimentConfig& config) {
    // Crystal validity (Nyquist) is checked by build_crystal with its own error kind.
    for (std::size_t a = 0; a < 3; ++a) {
        require(config.crystal.array_dims[a] > 0 && config.crystal.box_dims[a] > 0,
                "crystal dimensions must be positive");
    }
    require(config.crystal.phase.model == PhaseModel::Zero || config.crystal.phase.length_scale > 0.0,
            "crystal.phase.length_scale must be positive");
    validate_geometry(config.geometry.resolve());
    validate_recovery_config(config.recovery);
    validate_recipe(config.recipe);
    require(!config.evaluate.pbfs.empty() && !config.evaluate.positions.empty(), "evaluate grid must be non-empty");
    require(config.evaluate.floor >= 0.0, "evaluate.floor must be non-negative");
    require(!config.tables.pbfs.empty(), "tables.pbfs must be non-empty");
    require(config.tables.min_positions >= 1 && config.tables.min_positions <= config.tables.max_positions,
            "tables position range is empty");
    require(!config.output_dir.empty(), "output_dir must be non-empty");
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig config;
    try {
        check_keys(root, {"crystal", "geometry", "recovery", "recipe", "evaluate", "tables", "output_dir", "seed"},
                   "config");
        if (root.contains("crystal")) {
            parse_crystal(root.at("crystal"), config.crystal);
        }
        if (root.contains("geometry")) {
            parse_geometry(root.at("geometry"), config.geometry);
        }
        if (root.contains("recovery")) {
            parse_recovery(root.at("recovery"), config.recovery);
        }
        if (root.contains("recipe")) {
            parse_recipe(root.at("recipe"), config.recipe);
        }
        if (root.contains("evaluate")) {
            parse_evaluate(root.at("evaluate"), config.evaluate);
        }
        if (root.contains("tables")) {
            parse_tables(root.at("tables"), config.tables);
        }
        read(root, "output_dir", config.output_dir, "config");
        read(root, "seed", config.seed, "config");
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    config.crystal.seed = config.seed;
    validate_config(config);
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const IoError& e) {
        throw InvalidInput(e.what());
    }
    return parse_config(text);
}

std::string to_json(const ExperimentConfig& config) {
    json root;
    const auto& c = config.crystal;
    json cuts = json::array();
    for (const auto& cut : c.facet_cuts) {
        cuts.push_back({{"normal", cut.normal}, {"offset", cut.offset}});
    }
    root["crystal"] = {{"array_dims", c.array_dims},
                       {"box_dims", c.box_dims},
                       {"facet_cuts", cuts},
                       {"phase",
                        {{"model", phase_model_name(c.phase.model)},
                         {"amplitude", c.phase.amplitude},
                         {"length_scale", c.phase.length_scale}}}};
    const auto& g = config.geometry;
    json offsets = json::array();
    for (const auto& o : g.offsets) {
        offsets.push_back({o.row, o.col});
    }
    root["geometry"] = {{"roi_fine", g.roi_fine},
                        {"pbf", g.pbf},
                        {"scheme", g.scheme == OffsetScheme::Diagonal ? "diagonal" : "custom"},
                        {"positions", g.positions},
                        {"offsets", offsets}};
    const auto& r = config.recovery;
    root["recovery"] = {{"alpha", r.alpha},
                        {"max_iterations", r.max_iterations},
                        {"convergence_tol", r.convergence_tol},
                        {"normalize_slice", r.normalize_slice},
                        {"negative_handling",
                         r.negative_handling == NegativeHandling::ThresholdToZero ? "threshold-to-zero" : "keep"},
                        {"sparsity", r.sparsity}};
    json stages = json::array();
    for (const auto& s : config.recipe.stages) {
        stages.push_back({{"algorithm", to_string(s.algorithm)}, {"iterations", s.iterations}, {"beta", s.beta}});
    }
    root["recipe"] = {{"stages", stages},
                      {"shrinkwrap_period", config.recipe.shrinkwrap_period},
                      {"shrinkwrap",
                       {{"sigma", config.recipe.shrinkwrap.sigma}, {"threshold", config.recipe.shrinkwrap.threshold}}}};
    root["evaluate"] = {
        {"pbfs", config.evaluate.pbfs}, {"positions", config.evaluate.positions}, {"floor", config.evaluate.floor}};
    const auto& t = config.tables;
    root["tables"] = {{"fine_roi", t.fine_roi},           {"pbfs", t.pbfs},         {"min_positions", t.min_positions},
                      {"max_positions", t.max_positions}, {"sparsity", t.sparsity}, {"with_shading", t.with_shading}};
    root["output_dir"] = config.output_dir;
    root["seed"] = config.seed;
    return root.dump(2) + "\n";
}

} // namespace bcdi
