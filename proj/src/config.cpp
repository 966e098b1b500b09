#include "sensorctl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sensorctl/errors.hpp"

namespace sensorctl {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

void parse_scene(const json& j, SceneConfig& s) {
    check_keys(j, "scene", {"camera", "features", "object_xy", "noise_sigma", "xy_prior_sigma"});
    read(j, "camera", s.camera);
    read(j, "features", s.features);
    read(j, "object_xy", s.object_xy);
    read(j, "noise_sigma", s.noise_sigma);
    read(j, "xy_prior_sigma", s.xy_prior_sigma);
    if (s.camera.size() != 3) throw ConfigError("config: scene.camera needs 3 entries");
    if (s.object_xy.size() != 2) throw ConfigError("config: scene.object_xy needs 2 entries");
    if (s.features.empty()) throw ConfigError("config: scene.features must not be empty");
    for (const auto& f : s.features)
        if (f.size() != 2) throw ConfigError("config: scene feature needs 2 entries");
    if (!(s.noise_sigma >= 0.0)) throw ConfigError("config: scene.noise_sigma must be >= 0");
    if (!(s.xy_prior_sigma >= 0.0)) throw ConfigError("config: scene.xy_prior_sigma must be >= 0");
}

void parse_table(const json& j, const std::string& where, TableConfig& t) {
    check_keys(j, where,
               {"system", "bounds", "trials", "observations", "grid_points", "relinearize",
                "truth", "sine_amplitude", "sine_noise_var", "scene"});
    read(j, "system", t.system);
    read(j, "bounds", t.bounds);
    read(j, "trials", t.trials);
    read(j, "observations", t.observations);
    read(j, "grid_points", t.grid_points);
    read(j, "relinearize", t.relinearize);
    read(j, "truth", t.truth);
    read(j, "sine_amplitude", t.sine_amplitude);
    read(j, "sine_noise_var", t.sine_noise_var);
    if (j.contains("scene")) parse_scene(j.at("scene"), t.scene);
    if (t.system != "camera" && t.system != "sine")
        throw ConfigError("config: " + where + ".system must be 'camera' or 'sine'");
    if (t.truth != "uniform" && t.truth != "atoms")
        throw ConfigError("config: " + where + ".truth must be 'uniform' or 'atoms'");
    if (t.bounds.empty()) throw ConfigError("config: " + where + ".bounds must not be empty");
    if (t.trials < 1) throw ConfigError("config: " + where + ".trials must be >= 1");
    if (t.observations < 1) throw ConfigError("config: " + where + ".observations must be >= 1");
    if (t.grid_points < 2) throw ConfigError("config: " + where + ".grid_points must be >= 2");
}

void parse_table3(const json& j, Table3Config& t) {
    check_keys(j, "table3",
               {"iterations", "bounds", "trials", "quantize_threshold", "amplitude", "noise_var",
                "grid_points", "oracle_grid"});
    read(j, "iterations", t.iterations);
    read(j, "bounds", t.bounds);
    read(j, "trials", t.trials);
    read(j, "quantize_threshold", t.quantize_threshold);
    read(j, "amplitude", t.amplitude);
    read(j, "noise_var", t.noise_var);
    read(j, "grid_points", t.grid_points);
    read(j, "oracle_grid", t.oracle_grid);
    if (t.iterations.empty() || t.bounds.empty())
        throw ConfigError("config: table3 needs iterations and bounds");
    if (t.trials < 1 || t.grid_points < 2 || t.oracle_grid < 2)
        throw ConfigError("config: table3 has an out-of-range count");
    if (!(t.quantize_threshold > 0.5 && t.quantize_threshold <= 1.0))
        throw ConfigError("config: table3.quantize_threshold must be in (0.5, 1]");
    if (!(t.noise_var > 0.0)) throw ConfigError("config: table3.noise_var must be > 0");
}

void parse_fig3(const json& j, Fig3Config& f) {
    check_keys(j, "fig3",
               {"variances", "sweep_points", "amplitude", "grid_points", "oracle_grid",
                "quadrature_nodes"});
    read(j, "variances", f.variances);
    read(j, "sweep_points", f.sweep_points);
    read(j, "amplitude", f.amplitude);
    read(j, "grid_points", f.grid_points);
    read(j, "oracle_grid", f.oracle_grid);
    read(j, "quadrature_nodes", f.quadrature_nodes);
    if (f.variances.empty()) throw ConfigError("config: fig3.variances must not be empty");
    if (f.sweep_points < 3 || f.grid_points < 2 || f.oracle_grid < 2 || f.quadrature_nodes < 3)
        throw ConfigError("config: fig3 has an out-of-range count");
    for (double v : f.variances)
        if (!(v > 0.0)) throw ConfigError("config: fig3 variances must be > 0");
}

void parse_game(const json& j, GameConfig& g) {
    check_keys(j, "game",
               {"h_lo", "h_hi", "noise_var", "prior_vars", "trials", "threshold_lo",
                "threshold_hi"});
    read(j, "h_lo", g.h_lo);
    read(j, "h_hi", g.h_hi);
    read(j, "noise_var", g.noise_var);
    read(j, "prior_vars", g.prior_vars);
    read(j, "trials", g.trials);
    read(j, "threshold_lo", g.threshold_lo);
    read(j, "threshold_hi", g.threshold_hi);
    if (!(g.h_lo <= g.h_hi)) throw ConfigError("config: game.h_lo must be <= game.h_hi");
    if (!(g.noise_var > 0.0)) throw ConfigError("config: game.noise_var must be > 0");
    if (g.prior_vars.empty()) throw ConfigError("config: game.prior_vars must not be empty");
    if (g.trials < 1) throw ConfigError("config: game.trials must be >= 1");
    if (!(g.threshold_lo > 0.0 && g.threshold_hi > g.threshold_lo))
        throw ConfigError("config: game threshold search range is invalid");
}

void parse_planner(const json& j, PlannerConfig& p) {
    check_keys(j, "planner",
               {"tau", "tolerance", "priority", "deadline", "bound", "noise_sigma", "object_xy",
                "features", "candidates", "sample_time", "travel_speed", "trials"});
    read(j, "tau", p.tau);
    read(j, "tolerance", p.tolerance);
    read(j, "priority", p.priority);
    read(j, "deadline", p.deadline);
    read(j, "bound", p.bound);
    read(j, "noise_sigma", p.noise_sigma);
    read(j, "object_xy", p.object_xy);
    read(j, "features", p.features);
    read(j, "sample_time", p.sample_time);
    read(j, "travel_speed", p.travel_speed);
    read(j, "trials", p.trials);
    if (j.contains("candidates")) {
        p.candidates.clear();
        for (const auto& c : j.at("candidates")) {
            check_keys(c, "planner.candidates[]", {"pose", "features"});
            PlannerCandidateConfig pc;
            read(c, "pose", pc.pose);
            read(c, "features", pc.features);
            if (pc.pose.size() != 3)
                throw ConfigError("config: planner candidate pose needs 3 entries");
            if (pc.features.empty())
                throw ConfigError("config: planner candidate needs features");
            p.candidates.push_back(std::move(pc));
        }
    }
    if (!(p.tau > 0.0 && p.tau < 1.0)) throw ConfigError("config: planner.tau must be in (0,1)");
    if (!(p.tolerance > 0.0)) throw ConfigError("config: planner.tolerance must be > 0");
    if (!(p.priority > 0.0)) throw ConfigError("config: planner.priority must be > 0");
    if (!(p.deadline >= 0.0)) throw ConfigError("config: planner.deadline must be >= 0");
    if (!(p.bound > 0.0)) throw ConfigError("config: planner.bound must be > 0");
    if (p.candidates.empty()) throw ConfigError("config: planner.candidates must not be empty");
    if (p.object_xy.size() != 2) throw ConfigError("config: planner.object_xy needs 2 entries");
    for (const auto& c : p.candidates)
        for (int fi : c.features)
            if (fi < 0 || fi >= static_cast<int>(p.features.size()))
                throw ConfigError("config: planner candidate feature index out of range");
    if (p.trials < 1) throw ConfigError("config: planner.trials must be >= 1");
}

json scene_json(const SceneConfig& s) {
    return json{{"camera", s.camera},
                {"features", s.features},
                {"object_xy", s.object_xy},
                {"noise_sigma", s.noise_sigma},
                {"xy_prior_sigma", s.xy_prior_sigma}};
}

json table_json(const TableConfig& t) {
    return json{{"system", t.system},
                {"bounds", t.bounds},
                {"trials", t.trials},
                {"observations", t.observations},
                {"grid_points", t.grid_points},
                {"relinearize", t.relinearize},
                {"truth", t.truth},
                {"sine_amplitude", t.sine_amplitude},
                {"sine_noise_var", t.sine_noise_var},
                {"scene", scene_json(t.scene)}};
}

}  // namespace

HarnessConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: parse failure: ") + e.what());
    }
    check_keys(j, "top level",
               {"seed", "out_dir", "table1", "table2", "table3", "fig3", "game", "planner"});
    HarnessConfig cfg;
    read(j, "seed", cfg.seed);
    read(j, "out_dir", cfg.out_dir);
    if (j.contains("table1")) parse_table(j.at("table1"), "table1", cfg.table1);
    if (j.contains("table2")) parse_table(j.at("table2"), "table2", cfg.table2);
    if (j.contains("table3")) parse_table3(j.at("table3"), cfg.table3);
    if (j.contains("fig3")) parse_fig3(j.at("fig3"), cfg.fig3);
    if (j.contains("game")) parse_game(j.at("game"), cfg.game);
    if (j.contains("planner")) parse_planner(j.at("planner"), cfg.planner);
    return cfg;
}

HarnessConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string HarnessConfig::serialize() const {
    json j;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["table1"] = table_json(table1);
    j["table2"] = table_json(table2);
    j["table3"] = json{{"iterations", table3.iterations},
                       {"bounds", table3.bounds},
                       {"trials", table3.trials},
                       {"quantize_threshold", table3.quantize_threshold},
                       {"amplitude", table3.amplitude},
                       {"noise_var", table3.noise_var},
                       {"grid_points", table3.grid_points},
                       {"oracle_grid", table3.oracle_grid}};
    j["fig3"] = json{{"variances", fig3.variances},
                     {"sweep_points", fig3.sweep_points},
                     {"amplitude", fig3.amplitude},
                     {"grid_points", fig3.grid_points},
                     {"oracle_grid", fig3.oracle_grid},
                     {"quadrature_nodes", fig3.quadrature_nodes}};
    j["game"] = json{{"h_lo", game.h_lo},
                     {"h_hi", game.h_hi},
                     {"noise_var", game.noise_var},
                     {"prior_vars", game.prior_vars},
                     {"trials", game.trials},
                     {"threshold_lo", game.threshold_lo},
                     {"threshold_hi", game.threshold_hi}};
    json cands = json::array();
    for (const auto& c : planner.candidates)
        cands.push_back(json{{"pose", c.pose}, {"features", c.features}});
    j["planner"] = json{{"tau", planner.tau},
                        {"tolerance", planner.tolerance},
                        {"priority", planner.priority},
                        {"deadline", planner.deadline},
                        {"bound", planner.bound},
                        {"noise_sigma", planner.noise_sigma},
                        {"object_xy", planner.object_xy},
                        {"features", planner.features},
                        {"candidates", cands},
                        {"sample_time", planner.sample_time},
                        {"travel_speed", planner.travel_speed},
                        {"trials", planner.trials}};
    return j.dump(2);
}

std::string HarnessConfig::hash() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(serialize())));
    return buf;
}

}  // namespace sensorctl
