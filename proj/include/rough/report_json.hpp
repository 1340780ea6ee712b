#pragma once

#include <json.hpp>

#include "rough/rie.hpp"

namespace rough {

using json = nlohmann::ordered_json;

inline json to_json(const RieReport& r) {
    json j;
    j["p"] = r.p;
    j["sup_errors"] = r.sup_errors;
    j["cauchy_errors"] = r.cauchy_errors;
    j["area_p2var"] = r.area_p2var;
    j["ratio"] = r.ratio;
    j["defect"] = r.defect;
    j["control_total"] = r.control_total;
    j["n_star"] = r.n_star;
    json flags;
    for (const auto& [k, v] : r.verdict_flags) flags[k] = v;
    j["verdict_flags"] = flags;
    return j;
}

inline json to_json(const GeneratorConfig& g) {
    json j;
    j["model"] = model_name(g.model);
    j["horizon"] = g.horizon;
    j["n_steps"] = g.n_steps;
    j["seed"] = g.seed;
    j["dim"] = g.dim;
    j["s0"] = g.s0;
    j["sigma"] = g.sigma;
    j["eta"] = g.eta;
    j["nu"] = g.nu;
    j["mu_drift"] = g.mu_drift;
    j["hurst"] = g.hurst;
    j["jump_intensity"] = g.jump_intensity;
    j["jump_mean"] = g.jump_mean;
    j["jump_std"] = g.jump_std;
    return j;
}

inline json to_json(const ExperimentConfig& c) {
    json j;
    j["generator"] = to_json(c.gen);
    j["p"] = c.p;
    j["q"] = c.q;
    j["r"] = c.r;
    j["q0"] = c.q0;
    j["epsilon"] = c.epsilon;
    j["n_max"] = c.n_max;
    j["base"] = c.base;
    j["n_seeds"] = c.n_seeds;
    j["seed0"] = c.seed0;
    j["tol"] = c.tol;
    return j;
}

inline json to_json(const SemimartingaleReport& r) {
    json j;
    j["config"] = to_json(r.config);
    j["fraction_cauchy_monotone"] = r.fraction_cauchy_monotone;
    j["fraction_tail_smaller"] = r.fraction_tail_smaller;
    j["max_sup_error_ratio"] = r.max_sup_error_ratio;
    j["max_area_bound_ratio"] = r.max_area_bound_ratio;
    json seeds = json::array();
    for (const auto& sr : r.per_seed) {
        json e;
        e["seed"] = sr.seed;
        e["rie"] = to_json(sr.rie);
        seeds.push_back(e);
    }
    j["per_seed"] = seeds;
    return j;
}

inline json to_json(const YoungBlockReport& b) {
    json j;
    j["xx_p2var"] = b.xx_p2var;
    j["yy_p2var"] = b.yy_p2var;
    j["xy_p2var"] = b.xy_p2var;
    j["yx_p2var"] = b.yx_p2var;
    j["young_ratio"] = b.young_ratio;
    return j;
}

inline json to_json(const YoungReport& r) {
    json j;
    j["config"] = to_json(r.config);
    j["fraction_tail_smaller"] = r.fraction_tail_smaller;
    j["max_sup_error_ratio"] = r.max_sup_error_ratio;
    j["max_area_bound_ratio"] = r.max_area_bound_ratio;
    json seeds = json::array();
    for (size_t i = 0; i < r.per_seed.size(); ++i) {
        json e;
        e["seed"] = r.per_seed[i].seed;
        e["rie"] = to_json(r.per_seed[i].rie);
        e["blocks"] = to_json(r.blocks[i]);
        seeds.push_back(e);
    }
    j["per_seed"] = seeds;
    return j;
}

inline json to_json(const ItoConsistencyReport& r) {
    json j;
    j["config"] = to_json(r.config);
    j["max_identity_defect"] = r.max_identity_defect;
    j["mean_vt"] = r.mean_vt;
    j["stderr_vt"] = r.stderr_vt;
    j["variance_vt"] = r.variance_vt;
    j["variance_target"] = r.variance_target;
    j["terminal_values"] = r.terminal_values;
    return j;
}

} // namespace rough
