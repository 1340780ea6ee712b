#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rough/report_json.hpp"
#include "rough/rough.hpp"

namespace rough_cli {

using rough::json;

struct GeneratorFlags {
    std::string model = "brownian";
    size_t steps = 1024;
    double horizon = 1.0;
    size_t dim = 1;
    double s0 = 1.0;
    double sigma = 1.0;
    double eta = 0.5;
    double nu = 0.0;
    double mu_drift = 0.0;
    double hurst = 0.75;
    double jump_intensity = 0.0;
    double jump_mean = 0.0;
    double jump_std = 0.1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "brownian|gbm|merton|mixed_bs|deterministic");
        cmd->add_option("--steps", steps, "grid steps");
        cmd->add_option("--horizon", horizon, "time horizon T");
        cmd->add_option("--dim", dim, "path dimension");
        cmd->add_option("--s0", s0, "initial price");
        cmd->add_option("--sigma", sigma, "diffusive volatility");
        cmd->add_option("--eta", eta, "fractional volatility");
        cmd->add_option("--nu", nu, "linear drift");
        cmd->add_option("--mu-drift", mu_drift, "t^{2H} drift coefficient");
        cmd->add_option("--hurst", hurst, "Hurst index");
        cmd->add_option("--jump-intensity", jump_intensity, "Poisson jump rate");
        cmd->add_option("--jump-mean", jump_mean, "jump size mean");
        cmd->add_option("--jump-std", jump_std, "jump size std");
    }

    void apply_config(const std::map<std::string, std::string>& kv) {
        auto get = [&](const char* key, auto& slot) {
            auto it = kv.find(key);
            if (it == kv.end()) return;
            std::istringstream ss(it->second);
            ss >> slot;
        };
        get("model", model);
        get("steps", steps);
        get("horizon", horizon);
        get("dim", dim);
        get("s0", s0);
        get("sigma", sigma);
        get("eta", eta);
        get("nu", nu);
        get("mu_drift", mu_drift);
        get("hurst", hurst);
        get("jump_intensity", jump_intensity);
        get("jump_mean", jump_mean);
        get("jump_std", jump_std);
    }

    rough::GeneratorConfig to_config(uint64_t seed) const {
        rough::GeneratorConfig cfg;
        cfg.model = rough::parse_model(model);
        cfg.n_steps = steps;
        cfg.horizon = horizon;
        cfg.dim = dim;
        cfg.seed = seed;
        cfg.s0 = s0;
        cfg.sigma = sigma;
        cfg.eta = eta;
        cfg.nu = nu;
        cfg.mu_drift = mu_drift;
        cfg.hurst = hurst;
        cfg.jump_intensity = jump_intensity;
        cfg.jump_mean = jump_mean;
        cfg.jump_std = jump_std;
        return cfg;
    }
};

inline std::string integral_csv(const rough::IntegralPath& ip) {
    std::ostringstream out;
    out << "t";
    for (size_t c = 1; c <= ip.width; ++c) out << ",v" << c;
    out << "\n";
    for (size_t k = 0; k < ip.times.size(); ++k) {
        out << rough::format_double(ip.times[k]);
        for (size_t c = 0; c < ip.width; ++c) out << "," << rough::format_double(ip.at(k, c));
        out << "\n";
    }
    return out.str();
}

inline std::string qv_csv(const rough::QuadraticVariation& qv) {
    std::ostringstream out;
    out << "t";
    for (size_t i = 1; i <= qv.dim; ++i)
        for (size_t j = 1; j <= qv.dim; ++j) out << ",q" << i << j;
    out << "\n";
    for (size_t k = 0; k < qv.times.size(); ++k) {
        out << rough::format_double(qv.times[k]);
        for (size_t i = 0; i < qv.dim; ++i)
            for (size_t j = 0; j < qv.dim; ++j)
                out << "," << rough::format_double(qv.at(k, i, j));
        out << "\n";
    }
    return out.str();
}

inline int dispatch(int argc, const char* const* argv) {
    CLI::App app{"pathwise rough integration toolkit"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::string out_file;
    std::string config_file;
    app.add_option("--seed", seed, "random seed")->configurable(false);
    app.add_option("--out", out_file, "output file");
    app.add_option("--config", config_file, "key=value config file");

    // generate ------------------------------------------------------------
    auto* cmd_generate = app.add_subcommand("generate", "sample a model path to CSV");
    GeneratorFlags gen_flags;
    gen_flags.attach(cmd_generate);

    // partitions ----------------------------------------------------------
    auto* cmd_partitions = app.add_subcommand("partitions", "oscillation partition levels");
    std::string path_file;
    size_t n_max = 8;
    double base = 1.0;
    cmd_partitions->add_option("--path", path_file, "input path CSV")->required();
    cmd_partitions->add_option("--n-max", n_max, "number of levels");
    cmd_partitions->add_option("--base", base, "threshold base");

    // variation -----------------------------------------------------------
    auto* cmd_variation = app.add_subcommand("variation", "p-variation over an interval");
    std::string var_path;
    double var_p = 2.5;
    double var_from = 0.0;
    std::optional<double> var_to;
    std::string var_table;
    cmd_variation->add_option("--path", var_path, "input path CSV")->required();
    cmd_variation->add_option("--p", var_p, "variation exponent");
    cmd_variation->add_option("--from", var_from, "interval start (grid time)");
    cmd_variation->add_option("--to", var_to, "interval end (grid time, default T)");
    cmd_variation->add_option("--table", var_table, "dump control table CSV here");

    // area ----------------------------------------------------------------
    auto* cmd_area = app.add_subcommand("area", "level-2 area matrices");
    std::string area_path, pairs_file;
    size_t area_level = 1, area_nmax = 8;
    double area_base = 1.0;
    cmd_area->add_option("--path", area_path, "input path CSV")->required();
    cmd_area->add_option("--level", area_level, "partition level");
    cmd_area->add_option("--n-max", area_nmax, "levels to construct");
    cmd_area->add_option("--base", area_base, "threshold base");
    cmd_area->add_option("--pairs", pairs_file, "file of 's t' time pairs");

    // integrate -----------------------------------------------------------
    auto* cmd_integrate = app.add_subcommand("integrate", "pathwise integrals");
    std::string int_path, int_method = "left", int_gen = "linear", int_json;
    size_t int_level = 1, int_nmax = 6;
    double int_base = 1.0, int_tol = 1e-9, int_p = 2.5, int_q = 1.5;
    cmd_integrate->add_option("--path", int_path, "integrator path CSV")->required();
    cmd_integrate->add_option("--method", int_method, "left|compensated|young");
    cmd_integrate->add_option("--level", int_level, "partition level");
    cmd_integrate->add_option("--n-max", int_nmax, "levels to construct");
    cmd_integrate->add_option("--base", int_base, "threshold base");
    cmd_integrate->add_option("--gen", int_gen, "integrand field (registry name)");
    cmd_integrate->add_option("--tol", int_tol, "refinement tolerance");
    cmd_integrate->add_option("--p", int_p, "integrand variation exponent (young)");
    cmd_integrate->add_option("--q", int_q, "integrator variation exponent (young)");
    cmd_integrate->add_option("--json", int_json, "write JSON summary here");

    // qv --------------------------------------------------------------------
    auto* cmd_qv = app.add_subcommand("qv", "discrete quadratic variation");
    std::string qv_path, qv_level = "full";
    size_t qv_nmax = 8;
    double qv_base = 1.0;
    cmd_qv->add_option("--path", qv_path, "input path CSV")->required();
    cmd_qv->add_option("--level", qv_level, "partition level or 'full'");
    cmd_qv->add_option("--n-max", qv_nmax, "levels to construct");
    cmd_qv->add_option("--base", qv_base, "threshold base");

    // strategy --------------------------------------------------------------
    auto* cmd_strategy = app.add_subcommand("strategy", "functionally generated strategy");
    std::string st_path, st_gen = "softmax", st_aux, st_csv;
    size_t st_level = 6, st_nmax = 6;
    double st_base = 1.0, st_scale = 1.0;
    cmd_strategy->add_option("--path", st_path, "price path CSV")->required();
    cmd_strategy->add_option("--gen", st_gen, "const|linear|quadratic|entropy|softmax");
    cmd_strategy->add_option("--scale", st_scale, "field scale");
    cmd_strategy->add_option("--aux", st_aux, "comma list: time,running_max0,running_integral0");
    cmd_strategy->add_option("--level", st_level, "capital partition level");
    cmd_strategy->add_option("--n-max", st_nmax, "levels to construct");
    cmd_strategy->add_option("--base", st_base, "threshold base");
    cmd_strategy->add_option("--csv", st_csv, "write capital curve CSV here");

    // cover -------------------------------------------------------------------
    auto* cmd_cover = app.add_subcommand("cover", "universal portfolio over atoms");
    std::string cv_path, cv_atoms, cv_csv;
    size_t cv_level = 6, cv_nmax = 6;
    double cv_base = 1.0;
    cmd_cover->add_option("--path", cv_path, "price path CSV")->required();
    cmd_cover->add_option("--atoms", cv_atoms, "file: lines 'name weight [scale]'")->required();
    cmd_cover->add_option("--level", cv_level, "capital partition level");
    cmd_cover->add_option("--n-max", cv_nmax, "levels to construct");
    cmd_cover->add_option("--base", cv_base, "threshold base");
    cmd_cover->add_option("--csv", cv_csv, "write capital curve CSV here");

    // spt ------------------------------------------------------------------
    auto* cmd_spt = app.add_subcommand("spt", "market-weight generated strategies");
    std::string spt_path, spt_gen = "entropy", spt_csv;
    double spt_c = 1.0, spt_base = 1.0;
    size_t spt_level = 6, spt_nmax = 6;
    cmd_spt->add_option("--path", spt_path, "price path CSV (positive components)")->required();
    cmd_spt->add_option("--generator", spt_gen, "entropy|quadratic|linear");
    cmd_spt->add_option("--c", spt_c, "quadratic offset c");
    cmd_spt->add_option("--level", spt_level, "partition level");
    cmd_spt->add_option("--n-max", spt_nmax, "levels to construct");
    cmd_spt->add_option("--base", spt_base, "threshold base");
    cmd_spt->add_option("--csv", spt_csv, "write Gamma curve CSV here");

    // rie-check ---------------------------------------------------------------
    auto* cmd_rie = app.add_subcommand("rie-check", "single-path RIE evidence report");
    GeneratorFlags rie_flags;
    rie_flags.attach(cmd_rie);
    size_t rie_nmax = 8;
    double rie_base = 1.0, rie_p = 2.5;
    cmd_rie->add_option("--n-max", rie_nmax, "levels");
    cmd_rie->add_option("--base", rie_base, "threshold base");
    cmd_rie->add_option("--p", rie_p, "variation exponent");

    // young-check ---------------------------------------------------------------
    auto* cmd_young = app.add_subcommand("young-check", "mixed-model RIE evidence report");
    GeneratorFlags young_flags;
    young_flags.model = "mixed_bs";
    young_flags.attach(cmd_young);
    size_t young_nmax = 8;
    double young_base = 1.0, young_p = 2.5;
    cmd_young->add_option("--n-max", young_nmax, "levels");
    cmd_young->add_option("--base", young_base, "threshold base");
    cmd_young->add_option("--p", young_p, "variation exponent");

    // ito-consistency -----------------------------------------------------------
    auto* cmd_ito = app.add_subcommand("ito-consistency", "pathwise vs closed-form Ito values");
    size_t ito_seeds = 400, ito_steps = 4096, ito_nmax = 6;
    double ito_base = 1.0, ito_horizon = 1.0;
    cmd_ito->add_option("--seeds", ito_seeds, "number of seeds");
    cmd_ito->add_option("--steps", ito_steps, "grid steps");
    cmd_ito->add_option("--n-max", ito_nmax, "levels");
    cmd_ito->add_option("--base", ito_base, "threshold base");
    cmd_ito->add_option("--horizon", ito_horizon, "time horizon");

    // report ----------------------------------------------------------------
    auto* cmd_report = app.add_subcommand("report", "batch experiment from a config file");
    std::string report_csv;
    size_t report_seeds = 20;
    GeneratorFlags report_flags;
    report_flags.attach(cmd_report);
    size_t report_nmax = 8;
    double report_base = 1.0, report_p = 2.5;
    cmd_report->add_option("--n-max", report_nmax, "levels");
    cmd_report->add_option("--base", report_base, "threshold base");
    cmd_report->add_option("--p", report_p, "variation exponent");
    cmd_report->add_option("--seeds", report_seeds, "number of seeds");
    cmd_report->add_option("--csv", report_csv, "per-seed summary CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::map<std::string, std::string> kv;
        if (!config_file.empty()) kv = rough::read_key_values(config_file);
        auto need_out = [&]() -> const std::string& {
            if (out_file.empty()) throw rough::config_error("--out is required");
            return out_file;
        };

        if (*cmd_generate) {
            gen_flags.apply_config(kv);
            const rough::CadlagPath path = rough::generate(gen_flags.to_config(seed));
            rough::write_path_csv(need_out(), path);
            std::cout << "wrote " << out_file << " (" << path.size() << " samples, dim "
                      << path.dim() << ")\n";
        } else if (*cmd_partitions) {
            const auto path = rough::read_path_csv(path_file);
            const auto seq = rough::lebesgue_sequence(path, n_max, base);
            std::ostringstream os;
            for (const auto& level : seq.levels) {
                for (size_t k = 0; k < level.idx.size(); ++k)
                    os << (k ? " " : "") << level.idx[k];
                os << "\n";
            }
            rough::write_text_atomic(need_out(), os.str());
            std::cout << "n_star=" << seq.n_star << "\n";
        } else if (*cmd_variation) {
            const auto path = rough::read_path_csv(var_path);
            const double to = var_to.value_or(path.horizon());
            const double value = rough::p_variation(path, var_p, var_from, to);
            std::cout << "p_variation=" << rough::format_double(value) << "\n";
            if (!var_table.empty()) {
                const auto table = rough::variation_control(path, var_p);
                std::ostringstream os;
                os << "s\\t";
                for (double t : table.times) os << "," << rough::format_double(t);
                os << "\n";
                for (size_t a = 0; a < table.points(); ++a) {
                    os << rough::format_double(table.times[a]);
                    for (size_t b = 0; b < table.points(); ++b)
                        os << "," << rough::format_double(a < b ? table(a, b) : 0.0);
                    os << "\n";
                }
                rough::write_text_atomic(var_table, os.str());
            }
            if (!out_file.empty())
                rough::write_text_atomic(out_file,
                                         "p,from,to,value\n" + rough::format_double(var_p) + "," +
                                             rough::format_double(var_from) + "," +
                                             rough::format_double(to) + "," +
                                             rough::format_double(value) + "\n");
        } else if (*cmd_area) {
            const auto path = rough::read_path_csv(area_path);
            const auto seq = rough::lebesgue_sequence(path, area_nmax, area_base);
            const rough::AreaProcess area(path, seq.level(area_level));
            std::vector<std::pair<size_t, size_t>> pairs;
            if (!pairs_file.empty()) {
                std::istringstream in(rough::read_text(pairs_file));
                double s, t;
                while (in >> s >> t) {
                    pairs.emplace_back(path.index_at(s), path.index_at(t));
                }
            } else {
                const auto& lv = seq.level(area_level).idx;
                for (size_t k = 0; k + 1 < lv.size(); ++k) pairs.emplace_back(lv[k], lv[k + 1]);
            }
            std::ostringstream os;
            os << "s,t";
            for (size_t i = 1; i <= path.dim(); ++i)
                for (size_t j = 1; j <= path.dim(); ++j) os << ",a" << i << j;
            os << "\n";
            rough::Mat buf;
            for (const auto& [i, j] : pairs) {
                area.eval(i, j, buf);
                os << rough::format_double(path.time(i)) << "," << rough::format_double(path.time(j));
                for (size_t a = 0; a < path.dim(); ++a)
                    for (size_t b = 0; b < path.dim(); ++b)
                        os << "," << rough::format_double(buf(a, b));
                os << "\n";
            }
            rough::write_text_atomic(need_out(), os.str());
        } else if (*cmd_integrate) {
            const auto path = rough::read_path_csv(int_path);
            const auto seq = rough::lebesgue_sequence(path, int_nmax, int_base);
            const rough::C2Function field = rough::make_field(int_gen, path.dim());
            const rough::ControlledPath ctrl = rough::controlled_from_function(field, path);
            rough::IntegralPath result;
            if (int_method == "left") {
                result = rough::left_point_integral(ctrl.f, path, seq, int_level);
            } else if (int_method == "compensated") {
                const auto lift = rough::RoughPathTriple::limit_lift(path, seq.finest());
                rough::ControlledPath ident =
                    rough::controlled_from_function(rough::make_field("linear", path.dim()), path);
                result = rough::compensated_rough_integral(ctrl, ident, lift,
                                                           seq.level(int_level), int_tol);
            } else if (int_method == "young") {
                result = rough::young_integral(ctrl.f, path, int_p, int_q);
            } else {
                throw rough::config_error("unknown method: " + int_method);
            }
            rough::write_text_atomic(need_out(), integral_csv(result));
            if (!int_json.empty()) {
                json j;
                j["method"] = rough::method_name(result.method);
                j["level"] = result.level;
                j["terminal"] = result.terminal();
                j["error_estimate"] = result.error_estimate;
                rough::write_text_atomic(int_json, j.dump(2) + "\n");
            }
            std::cout << "terminal=" << rough::format_double(result.terminal()) << "\n";
        } else if (*cmd_qv) {
            const auto path = rough::read_path_csv(qv_path);
            rough::QuadraticVariation qv;
            if (qv_level == "full") {
                qv = rough::discrete_qv(path, rough::Partition::full(path.times()), 0);
            } else {
                const auto seq = rough::lebesgue_sequence(path, qv_nmax, qv_base);
                qv = rough::discrete_qv(path, seq, std::stoul(qv_level));
            }
            rough::write_text_atomic(need_out(), qv_csv(qv));
        } else if (*cmd_strategy) {
            const auto path = rough::read_path_csv(st_path);
            const auto seq = rough::lebesgue_sequence(path, st_nmax, st_base);
            std::optional<rough::CadlagPath> aux;
            size_t in_dim = path.dim();
            if (!st_aux.empty()) {
                std::vector<rough::AuxSpec> kinds;
                std::istringstream ss(st_aux);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) kinds.push_back(rough::parse_aux_spec(item));
                aux = rough::augment_auxiliary(path, kinds);
                in_dim += aux->dim();
            }
            rough::C2Function field = rough::make_field(st_gen, path.dim(), st_scale);
            if (aux) {
                // registry fields act on the price block; pad to ignore aux inputs
                rough::C2Function padded = field;
                padded.in_dim = in_dim;
                const size_t d = path.dim();
                rough::C2Function inner = field;
                padded.value = [inner, d](const rough::Vec& x) {
                    return inner.value(rough::Vec(x.begin(), x.begin() + d));
                };
                padded.jacobian = [inner, d, in_dim](const rough::Vec& x) {
                    const rough::Mat j = inner.jacobian(rough::Vec(x.begin(), x.begin() + d));
                    rough::Mat out(d, in_dim);
                    for (size_t a = 0; a < d; ++a)
                        for (size_t b = 0; b < d; ++b) out(a, b) = j(a, b);
                    return out;
                };
                padded.hessian = [inner, d, in_dim](const rough::Vec& x) {
                    const auto h = inner.hessian(rough::Vec(x.begin(), x.begin() + d));
                    std::vector<rough::Mat> out(d, rough::Mat(in_dim, in_dim));
                    for (size_t r = 0; r < d; ++r)
                        for (size_t a = 0; a < d; ++a)
                            for (size_t b = 0; b < d; ++b) out[r](a, b) = h[r](a, b);
                    return out;
                };
                field = padded;
            }
            const rough::Strategy st = rough::functionally_generated(
                field, path, aux ? &*aux : nullptr, seq);
            const rough::CapitalResult cap = rough::capital_process(st, path, seq, st_level);
            json j;
            j["label"] = st.label;
            j["admissible"] = st.admissible;
            j["level"] = st_level;
            j["terminal"] = cap.left_point.terminal();
            j["compensated_terminal"] = cap.compensated_terminal;
            j["gap"] = cap.gap;
            rough::write_text_atomic(need_out(), j.dump(2) + "\n");
            if (!st_csv.empty()) rough::write_text_atomic(st_csv, integral_csv(cap.left_point));
        } else if (*cmd_cover) {
            const auto path = rough::read_path_csv(cv_path);
            const auto seq = rough::lebesgue_sequence(path, cv_nmax, cv_base);
            rough::MixingMeasure nu;
            {
                std::istringstream in(rough::read_text(cv_atoms));
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || line[0] == '#') continue;
                    std::istringstream row(line);
                    std::string name;
                    double weight = 0.0, scale = 1.0;
                    row >> name >> weight;
                    if (!(row >> scale)) scale = 1.0;
                    nu.atoms.push_back(rough::make_field(name, path.dim(), scale));
                    nu.weights.push_back(weight);
                }
            }
            const auto res = rough::cover_portfolio(nu, path, nullptr, seq, cv_level);
            json j;
            j["atoms"] = nu.atoms.size();
            j["terminal"] = res.capital.terminal();
            j["atom_terminals"] = res.atom_terminals;
            j["mixture_identity_gap"] = res.mixture_identity_gap;
            j["admissible"] = res.strategy.admissible;
            rough::write_text_atomic(need_out(), j.dump(2) + "\n");
            if (!cv_csv.empty()) rough::write_text_atomic(cv_csv, integral_csv(res.capital));
        } else if (*cmd_spt) {
            const auto path = rough::read_path_csv(spt_path);
            const auto mu = rough::market_weights(path);
            const auto seq = rough::lebesgue_sequence(mu, spt_nmax, spt_base);
            const rough::ScalarField g =
                rough::make_generating_function(spt_gen, mu.dim(), spt_c);
            const rough::GammaResult gamma = rough::gamma_path(g, mu, seq);
            const rough::GeneratedStrategies gs =
                rough::generated_strategies(g, mu, seq, spt_level);
            std::vector<double> theta_v(mu.size() * mu.dim());
            for (size_t k = 0; k < mu.size(); ++k) {
                const rough::Vec grad =
                    g.eval_gradient(rough::Vec(mu.at(k).begin(), mu.at(k).end()));
                for (size_t c = 0; c < mu.dim(); ++c) theta_v[k * mu.dim() + c] = grad[c];
            }
            const rough::CadlagPath theta(mu.times(), std::move(theta_v), mu.dim());
            const auto sf = rough::self_financing_from_theta(theta, mu, 0.0, seq, spt_level);
            json j;
            j["generator"] = spt_gen;
            j["c0"] = gs.c0;
            j["gamma_terminal"] = gamma.gamma.back();
            j["gamma_route_gap"] = gamma.route_gap;
            j["gamma_monotonicity_defect"] = gamma.monotonicity_defect;
            j["self_financing_defect"] = sf.defect;
            rough::write_text_atomic(need_out(), j.dump(2) + "\n");
            if (!spt_csv.empty()) {
                std::ostringstream os;
                os << "t,gamma,gamma_c3\n";
                for (size_t k = 0; k < mu.size(); ++k)
                    os << rough::format_double(mu.time(k)) << ","
                       << rough::format_double(gamma.gamma[k]) << ","
                       << rough::format_double(gamma.gamma_c3[k]) << "\n";
                rough::write_text_atomic(spt_csv, os.str());
            }
        } else if (*cmd_rie) {
            rie_flags.apply_config(kv);
            const auto path = rough::generate(rie_flags.to_config(seed));
            const auto seq = rough::lebesgue_sequence(path, rie_nmax, rie_base);
            const auto rep = rough::rie_report(path, seq, rie_p);
            json j;
            j["generator"] = rough::to_json(rie_flags.to_config(seed));
            j["n_max"] = rie_nmax;
            j["base"] = rie_base;
            j["rie"] = rough::to_json(rep);
            rough::write_text_atomic(need_out(), j.dump(2) + "\n");
        } else if (*cmd_young) {
            young_flags.apply_config(kv);
            rough::ExperimentConfig cfg;
            cfg.gen = young_flags.to_config(seed);
            cfg.gen.model = rough::Model::mixed_bs;
            cfg.p = young_p;
            cfg.q = young_p;
            cfg.r = 1.0 / (2.0 / young_p);
            cfg.n_max = young_nmax;
            cfg.base = young_base;
            cfg.n_seeds = 1;
            cfg.seed0 = seed;
            const auto rep = rough::young_semimartingale_experiment(cfg);
            rough::write_text_atomic(need_out(), rough::to_json(rep).dump(2) + "\n");
        } else if (*cmd_ito) {
            rough::ExperimentConfig cfg;
            cfg.gen.model = rough::Model::brownian;
            cfg.gen.n_steps = ito_steps;
            cfg.gen.horizon = ito_horizon;
            cfg.n_max = ito_nmax;
            cfg.base = ito_base;
            cfg.n_seeds = ito_seeds;
            cfg.seed0 = seed;
            const auto rep = rough::ito_consistency(cfg);
            rough::write_text_atomic(need_out(), rough::to_json(rep).dump(2) + "\n");
        } else if (*cmd_report) {
            report_flags.apply_config(kv);
            rough::ExperimentConfig cfg;
            cfg.gen = report_flags.to_config(seed);
            cfg.p = report_p;
            cfg.q = report_p;
            cfg.r = 1.0 / (2.0 / report_p);
            cfg.n_max = report_nmax;
            cfg.base = report_base;
            cfg.n_seeds = report_seeds;
            cfg.seed0 = seed;
            json j;
            std::vector<const rough::SeedReport*> seeds_view;
            if (cfg.gen.model == rough::Model::mixed_bs) {
                const auto rep = rough::young_semimartingale_experiment(cfg);
                j = rough::to_json(rep);
                rough::write_text_atomic(need_out(), j.dump(2) + "\n");
                if (!report_csv.empty()) {
                    std::ostringstream os;
                    os << "seed,last_cauchy,ratio,n_star\n";
                    for (const auto& sr : rep.per_seed)
                        os << sr.seed << ","
                           << rough::format_double(sr.rie.cauchy_errors.empty()
                                                       ? 0.0
                                                       : sr.rie.cauchy_errors.back())
                           << "," << rough::format_double(sr.rie.ratio) << "," << sr.rie.n_star
                           << "\n";
                    rough::write_text_atomic(report_csv, os.str());
                }
            } else {
                const auto rep = rough::semimartingale_experiment(cfg);
                j = rough::to_json(rep);
                rough::write_text_atomic(need_out(), j.dump(2) + "\n");
                if (!report_csv.empty()) {
                    std::ostringstream os;
                    os << "seed,last_cauchy,ratio,n_star\n";
                    for (const auto& sr : rep.per_seed)
                        os << sr.seed << ","
                           << rough::format_double(sr.rie.cauchy_errors.empty()
                                                       ? 0.0
                                                       : sr.rie.cauchy_errors.back())
                           << "," << rough::format_double(sr.rie.ratio) << "," << sr.rie.n_star
                           << "\n";
                    rough::write_text_atomic(report_csv, os.str());
                }
            }
        }
        return 0;
    } catch (const rough::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rough::contract_error& e) {
        std::cerr << "contract error: " << e.what() << "\n";
        return 2;
    } catch (const rough::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const rough::resolution_exceeded& e) {
        std::cerr << "resolution exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rough_cli
