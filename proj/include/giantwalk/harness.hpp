#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "giantwalk/claims.hpp"
#include "giantwalk/cover.hpp"
#include "giantwalk/gff.hpp"
#include "giantwalk/model.hpp"
#include "giantwalk/resistance.hpp"
#include "giantwalk/rng.hpp"
#include "giantwalk/skeleton.hpp"

namespace giantwalk {

inline constexpr const char* kVersion = "0.1.0";

// Flat key=value experiment config. Unknown keys are rejected so typos fail
// loudly instead of silently running defaults.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::size_t> n_list = {1000000};
    std::vector<double> eps_list = {0.1};
    std::size_t replicas = 1;       // model samples per grid point
    std::size_t gff_replicas = 400;
    std::size_t cover_replicas = 10;
    std::size_t resist_pairs = 64;
    double c1 = 0.25, c2 = 4.0, lambda = 10.0;
    std::string out = "out";
    std::vector<std::string> stages = {"gen", "resist", "gff", "cover", "skeleton"};
    std::map<std::string, std::string> raw; // as parsed, for the config hash

    std::uint64_t config_hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& [k, v] : raw) h = hash_combine(hash_combine(h, k), v);
        return h;
    }

    bool stage_enabled(const std::string& s) const {
        for (const auto& st : stages)
            if (st == s) return true;
        return false;
    }
};

namespace detail {

template <typename T>
inline std::vector<T> parse_list(const std::string& s) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::stringstream is(item);
        T v;
        if (!(is >> v)) throw ConfigInvalid("bad list item: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw ConfigInvalid("empty list: " + s);
    return out;
}

inline std::vector<std::string> parse_names(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.resize(hash_pos);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
        std::size_t start = line.find_first_not_of(' ');
        if (start == std::string::npos) continue;
        line = line.substr(start);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (cfg.raw.count(key))
            throw ConfigInvalid("duplicate key: " + key);
        cfg.raw[key] = val;
        try {
            if (key == "seed") {
                cfg.seed = std::stoull(val);
                cfg.seed_set = true;
            } else if (key == "n")
                cfg.n_list = detail::parse_list<std::size_t>(val);
            else if (key == "eps")
                cfg.eps_list = detail::parse_list<double>(val);
            else if (key == "replicas")
                cfg.replicas = std::stoull(val);
            else if (key == "gff_replicas")
                cfg.gff_replicas = std::stoull(val);
            else if (key == "cover_replicas")
                cfg.cover_replicas = std::stoull(val);
            else if (key == "resist_pairs")
                cfg.resist_pairs = std::stoull(val);
            else if (key == "c1")
                cfg.c1 = std::stod(val);
            else if (key == "c2")
                cfg.c2 = std::stod(val);
            else if (key == "lambda")
                cfg.lambda = std::stod(val);
            else if (key == "out")
                cfg.out = val;
            else if (key == "stages")
                cfg.stages = detail::parse_names(val);
            else
                throw ConfigInvalid("unknown key: " + key);
        } catch (const ConfigInvalid&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigInvalid("bad value for " + key + ": " + val);
        }
    }
    if (!cfg.seed_set) throw ConfigInvalid("seed is required");
    for (double e : cfg.eps_list)
        if (e <= 0.0 || e >= 1.0) throw ConfigInvalid("eps must lie in (0,1)");
    for (std::size_t n : cfg.n_list)
        if (n < 1000) throw ConfigInvalid("n must be >= 1000");
    for (const auto& s : cfg.stages)
        if (s != "gen" && s != "resist" && s != "gff" && s != "cover" && s != "skeleton")
            throw ConfigInvalid("unknown stage: " + s);
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config: " + path);
    return parse_config(in);
}

inline nlohmann::json run_header(const ExperimentConfig& cfg, const ModelParams& p,
                                 std::uint64_t sample_seed) {
    return {{"version", kVersion},
            {"n", p.n},
            {"eps", p.eps},
            {"mu", p.mu},
            {"N", p.N},
            {"seed", sample_seed},
            {"config_hash", cfg.config_hash()}};
}

// Runs the enabled stages over the (n, eps) grid. Output layout:
//   <out>/g<grid>/r<replica>/{graph.txt,prov.txt,apoh.json,resist.csv,gff.json,
//                            cover.csv,skeleton.json}
// Reruns with the same config are byte-identical.
inline int run_experiment(const ExperimentConfig& cfg, std::ostream& progress) {
    namespace fs = std::filesystem;
    std::size_t grid = 0;
    for (std::size_t n : cfg.n_list)
        for (double eps : cfg.eps_list) {
            ModelParams params(n, eps);
            for (std::size_t rep = 0; rep < cfg.replicas; ++rep) {
                std::uint64_t sample_seed =
                    hash_combine(hash_combine(hash_combine(cfg.seed, "sample"), grid), rep);
                fs::path dir = fs::path(cfg.out) / ("g" + std::to_string(grid)) /
                               ("r" + std::to_string(rep));
                fs::create_directories(dir);
                progress << "grid " << grid << " rep " << rep << ": n=" << n
                         << " eps=" << eps << "\n";
                GiantSample gs = sample_giant(params, sample_seed);
                if (cfg.stage_enabled("gen")) {
                    std::ofstream gout(dir / "graph.txt");
                    write_graph(gout, gs.graph);
                    std::ofstream pout(dir / "prov.txt");
                    write_provenance(pout, gs);
                    ApohReport ar = apoh_report(gs);
                    nlohmann::json j = run_header(cfg, params, sample_seed);
                    j["v_k1_ratio"] = ar.v_k1_ratio;
                    j["e_k1_ratio"] = ar.e_k1_ratio;
                    j["v_k2_ratio"] = ar.v_k2_ratio;
                    j["e_k2_ratio"] = ar.e_k2_ratio;
                    j["v_h_ratio"] = ar.v_h_ratio;
                    j["e_h_ratio"] = ar.e_h_ratio;
                    j["max_tree_depth"] = ar.max_tree_depth;
                    j["depth_cap_hits"] = gs.depth_cap_hits;
                    std::ofstream aout(dir / "apoh.json");
                    aout << j.dump(2) << "\n";
                }
                if (cfg.stage_enabled("resist")) {
                    Rng rng = make_rng(cfg.seed, "resist", grid, rep);
                    std::uniform_int_distribution<VertexId> vd(
                        0, static_cast<VertexId>(gs.graph.vertex_count() - 1));
                    std::vector<std::pair<VertexId, VertexId>> pairs;
                    for (std::size_t i = 0; i < cfg.resist_pairs; ++i) {
                        VertexId v = vd(rng), w = vd(rng);
                        if (v != w) pairs.emplace_back(v, w);
                    }
                    auto rows = resistance_report(gs.graph, pairs);
                    std::ofstream rout(dir / "resist.csv");
                    rout << "# version=" << kVersion << " seed=" << sample_seed
                         << " config_hash=" << cfg.config_hash() << "\n";
                    rout << "v,w,dist,reff,residual,direct\n";
                    rout.precision(12);
                    for (const auto& r : rows)
                        rout << r.v << "," << r.w << "," << r.dist << "," << r.reff << ","
                             << r.residual << "," << (r.direct ? 1 : 0) << "\n";
                }
                if (cfg.stage_enabled("gff")) {
                    Rng rng = make_rng(cfg.seed, "gff", grid, rep);
                    MEstimate me = estimate_M(gs.graph, 0, cfg.gff_replicas, rng);
                    nlohmann::json j = run_header(cfg, params, sample_seed);
                    j["replicas"] = me.replicas;
                    j["mean_max"] = me.mean_max;
                    j["se"] = me.se;
                    j["sigma2"] = me.sigma2;
                    j["sigma2_diam_bound"] = me.sigma2_diam_bound;
                    j["radius"] = me.radius;
                    j["union_bound"] =
                        union_bound_max(std::sqrt(me.sigma2), gs.graph.vertex_count());
                    j["m_ratio"] = me.mean_max * std::sqrt(2.0 * eps) / std::log(params.N);
                    std::ofstream gout(dir / "gff.json");
                    gout << j.dump(2) << "\n";
                }
                if (cfg.stage_enabled("cover")) {
                    Rng rng = make_rng(cfg.seed, "cover", grid, rep);
                    Rng gff_rng = make_rng(cfg.seed, "cover-m", grid, rep);
                    MEstimate me = estimate_M(gs.graph, 0, cfg.gff_replicas, gff_rng);
                    VertexId deepest = 0;
                    for (VertexId v = 0; v < gs.graph.vertex_count(); ++v)
                        if (gs.depth[v] > gs.depth[deepest]) deepest = v;
                    std::uniform_int_distribution<VertexId> vd(
                        0, static_cast<VertexId>(gs.graph.vertex_count() - 1));
                    std::vector<VertexId> panel = {0, deepest, vd(rng)};
                    std::ofstream cout_(dir / "cover.csv");
                    cout_ << "# version=" << kVersion << " seed=" << sample_seed
                          << " config_hash=" << cfg.config_hash() << "\n";
                    cout_ << "start,replica,steps\n";
                    double tau = 0.0, reff_probe = 0.0;
                    {
                        GroundedSolver solver(gs.graph, 0, 1e-7,
                                              gs.graph.vertex_count() + 1);
                        for (std::size_t i = 0; i < 8; ++i) {
                            VertexId v = vd(rng), w = vd(rng);
                            if (v == w) continue;
                            reff_probe =
                                std::max(reff_probe, effective_resistance(solver, v, w));
                        }
                    }
                    for (VertexId start : panel) {
                        CoverStats cs =
                            simulate_cover(gs.graph, start, cfg.cover_replicas, rng);
                        for (std::size_t r = 0; r < cs.steps.size(); ++r)
                            cout_ << start << "," << r << "," << cs.steps[r] << "\n";
                        tau = std::max(tau, cs.mean);
                    }
                    PredictorStack ps = predict_cover(
                        params.n, params.N, static_cast<double>(gs.graph.edge_count()),
                        me.mean_max, reff_probe, cfg.c1, cfg.c2, cfg.lambda);
                    nlohmann::json j = run_header(cfg, params, sample_seed);
                    j["tau_cov"] = tau;
                    j["headline"] = ps.headline;
                    j["em2"] = ps.em2;
                    j["dlp_band"] = {ps.dlp_lo, ps.dlp_hi};
                    j["zhai_band"] = {ps.zhai_lo, ps.zhai_hi};
                    j["feige_band"] = {ps.feige_lo, ps.feige_hi};
                    j["cover_ratio"] =
                        tau / (static_cast<double>(params.n) * std::log(params.N) *
                               std::log(params.N));
                    std::ofstream jout(dir / "cover.json");
                    jout << j.dump(2) << "\n";
                }
                if (cfg.stage_enabled("skeleton")) {
                    SkeletonHierarchy h = build_hierarchy(gs);
                    PropertyReport pr = verify_properties(h);
                    BudgetReport br = verify_budgets(h);
                    DyadicPairs dp = dyadic_k2_pairs(gs);
                    BoundEvaluation be = bound_evaluators(params);
                    nlohmann::json j = run_header(cfg, params, sample_seed);
                    j["kappa"] = h.kappa;
                    j["l0"] = h.l0;
                    j["property_violations"] = pr.violations;
                    j["budget_violations"] = br.budget_violations;
                    j["alpha_mismatches"] = br.alpha_mismatches;
                    j["u_sizes"] = br.u_sizes;
                    j["j_sizes"] = br.j_sizes;
                    j["w_sizes"] = h.w_sizes;
                    j["dyadic_violations"] = dp.bound_violations;
                    j["i0_edges_ok"] = dp.i0_edges_ok;
                    j["delta"] = be.delta;
                    j["t_delta"] = be.t_delta;
                    j["chain_sum"] = be.chain_sum;
                    j["lower_bound"] = be.lower_bound_value;
                    std::ofstream sout(dir / "skeleton.json");
                    sout << j.dump(2) << "\n";
                }
            }
            ++grid;
        }
    return 0;
}

// Runs the full claims battery and writes the ledger. Exit 0 iff nothing failed.
inline int verify_suite(std::uint64_t seed, const std::string& out_path,
                        std::ostream& progress) {
    ClaimsLedger ledger = run_claims(seed, &progress);
    nlohmann::json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["claims"] = nlohmann::json::array();
    for (const auto& r : ledger.records)
        j["claims"].push_back({{"id", r.id},
                               {"description", r.description},
                               {"measured", r.measured},
                               {"band", r.band},
                               {"verdict", verdict_name(r.verdict)}});
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    progress << (ledger.all_ok() ? "VERIFY OK" : "VERIFY FAILED") << "\n";
    return ledger.all_ok() ? 0 : 1;
}

} // namespace giantwalk
