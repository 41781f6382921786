#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "giantwalk/claims.hpp"
#include "giantwalk/cover.hpp"
#include "giantwalk/gff.hpp"
#include "giantwalk/graph.hpp"
#include "giantwalk/gw.hpp"
#include "giantwalk/harness.hpp"
#include "giantwalk/model.hpp"
#include "giantwalk/resistance.hpp"
#include "giantwalk/rng.hpp"
#include "giantwalk/skeleton.hpp"

namespace gw = giantwalk;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out;
};

struct GraphSource {
    std::string graph_file;
    std::string prov_file;
    std::size_t n = 0;
    double eps = 0.0;
};

// Either load graph(+provenance) from disk or sample a fresh H.
gw::GiantSample resolve_sample(const GraphSource& src, std::uint64_t seed) {
    if (!src.graph_file.empty()) {
        std::ifstream gin(src.graph_file);
        if (!gin) throw gw::ConfigInvalid("cannot open " + src.graph_file);
        gw::Graph g = gw::read_graph(gin);
        if (src.prov_file.empty()) {
            gw::GiantSample gs;
            gs.graph = std::move(g);
            return gs;
        }
        std::ifstream pin(src.prov_file);
        if (!pin) throw gw::ConfigInvalid("cannot open " + src.prov_file);
        return gw::read_provenance(std::move(g), pin);
    }
    if (src.n == 0 || src.eps <= 0.0)
        throw gw::ConfigInvalid("need either --graph or both --n and --eps");
    return gw::sample_giant(gw::ModelParams(src.n, src.eps), seed);
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    if (auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
    file.open(path);
    if (!file) throw gw::ConfigInvalid("cannot open output " + path);
    return file;
}

void add_source_opts(CLI::App* cmd, GraphSource& src) {
    cmd->add_option("--graph", src.graph_file, "graph file to load");
    cmd->add_option("--prov", src.prov_file, "provenance sidecar");
    cmd->add_option("--n", src.n, "model size (sampling mode)");
    cmd->add_option("--eps", src.eps, "criticality parameter (sampling mode)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"near-critical giant sampling and verification toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--seed", common.seed, "master seed")->capture_default_str();
    app.add_option("--threads", common.threads, "solver threads")->capture_default_str();
    app.add_option("--out", common.out, "output file or directory");

    // gen
    auto* gen = app.add_subcommand("gen", "sample H and write graph/provenance/summary");
    std::size_t gen_n = 1000000;
    double gen_eps = 0.1;
    gen->add_option("--n", gen_n)->capture_default_str();
    gen->add_option("--eps", gen_eps)->capture_default_str();

    // gw
    auto* gwc = app.add_subcommand("gw", "branching-process survival curve and tree stats");
    double gw_mu = -1.0, gw_eps = -1.0;
    std::size_t gw_kmax = 64, gw_samples = 0;
    gwc->add_option("--mu", gw_mu, "offspring mean (direct)");
    gwc->add_option("--eps", gw_eps, "derive mu from eps");
    gwc->add_option("--kmax", gw_kmax)->capture_default_str();
    gwc->add_option("--samples", gw_samples, "also sample this many trees");

    // resist
    auto* resist = app.add_subcommand("resist", "effective resistance report");
    GraphSource resist_src;
    add_source_opts(resist, resist_src);
    std::size_t resist_pairs = 64;
    resist->add_option("--pairs", resist_pairs)->capture_default_str();

    // gff
    auto* gff = app.add_subcommand("gff", "pinned free field: sample maxima and M estimate");
    GraphSource gff_src;
    add_source_opts(gff, gff_src);
    std::size_t gff_replicas = 400;
    gw::VertexId gff_pin = 0;
    gff->add_option("--replicas", gff_replicas)->capture_default_str();
    gff->add_option("--pin", gff_pin)->capture_default_str();

    // cover
    auto* cover = app.add_subcommand("cover", "random-walk cover times and predictors");
    GraphSource cover_src;
    add_source_opts(cover, cover_src);
    std::size_t cover_replicas = 10;
    std::vector<gw::VertexId> cover_starts;
    cover->add_option("--replicas", cover_replicas)->capture_default_str();
    cover->add_option("--start", cover_starts, "start vertices (repeatable)");

    // skeleton
    auto* skel = app.add_subcommand("skeleton", "chaining hierarchy checks");
    GraphSource skel_src;
    add_source_opts(skel, skel_src);

    // verify
    auto* verify = app.add_subcommand("verify", "run the full claims battery");

    // report
    auto* report = app.add_subcommand("report", "run a config-driven experiment grid");
    std::string report_config;
    report->add_option("--config", report_config, "key=value config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            gw::ModelParams params(gen_n, gen_eps);
            gw::GiantSample gs = gw::sample_giant(params, common.seed);
            fs::path dir = common.out.empty() ? fs::path(".") : fs::path(common.out);
            fs::create_directories(dir);
            {
                std::ofstream gout(dir / "graph.txt");
                gw::write_graph(gout, gs.graph);
                std::ofstream pout(dir / "prov.txt");
                gw::write_provenance(pout, gs);
            }
            gw::ApohReport ar = gw::apoh_report(gs);
            nlohmann::json j = {{"version", gw::kVersion},
                                {"n", params.n},
                                {"eps", params.eps},
                                {"mu", params.mu},
                                {"N", params.N},
                                {"seed", common.seed},
                                {"vertices", gs.graph.vertex_count()},
                                {"edges", gs.graph.edge_count()},
                                {"k1", gs.k1_count},
                                {"k2", gs.k2_count},
                                {"v_k1_ratio", ar.v_k1_ratio},
                                {"e_k1_ratio", ar.e_k1_ratio},
                                {"v_k2_ratio", ar.v_k2_ratio},
                                {"e_k2_ratio", ar.e_k2_ratio},
                                {"v_h_ratio", ar.v_h_ratio},
                                {"e_h_ratio", ar.e_h_ratio},
                                {"max_tree_depth", ar.max_tree_depth}};
            std::ofstream aout(dir / "apoh.json");
            aout << j.dump(2) << "\n";
            std::cout << j.dump(2) << "\n";
        } else if (gwc->parsed()) {
            double mu = gw_mu;
            if (mu < 0.0 && gw_eps > 0.0) mu = gw::solve_mu(gw_eps);
            if (mu < 0.0) throw gw::ConfigInvalid("need --mu or --eps");
            gw::SurvivalCurve curve = gw::survival_prob_exact(mu, gw_kmax);
            std::ofstream file;
            std::ostream& os = open_out(file, common.out);
            os << "k,survival,bound_10_over_k\n";
            os.precision(12);
            for (std::size_t k = 0; k < curve.p.size(); ++k)
                os << k << "," << curve.p[k] << ","
                   << (k > 0 ? 10.0 / static_cast<double>(k) : 1.0) << "\n";
            if (gw_samples > 0) {
                gw::Rng rng = gw::make_rng(common.seed, "gw-trees");
                std::uint64_t total = 0, max_depth = 0;
                for (std::size_t i = 0; i < gw_samples; ++i) {
                    gw::GwTree t = gw::sample_pgw_tree(mu, 1u << 20, rng);
                    total += t.size();
                    max_depth = std::max<std::uint64_t>(max_depth, t.depth_max);
                }
                std::cerr << "trees=" << gw_samples << " mean_size="
                          << static_cast<double>(total) / static_cast<double>(gw_samples)
                          << " expected=" << 1.0 / (1.0 - mu) << " max_depth=" << max_depth
                          << "\n";
            }
        } else if (resist->parsed()) {
            gw::GiantSample gs = resolve_sample(resist_src, common.seed);
            gw::Rng rng = gw::make_rng(common.seed, "resist-pairs");
            std::uniform_int_distribution<gw::VertexId> vd(
                0, static_cast<gw::VertexId>(gs.graph.vertex_count() - 1));
            std::vector<std::pair<gw::VertexId, gw::VertexId>> pairs;
            while (pairs.size() < resist_pairs) {
                gw::VertexId v = vd(rng), w = vd(rng);
                if (v != w) pairs.emplace_back(v, w);
            }
            auto rows = gw::resistance_report(gs.graph, pairs);
            std::ofstream file;
            std::ostream& os = open_out(file, common.out);
            os << "v,w,dist,reff,residual,direct\n";
            os.precision(12);
            for (const auto& r : rows)
                os << r.v << "," << r.w << "," << r.dist << "," << r.reff << "," << r.residual
                   << "," << (r.direct ? 1 : 0) << "\n";
        } else if (gff->parsed()) {
            gw::GiantSample gs = resolve_sample(gff_src, common.seed);
            gw::Rng rng = gw::make_rng(common.seed, "gff-replicas");
            gw::MEstimate me = gw::estimate_M(gs.graph, gff_pin, gff_replicas, rng);
            nlohmann::json j = {{"version", gw::kVersion},
                                {"seed", common.seed},
                                {"pin", gff_pin},
                                {"replicas", me.replicas},
                                {"mean_max", me.mean_max},
                                {"se", me.se},
                                {"sigma2", me.sigma2},
                                {"sigma2_diam_bound", me.sigma2_diam_bound},
                                {"radius", me.radius},
                                {"union_bound",
                                 gw::union_bound_max(std::sqrt(me.sigma2),
                                                     gs.graph.vertex_count())}};
            std::ofstream file;
            std::ostream& os = open_out(file, common.out);
            os << j.dump(2) << "\n";
        } else if (cover->parsed()) {
            gw::GiantSample gs = resolve_sample(cover_src, common.seed);
            gw::Rng rng = gw::make_rng(common.seed, "cover-walks");
            if (cover_starts.empty()) cover_starts.push_back(0);
            std::ofstream file;
            std::ostream& os = open_out(file, common.out);
            os << "start,replica,steps\n";
            double tau = 0.0;
            for (gw::VertexId start : cover_starts) {
                gw::CoverStats cs = gw::simulate_cover(gs.graph, start, cover_replicas, rng);
                for (std::size_t r = 0; r < cs.steps.size(); ++r)
                    os << start << "," << r << "," << cs.steps[r] << "\n";
                tau = std::max(tau, cs.mean);
            }
            std::cerr << "tau_cov=" << tau << "\n";
        } else if (skel->parsed()) {
            gw::GiantSample gs = resolve_sample(skel_src, common.seed);
            gw::SkeletonHierarchy h = gw::build_hierarchy(gs);
            gw::PropertyReport pr = gw::verify_properties(h);
            gw::BudgetReport br = gw::verify_budgets(h);
            gw::DyadicPairs dp = gw::dyadic_k2_pairs(gs);
            gw::BoundEvaluation be = gw::bound_evaluators(gs.params);
            nlohmann::json j = {{"version", gw::kVersion},
                                {"kappa", h.kappa},
                                {"l0", h.l0},
                                {"properties_ok", pr.all_ok()},
                                {"property_violations", pr.violations},
                                {"vertices_checked", br.vertices_checked},
                                {"budget_violations", br.budget_violations},
                                {"alpha_mismatches", br.alpha_mismatches},
                                {"u_sizes", br.u_sizes},
                                {"j_sizes", br.j_sizes},
                                {"w_sizes", h.w_sizes},
                                {"u_decay_slope", br.u_decay_slope},
                                {"u_decay_target", br.u_decay_target},
                                {"dyadic_bound_violations", dp.bound_violations},
                                {"i0_edges_ok", dp.i0_edges_ok},
                                {"walk_reuse_violations", dp.walk_reuse_violations},
                                {"delta", be.delta},
                                {"t_delta", be.t_delta},
                                {"chain_sum", be.chain_sum},
                                {"lower_bound", be.lower_bound_value}};
            std::ofstream file;
            std::ostream& os = open_out(file, common.out);
            os << j.dump(2) << "\n";
            if (!pr.all_ok() || br.budget_violations || br.alpha_mismatches ||
                dp.bound_violations || !dp.i0_edges_ok || dp.walk_reuse_violations)
                return 1;
        } else if (verify->parsed()) {
            return gw::verify_suite(common.seed, common.out, std::cout);
        } else if (report->parsed()) {
            gw::ExperimentConfig cfg = gw::load_config(report_config);
            if (!common.out.empty()) cfg.out = common.out;
            return gw::run_experiment(cfg, std::cout);
        }
    } catch (const gw::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
