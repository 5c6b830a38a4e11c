// Command-line front end: graph generation, separating-matrix construction,
// p-collider queries, recovery runs, and the tau-vs-degree experiment.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "causal/discovery.hpp"
#include "causal/experiment.hpp"
#include "causal/generators.hpp"
#include "causal/graph_io.hpp"
#include "causal/pcollider.hpp"
#include "causal/setsystem.hpp"

namespace {

std::vector<double> read_costs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw causal::ParseError("cannot open costs file: " + path);
    std::vector<double> costs;
    double c;
    while (in >> c) costs.push_back(c);
    if (costs.empty()) throw causal::ParseError("costs file is empty: " + path);
    return costs;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw causal::ParseError("cannot open output file: " + path);
    return file;
}

std::vector<int> parse_n_range(const std::string& text) {
    std::vector<int> ns;
    if (text.find(':') != std::string::npos) {
        int start, stop, step = 1;
        char sep;
        std::istringstream ss(text);
        ss >> start >> sep >> stop;
        if (ss.peek() == ':') ss >> sep >> step;
        if (!ss || step <= 0 || stop < start)
            throw causal::ParseError("bad --n-range, expected start:stop[:step]");
        for (int n = start; n <= stop; n += step) ns.push_back(n);
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
    }
    if (ns.empty()) throw causal::ParseError("empty --n-range");
    return ns;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intervention design and causal discovery with latent confounders"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    double multiplier = 1.0;
    double latent_fraction = 0.05;
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--constant-multiplier", multiplier,
                   "scale on the random-family size constants (success boosting)")
        ->capture_default_str();
    app.add_option("--latent-fraction", latent_fraction,
                   "fraction of node pairs receiving a latent")
        ->capture_default_str();

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a random causal graph");
    std::string gen_model = "er", gen_out;
    int gen_n = 0, gen_n1 = -1, gen_n2 = -1;
    double gen_c = 1.0, gen_gamma = 3.0;
    gen->add_option("--model", gen_model, "er | bipartite | powerlaw-tree")
        ->capture_default_str();
    gen->add_option("--n", gen_n, "number of observable nodes")->required();
    gen->add_option("--n1", gen_n1, "bipartite: size of the source partition");
    gen->add_option("--n2", gen_n2, "bipartite: size of the sink partition");
    gen->add_option("--c", gen_c, "edge probability constant (edges with prob c/n)")
        ->capture_default_str();
    gen->add_option("--gamma", gen_gamma, "power-law exponent")->capture_default_str();
    gen->add_option("--out,-o", gen_out, "output graph file (default stdout)");

    // ---- ssm ----
    auto* ssm = app.add_subcommand("ssm", "construct a strongly separating matrix");
    std::string ssm_algo = "two-approx", ssm_costs_file, ssm_out;
    int ssm_m = 0, ssm_n = 0;
    bool ssm_sets = false;
    ssm->add_option("--algo", ssm_algo, "two-approx | eps | binary | brute")
        ->capture_default_str();
    ssm->add_option("--m", ssm_m, "number of interventions (columns)");
    ssm->add_option("--n", ssm_n, "number of nodes (binary encoding, or unit costs)");
    ssm->add_option("--costs-file", ssm_costs_file, "one positive cost per line, node order");
    ssm->add_flag("--sets", ssm_sets, "also print the set-system view");
    ssm->add_option("--out,-o", ssm_out, "output file (default stdout)");

    // ---- pcolliders ----
    auto* pcol = app.add_subcommand("pcolliders", "list the p-colliders of a node pair");
    std::string pcol_file;
    int pcol_i = -1, pcol_j = -1;
    pcol->add_option("graph", pcol_file, "graph file")->required();
    pcol->add_option("--i", pcol_i, "first node")->required();
    pcol->add_option("--j", pcol_j, "second node")->required();

    // ---- recover ----
    auto* rec = app.add_subcommand("recover", "run the recovery pipeline against an oracle");
    std::string rec_file, rec_mode = "full", rec_out, rec_costs_file;
    std::string rec_model;
    int rec_n = 0, rec_n1 = -1, rec_n2 = -1;
    double rec_c = 1.0;
    int rec_tau = -1;
    rec->add_option("graph", rec_file, "ground-truth graph file");
    rec->add_option("--mode", rec_mode, "anc | full | full-auto")->capture_default_str();
    rec->add_option("--tau", rec_tau, "tau bound (full mode; defaults to the true tau)");
    rec->add_option("--model", rec_model, "generate the ground truth instead of reading it");
    rec->add_option("--n", rec_n, "nodes for --model");
    rec->add_option("--n1", rec_n1, "bipartite partition size");
    rec->add_option("--n2", rec_n2, "bipartite partition size");
    rec->add_option("--c", rec_c, "edge probability constant for --model");
    rec->add_option("--costs-file", rec_costs_file, "node costs for linear-cost accounting");
    rec->add_option("--out,-o", rec_out, "report output (default stdout)");

    // ---- experiment ----
    auto* exp = app.add_subcommand("experiment", "tau vs degree over random graph families");
    std::string exp_models = "bipartite", exp_range = "20:100:20", exp_out;
    int exp_repeats = 10;
    double exp_c = 5.0, exp_gamma = 3.0;
    bool exp_no_timing = false;
    exp->add_option("--models", exp_models, "comma list of er,bipartite,powerlaw_tree")
        ->capture_default_str();
    exp->add_option("--n-range", exp_range, "start:stop[:step] or comma list")
        ->capture_default_str();
    exp->add_option("--repeats", exp_repeats, "runs per configuration")->capture_default_str();
    exp->add_option("--c", exp_c, "edge probability constant")->capture_default_str();
    exp->add_option("--gamma", exp_gamma, "power-law exponent")->capture_default_str();
    exp->add_flag("--no-timing", exp_no_timing, "zero the runtime column (byte-stable output)");
    exp->add_option("--out,-o", exp_out, "CSV output (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            causal::GeneratorSpec spec;
            spec.model = causal::parse_model(gen_model);
            spec.n = gen_n;
            spec.n1 = gen_n1 >= 0 ? gen_n1 : gen_n / 2;
            spec.n2 = gen_n2 >= 0 ? gen_n2 : gen_n - gen_n / 2;
            spec.c = gen_c;
            spec.gamma = gen_gamma;
            spec.seed = seed;
            auto g = causal::inject_latents(causal::generate(spec), latent_fraction,
                                            causal::detail::mix_seed(seed, 0x1a7e27));
            std::ofstream file;
            causal::write_graph(open_output(file, gen_out), g);
        } else if (*ssm) {
            causal::CostVector costs;
            if (!ssm_costs_file.empty())
                costs = causal::CostVector(read_costs_file(ssm_costs_file));
            else if (ssm_n >= 2)
                costs = causal::CostVector::unit(ssm_n);
            else
                throw causal::ParseError("ssm: pass --costs-file or --n");
            const int n = costs.size();

            causal::SSMatrix u;
            if (ssm_algo == "binary") {
                u = causal::binary_encoding_matrix(n);
            } else if (ssm_algo == "two-approx") {
                if (ssm_m <= 0) throw causal::ParseError("ssm: --m required for two-approx");
                std::string warning;
                u = causal::two_approx_matrix(costs, ssm_m, &warning);
                if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
            } else if (ssm_algo == "eps") {
                if (ssm_m <= 0) throw causal::ParseError("ssm: --m required for eps");
                u = causal::eps_approx_matrix(costs, ssm_m);
            } else if (ssm_algo == "brute") {
                if (ssm_m <= 0) throw causal::ParseError("ssm: --m required for brute");
                auto [best, opt_cost] = causal::brute_force_optimum(costs, ssm_m);
                u = best;
                std::cerr << "optimum cost: " << opt_cost << "\n";
            } else {
                throw causal::ParseError("ssm: unknown --algo " + ssm_algo);
            }
            std::ofstream file;
            auto& out = open_output(file, ssm_out);
            causal::write_matrix(out, u);
            if (ssm_sets) causal::write_set_system(out, u);
            std::cerr << "cost: " << causal::cost(u, costs) << "\n";
        } else if (*pcol) {
            auto g = causal::read_graph_file(pcol_file);
            if (auto bad = causal::validate(g))
                throw causal::ParseError("invalid graph: " + *bad);
            auto ks = causal::p_colliders(g, pcol_i, pcol_j);
            for (std::size_t t = 0; t < ks.size(); ++t)
                std::cout << (t ? " " : "") << ks[t];
            std::cout << "\n";
        } else if (*rec) {
            causal::CausalGraph truth;
            if (!rec_model.empty()) {
                causal::GeneratorSpec spec;
                spec.model = causal::parse_model(rec_model);
                spec.n = rec_n;
                spec.n1 = rec_n1 >= 0 ? rec_n1 : rec_n / 2;
                spec.n2 = rec_n2 >= 0 ? rec_n2 : rec_n - rec_n / 2;
                spec.c = rec_c;
                spec.seed = seed;
                truth = causal::inject_latents(causal::generate(spec), latent_fraction,
                                               causal::detail::mix_seed(seed, 0x1a7e27));
            } else if (!rec_file.empty()) {
                truth = causal::read_graph_file(rec_file);
            } else {
                throw causal::ParseError("recover: pass a graph file or --model");
            }
            if (auto bad = causal::validate(truth))
                throw causal::ParseError("invalid graph: " + *bad);

            causal::RecoveryMode mode;
            if (rec_mode == "anc")
                mode = causal::RecoveryMode::Ancestral;
            else if (rec_mode == "full")
                mode = causal::RecoveryMode::Full;
            else if (rec_mode == "full-auto")
                mode = causal::RecoveryMode::FullAuto;
            else
                throw causal::ParseError("recover: unknown --mode " + rec_mode);

            std::optional<int> tau_opt;
            if (rec_tau >= 0) tau_opt = rec_tau;
            auto run = causal::run_recovery(truth, mode, tau_opt, seed, multiplier);

            std::optional<std::vector<double>> costs;
            if (!rec_costs_file.empty()) costs = read_costs_file(rec_costs_file);
            std::ofstream file;
            causal::write_report(open_output(file, rec_out), run.report,
                                 costs ? &*costs : nullptr);
            return run.matches_truth ? 0 : 1;
        } else if (*exp) {
            std::vector<causal::GeneratorSpec> specs;
            std::istringstream ms(exp_models);
            std::string item;
            while (std::getline(ms, item, ',')) {
                auto model = causal::parse_model(item);
                for (int n : parse_n_range(exp_range)) {
                    causal::GeneratorSpec spec;
                    spec.model = model;
                    spec.n = n;
                    spec.n1 = n / 2;
                    spec.n2 = n - n / 2;
                    spec.c = exp_c;
                    spec.gamma = exp_gamma;
                    spec.seed = seed;
                    specs.push_back(spec);
                }
            }
            causal::ExperimentOptions opt;
            opt.repeats = exp_repeats;
            opt.latent_fraction = latent_fraction;
            opt.measure_runtime = !exp_no_timing;
            auto rows = causal::run_experiment(specs, opt);
            std::ofstream file;
            causal::write_csv(open_output(file, exp_out), rows);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
