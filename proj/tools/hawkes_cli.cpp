// Command-line front end: simulate | estimate | graph | markov | gof.
//
// Exit codes: 0 success, 1 usage or parse failure, 2 numerical failure.

#include "hawkes/discretize.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/estimate.hpp"
#include "hawkes/gof.hpp"
#include "hawkes/graph.hpp"
#include "hawkes/io.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using hawkes::format_double;
using nlohmann::json;

std::set<int> parse_vertex_set(const std::string& text) {
    std::set<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            out.insert(std::stoi(token));
        } catch (const std::exception&) {
            throw hawkes::ParseError("bad vertex id '" + token + "' (expected 1-based integers)");
        }
    }
    return out;
}

// --config <file.json>: a flat object of defaults; explicit flags win.
class ConfigFile {
public:
    void load(const std::string& path) { values_ = json::parse(hawkes::read_text_file(path)); }

    template <typename T>
    void fill(const CLI::Option* option, const std::string& key, T& target) const {
        if (option->count() > 0 || values_.is_null() || !values_.contains(key)) return;
        target = values_.at(key).get<T>();
    }

private:
    json values_;
};

void print_baseline_row(const Eigen::VectorXd& nu) {
    std::ostringstream header, row;
    for (Eigen::Index i = 0; i < nu.size(); ++i) {
        header << (i > 0 ? "\t" : "") << "nu_" << (i + 1);
        row << (i > 0 ? "\t" : "") << format_double(nu[i]);
    }
    std::cout << header.str() << "\n" << row.str() << "\n";
}

int cmd_simulate(const std::string& model_path, double horizon, std::uint64_t seed,
                 std::int64_t max_events, const std::string& out_path) {
    const hawkes::HawkesModel model = hawkes::read_model_json(model_path);
    if (!model.entrywise_subcritical()) {
        std::cerr << "warning: some kernel integrals are >= 1 even though the spectral radius is "
                  << format_double(model.spectral_radius()) << "\n";
    }
    const hawkes::EventStream stream =
        hawkes::simulate(model, {.horizon = horizon, .seed = seed, .max_events = max_events});
    hawkes::write_event_file(out_path, stream);
    std::cout << "events: " << stream.total_events() << "\n";
    std::cout << "empirical rates:";
    for (int i = 0; i < stream.dim(); ++i) {
        std::cout << ' '
                  << format_double(static_cast<double>(stream.times(i).size()) / horizon);
    }
    std::cout << "\nwrote " << out_path << "\n";
    return 0;
}

int cmd_estimate(const std::string& events_path, double h, int k, double horizon, int dim,
                 double ridge, bool nonneg, const std::string& out_path,
                 const std::string& csv_path) {
    const hawkes::EventStream stream = hawkes::read_event_file(events_path, dim, horizon);
    const hawkes::BinnedSeries series = hawkes::bin(stream, h);
    const hawkes::LinkEstimate estimate =
        hawkes::fit(series, {.lag_order = k, .ridge = ridge, .nonneg_projection = nonneg});

    std::cout << "baseline estimates (events per time unit):\n";
    print_baseline_row(estimate.baseline_per_time());
    std::cout << "bins: " << series.num_bins()
              << "  effective samples: " << estimate.effective_samples
              << "  dropped tail events: " << series.dropped_tail_events
              << "  gram condition: " << format_double(estimate.gram_condition) << "\n";
    hawkes::write_estimate_json(out_path, estimate);
    std::cout << "wrote " << out_path << "\n";
    if (!csv_path.empty()) {
        hawkes::write_step_csv(csv_path, estimate);
        std::cout << "wrote " << csv_path << "\n";
    }
    return 0;
}

int cmd_graph(const std::string& estimate_path, double threshold_c, const std::string& out_path) {
    const hawkes::LinkEstimate estimate = hawkes::read_estimate_json(estimate_path);
    const hawkes::CausalityGraph graph =
        hawkes::graph_from_estimate(estimate, {.scale_factor = threshold_c});
    hawkes::write_text_file(out_path, hawkes::format_graph(graph));
    std::cout << "edges: " << graph.edges.size() << "\n";
    std::vector<int> isolated;
    for (int v = 1; v <= graph.num_vertices; ++v) {
        bool touched = false;
        for (const auto& [from, to] : graph.edges) {
            if (from == v || to == v) touched = true;
        }
        if (!touched) isolated.push_back(v);
    }
    std::cout << "isolated vertices:";
    if (isolated.empty()) std::cout << " none";
    for (int v : isolated) std::cout << ' ' << v;
    std::cout << "\nwrote " << out_path << "\n";
    return 0;
}

int cmd_markov(const std::string& graph_path, const std::string& a_text,
               const std::string& b_text, const std::string& s_text, bool moral,
               const std::string& reduce_text, const std::string& ancestors_text) {
    const std::string text = hawkes::read_text_file(graph_path);
    const int modes = (!a_text.empty() ? 1 : 0) + (moral ? 1 : 0) +
                      (!reduce_text.empty() ? 1 : 0) + (!ancestors_text.empty() ? 1 : 0);
    if (modes != 1) {
        throw hawkes::ParseError(
            "pick exactly one query: --A/--B/--S, --moral, --reduce, or --ancestors");
    }
    if (!a_text.empty()) {
        if (b_text.empty() || s_text.empty()) {
            throw hawkes::ParseError("a noncausality query needs --A, --B, and --S");
        }
        const hawkes::CausalityGraph graph = hawkes::parse_directed_graph(text);
        const bool answer =
            hawkes::granger_noncausal(graph, parse_vertex_set(a_text), parse_vertex_set(b_text),
                                      parse_vertex_set(s_text));
        std::cout << "noncausal: " << (answer ? "true" : "false") << "\n";
    } else if (moral) {
        const hawkes::CausalityGraph graph = hawkes::parse_directed_graph(text);
        std::cout << hawkes::format_graph(hawkes::moral_graph(graph));
    } else if (!reduce_text.empty()) {
        const hawkes::UndirectedGraph graph = hawkes::parse_undirected_graph(text);
        std::cout << hawkes::format_graph(hawkes::reduce(graph, parse_vertex_set(reduce_text)));
    } else {
        const hawkes::CausalityGraph graph = hawkes::parse_directed_graph(text);
        const std::set<int> result =
            hawkes::ancestors(graph, parse_vertex_set(ancestors_text));
        std::cout << "ancestors:";
        if (result.empty()) std::cout << " none";
        for (int v : result) std::cout << ' ' << v;
        std::cout << "\n";
    }
    return 0;
}

int cmd_gof(const std::string& events_path, const std::string& model_path,
            const std::string& estimate_path, double horizon, int dim, int grid,
            const std::string& out_path) {
    if (model_path.empty() == estimate_path.empty()) {
        throw hawkes::ParseError("pass exactly one of --model or --estimate");
    }
    std::optional<hawkes::HawkesModel> model;
    std::optional<hawkes::LinkEstimate> estimate;
    int target_dim = 0;
    if (!model_path.empty()) {
        model = hawkes::read_model_json(model_path);
        target_dim = model->dim();
    } else {
        estimate = hawkes::read_estimate_json(estimate_path);
        target_dim = estimate->dim;
    }
    if (dim != 0 && dim != target_dim) {
        throw hawkes::ParseError("--d disagrees with the model/estimate dimension");
    }
    const hawkes::EventStream stream = hawkes::read_event_file(events_path, target_dim, horizon);
    const hawkes::ResidualStream residuals =
        model ? hawkes::residual_transform(*model, stream)
              : hawkes::residual_transform(*estimate, stream);

    std::cout << "component\tn\tks\tks_crit_5pct\tverdict\tclamped_fraction\n";
    for (int i = 0; i < residuals.dim(); ++i) {
        const std::size_t n = residuals.times[static_cast<std::size_t>(i)].size();
        std::cout << (i + 1) << '\t' << n << '\t';
        try {
            const double ks = hawkes::ks_statistic(residuals, i);
            const double critical = hawkes::ks_critical_5pct(n);
            std::cout << format_double(ks) << '\t' << format_double(critical) << '\t'
                      << (ks < critical ? "pass" : "FAIL");
        } catch (const hawkes::TooFewEventsError&) {
            std::cout << "-\t-\ttoo_few_events";
        }
        std::cout << '\t'
                  << format_double(residuals.clamped_fraction[static_cast<std::size_t>(i)])
                  << "\n";
    }
    if (!out_path.empty()) {
        hawkes::write_quantile_csv(out_path, hawkes::quantile_report(residuals, grid));
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate self-exciting point processes: simulation, nonparametric link "
                 "estimation, causality graphs, and residual diagnostics"};
    app.require_subcommand(1);
    // --h is a domain flag (bin width); keep help on --help only.
    app.set_help_flag("--help", "print help");

    ConfigFile config;

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "sample a model by thinning");
    simulate_cmd->set_help_flag("--help", "print help");
    std::string sim_model, sim_out = "events.csv", sim_config;
    double sim_horizon = 0.0;
    std::uint64_t sim_seed = 1;
    std::int64_t sim_max_events = 10'000'000;
    auto* sim_model_opt = simulate_cmd->add_option("--model", sim_model, "model spec JSON");
    auto* sim_horizon_opt = simulate_cmd->add_option("--T", sim_horizon, "time horizon");
    auto* sim_seed_opt = simulate_cmd->add_option("--seed", sim_seed, "rng seed");
    auto* sim_max_opt = simulate_cmd->add_option("--max-events", sim_max_events, "safety cap");
    auto* sim_out_opt = simulate_cmd->add_option("--out", sim_out, "output event file");
    simulate_cmd->add_option("--config", sim_config, "JSON defaults for the flags above");

    // estimate
    auto* estimate_cmd = app.add_subcommand("estimate", "fit the lagged regression");
    estimate_cmd->set_help_flag("--help", "print help");
    std::string est_events, est_out = "estimate.json", est_csv, est_config;
    double est_h = 0.0, est_T = 0.0, est_ridge = 0.0;
    int est_k = 0, est_d = 0;
    bool est_nonneg = false;
    auto* est_events_opt = estimate_cmd->add_option("--events", est_events, "event file");
    auto* est_h_opt = estimate_cmd->add_option("--h", est_h, "bin width");
    auto* est_k_opt = estimate_cmd->add_option("--k", est_k, "lag order");
    auto* est_T_opt =
        estimate_cmd->add_option("--T", est_T, "horizon (default: largest timestamp)");
    auto* est_d_opt =
        estimate_cmd->add_option("--d", est_d, "component count (default: largest id)");
    auto* est_ridge_opt = estimate_cmd->add_option("--ridge", est_ridge, "diagonal regularizer");
    auto* est_nonneg_opt =
        estimate_cmd->add_flag("--nonneg", est_nonneg, "clamp negative step levels");
    auto* est_out_opt = estimate_cmd->add_option("--out", est_out, "estimate artifact JSON");
    auto* est_csv_opt = estimate_cmd->add_option("--csv", est_csv, "step-function plot CSV");
    estimate_cmd->add_option("--config", est_config, "JSON defaults for the flags above");

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "threshold an estimate into a graph");
    graph_cmd->set_help_flag("--help", "print help");
    std::string graph_estimate, graph_out = "graph.txt", graph_config;
    double graph_c = 4.0;
    auto* graph_estimate_opt =
        graph_cmd->add_option("--estimate", graph_estimate, "estimate artifact JSON");
    auto* graph_c_opt =
        graph_cmd->add_option("--threshold-c", graph_c, "peak/scale threshold factor");
    auto* graph_out_opt = graph_cmd->add_option("--out", graph_out, "edge-list output");
    graph_cmd->add_option("--config", graph_config, "JSON defaults for the flags above");

    // markov
    auto* markov_cmd = app.add_subcommand("markov", "query an edge-list graph");
    markov_cmd->set_help_flag("--help", "print help");
    std::string markov_graph, markov_a, markov_b, markov_s, markov_reduce, markov_ancestors;
    bool markov_moral = false;
    markov_cmd->add_option("--graph", markov_graph, "edge-list file")->required();
    markov_cmd->add_option("--A", markov_a, "source set, comma separated");
    markov_cmd->add_option("--B", markov_b, "target set");
    markov_cmd->add_option("--S", markov_s, "observed set");
    markov_cmd->add_flag("--moral", markov_moral, "print the moral graph");
    markov_cmd->add_option("--reduce", markov_reduce,
                           "print the reduction onto this vertex set (undirected input)");
    markov_cmd->add_option("--ancestors", markov_ancestors, "print the ancestor set");

    // gof
    auto* gof_cmd = app.add_subcommand("gof", "residual diagnostics via the time change");
    gof_cmd->set_help_flag("--help", "print help");
    std::string gof_events, gof_model, gof_estimate, gof_out, gof_config;
    double gof_T = 0.0;
    int gof_grid = 99, gof_d = 0;
    auto* gof_events_opt = gof_cmd->add_option("--events", gof_events, "event file");
    auto* gof_model_opt = gof_cmd->add_option("--model", gof_model, "model spec JSON");
    auto* gof_estimate_opt =
        gof_cmd->add_option("--estimate", gof_estimate, "estimate artifact JSON");
    auto* gof_T_opt = gof_cmd->add_option("--T", gof_T, "horizon (default: largest timestamp)");
    auto* gof_d_opt = gof_cmd->add_option("--d", gof_d, "component count override");
    auto* gof_grid_opt = gof_cmd->add_option("--grid", gof_grid, "quantile grid size");
    auto* gof_out_opt = gof_cmd->add_option("--out", gof_out, "quantile CSV output");
    gof_cmd->add_option("--config", gof_config, "JSON defaults for the flags above");

    try {
        app.parse(argc, argv);

        if (simulate_cmd->parsed()) {
            if (!sim_config.empty()) {
                config.load(sim_config);
                config.fill(sim_model_opt, "model", sim_model);
                config.fill(sim_horizon_opt, "T", sim_horizon);
                config.fill(sim_seed_opt, "seed", sim_seed);
                config.fill(sim_max_opt, "max_events", sim_max_events);
                config.fill(sim_out_opt, "out", sim_out);
            }
            if (sim_model.empty() || sim_horizon <= 0.0) {
                throw hawkes::ParseError("simulate needs --model and a positive --T");
            }
            return cmd_simulate(sim_model, sim_horizon, sim_seed, sim_max_events, sim_out);
        }
        if (estimate_cmd->parsed()) {
            if (!est_config.empty()) {
                config.load(est_config);
                config.fill(est_events_opt, "events", est_events);
                config.fill(est_h_opt, "h", est_h);
                config.fill(est_k_opt, "k", est_k);
                config.fill(est_T_opt, "T", est_T);
                config.fill(est_d_opt, "d", est_d);
                config.fill(est_ridge_opt, "ridge", est_ridge);
                config.fill(est_nonneg_opt, "nonneg", est_nonneg);
                config.fill(est_out_opt, "out", est_out);
                config.fill(est_csv_opt, "csv", est_csv);
            }
            if (est_events.empty() || est_h <= 0.0 || est_k < 1) {
                throw hawkes::ParseError(
                    "estimate needs --events, a positive --h, and --k >= 1");
            }
            return cmd_estimate(est_events, est_h, est_k, est_T, est_d, est_ridge, est_nonneg,
                                est_out, est_csv);
        }
        if (graph_cmd->parsed()) {
            if (!graph_config.empty()) {
                config.load(graph_config);
                config.fill(graph_estimate_opt, "estimate", graph_estimate);
                config.fill(graph_c_opt, "threshold_c", graph_c);
                config.fill(graph_out_opt, "out", graph_out);
            }
            if (graph_estimate.empty()) throw hawkes::ParseError("graph needs --estimate");
            return cmd_graph(graph_estimate, graph_c, graph_out);
        }
        if (markov_cmd->parsed()) {
            return cmd_markov(markov_graph, markov_a, markov_b, markov_s, markov_moral,
                              markov_reduce, markov_ancestors);
        }
        if (gof_cmd->parsed()) {
            if (!gof_config.empty()) {
                config.load(gof_config);
                config.fill(gof_events_opt, "events", gof_events);
                config.fill(gof_model_opt, "model", gof_model);
                config.fill(gof_estimate_opt, "estimate", gof_estimate);
                config.fill(gof_T_opt, "T", gof_T);
                config.fill(gof_d_opt, "d", gof_d);
                config.fill(gof_grid_opt, "grid", gof_grid);
                config.fill(gof_out_opt, "out", gof_out);
            }
            if (gof_events.empty()) throw hawkes::ParseError("gof needs --events");
            return cmd_gof(gof_events, gof_model, gof_estimate, gof_T, gof_d, gof_grid, gof_out);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const hawkes::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hawkes::HawkesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
