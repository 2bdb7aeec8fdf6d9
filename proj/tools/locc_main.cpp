// Command-line surface over the library: every operation takes state JSON
// (files or inline) and emits machine-readable JSON on stdout. Exit codes:
// 0 for definitive answers (including "false" and "incomparable"), 2 for
// infeasible or empty-window outcomes, 1 for input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locc/locc.hpp"

namespace {

struct cli_options {
    std::string mode = "exact";
    double eps = 1e-12;
    bool verbose = false;

    std::string verb;
    std::vector<std::string> inputs;
    std::vector<std::string> sources, targets;
    unsigned d = 3;
    unsigned k_max = 0;
    std::size_t rank = 0;
    std::size_t max_samples = 10'000;
    std::uint64_t seed = 0;
    std::string resolution = "1/100";
};

locc::json read_json_input(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        return locc::json::parse(arg);
    }
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open state file '" + arg + "'");
    locc::json j;
    in >> j;
    return j;
}

void emit(const locc::json& j) { std::cout << j.dump(2) << "\n"; }

template <class S>
int run(const cli_options& opt) {
    locc::numeric_config<S> cfg;
    if constexpr (!locc::is_exact_scalar_v<S>) cfg.eps = opt.eps;

    auto load = [&](const std::string& arg) {
        return locc::state_from_json<S>(read_json_input(arg), cfg);
    };
    auto note = [&](const std::string& line) {
        if (opt.verbose) std::cerr << line << "\n";
    };

    if (opt.verb == "classify") {
        auto psi = load(opt.inputs.at(0));
        auto phi = load(opt.inputs.at(1));
        auto v = locc::classify(psi, phi, cfg);
        locc::json j = locc::verdict_json(v);
        if (opt.k_max > 0) {
            auto k = locc::multi_copy_convertible(psi, phi, opt.k_max, cfg);
            j["multi_copy_k"] = k ? locc::json(*k) : locc::json(nullptr);
        }
        note(std::string("pair is ") + locc::to_string(v.dir));
        emit(j);
    } else if (opt.verb == "entropy") {
        auto s = load(opt.inputs.at(0));
        locc::json j = locc::json::object();
        j["entropy_bits"] = locc::entropy(s, cfg);
        note("entropy of entanglement in bits");
        emit(j);
    } else if (opt.verb == "assist") {
        auto plan = locc::maxent_assist_plan(load(opt.inputs.at(0)), load(opt.inputs.at(1)), cfg);
        note("maximally entangled assist plan, cost " + std::to_string(plan.cost_bits) +
             " bits");
        emit(locc::plan_json(plan));
    } else if (opt.verb == "assist-min") {
        auto plan = locc::minimal_assist_3x3(load(opt.inputs.at(0)), load(opt.inputs.at(1)), cfg);
        note("minimal 2x2 assist, cost " + std::to_string(plan.cost_bits) + " bits");
        emit(locc::plan_json(plan));
    } else if (opt.verb == "maxent-chain") {
        auto chain = locc::maxent_chain<S>(opt.d, cfg);
        locc::json states = locc::json::array();
        for (const auto& s : chain) states.push_back(locc::state_json(s));
        locc::json j = locc::json::object();
        j["states"] = states;
        j["verified"] = true;
        note("chain of " + std::to_string(chain.size()) + " two-qubit states");
        emit(j);
    } else if (opt.verb == "coop") {
        auto syn = locc::synthesize(load(opt.inputs.at(0)), load(opt.inputs.at(1)), cfg);
        note("auxiliary pair synthesized and certified");
        emit(locc::synthesis_json(syn));
    } else if (opt.verb == "coop-cross") {
        auto syn =
            locc::synthesize_case_b_cross(load(opt.inputs.at(0)), load(opt.inputs.at(1)), cfg);
        note("all four pairings incomparable");
        emit(locc::synthesis_json(syn));
    } else if (opt.verb == "split") {
        auto res = locc::two_copy_split(load(opt.inputs.at(0)), cfg);
        note("two-copy split certified");
        emit(locc::split_json(res));
    } else if (opt.verb == "complete-split") {
        auto res =
            locc::two_copy_complete(load(opt.inputs.at(0)), load(opt.inputs.at(1)), cfg);
        note("completion window and sample certified");
        emit(locc::split_json(res));
    } else if (opt.verb == "verify") {
        std::vector<locc::schmidt_vector<S>> src, tgt;
        for (const auto& f : opt.sources) src.push_back(load(f));
        for (const auto& f : opt.targets) tgt.push_back(load(f));
        auto rep = locc::verify(src, tgt, cfg);
        note(rep.ok ? "joint conversion is possible" : "joint conversion fails");
        emit(locc::report_json(rep));
    } else if (opt.verb == "search-catalyst") {
        locc::search_config<S> sc;
        sc.resolution = locc::scalar_from_string<S>(opt.resolution);
        sc.rank = opt.rank ? opt.rank : 2;
        sc.seed = opt.seed;
        auto res = locc::catalyst_search(load(opt.inputs.at(0)), load(opt.inputs.at(1)), sc, cfg);
        note(res.catalyst ? "catalyst found" : "no catalyst on this grid");
        emit(locc::catalyst_json(res, sc));
    } else if (opt.verb == "search-partner") {
        locc::search_config<S> sc;
        sc.resolution = locc::scalar_from_string<S>(opt.resolution);
        sc.rank = opt.rank;
        sc.max_samples = opt.max_samples;
        sc.seed = opt.seed;
        auto res =
            locc::coop_partner_search(load(opt.inputs.at(0)), load(opt.inputs.at(1)), sc, cfg);
        note(res.partner ? "partner pair found" : "budget exhausted without a partner");
        emit(locc::partner_json(res, sc));
    } else {
        throw std::invalid_argument("unknown command '" + opt.verb + "'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    cli_options opt;
    if (const char* env = std::getenv("LOCC_MODE")) opt.mode = env;

    CLI::App app{"Deterministic LOCC convertibility toolkit"};
    app.require_subcommand(1);
    app.add_option("--mode", opt.mode, "numeric backend: exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--eps", opt.eps, "comparison tolerance (float mode)");
    app.add_flag("--verbose", opt.verbose, "human summary on stderr");

    auto add_states = [&](CLI::App* sub, int n) {
        sub->add_option("states", opt.inputs, "state JSON files or inline JSON")
            ->expected(n)
            ->required();
    };

    auto* c_classify = app.add_subcommand("classify", "Nielsen classification of a pair");
    add_states(c_classify, 2);
    c_classify->add_option("--k-max", opt.k_max, "also report the smallest multi-copy k");
    add_states(app.add_subcommand("entropy", "entropy of entanglement in bits"), 1);
    add_states(app.add_subcommand("assist", "maximally entangled assist plan"), 2);
    add_states(app.add_subcommand("assist-min", "minimal 2x2 assist for a 3x3 pair"), 2);
    auto* c_chain = app.add_subcommand("maxent-chain", "two-qubit chain for a uniform target");
    c_chain->add_option("--d", opt.d, "target Schmidt rank")->required();
    add_states(app.add_subcommand("coop", "auxiliary incomparable pair synthesis"), 2);
    add_states(app.add_subcommand("coop-cross", "synthesis with all pairings incomparable"), 2);
    add_states(app.add_subcommand("split", "two-copy split of a rank-3 state"), 1);
    add_states(app.add_subcommand("complete-split", "completion window given chi"), 2);
    auto* c_verify = app.add_subcommand("verify", "brute-force joint conversion check");
    c_verify->add_option("--sources", opt.sources, "source states")->required();
    c_verify->add_option("--targets", opt.targets, "target states")->required();
    auto* c_cat = app.add_subcommand("search-catalyst", "grid search for a catalyst");
    add_states(c_cat, 2);
    c_cat->add_option("--rank", opt.rank, "catalyst rank (default 2)");
    c_cat->add_option("--resolution", opt.resolution, "grid step, e.g. 1/100");
    auto* c_par = app.add_subcommand("search-partner", "sampled co-operation partner search");
    add_states(c_par, 2);
    c_par->add_option("--rank", opt.rank, "partner rank (default: input rank)");
    c_par->add_option("--max-samples", opt.max_samples, "sampling budget");
    c_par->add_option("--seed", opt.seed, "sampling seed");

    try {
        app.parse(argc, argv);
        opt.verb = app.get_subcommands().front()->get_name();
        return opt.mode == "exact" ? run<locc::rational>(opt) : run<double>(opt);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const locc::error& e) {
        locc::json j = locc::json::object();
        j["error"] = locc::errc_name(e.code());
        j["message"] = e.what();
        emit(j);
        std::cerr << e.what() << "\n";
        return locc::is_infeasibility(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        locc::json j = locc::json::object();
        j["error"] = "InvalidInput";
        j["message"] = e.what();
        emit(j);
        std::cerr << e.what() << "\n";
        return 1;
    }
}
