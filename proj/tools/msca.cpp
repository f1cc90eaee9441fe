// Command-line front end: generate instances, solve the fractional
// relaxation exactly, round, brute force, verify, and run experiment sweeps.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
// 3 capacity error, 4 internal invariant failure (a bug, not bad input).

#include "msca/errors.hpp"
#include "msca/instances.hpp"
#include "msca/json_io.hpp"
#include "msca/lp_relaxation.hpp"
#include "msca/rounding.hpp"
#include "msca/verification.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace msca;

void emit_error(const std::string& kind, const std::string& message) {
    Json err;
    err["error"] = kind;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
}

struct GenOptions {
    std::string family;
    int k = 3;
    int p = 1;
    int pad = 0;
    int n = 8;
    int universe = -1;  // defaults to n
    std::string density = "1/2";
    int cost_range = 10;
    std::uint64_t seed = 1;
    std::string output;
};

int run_gen(const GenOptions& opt, const std::vector<std::string>& given) {
    auto reject = [&](std::initializer_list<const char*> flags) {
        for (const char* flag : flags)
            for (const std::string& name : given)
                if (name == flag)
                    throw UsageError(std::string(flag) + " does not apply to family '" +
                                     opt.family + "'");
    };
    std::optional<Instance> inst;
    if (opt.family == "lowerbound") {
        reject({"--n", "--universe", "--density", "--cost-range", "--seed"});
        inst = gen_lower_bound(opt.k, opt.p, opt.pad);
    } else if (opt.family == "coverage") {
        reject({"--p", "--pad", "--cost-range"});
        int universe = opt.universe < 0 ? opt.n : opt.universe;
        inst = gen_coverage(opt.n, opt.k, universe, parse_rat_or_decimal(opt.density), opt.seed);
    } else if (opt.family == "facility") {
        reject({"--p", "--pad", "--universe", "--density"});
        inst = gen_facility_location(opt.n, opt.k, opt.cost_range, opt.seed);
    } else {
        throw UsageError("unknown family '" + opt.family +
                         "' (expected lowerbound, coverage, or facility)");
    }
    write_json_file(opt.output, instance_to_json(*inst));
    std::cout << "wrote " << opt.output << " (n=" << inst->n() << ", k=" << inst->k << ")\n";
    return 0;
}

int run_solve(const std::string& instance_path, const std::string& output) {
    Instance inst = instance_from_json(read_json_file(instance_path));
    LpSolution solution = solve_lp(inst);
    ChainAllocation chain = uncross(inst, solution.allocation);
    write_json_file(output, solution_file_to_json(solution, chain));
    std::cout << "objective " << render_rat(solution.objective) << " in "
              << solution.iterations << " pivots\n";
    return 0;
}

int run_round(const std::string& instance_path, const std::string& solution_path,
              const std::string& output) {
    Instance inst = instance_from_json(read_json_file(instance_path));
    Json sol = read_json_file(solution_path);
    LpSolution lp = lp_solution_from_json(sol, inst.n(), inst.k);
    if (!sol.contains("chain"))
        throw UsageError("solution file has no chain; run solve first");
    ChainAllocation chain = chain_from_json(sol["chain"], inst.n(), inst.k);
    // Reject broken files up front with a usage error instead of tripping
    // internal contracts later.
    for (const auto& entries : chain.chains)
        for (std::size_t l = 1; l < entries.size(); ++l)
            if (!entries[l].first.strict_subset_of(entries[l - 1].first))
                throw UsageError("solution chain is not strictly nested");
    FeasibilityReport feasible = check_feasible(inst, chain.as_allocation());
    if (!feasible.pass)
        throw UsageError("solution chain is infeasible: " + feasible.detail);
    RoundResult result = round_solution(inst, chain);
    write_json_file(output, round_report_to_json(result, lp.objective));
    std::cout << "rounded value " << render_rat(result.value) << " at j* = "
              << result.jstar.str() << "\n";
    return 0;
}

int run_brute(const std::string& instance_path, const std::string& output,
              std::uint64_t budget) {
    Instance inst = instance_from_json(read_json_file(instance_path));
    BruteForceResult result = brute_force_opt(inst, budget);
    write_json_file(output, brute_to_json(result));
    std::cout << "optimum " << render_rat(result.value) << " over " << result.leaves
              << " scored assignments\n";
    return 0;
}

int run_verify(const std::string& instance_path, const std::string& solution_path,
               const std::string& round_path, const std::string& brute_path,
               const std::string& output) {
    Instance inst = instance_from_json(read_json_file(instance_path));

    std::optional<LpSolution> lp;
    std::optional<ChainAllocation> chain;
    std::optional<RoundResult> round;
    std::optional<BruteForceResult> brute;
    if (!solution_path.empty()) {
        Json sol = read_json_file(solution_path);
        lp = lp_solution_from_json(sol, inst.n(), inst.k);
        if (sol.contains("chain"))
            chain = chain_from_json(sol["chain"], inst.n(), inst.k);
    }
    if (!round_path.empty())
        round = round_result_from_json(read_json_file(round_path), inst);
    if (!brute_path.empty())
        brute = brute_from_json(read_json_file(brute_path), inst);

    PipelineArtifacts artifacts;
    if (lp)
        artifacts.lp = &*lp;
    if (chain)
        artifacts.chain = &*chain;
    if (round)
        artifacts.round = &*round;
    if (brute)
        artifacts.brute = &*brute;

    VerificationReport report = verify_suite(inst, artifacts);
    Json out = verification_report_to_json(report);
    if (output.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(output, out);
    if (!report.pass) {
        for (const VerificationCheck& check : report.checks)
            if (!check.pass)
                emit_error("verification", check.name + ": " + check.details);
        return 1;
    }
    return 0;
}

struct ExperimentOptions {
    std::string suite;
    std::uint64_t seed = 1;
    int trials = 20;
    int kmax = 5;
    std::string csv;
};

struct ExperimentRow {
    std::string id;
    std::string family;
    int n = 0;
    int k = 0;
    std::optional<int> p;
    Rat lp_value;
    Rat round_value;
    std::optional<Rat> brute_value;
};

void write_csv(const std::string& path, const std::vector<ExperimentRow>& rows) {
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << "instance_id,family,n,k,p,"
           "lp_value,lp_value_decimal,round_value,round_value_decimal,"
           "brute_value,brute_value_decimal,ratio_round_lp,ratio_round_lp_decimal,"
           "ratio_brute_lp,ratio_brute_lp_decimal,k_half_bound,k_half_bound_decimal\n";
    for (const ExperimentRow& row : rows) {
        auto both = [](const Rat& value) {
            return render_rat(value) + "," + render_decimal(value);
        };
        out << row.id << "," << row.family << "," << row.n << "," << row.k << ","
            << (row.p ? std::to_string(*row.p) : "") << "," << both(row.lp_value) << ","
            << both(row.round_value) << ",";
        if (row.brute_value)
            out << both(*row.brute_value);
        else
            out << ",";
        out << ",";
        if (row.lp_value != 0)
            out << both(row.round_value / row.lp_value);
        else
            out << ",";  // ratio undefined (zero optimum)
        out << ",";
        if (row.brute_value && row.lp_value != 0)
            out << both(*row.brute_value / row.lp_value);
        else
            out << ",";
        out << "," << both(Rat(row.k) / 2) << "\n";
    }
}

ExperimentRow run_pipeline_row(const std::string& id, const Instance& inst,
                               bool want_brute) {
    ExperimentRow row;
    row.id = id;
    auto family = inst.metadata.find("family");
    row.family = family == inst.metadata.end() ? "custom" : family->second;
    row.n = inst.n();
    row.k = inst.k;
    auto p = inst.metadata.find("p");
    if (p != inst.metadata.end())
        row.p = std::stoi(p->second);

    LpSolution lp = solve_lp(inst);
    ChainAllocation chain = uncross(inst, lp.allocation);
    RoundResult rounded = round_solution(inst, chain);
    row.lp_value = lp.objective;
    row.round_value = rounded.value;

    // Every experiment row doubles as a property run.
    PipelineArtifacts artifacts;
    artifacts.lp = &lp;
    artifacts.chain = &chain;
    artifacts.round = &rounded;
    BruteForceResult brute;
    if (want_brute) {
        Int states = boost::multiprecision::pow(Int(inst.k), static_cast<unsigned>(inst.n()));
        if (states <= kDefaultBruteBudget) {
            brute = brute_force_opt(inst);
            row.brute_value = brute.value;
            artifacts.brute = &brute;
        }
    }
    VerificationReport report = verify_suite(inst, artifacts);
    if (!report.pass) {
        for (const VerificationCheck& check : report.checks)
            if (!check.pass)
                emit_error("verification", id + ": " + check.name + ": " + check.details);
        throw ContractViolation("property checks failed on experiment instance " + id);
    }
    return row;
}

int run_experiment(const ExperimentOptions& opt) {
    std::vector<ExperimentRow> rows;
    if (opt.suite == "gap") {
        const std::pair<int, int> params[] = {{2, 1}, {2, 2}, {2, 3}, {2, 4},
                                              {3, 1}, {3, 2}, {4, 1}, {5, 1}};
        for (const auto& [k, p] : params) {
            if (k > opt.kmax)
                continue;
            Instance inst = gen_lower_bound(k, p);
            std::string id = "lowerbound_k" + std::to_string(k) + "_p" + std::to_string(p);
            rows.push_back(run_pipeline_row(id, inst, true));
        }
    } else if (opt.suite == "random") {
        for (int t = 0; t < opt.trials; ++t) {
            const int n = 4 + t % 7;
            const int k = 2 + t % std::max(1, opt.kmax - 1);
            const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(t);
            Instance inst = (t % 2 == 0)
                                ? gen_coverage(n, k, n, Rat(1 + t % 3) / 4, seed)
                                : gen_facility_location(n, k, 10, seed);
            std::string id = "random_" + std::to_string(t);
            rows.push_back(run_pipeline_row(id, inst, true));
        }
    } else if (opt.suite == "k2") {
        for (int t = 0; t < opt.trials; ++t) {
            const int n = 4 + t % 5;
            const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(t);
            Instance inst = (t % 2 == 0)
                                ? gen_coverage(n, 2, n, Rat(1 + t % 3) / 4, seed)
                                : gen_facility_location(n, 2, 10, seed);
            std::string id = "k2_" + std::to_string(t);
            rows.push_back(run_pipeline_row(id, inst, true));
        }
    } else {
        throw UsageError("unknown suite '" + opt.suite + "' (expected gap, random, or k2)");
    }
    write_csv(opt.csv, rows);
    std::cout << "wrote " << rows.size() << " rows to " << opt.csv << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver, rounder, and verifier for monotone submodular cost allocation"};
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "Generate an instance file");
    cmd_gen->add_option("--family", gen.family, "lowerbound | coverage | facility")->required();
    std::vector<std::pair<std::string, CLI::Option*>> gen_flags;
    gen_flags.emplace_back("--k", cmd_gen->add_option("--k", gen.k, "number of cost functions"));
    gen_flags.emplace_back("--p",
                           cmd_gen->add_option("--p", gen.p, "family scale parameter (lowerbound)"));
    gen_flags.emplace_back(
        "--pad", cmd_gen->add_option("--pad", gen.pad, "extra cost-free elements (lowerbound)"));
    gen_flags.emplace_back(
        "--n", cmd_gen->add_option("--n", gen.n, "ground set size (coverage/facility)"));
    gen_flags.emplace_back("--universe", cmd_gen->add_option("--universe", gen.universe,
                                                             "coverage universe size (default n)"));
    gen_flags.emplace_back(
        "--density",
        cmd_gen->add_option("--density", gen.density, "coverage density in [0,1], e.g. 1/2 or 0.3"));
    gen_flags.emplace_back(
        "--cost-range", cmd_gen->add_option("--cost-range", gen.cost_range, "facility cost bound"));
    gen_flags.emplace_back("--seed", cmd_gen->add_option("--seed", gen.seed, "random seed"));
    cmd_gen->add_option("-o,--output", gen.output, "output instance file")->required();

    std::string solve_instance, solve_output;
    CLI::App* cmd_solve = app.add_subcommand("solve", "Solve the relaxation exactly and uncross");
    cmd_solve->add_option("instance", solve_instance, "instance file")->required();
    cmd_solve->add_option("-o,--output", solve_output, "output solution file")->required();

    std::string round_instance, round_solution_path, round_output;
    CLI::App* cmd_round = app.add_subcommand("round", "Round a solved instance to a partition");
    cmd_round->add_option("instance", round_instance, "instance file")->required();
    cmd_round->add_option("solution", round_solution_path, "solution file from solve")->required();
    cmd_round->add_option("-o,--output", round_output, "output report file")->required();

    std::string brute_instance, brute_output;
    std::uint64_t brute_budget = msca::kDefaultBruteBudget;
    CLI::App* cmd_brute = app.add_subcommand("brute", "Exact optimum by enumeration");
    cmd_brute->add_option("instance", brute_instance, "instance file")->required();
    cmd_brute->add_option("--budget", brute_budget, "assignment budget");
    cmd_brute->add_option("-o,--output", brute_output, "output file")->required();

    std::string verify_instance, verify_solution, verify_round, verify_brute, verify_output;
    CLI::App* cmd_verify = app.add_subcommand("verify", "Re-derive structural properties");
    cmd_verify->add_option("instance", verify_instance, "instance file")->required();
    cmd_verify->add_option("solution", verify_solution, "solution file (optional)");
    cmd_verify->add_option("round", verify_round, "round report file (optional)");
    cmd_verify->add_option("brute", verify_brute, "brute force file (optional)");
    cmd_verify->add_option("-o,--output", verify_output, "report file (default stdout)");

    ExperimentOptions experiment;
    CLI::App* cmd_experiment = app.add_subcommand("experiment", "Run a pipeline sweep to CSV");
    cmd_experiment->add_option("--suite", experiment.suite, "gap | random | k2")->required();
    cmd_experiment->add_option("--seed", experiment.seed, "base seed");
    cmd_experiment->add_option("--trials", experiment.trials, "instances per sweep");
    cmd_experiment->add_option("--kmax", experiment.kmax, "largest k");
    cmd_experiment->add_option("--csv", experiment.csv, "output CSV file")->required();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(cmd_gen)) {
            std::vector<std::string> given;
            for (const auto& [name, option] : gen_flags)
                if (option->count() > 0)
                    given.push_back(name);
            return run_gen(gen, given);
        }
        if (app.got_subcommand(cmd_solve))
            return run_solve(solve_instance, solve_output);
        if (app.got_subcommand(cmd_round))
            return run_round(round_instance, round_solution_path, round_output);
        if (app.got_subcommand(cmd_brute))
            return run_brute(brute_instance, brute_output, brute_budget);
        if (app.got_subcommand(cmd_verify))
            return run_verify(verify_instance, verify_solution, verify_round, verify_brute,
                              verify_output);
        if (app.got_subcommand(cmd_experiment))
            return run_experiment(experiment);
        emit_error("usage", "no subcommand selected");
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);  // --help and friends
        emit_error("usage", e.what());
        return 2;
    } catch (const msca::UsageError& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        emit_error("usage", e.what());
        return 2;
    } catch (const msca::CapacityError& e) {
        emit_error("capacity", e.what());
        return 3;
    } catch (const msca::ContractViolation& e) {
        emit_error("internal", e.what());
        return 4;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 4;
    }
}
