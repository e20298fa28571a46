/*
 * Copyright 2026 the eqdesign authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <eqdesign/cli.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <eqdesign/errors.hpp>
#include <eqdesign/game_io.hpp>
#include <eqdesign/oracle.hpp>
#include <eqdesign/random_gen.hpp>
#include <eqdesign/solver.hpp>

namespace eqdesign::cli {

using nlohmann::json;

namespace {

struct CommonArgs {
    std::string game_file;
    std::string spec_text;
    std::int64_t budget = 0;
    bool json_output = false;
    int threads = 0;
    bool linear_scan = false;
    std::int64_t scheme_cap = kDefaultSchemeCap;
    std::string dump_lp_dir;
};

class LpDirDumper {
public:
    explicit LpDirDumper(std::string dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }
    void operator()(const FlowLp& lp) {
        std::lock_guard<std::mutex> lock(mutex_);
        char name[32];
        std::snprintf(name, sizeof(name), "lp_%06d.txt", ++counter_);
        std::ofstream out(std::filesystem::path(dir_) / name);
        dump_lp(lp, out);
    }

private:
    std::string dir_;
    int counter_ = 0;
    std::mutex mutex_;
};

SolveOptions make_options(const CommonArgs& args,
                          std::shared_ptr<LpDirDumper>& dumper) {
    SolveOptions opt;
    opt.threads = args.threads;
    opt.linear_scan = args.linear_scan;
    opt.scheme_cap = args.scheme_cap;
    if (!args.dump_lp_dir.empty()) {
        dumper = std::make_shared<LpDirDumper>(args.dump_lp_dir);
        opt.dump_lp = [dumper](const FlowLp& lp) { (*dumper)(lp); };
    }
    return opt;
}

json scheme_to_json(const Game& g, const SubsidyScheme& k) {
    json arr = json::array();
    for (int i = 0; i < g.num_players(); ++i)
        for (int s = 0; s < g.num_states(); ++s)
            if (k.subsidy[i][s] != 0)
                arr.push_back({{"player", g.arena.players[i]},
                               {"state", g.arena.states[s]},
                               {"amount", k.subsidy[i][s]}});
    return arr;
}

json profile_to_json(const Game& g, int state, int code) {
    const Arena& a = g.arena;
    std::vector<int> acts = a.decode_profile(state, code);
    json obj;
    for (int i = 0; i < a.num_players(); ++i)
        obj[a.players[i]] = a.actions[state][i][acts[i]];
    return obj;
}

json lasso_to_json(const Game& g, const LassoPath& path) {
    json obj;
    json prefix = json::array();
    for (int s : path.prefix) prefix.push_back(g.arena.states[s]);
    json cycle = json::array();
    for (int s : path.cycle) cycle.push_back(g.arena.states[s]);
    json pmoves = json::array();
    for (std::size_t j = 0; j < path.prefix.size(); ++j)
        pmoves.push_back(profile_to_json(g, path.prefix[j], path.prefix_moves[j]));
    json cmoves = json::array();
    for (std::size_t j = 0; j < path.cycle.size(); ++j)
        cmoves.push_back(profile_to_json(g, path.cycle[j], path.cycle_moves[j]));
    obj["prefix"] = prefix;
    obj["cycle"] = cycle;
    obj["prefix_moves"] = pmoves;
    obj["cycle_moves"] = cmoves;
    json payoffs;
    for (int i = 0; i < g.num_players(); ++i)
        payoffs[g.arena.players[i]] = rational_to_string(mean_payoff(path, g, i));
    obj["payoffs"] = payoffs;
    return obj;
}

json z_to_json(const Game& g, const std::vector<Rational>& z) {
    json obj;
    for (int i = 0; i < g.num_players(); ++i)
        obj[g.arena.players[i]] = rational_to_string(z[i]);
    return obj;
}

std::string scheme_to_text(const Game& g, const SubsidyScheme& k) {
    std::ostringstream os;
    bool any = false;
    for (int i = 0; i < g.num_players(); ++i)
        for (int s = 0; s < g.num_states(); ++s)
            if (k.subsidy[i][s] != 0) {
                if (any) os << ", ";
                os << g.arena.players[i] << "@" << g.arena.states[s]
                   << "=" << k.subsidy[i][s];
                any = true;
            }
    if (!any) os << "(empty)";
    os << " (cost " << scheme_cost(k) << ")";
    return os.str();
}

json counters_to_json(const SolveStats& stats) {
    return json{{"schemes_examined", stats.schemes_examined},
                {"grids_examined", stats.grids_examined},
                {"lps_solved", stats.lps_solved}};
}

void emit(std::ostream& out, bool json_output, const json& doc,
          const std::string& human) {
    if (json_output)
        out << doc.dump(2) << "\n";
    else
        out << human;
}

struct Timing {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// ---- decision subcommands --------------------------------------------------

int run_check(const CommonArgs& args, bool strong, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    Gr1Formula f = parse_formula(args.spec_text);
    std::shared_ptr<LpDirDumper> dumper;
    SolveOptions opt = make_options(args, dumper);
    SolveStats stats;
    Timing timing;

    json doc{{"schema", 1},
             {"command", strong ? "check-strong" : "check-weak"},
             {"budget", args.budget}};
    std::ostringstream human;
    int exit_code;

    if (!strong) {
        auto witness = weak_implementation(g, f, args.budget, opt, &stats);
        doc["verdict"] = witness ? "yes" : "no";
        if (witness) {
            doc["witness"] = {{"scheme", scheme_to_json(g, witness->scheme)},
                              {"cost", scheme_cost(witness->scheme)},
                              {"z", z_to_json(g, witness->z)},
                              {"lasso", lasso_to_json(g, witness->path)}};
            human << "verdict: yes\nscheme: " << scheme_to_text(g, witness->scheme)
                  << "\nlasso: " << lasso_to_string(g, witness->path) << "\n";
        } else {
            human << "verdict: no\n";
        }
        exit_code = witness ? kExitYes : kExitNo;
    } else {
        auto witness = strong_implementation(g, f, args.budget, opt, &stats);
        doc["verdict"] = witness ? "yes" : "no";
        if (witness) {
            doc["witness"] = {{"scheme", scheme_to_json(g, witness->scheme)},
                              {"cost", scheme_cost(witness->scheme)},
                              {"z", z_to_json(g, witness->z)},
                              {"lasso", lasso_to_json(g, witness->path)},
                              {"certificate",
                               {{"grid_checked", witness->grid_checked},
                                {"violation_searches_empty", witness->neg_lps_failed}}}};
            human << "verdict: yes\nscheme: " << scheme_to_text(g, witness->scheme)
                  << "\nlasso: " << lasso_to_string(g, witness->path) << "\n";
        } else {
            human << "verdict: no\n";
        }
        exit_code = witness ? kExitYes : kExitNo;
    }
    doc["counters"] = counters_to_json(stats);
    human << "schemes examined: " << stats.schemes_examined
          << "\nelapsed: " << timing.seconds() << "s\n";
    emit(out, args.json_output, doc, human.str());
    return exit_code;
}

int run_opt(const CommonArgs& args, bool strong, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    Gr1Formula f = parse_formula(args.spec_text);
    std::shared_ptr<LpDirDumper> dumper;
    SolveOptions opt = make_options(args, dumper);
    SolveStats stats;

    json doc{{"schema", 1}, {"command", strong ? "opt-strong" : "opt-weak"}};
    std::ostringstream human;
    int exit_code;

    auto fill = [&](auto&& result) {
        if (result) {
            doc["verdict"] = "yes";
            doc["optimum"] = result->first;
            doc["witness"] = {{"scheme", scheme_to_json(g, result->second.scheme)},
                              {"cost", scheme_cost(result->second.scheme)},
                              {"z", z_to_json(g, result->second.z)},
                              {"lasso", lasso_to_json(g, result->second.path)}};
            human << "optimum: " << result->first << "\nscheme: "
                  << scheme_to_text(g, result->second.scheme) << "\n";
            exit_code = kExitYes;
        } else {
            doc["verdict"] = "no";
            human << "verdict: no (no budget up to the bound works)\n";
            exit_code = kExitNo;
        }
    };
    if (strong)
        fill(opt_strong(g, f, opt, &stats));
    else
        fill(opt_weak(g, f, opt, &stats));
    doc["counters"] = counters_to_json(stats);
    emit(out, args.json_output, doc, human.str());
    return exit_code;
}

int run_exact(const CommonArgs& args, bool strong, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    Gr1Formula f = parse_formula(args.spec_text);
    std::shared_ptr<LpDirDumper> dumper;
    SolveOptions opt = make_options(args, dumper);
    SolveStats stats;

    bool exact = strong ? exact_strong(g, f, args.budget, opt, &stats)
                        : exact_weak(g, f, args.budget, opt, &stats);
    json doc{{"schema", 1},
             {"command", strong ? "exact-strong" : "exact-weak"},
             {"budget", args.budget},
             {"verdict", exact ? "yes" : "no"},
             {"counters", counters_to_json(stats)}};
    std::ostringstream human;
    human << "verdict: " << (exact ? "yes" : "no") << " (budget " << args.budget
          << (exact ? " is" : " is not") << " the optimum)\n";
    emit(out, args.json_output, doc, human.str());
    return exact ? kExitYes : kExitNo;
}

int run_unique(const CommonArgs& args, bool strong, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    Gr1Formula f = parse_formula(args.spec_text);
    std::shared_ptr<LpDirDumper> dumper;
    SolveOptions opt = make_options(args, dumper);
    SolveStats stats;

    auto unique = strong ? unique_opt_strong(g, f, opt, &stats)
                         : unique_opt_weak(g, f, opt, &stats);
    json doc{{"schema", 1},
             {"command", strong ? "unique-strong" : "unique-weak"},
             {"counters", counters_to_json(stats)}};
    std::ostringstream human;
    int exit_code;
    if (!unique) {
        doc["verdict"] = "no-optimum";
        human << "verdict: no-optimum (no budget works at all)\n";
        exit_code = kExitNo;
    } else {
        doc["verdict"] = *unique ? "yes" : "no";
        doc["unique"] = *unique;
        human << "verdict: " << (*unique ? "yes (optimal scheme is unique)"
                                         : "no (several optimal schemes)") << "\n";
        exit_code = *unique ? kExitYes : kExitNo;
    }
    emit(out, args.json_output, doc, human.str());
    return exit_code;
}

int run_count(const CommonArgs& args, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    std::int64_t m = static_cast<std::int64_t>(g.num_players()) * g.num_states();
    Int count = count_schemes(m, args.budget);
    json doc{{"schema", 1},
             {"command", "count"},
             {"budget", args.budget},
             {"cells", m},
             {"count", count.str()}};
    std::ostringstream human;
    human << count.str() << "\n";
    emit(out, args.json_output, doc, human.str());
    return kExitYes;
}

int run_punish(const CommonArgs& args, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    PunishmentTable table = punishment_table(g);
    json rows = json::array();
    std::ostringstream human;
    for (int i = 0; i < g.num_players(); ++i)
        for (int s = 0; s < g.num_states(); ++s) {
            json row{{"player", g.arena.players[i]},
                     {"state", g.arena.states[s]},
                     {"value", rational_to_string(table.values[i][s])}};
            json strat;
            for (int j = 0; j < g.num_players(); ++j)
                if (j != i)
                    strat[g.arena.players[j]] =
                        g.arena.actions[s][j][table.coalition[i][s][j]];
            row["coalition"] = strat;
            rows.push_back(row);
            human << g.arena.players[i] << " " << g.arena.states[s] << " "
                  << rational_to_string(table.values[i][s]) << "\n";
        }
    json doc{{"schema", 1}, {"command", "punish"}, {"table", rows}};
    emit(out, args.json_output, doc, human.str());
    return kExitYes;
}

// ---- oracle subcommands ----------------------------------------------------

int run_oracle_check(const CommonArgs& args, const OracleConfig& cfg, bool strong,
                     std::ostream& out) {
    Game g = load_game_file(args.game_file);
    Gr1Formula f = parse_formula(args.spec_text);
    bool yes = strong ? brute_force_strong(g, f, args.budget, cfg)
                      : brute_force_weak(g, f, args.budget, cfg);
    json doc{{"schema", 1},
             {"command", strong ? "oracle check-strong" : "oracle check-weak"},
             {"budget", args.budget},
             {"verdict", yes ? "yes" : "no"}};
    emit(out, args.json_output, doc, std::string("verdict: ") + (yes ? "yes" : "no") + "\n");
    return yes ? kExitYes : kExitNo;
}

int run_oracle_punish(const CommonArgs& args, const OracleConfig& cfg, std::ostream& out) {
    Game g = load_game_file(args.game_file);
    json rows = json::array();
    std::ostringstream human;
    for (int i = 0; i < g.num_players(); ++i) {
        std::vector<Rational> values = brute_force_punishment(g, i, cfg);
        for (int s = 0; s < g.num_states(); ++s) {
            rows.push_back({{"player", g.arena.players[i]},
                            {"state", g.arena.states[s]},
                            {"value", rational_to_string(values[s])}});
            human << g.arena.players[i] << " " << g.arena.states[s] << " "
                  << rational_to_string(values[s]) << "\n";
        }
    }
    json doc{{"schema", 1}, {"command", "oracle punish"}, {"table", rows}};
    emit(out, args.json_output, doc, human.str());
    return kExitYes;
}

int run_oracle_lassos(const CommonArgs& args, const OracleConfig& cfg, bool ne_only,
                      std::ostream& out) {
    Game g = load_game_file(args.game_file);
    std::vector<LassoPath> lassos =
        ne_only ? brute_force_ne_lassos(g, cfg) : enumerate_lassos(g, cfg);
    json arr = json::array();
    std::ostringstream human;
    for (const auto& path : lassos) {
        arr.push_back(lasso_to_json(g, path));
        human << lasso_to_string(g, path) << "\n";
    }
    human << lassos.size() << (ne_only ? " equilibrium" : "") << " lassos\n";
    json doc{{"schema", 1},
             {"command", ne_only ? "oracle ne-lassos" : "oracle lassos"},
             {"lassos", arr}};
    emit(out, args.json_output, doc, human.str());
    return kExitYes;
}

// ---- selftest ---------------------------------------------------------------

struct SelftestArgs {
    std::uint64_t seed = 42;
    int cases = 25;
    bool json_output = false;
    int threads = 0;
};

int run_selftest(const SelftestArgs& args, std::ostream& out) {
    RandomGameSpec spec;
    spec.min_states = 2;
    spec.max_states = 3;
    spec.min_players = 1;
    spec.max_players = 2;
    spec.max_actions = 2;
    spec.weight_abs = 2;

    SolveOptions opt;
    opt.threads = args.threads;

    Rng rng(args.seed);
    json cases = json::array();
    int disagreements = 0;

    for (int c = 0; c < args.cases; ++c) {
        Game g = random_game(rng, spec);
        Gr1Formula f = random_formula(rng, g, 1, 1);
        std::int64_t budget = rng.uniform(0, 1);

        OracleConfig cfg;

        bool weak_solver = static_cast<bool>(weak_implementation(g, f, budget, opt));
        bool weak_oracle = brute_force_weak(g, f, budget, cfg);
        bool strong_solver = static_cast<bool>(strong_implementation(g, f, budget, opt));
        bool strong_oracle = brute_force_strong(g, f, budget, cfg);

        // Equilibrium characterisation: oracle filter vs. grid certification.
        bool ne_agree = true;
        {
            PunMatrix pun = punishment_values(g);
            std::vector<LassoPath> all = enumerate_lassos(g, cfg);
            std::vector<LassoPath> oracle_ne = brute_force_ne_lassos(g, cfg);
            auto in_oracle = [&](const LassoPath& p) {
                for (const auto& q : oracle_ne)
                    if (same_path(p, q)) return true;
                return false;
            };
            for (const auto& path : all)
                if (certify_ne_lasso(g, pun, path) != in_oracle(path)) ne_agree = false;
        }

        bool agree = weak_solver == weak_oracle && strong_solver == strong_oracle && ne_agree;
        if (!agree) ++disagreements;
        cases.push_back({{"case", c},
                         {"states", g.num_states()},
                         {"players", g.num_players()},
                         {"budget", budget},
                         {"formula", to_string(f)},
                         {"weak", {{"solver", weak_solver}, {"oracle", weak_oracle}}},
                         {"strong", {{"solver", strong_solver}, {"oracle", strong_oracle}}},
                         {"ne_characterisation_agrees", ne_agree},
                         {"agree", agree}});
    }

    json doc{{"schema", 1},
             {"command", "selftest"},
             {"seed", args.seed},
             {"cases", cases},
             {"disagreements", disagreements},
             {"verdict", disagreements == 0 ? "pass" : "fail"}};
    if (args.json_output) {
        out << doc.dump(2) << "\n";
    } else {
        out << "selftest: " << args.cases << " cases, " << disagreements
            << " disagreements -> " << (disagreements == 0 ? "pass" : "fail") << "\n";
    }
    return disagreements == 0 ? kExitYes : kExitNo;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"equilibrium design for mean-payoff games with GR(1) objectives"};
    app.require_subcommand(1);

    CommonArgs common;
    SelftestArgs selftest;
    OracleConfig oracle_cfg;

    auto add_game = [&](CLI::App* cmd) {
        cmd->add_option("--game", common.game_file, "game description file")->required();
    };
    auto add_spec = [&](CLI::App* cmd) {
        cmd->add_option("--spec", common.spec_text, "GR(1) objective")->required();
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget", common.budget, "subsidy budget")
            ->required()
            ->check(CLI::NonNegativeNumber);
    };
    auto add_solver_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--json", common.json_output, "structured output");
        cmd->add_option("--threads", common.threads, "worker threads (0 = auto)");
        cmd->add_flag("--linear-scan", common.linear_scan,
                      "scan budgets upward instead of binary search");
        cmd->add_option("--scheme-cap", common.scheme_cap, "max schemes to enumerate");
        cmd->add_option("--dump-lp", common.dump_lp_dir,
                        "write each solved LP into this directory");
    };

    CLI::App* check_weak = app.add_subcommand("check-weak", "decide Weak Implementation");
    add_game(check_weak); add_spec(check_weak); add_budget(check_weak); add_solver_flags(check_weak);
    CLI::App* check_strong = app.add_subcommand("check-strong", "decide Strong Implementation");
    add_game(check_strong); add_spec(check_strong); add_budget(check_strong); add_solver_flags(check_strong);
    CLI::App* opt_weak_cmd = app.add_subcommand("opt-weak", "minimal budget for Weak Implementation");
    add_game(opt_weak_cmd); add_spec(opt_weak_cmd); add_solver_flags(opt_weak_cmd);
    CLI::App* opt_strong_cmd = app.add_subcommand("opt-strong", "minimal budget for Strong Implementation");
    add_game(opt_strong_cmd); add_spec(opt_strong_cmd); add_solver_flags(opt_strong_cmd);
    CLI::App* exact_weak_cmd = app.add_subcommand("exact-weak", "is the budget exactly optimal (weak)");
    add_game(exact_weak_cmd); add_spec(exact_weak_cmd); add_budget(exact_weak_cmd); add_solver_flags(exact_weak_cmd);
    CLI::App* exact_strong_cmd = app.add_subcommand("exact-strong", "is the budget exactly optimal (strong)");
    add_game(exact_strong_cmd); add_spec(exact_strong_cmd); add_budget(exact_strong_cmd); add_solver_flags(exact_strong_cmd);
    CLI::App* unique_weak_cmd = app.add_subcommand("unique-weak", "is the optimal weak scheme unique");
    add_game(unique_weak_cmd); add_spec(unique_weak_cmd); add_solver_flags(unique_weak_cmd);
    CLI::App* unique_strong_cmd = app.add_subcommand("unique-strong", "is the optimal strong scheme unique");
    add_game(unique_strong_cmd); add_spec(unique_strong_cmd); add_solver_flags(unique_strong_cmd);

    CLI::App* count_cmd = app.add_subcommand("count", "number of admissible schemes");
    add_game(count_cmd); add_budget(count_cmd);
    count_cmd->add_flag("--json", common.json_output, "structured output");

    CLI::App* punish_cmd = app.add_subcommand("punish", "punishment values per (player, state)");
    add_game(punish_cmd);
    punish_cmd->add_flag("--json", common.json_output, "structured output");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "brute-force reference checks");
    oracle_cmd->require_subcommand(1);
    auto add_oracle_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--json", common.json_output, "structured output");
        cmd->add_option("--max-cycle", oracle_cfg.max_cycle, "cycle length cap");
        cmd->add_option("--max-prefix", oracle_cfg.max_prefix, "prefix length cap");
    };
    CLI::App* o_weak = oracle_cmd->add_subcommand("check-weak", "exhaustive weak check");
    add_game(o_weak); add_spec(o_weak); add_budget(o_weak); add_oracle_flags(o_weak);
    CLI::App* o_strong = oracle_cmd->add_subcommand("check-strong", "exhaustive strong check");
    add_game(o_strong); add_spec(o_strong); add_budget(o_strong); add_oracle_flags(o_strong);
    CLI::App* o_punish = oracle_cmd->add_subcommand("punish", "punishment values by brute force");
    add_game(o_punish); add_oracle_flags(o_punish);
    CLI::App* o_lassos = oracle_cmd->add_subcommand("lassos", "enumerate simple lassos");
    add_game(o_lassos); add_oracle_flags(o_lassos);
    CLI::App* o_ne = oracle_cmd->add_subcommand("ne-lassos", "enumerate equilibrium lassos");
    add_game(o_ne); add_oracle_flags(o_ne);

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "randomised solver-vs-oracle agreement");
    selftest_cmd->add_option("--seed", selftest.seed, "random seed");
    selftest_cmd->add_option("--cases", selftest.cases, "number of cases");
    selftest_cmd->add_flag("--json", selftest.json_output, "structured output");
    selftest_cmd->add_option("--threads", selftest.threads, "worker threads (0 = auto)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitYes;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInputError;
    }

    try {
        if (*check_weak) return run_check(common, false, out);
        if (*check_strong) return run_check(common, true, out);
        if (*opt_weak_cmd) return run_opt(common, false, out);
        if (*opt_strong_cmd) return run_opt(common, true, out);
        if (*exact_weak_cmd) return run_exact(common, false, out);
        if (*exact_strong_cmd) return run_exact(common, true, out);
        if (*unique_weak_cmd) return run_unique(common, false, out);
        if (*unique_strong_cmd) return run_unique(common, true, out);
        if (*count_cmd) return run_count(common, out);
        if (*punish_cmd) return run_punish(common, out);
        if (*oracle_cmd) {
            if (*o_weak) return run_oracle_check(common, oracle_cfg, false, out);
            if (*o_strong) return run_oracle_check(common, oracle_cfg, true, out);
            if (*o_punish) return run_oracle_punish(common, oracle_cfg, out);
            if (*o_lassos) return run_oracle_lassos(common, oracle_cfg, false, out);
            if (*o_ne) return run_oracle_lassos(common, oracle_cfg, true, out);
        }
        if (*selftest_cmd) return run_selftest(selftest, out);
        err << "error: no subcommand\n";
        return kExitInputError;
    } catch (const ResourceLimitError& e) {
        json doc{{"schema", 1}, {"verdict", "resource-limit"}, {"reason", e.what()}};
        if (common.json_output || selftest.json_output)
            out << doc.dump(2) << "\n";
        err << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

} // namespace eqdesign::cli
