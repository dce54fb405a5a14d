/*
 * Copyright 2026 The energy-games Authors
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

#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <energy_games/energy_games.hpp>

namespace eg::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kInput = 3, kInternal = 4 };

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

inline std::string join_lines(const std::vector<std::string>& lines) {
    std::string s;
    for (const auto& l : lines) s += l + '\n';
    return s;
}

inline void print_potential(std::ostream& out, const SolveReport& rep) {
    out << "f:";
    for (VertexId v = 0; v < rep.f.size(); ++v) out << ' ' << v << '=' << format_value(rep.f[v]);
    out << '\n';
    if (!rep.winners.empty()) {
        out << "winners:";
        for (VertexId v = 0; v < rep.winners.size(); ++v) out << ' ' << v << '=' << to_string(rep.winners[v]);
        out << '\n';
    }
}

inline void print_violations(std::ostream& out, const std::vector<Violation>& vs) {
    for (const auto& v : vs) {
        out << "violation " << to_string(v.lemma) << " at event " << v.event_index << ": " << v.detail << '\n';
    }
}

// Annotated trace: every line, followed by the violations raised at it.
inline void print_narrated(std::ostream& out, const SolveReport& rep, const CorpusGame& c) {
    std::multimap<std::size_t, const Violation*> at;
    for (const auto& v : rep.violations) at.emplace(v.event_index, &v);
    const auto marks = match_events(rep.trace, c.expected_events);
    for (std::size_t i = 0; i < rep.trace.size(); ++i) {
        out << "  " << rep.trace[i];
        if (marks) {
            for (std::size_t k = 0; k < marks->size(); ++k) {
                if ((*marks)[k] == i) out << "    # " << c.expected_events[k].provenance;
            }
        }
        out << '\n';
        auto [b, e] = at.equal_range(i);
        for (auto it = b; it != e; ++it) out << "    !! " << to_string(it->second->lemma) << ": " << it->second->detail << '\n';
    }
    out << "  f =";
    for (std::size_t v = 0; v < rep.f.size(); ++v) out << ' ' << c.names[v] << ':' << format_value(rep.f[static_cast<VertexId>(v)]);
    out << "  (" << to_string(rep.outcome) << ")\n";
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Energy game and zero-threshold mean-payoff game solver"};
    app.require_subcommand(1);

    const std::map<std::string, SolverKind> engines{
        {"fixed", SolverKind::Fixed}, {"buggy", SolverKind::Buggy}, {"brim", SolverKind::Brim}};

    std::string file, trace_out, json_out, out_path;
    SolverKind engine = SolverKind::Fixed;
    bool raw = false;

    auto* solve_cmd = app.add_subcommand("solve", "Solve a game");
    solve_cmd->add_option("file", file, "Game file (.eg)")->required();
    solve_cmd->add_option("--engine", engine, "fixed | buggy | brim")->transform(CLI::CheckedTransformer(engines));
    auto* raw_flag = solve_cmd->add_flag("--raw", raw, "Solve the game as given");
    solve_cmd->add_flag("--preprocess", "Remove Min-forced negative cycles and add the sink (default)")
        ->excludes(raw_flag);
    solve_cmd->add_option("--trace", trace_out, "Write the event trace here ('-' for stdout)");
    solve_cmd->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

    auto* check_cmd = app.add_subcommand("check", "Run a DKZ engine with the invariant checkers");
    check_cmd->add_option("file", file, "Game file (.eg)")->required();
    check_cmd->add_option("--engine", engine, "fixed | buggy")
        ->required()
        ->transform(CLI::CheckedTransformer(std::map<std::string, SolverKind>{{"fixed", SolverKind::Fixed},
                                                                              {"buggy", SolverKind::Buggy}}));
    check_cmd->add_flag("--raw", raw, "Skip preprocessing");
    check_cmd->add_option("--json", json_out, "Write the JSON report here ('-' for stdout)");

    auto* diff_cmd = app.add_subcommand("diff", "Compare the fixed DKZ engine with value iteration");
    diff_cmd->add_option("file", file, "Game file (.eg)")->required();

    GenParams gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random game");
    gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
    gen_cmd->add_option("--w", gen.max_abs_weight, "Maximum absolute weight")->required();
    gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->required();
    gen_cmd->add_option("--min-deg", gen.min_out_degree, "Minimum out-degree");
    gen_cmd->add_option("--max-deg", gen.max_out_degree, "Maximum out-degree");
    gen_cmd->add_option("--min-fraction", gen.min_owner_fraction, "Fraction of Min-owned vertices");
    gen_cmd->add_option("--out", out_path, "Output file ('-' for stdout)")->default_val("-");

    std::string which;
    auto* repro_cmd = app.add_subcommand("repro", "Replay one of the three counterexamples");
    repro_cmd->add_option("game", which, "G1 | G2 | G3")->required()->check(CLI::IsMember({"G1", "G2", "G3"}));

    VertexId vertex = 0;
    auto* mpg_cmd = app.add_subcommand("mpg-sign", "Brute-force zero-threshold mean-payoff winner");
    mpg_cmd->add_option("file", file, "Game file (.eg)")->required();
    mpg_cmd->add_option("--vertex", vertex, "Start vertex")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (solve_cmd->parsed()) {
            const auto g = parse_game(read_file(file));
            SolveOptions opt;
            opt.solver = engine;
            opt.preprocess = !raw;
            opt.record_trace = !trace_out.empty();
            const auto rep = solve(g, opt);
            if (!trace_out.empty()) write_output(trace_out, join_lines(rep.trace), out);
            if (!json_out.empty()) write_output(json_out, serialize_report(rep), out);
            if (json_out != "-" && trace_out != "-") print_potential(out, rep);
            if (rep.outcome != Outcome::Completed) {
                err << "solver stopped: " << to_string(rep.outcome) << '\n';
                return engine == SolverKind::Buggy ? kFailure : kInternal;
            }
            return kOk;
        }
        if (check_cmd->parsed()) {
            const auto g = parse_game(read_file(file));
            SolveOptions opt;
            opt.solver = engine;
            opt.preprocess = !raw;
            const auto rep = solve(g, opt);
            if (!json_out.empty()) write_output(json_out, serialize_report(rep), out);
            print_violations(out, rep.violations);
            out << rep.violations.size() << " violation(s), outcome " << to_string(rep.outcome) << '\n';
            return rep.violations.empty() && rep.outcome == Outcome::Completed ? kOk : kFailure;
        }
        if (diff_cmd->parsed()) {
            const auto g = parse_game(read_file(file));
            const auto r = differential_solve(g);
            out << "dkz :";
            for (const auto x : r.dkz.values()) out << ' ' << format_value(x);
            out << "\nbrim:";
            for (const auto x : r.brim.values()) out << ' ' << format_value(x);
            out << '\n' << (r.equal ? "match" : "MISMATCH") << '\n';
            return r.equal ? kOk : kFailure;
        }
        if (gen_cmd->parsed()) {
            write_output(out_path, serialize_game(generate_random_game(gen)), out);
            return kOk;
        }
        if (repro_cmd->parsed()) {
            const auto id = which == "G1"   ? CorpusId::G1RightSnapshot
                            : which == "G2" ? CorpusId::G2
                                            : CorpusId::G3RightSnapshot;
            const auto c = corpus_game(id);
            const auto r = reproduce(c);
            out << to_string(id) << " buggy engine:\n";
            print_narrated(out, r.buggy, c);
            out << to_string(id) << " fixed engine:\n";
            print_narrated(out, r.fixed, c);
            out << "buggy reproduces the counterexample: " << (r.buggy_matches ? "yes" : "NO") << '\n';
            out << "fixed engine clean: " << (r.fixed_clean ? "yes" : "NO") << '\n';
            return r.ok() ? kOk : kFailure;
        }
        if (mpg_cmd->parsed()) {
            const auto g = parse_game(read_file(file));
            out << to_string(brute_force_mpg_sign(g, vertex)) << '\n';
            return kOk;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const ContractViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const BudgetExhausted& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

} // namespace eg::cli
