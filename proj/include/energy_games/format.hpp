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

#include <charconv>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "dkz.hpp"
#include "game.hpp"

namespace eg {

// The .eg game format, line oriented:
//
//   eg 1
//   v <id> <max|min>
//   e <src> <dst> <weight>
//
// '#' starts a comment. Ids are decimal naturals, dense after parsing
// (declared ids are kept; they must form 0..n-1).

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const auto b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line, const char* what) {
    Int x{};
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, x);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
    }
    return x;
}

} // namespace detail

inline GameGraph parse_game(std::string_view text) {
    std::map<VertexId, Player> decl;
    std::vector<std::pair<Edge, std::size_t>> edges;
    bool header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto tok = detail::split_ws(line);

        if (!header) {
            if (tok.size() != 2 || tok[0] != "eg") throw ParseError(line_no, "expected header 'eg 1'");
            if (tok[1] != "1") throw ParseError(line_no, "unsupported format version " + std::string(tok[1]));
            header = true;
            continue;
        }
        if (tok[0] == "v") {
            if (tok.size() != 3) throw ParseError(line_no, "expected 'v <id> <max|min>'");
            const auto id = detail::parse_int<VertexId>(tok[1], line_no, "vertex id");
            Player p;
            if (tok[2] == "max") {
                p = Player::Max;
            } else if (tok[2] == "min") {
                p = Player::Min;
            } else {
                throw ParseError(line_no, "bad owner '" + std::string(tok[2]) + "'");
            }
            if (!decl.emplace(id, p).second) throw ParseError(line_no, "vertex " + std::to_string(id) + " redeclared");
        } else if (tok[0] == "e") {
            if (tok.size() != 4) throw ParseError(line_no, "expected 'e <src> <dst> <weight>'");
            Edge e{detail::parse_int<VertexId>(tok[1], line_no, "vertex id"),
                   detail::parse_int<VertexId>(tok[2], line_no, "vertex id"),
                   detail::parse_int<Weight>(tok[3], line_no, "weight")};
            if (e.weight > kMaxAbsWeight || e.weight < -kMaxAbsWeight) {
                throw ParseError(line_no, "weight " + std::string(tok[3]) + " exceeds 2^40 in magnitude");
            }
            edges.emplace_back(e, line_no);
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
        }
    }
    if (!header) throw ParseError(line_no, "missing header 'eg 1'");

    std::vector<Player> owners;
    for (const auto& [id, p] : decl) {
        if (id != owners.size()) throw InputError("vertex ids must be 0.." + std::to_string(decl.size() - 1));
        owners.push_back(p);
    }
    std::vector<Edge> plain;
    for (const auto& [e, line] : edges) {
        if (e.src >= owners.size() || e.dst >= owners.size()) {
            throw ParseError(line, "edge references undeclared vertex");
        }
        plain.push_back(e);
    }
    return GameGraph(std::move(owners), std::move(plain));
}

inline std::string serialize_game(const GameGraph& g) {
    std::ostringstream out;
    out << "eg 1\n";
    for (VertexId v = 0; v < g.n(); ++v) out << "v " << v << ' ' << to_string(g.owner(v)) << '\n';
    for (const auto& e : g.edges()) out << "e " << e.src << ' ' << e.dst << ' ' << e.weight << '\n';
    return out.str();
}

inline std::string format_value(Value x) { return is_top(x) ? "inf" : std::to_string(x); }

/// One trace line per event: `U v f`, `C`, `D p1 p2 p3 delta`, `L delta b...`,
/// `R depth W`, `+L v`, `-L v`, `E src dst`.
inline std::string format_event(const TraceEvent& ev) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UpdateApplied>) {
                return "U " + std::to_string(x.v) + ' ' + std::to_string(x.new_f);
            } else if constexpr (std::is_same_v<T, CountsRecomputed>) {
                return "C";
            } else if constexpr (std::is_same_v<T, DeltaComputed>) {
                return "D " + format_value(x.p1) + ' ' + format_value(x.p2) + ' ' + format_value(x.p3) + ' ' +
                       format_value(x.delta);
            } else if constexpr (std::is_same_v<T, LiftApplied>) {
                std::string s = "L " + format_value(x.delta);
                for (const auto v : x.b) s += ' ' + std::to_string(v);
                return s;
            } else if constexpr (std::is_same_v<T, LAdded>) {
                return "+L " + std::to_string(x.v);
            } else if constexpr (std::is_same_v<T, LRemoved>) {
                return "-L " + std::to_string(x.v);
            } else if constexpr (std::is_same_v<T, RecursionLevel>) {
                return "R " + std::to_string(x.depth) + ' ' + std::to_string(x.w_level);
            } else {
                return "E " + std::to_string(x.src) + ' ' + std::to_string(x.dst);
            }
        },
        ev);
}

} // namespace eg
