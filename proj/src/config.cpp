/*
 * Copyright 2026 The skbudget Authors
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

#include "skbudget/config.hpp"

#include "skbudget/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace skbudget {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + text + "'");
    }
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an integer, got '" + text + "'");
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) parts.push_back(trim(cur));
    return parts;
}

} // namespace

std::vector<double> parse_double_list(const std::string& text) {
    const std::string t = trim(text);
    for (const char* fn : {"linspace", "logspace"}) {
        const std::string prefix = std::string(fn) + "(";
        if (t.rfind(prefix, 0) == 0 && t.back() == ')') {
            const auto args =
                split_commas(t.substr(prefix.size(), t.size() - prefix.size() - 1));
            if (args.size() != 3)
                throw ConfigError(std::string(fn) + " needs (start, stop, count)");
            const double a = parse_double(args[0], fn);
            const double b = parse_double(args[1], fn);
            const std::int64_t n = parse_int(args[2], fn);
            if (n < 2) throw ConfigError(std::string(fn) + ": count must be >= 2");
            std::vector<double> out(static_cast<std::size_t>(n));
            const bool log = std::string(fn) == "logspace";
            if (log && !(a > 0.0 && b > 0.0))
                throw ConfigError("logspace endpoints must be positive");
            for (std::int64_t i = 0; i < n; ++i) {
                const double f = static_cast<double>(i) / static_cast<double>(n - 1);
                out[static_cast<std::size_t>(i)] =
                    log ? std::exp(std::log(a) + f * (std::log(b) - std::log(a)))
                        : a + f * (b - a);
            }
            out.front() = a;
            out.back() = b;
            return out;
        }
    }
    std::vector<double> out;
    for (const auto& part : split_commas(t))
        out.push_back(parse_double(part, "list"));
    return out;
}

LinkPair ExperimentConfig::link() const {
    LinkPair lp{ChannelModel::from_db(ChannelFamily::Exponential, main_snr_db),
                ChannelModel::from_db(ChannelFamily::Exponential, eve_snr_db)};
    if (tx_snr_db)
        lp.tx = ChannelModel::from_db(ChannelFamily::Exponential, *tx_snr_db);
    return lp;
}

SchemeSpec ExperimentConfig::scheme() const {
    return scheme_kind == SchemeKind::Deterministic
               ? SchemeSpec::deterministic()
               : SchemeSpec::random_tx(tx_prob);
}

GridSpec ExperimentConfig::grid() const {
    return GridSpec{b_min, b_max, step, t_max};
}

void ExperimentConfig::set(const std::string& dotted_key,
                           const std::string& value) {
    const auto dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override '" + dotted_key + "': expected section.key");
    const std::string section = trim(dotted_key.substr(0, dot));
    const std::string key = trim(dotted_key.substr(dot + 1));
    const std::string where = section + "." + key;
    const std::string v = trim(value);

    if (section == "link") {
        if (key == "main_snr_db") main_snr_db = parse_double(v, where);
        else if (key == "eve_snr_db") eve_snr_db = parse_double(v, where);
        else if (key == "tx_snr_db") tx_snr_db = parse_double(v, where);
        else throw ConfigError(where + ": unknown key");
    } else if (section == "scheme") {
        if (key == "kind") {
            if (v == "deterministic") scheme_kind = SchemeKind::Deterministic;
            else if (v == "random") scheme_kind = SchemeKind::RandomTx;
            else throw ConfigError(where + ": expected 'deterministic' or 'random'");
        } else if (key == "tx_prob") {
            tx_prob = parse_double(v, where);
        } else {
            throw ConfigError(where + ": unknown key");
        }
    } else if (section == "grid") {
        if (key == "step") step = parse_double(v, where);
        else if (key == "b_min") b_min = parse_double(v, where);
        else if (key == "b_max") b_max = parse_double(v, where);
        else if (key == "t_max") t_max = static_cast<int>(parse_int(v, where));
        else throw ConfigError(where + ": unknown key");
    } else if (section == "targets") {
        if (key == "budgets") budgets = parse_double_list(v);
        else if (key == "taus") {
            taus.clear();
            for (double d : parse_double_list(v)) {
                if (d < 0 || d != std::floor(d))
                    throw ConfigError(where + ": taus must be nonnegative integers");
                taus.push_back(static_cast<int>(d));
            }
        }
        else if (key == "epsilons") epsilons = parse_double_list(v);
        else if (key == "tx_probs") tx_probs = parse_double_list(v);
        else throw ConfigError(where + ": unknown key");
    } else if (section == "mc") {
        if (key == "trials") {
            const std::int64_t n = parse_int(v, where);
            if (n < 1) throw ConfigError(where + ": trials must be >= 1");
            trials = static_cast<std::uint64_t>(n);
        } else if (key == "seed") {
            seed = static_cast<std::uint64_t>(parse_int(v, where));
        } else if (key == "horizon") {
            horizon = static_cast<int>(parse_int(v, where));
        } else {
            throw ConfigError(where + ": unknown key");
        }
    } else if (section == "ultimate") {
        if (key == "nodes") {
            const std::int64_t n = parse_int(v, where);
            if (n < 0) throw ConfigError(where + ": nodes must be >= 0");
            nodes = static_cast<std::size_t>(n);
        } else if (key == "s_max") {
            s_max = parse_double(v, where);
        } else {
            throw ConfigError(where + ": unknown key");
        }
    } else if (section == "output") {
        if (key == "path") out_path = v;
        else if (key == "format") {
            if (v != "csv") throw ConfigError(where + ": only 'csv' is supported");
        } else {
            throw ConfigError(where + ": unknown key");
        }
    } else {
        throw ConfigError("unknown section '" + section + "'");
    }
}

void ExperimentConfig::validate() const {
    grid().validate();
    scheme().validate();
    link(); // throws on non-positive SNR
    if (trials < 1) throw ConfigError("mc.trials must be >= 1");
    if (horizon < 1) throw ConfigError("mc.horizon must be >= 1");
    for (double e : epsilons)
        if (!(e > 0.0 && e < 1.0))
            throw ConfigError("targets.epsilons must lie in (0, 1)");
    for (int tau : taus)
        if (tau < 0 || tau > t_max)
            throw ConfigError("targets.taus must lie within grid.t_max");
    for (double p : tx_probs)
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError("targets.tx_probs must lie in [0, 1]");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::ostringstream where;
        where << path << ":" << line_no;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where.str() + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where.str() + ": expected key = value");
        if (section.empty())
            throw ConfigError(where.str() + ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            cfg.set(section + "." + key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where.str() + ": " + e.what());
        }
    }
    return cfg;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace skbudget
