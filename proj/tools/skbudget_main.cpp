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

#include "skbudget/bounds.hpp"
#include "skbudget/config.hpp"
#include "skbudget/errors.hpp"
#include "skbudget/finite_time.hpp"
#include "skbudget/latency.hpp"
#include "skbudget/montecarlo.hpp"
#include "skbudget/net_usage.hpp"
#include "skbudget/ultimate_ruin.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace skbudget;

constexpr double kSolverAdjustTol = 1e-9;
constexpr double kNystromClampTol = 1e-6;

struct Diagnostics {
    std::vector<std::string> violations;

    void check(bool ok, const std::string& line) {
        if (!ok) violations.push_back(line);
    }
    bool clean() const { return violations.empty(); }
    void print() const {
        if (clean()) return;
        std::cerr << "DIAGNOSTICS:\n";
        for (const auto& v : violations) std::cerr << "  " << v << "\n";
    }
};

std::ofstream open_output(const std::string& path) {
    if (path.empty())
        throw ConfigError("no output path: pass --out or set [output] path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

NetUsageGridOptions net_grid(const ExperimentConfig& cfg) {
    NetUsageGridOptions opts;
    opts.step = cfg.step;
    return opts;
}

int cmd_outage(const ExperimentConfig& cfg, const std::string& out_path) {
    if (cfg.budgets.empty())
        throw ConfigError("outage: [targets] budgets must not be empty");
    for (double b0 : cfg.budgets)
        if (b0 > cfg.b_max)
            throw ConfigError("outage: budget target exceeds grid.b_max");

    const LinkPair link = cfg.link();
    const SchemeSpec scheme = cfg.scheme();
    const GriddedDistribution dist = build_net_usage(link, scheme, net_grid(cfg));
    const SurvivalSurface surface = solve_survival(dist, cfg.grid());

    std::ofstream out = open_output(out_path);
    out << "t,b0,psi_solver,psi_mc,psi_mc_se\n";
    for (std::size_t i = 0; i < cfg.budgets.size(); ++i) {
        const double b0 = cfg.budgets[i];
        const TrajectoryStats mc = simulate_outage(
            link, scheme, b0, cfg.t_max, cfg.trials, cfg.seed + i);
        for (int t = 1; t <= cfg.t_max; ++t) {
            out << t << ',' << format_number(b0) << ','
                << format_number(outage_at(surface, t, b0)) << ','
                << format_number(mc.outage_by_t[static_cast<std::size_t>(t)].probability)
                << ','
                << format_number(mc.outage_by_t[static_cast<std::size_t>(t)].std_error)
                << '\n';
        }
    }

    Diagnostics diag;
    diag.check(surface.diagnostics().max_adjustment < kSolverAdjustTol,
               "survival solver clamp " +
                   format_number(surface.diagnostics().max_adjustment) +
                   " exceeds " + format_number(kSolverAdjustTol));
    diag.print();
    return diag.clean() ? 0 : 2;
}

int cmd_budget(const ExperimentConfig& cfg, const std::string& out_path) {
    if (cfg.taus.empty() || cfg.epsilons.empty())
        throw ConfigError("budget: [targets] taus and epsilons must not be empty");

    const LinkPair link = cfg.link();
    const SchemeSpec scheme = cfg.scheme();
    const GriddedDistribution dist = build_net_usage(link, scheme, net_grid(cfg));
    const SurvivalSurface surface = solve_survival(dist, cfg.grid());
    const double e_theta = rate_moment(RateKind::SKG, link, 1).value;

    std::ofstream out = open_output(out_path);
    out << "epsilon,tau,b0_required,mean_latency_slots\n";
    for (int tau : cfg.taus) {
        for (double eps : cfg.epsilons) {
            const double b_req = required_budget(surface, tau, eps);
            // One recharge slot yields one channel realization, so the mean
            // recharge latency in slots is b0 / E[theta].
            out << format_number(eps) << ',' << tau << ','
                << format_number(b_req) << ',' << format_number(b_req / e_theta)
                << '\n';
        }
    }

    Diagnostics diag;
    diag.check(surface.diagnostics().max_adjustment < kSolverAdjustTol,
               "survival solver clamp " +
                   format_number(surface.diagnostics().max_adjustment) +
                   " exceeds " + format_number(kSolverAdjustTol));
    diag.print();
    return diag.clean() ? 0 : 2;
}

int cmd_ultimate(const ExperimentConfig& cfg, const std::string& out_path) {
    if (cfg.budgets.empty())
        throw ConfigError("ultimate: [targets] budgets must not be empty");
    std::vector<double> probs = cfg.tx_probs;
    if (probs.empty()) {
        if (cfg.scheme_kind != SchemeKind::RandomTx)
            throw ConfigError(
                "ultimate: set [targets] tx_probs or a random scheme tx_prob");
        probs.push_back(cfg.tx_prob);
    }

    const LinkPair link = cfg.link();
    std::ofstream out = open_output(out_path);
    out << "b0,p,psi_nystrom,psi_mc_150,lundberg_bound\n";

    Diagnostics diag;
    for (std::size_t pi = 0; pi < probs.size(); ++pi) {
        const double p = probs[pi];
        const SchemeSpec scheme = SchemeSpec::random_tx(p);
        const GriddedDistribution dist = build_net_usage(link, scheme, net_grid(cfg));
        const UltimateRuinCurve curve =
            solve_ultimate_ruin(dist, cfg.nodes, cfg.s_max);
        diag.check(curve.clamp_magnitude() < kNystromClampTol,
                   "Nystrom clamp " + format_number(curve.clamp_magnitude()) +
                       " exceeds " + format_number(kNystromClampTol) +
                       " at p = " + format_number(p));
        for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
            const double b0 = cfg.budgets[bi];
            const MonteCarloEstimate mc = ultimate_ruin_mc_estimate(
                link, scheme, b0, cfg.horizon, cfg.trials,
                cfg.seed + pi * cfg.budgets.size() + bi);
            double lundberg;
            switch (curve.regime()) {
                case UltimateRuinCurve::Regime::Solved:
                    lundberg = std::exp(-curve.r_star() * std::max(b0, 0.0));
                    break;
                case UltimateRuinCurve::Regime::CertainRuin: lundberg = 1.0; break;
                default: lundberg = 0.0; break;
            }
            out << format_number(b0) << ',' << format_number(p) << ','
                << format_number(curve.evaluate(b0)) << ','
                << format_number(mc.value) << ',' << format_number(lundberg)
                << '\n';
        }
    }
    diag.print();
    return diag.clean() ? 0 : 2;
}

int cmd_moments(const ExperimentConfig& cfg) {
    const LinkPair link = cfg.link();
    const SchemeSpec scheme = cfg.scheme();
    const MomentResult e_theta = rate_moment(RateKind::SKG, link, 1);
    const MomentResult e_xi = rate_moment(RateKind::TX, link, 1);
    const GriddedDistribution dist = build_net_usage(link, scheme, net_grid(cfg));
    const double e_z = net_usage_mean(dist);
    const double var_z = net_usage_variance(dist);
    const double p_crit = e_theta.value / (e_theta.value + e_xi.value);

    std::cout << "E[theta]        = " << format_number(e_theta.value)
              << " bit (rel err " << format_number(e_theta.rel_error) << ")\n";
    std::cout << "E[xi]           = " << format_number(e_xi.value)
              << " bit (rel err " << format_number(e_xi.rel_error) << ")\n";
    std::cout << "E[Z]            = " << format_number(e_z) << " bit\n";
    std::cout << "Var(Z)          = " << format_number(var_z) << " bit^2\n";
    std::cout << "p_crit          = " << format_number(p_crit) << "\n";
    if (e_z >= 0.0) {
        std::cout << "r_star          = n/a (E[Z] >= 0: the budget is exhausted "
                     "with probability 1)\n";
    } else if (!has_positive_support(dist)) {
        std::cout << "r_star          = n/a (Z never positive: the budget cannot "
                     "be exhausted)\n";
    } else {
        const AdjustmentCoefficient coef = adjustment_coefficient(dist);
        std::cout << "r_star          = " << format_number(coef.r_star)
                  << " per bit (residual " << format_number(coef.residual)
                  << ")\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliability and latency analysis of secret-key budget systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> trials_override;
    std::vector<std::string> overrides;

    const auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", config_path, "experiment config file")
            ->required();
        if (needs_out)
            sub->add_option("--out", out_path, "output CSV path");
        sub->add_option("--seed", seed_override, "override mc.seed");
        sub->add_option("--trials", trials_override, "override mc.trials");
        sub->add_option("--set", overrides,
                        "override any config value as section.key=value");
    };

    CLI::App* outage = app.add_subcommand("outage", "outage probability over time");
    CLI::App* budget = app.add_subcommand("budget", "required budget and latency");
    CLI::App* ultimate = app.add_subcommand("ultimate", "ultimate ruin probability");
    CLI::App* moments = app.add_subcommand("moments", "rate and net-usage moments");
    add_common(outage, true);
    add_common(budget, true);
    add_common(ultimate, true);
    add_common(moments, false);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = load_config(config_path);
        for (const auto& kv : overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects section.key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (seed_override) cfg.seed = *seed_override;
        if (trials_override) cfg.trials = *trials_override;
        cfg.validate();
        const std::string out = out_path.empty() ? cfg.out_path : out_path;

        if (outage->parsed()) return cmd_outage(cfg, out);
        if (budget->parsed()) return cmd_budget(cfg, out);
        if (ultimate->parsed()) return cmd_ultimate(cfg, out);
        return cmd_moments(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "DIAGNOSTICS:\n  " << e.what() << "\n";
        return 2;
    } catch (const TruncationError& e) {
        std::cerr << "DIAGNOSTICS:\n  " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
