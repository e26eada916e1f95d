// xlas — antenna selection and beamforming for mixed near/far-field XL-array downlink
// Copyright (C) 2026 xlas contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "xlas/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "xlas/common.hpp"
#include "xlas/greedy.hpp"
#include "xlas/rng.hpp"
#include "xlas/version.hpp"

using nlohmann::json;

namespace xlas
{

namespace
{

// Full double precision, locale-independent.
std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

SweepKind sweep_kind_from_name(const std::string &name)
{
    if (name == "none")
        return SweepKind::none;
    if (name == "budget_w" || name == "budget_dbm")
        return SweepKind::budget_w;
    if (name == "csi_eps")
        return SweepKind::csi_eps;
    if (name == "kappa_db")
        return SweepKind::kappa_db;
    if (name == "far_user_weight")
        return SweepKind::far_user_weight;
    if (name == "user_theta")
        return SweepKind::user_theta;
    if (name == "user_theta_offset")
        return SweepKind::user_theta_offset;
    throw std::invalid_argument("Unknown sweep kind: " + name);
}

std::string sweep_kind_name(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::none: return "none";
    case SweepKind::budget_w: return "budget_w";
    case SweepKind::csi_eps: return "csi_eps";
    case SweepKind::kappa_db: return "kappa_db";
    case SweepKind::far_user_weight: return "far_user_weight";
    case SweepKind::user_theta: return "user_theta";
    case SweepKind::user_theta_offset: return "user_theta_offset";
    }
    return "none";
}

} // namespace

ScenarioConfig parse_scenario(const std::string &json_text)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(std::string("Config is not valid JSON: ") + e.what());
    }

    ScenarioConfig config;
    config.name = root.value("name", "scenario");

    const auto &geom = root.at("geometry");
    config.geometry = ArrayGeometry(geom.at("n_antennas").get<arma::uword>(), geom.at("carrier_hz").get<double>(),
                                    geom.value("spacing_m", 0.0));

    if (!root.contains("users") || root["users"].empty())
        throw std::invalid_argument("Config field 'users' must list at least one user.");
    for (const auto &u : root["users"])
    {
        UserPlacement placement;
        if (u.contains("theta"))
        {
            placement.theta_lo = placement.theta_hi = u["theta"].get<double>();
        }
        else if (u.contains("theta_range"))
        {
            placement.theta_lo = u["theta_range"].at(0).get<double>();
            placement.theta_hi = u["theta_range"].at(1).get<double>();
        }
        else
        {
            throw std::invalid_argument("Each user needs 'theta' or 'theta_range'.");
        }
        if (u.contains("range_m"))
        {
            placement.range_m = u["range_m"].get<double>();
        }
        else if (u.contains("range_scale"))
        {
            placement.range_scale_lo = u["range_scale"].at(0).get<double>();
            placement.range_scale_hi = u["range_scale"].at(1).get<double>();
        }
        else
        {
            throw std::invalid_argument("Each user needs 'range_m' or 'range_scale'.");
        }
        placement.weight = u.value("weight", 1.0);
        config.users.push_back(placement);
    }

    if (root.contains("budget_dbm"))
        config.budget_w = dbm_to_watt(root["budget_dbm"].get<double>());
    else
        config.budget_w = root.value("budget_w", 1.0);
    if (root.contains("noise_dbm"))
        config.noise_w = dbm_to_watt(root["noise_dbm"].get<double>());
    else
        config.noise_w = root.value("noise_w", 1e-11);

    if (root.contains("channel"))
    {
        const auto &ch = root["channel"];
        const std::string type = ch.value("type", "los");
        if (type == "rician")
        {
            config.channel.rician = true;
            if (ch.contains("kappa_db"))
            {
                // null or the string "inf" select the pure-LoS limit.
                const auto &kd = ch["kappa_db"];
                if (kd.is_null() || (kd.is_string() && kd.get<std::string>() == "inf"))
                    config.channel.kappa_linear = 0.0;
                else
                    config.channel.kappa_linear = db_to_linear(kd.get<double>());
            }
            else
            {
                config.channel.kappa_linear = ch.value("kappa_linear", 1.0);
            }
            config.channel.num_paths = ch.value("paths", std::size_t{6});
        }
        else if (type != "los")
        {
            throw std::invalid_argument("Channel type must be 'los' or 'rician'.");
        }
    }

    if (root.contains("csi"))
    {
        const auto &csi = root["csi"];
        config.csi.eps = csi.value("eps", 0.0);
        const std::string mode = csi.value("mode", "per_entry");
        if (mode == "per_entry")
            config.csi.mode = CsiErrorMode::per_entry;
        else if (mode == "literal")
            config.csi.mode = CsiErrorMode::literal;
        else
            throw std::invalid_argument("CSI mode must be 'per_entry' or 'literal'.");
    }

    if (root.contains("seeds"))
    {
        for (const auto &s : root["seeds"])
            config.seeds.push_back(s.get<std::uint64_t>());
    }
    else if (root.contains("seed_count"))
    {
        const auto count = root["seed_count"].get<std::uint64_t>();
        const auto base = root.value("seed_base", std::uint64_t{1});
        for (std::uint64_t s = 0; s < count; ++s)
            config.seeds.push_back(base + s);
    }
    if (config.seeds.empty())
        throw std::invalid_argument("Config must list at least one seed.");

    if (!root.contains("schemes") || root["schemes"].empty())
        throw std::invalid_argument("Config field 'schemes' must list at least one scheme.");
    for (const auto &s : root["schemes"])
        config.schemes.push_back(s.get<std::string>());

    if (root.contains("sweep"))
    {
        const auto &sw = root["sweep"];
        config.sweep.kind = sweep_kind_from_name(sw.at("kind").get<std::string>());
        config.sweep.user = sw.value("user", std::size_t{0});
        // An empty value list is allowed and produces a header-only table.
        const bool dbm = sw.at("kind").get<std::string>() == "budget_dbm";
        for (const auto &v : sw.at("values"))
            config.sweep.values.push_back(dbm ? dbm_to_watt(v.get<double>()) : v.get<double>());
    }

    const std::string trace = root.value("trace", "summary");
    if (trace == "summary")
        config.trace = TraceKind::summary;
    else if (trace == "pdd_convergence")
        config.trace = TraceKind::pdd_convergence;
    else if (trace == "greedy_trajectory")
        config.trace = TraceKind::greedy_trajectory;
    else
        throw std::invalid_argument("Trace kind must be 'summary', 'pdd_convergence' or 'greedy_trajectory'.");

    config.random_trials = root.value("random_trials", std::size_t{200});
    config.num_subarrays = root.value("num_subarrays", std::size_t{5});
    config.min_active = root.value("min_active", std::size_t{1});
    config.oracle_max_antennas = root.value("oracle_max_antennas", std::size_t{12});

    if (root.contains("pdd"))
    {
        const auto &p = root["pdd"];
        config.pdd.rho0 = p.value("rho0", config.pdd.rho0);
        config.pdd.shrink = p.value("shrink", config.pdd.shrink);
        config.pdd.violation_tol = p.value("violation_tol", config.pdd.violation_tol);
        config.pdd.max_outer = p.value("max_outer", config.pdd.max_outer);
        config.pdd.max_inner = p.value("max_inner", config.pdd.max_inner);
        config.pdd.inner_tol = p.value("inner_tol", config.pdd.inner_tol);
        config.pdd.pg_iters = p.value("pg_iters", config.pdd.pg_iters);
        config.pdd.m_floor = p.value("m_floor", config.pdd.m_floor);
        config.pdd.min_active = p.value("min_active", config.pdd.min_active);
        config.pdd.binarize_threshold = p.value("binarize_threshold", config.pdd.binarize_threshold);
    }
    if (root.contains("power"))
    {
        const auto &p = root["power"];
        config.power.grid_points = p.value("grid_points", config.power.grid_points);
        config.power.sca_max_rounds = p.value("sca_max_rounds", config.power.sca_max_rounds);
        config.power.sca_tol = p.value("sca_tol", config.power.sca_tol);
        config.power.pg_steps = p.value("pg_steps", config.power.pg_steps);
    }

    config.original_scale = root.value("original_scale", "");
    return config;
}

std::string dump_scenario(const ScenarioConfig &config)
{
    json root;
    root["name"] = config.name;
    root["geometry"] = {{"n_antennas", config.geometry.n_antennas},
                        {"carrier_hz", config.geometry.carrier_hz},
                        {"spacing_m", config.geometry.spacing_m}};

    root["users"] = json::array();
    for (const auto &u : config.users)
    {
        json entry;
        if (u.theta_lo == u.theta_hi)
            entry["theta"] = u.theta_lo;
        else
            entry["theta_range"] = {u.theta_lo, u.theta_hi};
        if (u.range_m > 0.0)
            entry["range_m"] = u.range_m;
        else
            entry["range_scale"] = {u.range_scale_lo, u.range_scale_hi};
        entry["weight"] = u.weight;
        root["users"].push_back(entry);
    }

    root["budget_w"] = config.budget_w;
    root["noise_w"] = config.noise_w;

    if (config.channel.rician)
    {
        root["channel"] = {{"type", "rician"}, {"paths", config.channel.num_paths}};
        if (config.channel.kappa_linear == 0.0)
            root["channel"]["kappa_db"] = "inf";
        else
            root["channel"]["kappa_linear"] = config.channel.kappa_linear;
    }
    else
    {
        root["channel"] = {{"type", "los"}};
    }

    root["csi"] = {{"eps", config.csi.eps},
                   {"mode", config.csi.mode == CsiErrorMode::per_entry ? "per_entry" : "literal"}};
    root["seeds"] = config.seeds;
    root["schemes"] = config.schemes;

    if (config.sweep.kind != SweepKind::none)
        root["sweep"] = {{"kind", sweep_kind_name(config.sweep.kind)},
                         {"user", config.sweep.user},
                         {"values", config.sweep.values}};

    switch (config.trace)
    {
    case TraceKind::summary: root["trace"] = "summary"; break;
    case TraceKind::pdd_convergence: root["trace"] = "pdd_convergence"; break;
    case TraceKind::greedy_trajectory: root["trace"] = "greedy_trajectory"; break;
    }

    root["random_trials"] = config.random_trials;
    root["num_subarrays"] = config.num_subarrays;
    root["min_active"] = config.min_active;
    root["oracle_max_antennas"] = config.oracle_max_antennas;
    root["pdd"] = {{"rho0", config.pdd.rho0},
                   {"shrink", config.pdd.shrink},
                   {"violation_tol", config.pdd.violation_tol},
                   {"max_outer", config.pdd.max_outer},
                   {"max_inner", config.pdd.max_inner},
                   {"inner_tol", config.pdd.inner_tol},
                   {"pg_iters", config.pdd.pg_iters},
                   {"m_floor", config.pdd.m_floor},
                   {"min_active", config.pdd.min_active},
                   {"binarize_threshold", config.pdd.binarize_threshold}};
    root["power"] = {{"grid_points", config.power.grid_points},
                     {"sca_max_rounds", config.power.sca_max_rounds},
                     {"sca_tol", config.power.sca_tol},
                     {"pg_steps", config.power.pg_steps}};
    if (!config.original_scale.empty())
        root["original_scale"] = config.original_scale;
    return root.dump(2);
}

std::uint64_t config_hash(const ScenarioConfig &config)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : dump_scenario(config))
        h = (h ^ static_cast<unsigned char>(ch)) * 0x100000001b3ULL;
    return h;
}

void write_csv(const ResultTable &table, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot open output file: " + path);

    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << "\n";
    for (const auto &row : table.rows)
    {
        if (row.size() != table.columns.size())
            throw std::runtime_error("Row width does not match the header.");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << row[c];
        out << "\n";
    }
}

std::vector<UserSpec> draw_users(const ScenarioConfig &config, std::uint64_t row_seed)
{
    Rng rng(SeedSequence(row_seed).derive("placement"));

    std::vector<UserSpec> users;
    users.reserve(config.users.size());
    for (const auto &placement : config.users)
    {
        const double theta = placement.theta_lo == placement.theta_hi
                                 ? placement.theta_lo
                                 : rng.uniform(placement.theta_lo, placement.theta_hi);
        double range = placement.range_m;
        if (range == 0.0)
        {
            const double z = rayleigh_distance(config.geometry, theta);
            range = rng.uniform(placement.range_scale_lo, placement.range_scale_hi) * z;
        }
        users.emplace_back(config.geometry, theta, range, placement.weight);
    }
    return users;
}

Scenario realize_scenario(const ScenarioConfig &config, std::uint64_t row_seed, double budget_override,
                          const std::vector<UserSpec> &users, std::vector<ChannelVector> *clean_channels)
{
    const double beta = reference_gain(config.geometry);
    const SeedSequence seq(row_seed);

    std::vector<ChannelVector> clean;
    clean.reserve(users.size());
    for (std::size_t k = 0; k < users.size(); ++k)
    {
        if (config.channel.rician && config.channel.kappa_linear > 0.0)
            clean.push_back(rician_channel(config.geometry, users[k], beta, config.channel.kappa_linear,
                                           config.channel.num_paths, seq.derive("nlos", k)));
        else
            clean.push_back(los_channel(config.geometry, users[k], beta));
    }

    // Schemes design on the (possibly) perturbed copy; rates are evaluated
    // on the clean channels afterwards.
    std::vector<ChannelVector> design;
    design.reserve(clean.size());
    for (std::size_t k = 0; k < clean.size(); ++k)
        design.push_back(apply_csi_error(clean[k], config.csi, seq.derive("csi", k)));

    arma::vec weights(users.size());
    for (std::size_t k = 0; k < users.size(); ++k)
        weights(k) = users[k].weight;

    if (clean_channels)
        *clean_channels = std::move(clean);

    const double budget = budget_override > 0.0 ? budget_override : config.budget_w;
    return make_scenario(std::move(design), config.noise_w, budget, weights);
}

namespace
{

// One (seed, sweep value) cell: config with the sweep applied.
struct RowSetting
{
    std::uint64_t seed = 0;
    double sweep_value = 0.0;
    ScenarioConfig config; // sweep folded in
};

RowSetting apply_sweep(const ScenarioConfig &config, std::uint64_t seed, double value)
{
    RowSetting row;
    row.seed = seed;
    row.sweep_value = value;
    row.config = config;

    switch (config.sweep.kind)
    {
    case SweepKind::none:
        break;
    case SweepKind::budget_w:
        row.config.budget_w = value;
        break;
    case SweepKind::csi_eps:
        row.config.csi.eps = value;
        break;
    case SweepKind::kappa_db:
        row.config.channel.rician = true;
        row.config.channel.kappa_linear = std::isinf(value) ? 0.0 : db_to_linear(value);
        break;
    case SweepKind::far_user_weight:
        break; // applied after placement, when field labels exist
    case SweepKind::user_theta:
        if (config.sweep.user >= config.users.size())
            throw std::invalid_argument("Sweep user index out of range.");
        row.config.users[config.sweep.user].theta_lo = value;
        row.config.users[config.sweep.user].theta_hi = value;
        break;
    case SweepKind::user_theta_offset:
    {
        if (config.sweep.user >= config.users.size() || config.sweep.user == 0)
            throw std::invalid_argument("Theta-offset sweep needs a target user other than user 0.");
        const auto &anchor = config.users[0];
        if (anchor.theta_lo != anchor.theta_hi)
            throw std::invalid_argument("Theta-offset sweep needs a fixed angle for user 0.");
        row.config.users[config.sweep.user].theta_lo = anchor.theta_lo + value;
        row.config.users[config.sweep.user].theta_hi = anchor.theta_lo + value;
        break;
    }
    }
    return row;
}

// Rows of one cell of the experiment grid.
std::vector<std::vector<std::string>> run_cell(const RowSetting &row)
{
    const ScenarioConfig &config = row.config;
    const std::string seed_text = std::to_string(row.seed);
    const std::string sweep_text = format_double(row.sweep_value);

    std::vector<std::vector<std::string>> rows;

    std::vector<UserSpec> users = draw_users(config, row.seed);
    if (config.sweep.kind == SweepKind::far_user_weight)
        for (auto &u : users)
            if (!u.near_field)
                u.weight = row.sweep_value;

    std::vector<ChannelVector> clean;
    Scenario design = realize_scenario(config, row.seed, 0.0, users, &clean);

    arma::vec priorities(users.size());
    for (std::size_t k = 0; k < users.size(); ++k)
        priorities(k) = users[k].weight;

    const SeedSequence seq(row.seed);

    for (const std::string &scheme : config.schemes)
    {
        if (config.trace == TraceKind::pdd_convergence)
        {
            // Trace schema: one row per outer iteration.
            const PddProblem problem =
                make_pdd_problem(design.channels, design.weights, design.noise_power, design.budget, priorities);
            const PddResult solved = pdd_solve(problem, config.pdd);
            for (std::size_t t = 0; t < solved.violation_trace.size(); ++t)
                rows.push_back({seed_text, sweep_text, "pdd", std::to_string(t),
                                format_double(solved.violation_trace[t]), format_double(solved.rate_trace[t]), ""});
            break; // the trace ignores the scheme list beyond triggering once
        }
        if (config.trace == TraceKind::greedy_trajectory)
        {
            for (std::size_t k = 0; k < users.size(); ++k)
            {
                const MultiUserSelection sel =
                    greedy_deactivate_multi_user(k, design.channels, design.weights, config.min_active);
                for (std::size_t j = 0; j < sel.aggregate_coupling.size(); ++j)
                    rows.push_back({seed_text, sweep_text, "greedy", std::to_string(k), std::to_string(j),
                                    format_double(sel.aggregate_coupling[j]), ""});
            }
            break;
        }

        // Summary schema: one row per scheme. Failures land in the error
        // column and the run continues.
        std::vector<std::string> cells{seed_text, sweep_text, scheme};
        try
        {
            SchemeResult result;
            if (scheme == "full_array")
                result = full_array_baseline(design, config.power);
            else if (scheme == "random_as")
                result = random_as_baseline(design, config.random_trials, seq.derive("random_as"), config.power);
            else if (scheme == "common_as")
                result = common_as_baseline(design, config.power);
            else if (scheme == "subarray")
                result = subarray_baseline(design, config.num_subarrays, config.power);
            else if (scheme == "greedy")
                result = greedy_selection_scheme(design, config.min_active, config.power);
            else if (scheme == "pdd")
                result = pdd_scheme(design, config.pdd);
            else if (scheme == "pdd_equal_power")
                result = pdd_equal_power_baseline(design, config.pdd);
            else if (scheme == "oracle")
                result = exhaustive_oracle(design, config.oracle_max_antennas, config.power);
            else
                throw std::invalid_argument("Unknown scheme: " + scheme);

            // Rates on the clean channels with the designed masks and powers.
            const RateReport report =
                rate_with_selection(clean, design.weights, result.masks, PowerVector(result.powers, design.budget),
                                    design.noise_power, priorities);

            cells.push_back(format_double(report.sum_rate));
            cells.push_back(format_double(report.weighted_sum));
            for (arma::uword k = 0; k < report.per_user_rate.n_elem; ++k)
                cells.push_back(format_double(report.per_user_rate(k)));
            cells.emplace_back();
        }
        catch (const std::exception &e)
        {
            cells.push_back("");
            cells.push_back("");
            for (std::size_t k = 0; k < users.size(); ++k)
                cells.emplace_back();
            cells.push_back(e.what());
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

ResultTable run_experiment(const ScenarioConfig &config, std::size_t jobs)
{
    ResultTable table;
    if (config.trace == TraceKind::pdd_convergence)
    {
        table.columns = {"seed", "sweep_value", "scheme", "outer_iter", "violation", "sum_rate", "error"};
    }
    else if (config.trace == TraceKind::greedy_trajectory)
    {
        table.columns = {"seed", "sweep_value", "scheme", "user", "removals", "aggregate_coupling", "error"};
    }
    else
    {
        table.columns = {"seed", "sweep_value", "scheme", "sum_rate", "weighted_sum_rate"};
        for (std::size_t k = 0; k < config.users.size(); ++k)
            table.columns.push_back("rate_user" + std::to_string(k));
        table.columns.push_back("error");
    }

    // The full grid, in output order.
    std::vector<RowSetting> cells;
    const std::vector<double> values =
        config.sweep.kind == SweepKind::none ? std::vector<double>{0.0} : config.sweep.values;
    for (std::uint64_t seed : config.seeds)
        for (double value : values)
            cells.push_back(apply_sweep(config, seed, value));

    std::vector<std::vector<std::vector<std::string>>> results(cells.size());
    if (jobs <= 1)
    {
        for (std::size_t c = 0; c < cells.size(); ++c)
            results[c] = run_cell(cells[c]);
    }
    else
    {
        // Cells are independent; output order stays by grid index.
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;)
            {
                const std::size_t c = next.fetch_add(1);
                if (c >= cells.size())
                    return;
                results[c] = run_cell(cells[c]);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < std::min(jobs, cells.size()); ++j)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    for (auto &cell_rows : results)
        for (auto &row : cell_rows)
            table.rows.push_back(std::move(row));
    return table;
}

void write_run(const ScenarioConfig &config, const ResultTable &table, const std::string &out_dir,
               double elapsed_seconds)
{
    const std::string base = out_dir + "/" + config.name;
    write_csv(table, base + ".csv");

    json manifest;
    {
        std::ostringstream hex;
        hex << std::hex << config_hash(config);
        manifest["config_hash"] = hex.str();
    }
    manifest["version"] = version_string();
    manifest["rows"] = table.rows.size();
    manifest["columns"] = table.columns;
    manifest["elapsed_seconds"] = elapsed_seconds;
    manifest["seeds"] = config.seeds;
    if (!config.original_scale.empty())
        manifest["original_scale"] = config.original_scale;

    std::ofstream out(base + ".manifest.json", std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot open output file: " + base + ".manifest.json");
    out << manifest.dump(2) << "\n";
}

std::map<std::string, ScenarioConfig> figure_suites()
{
    std::map<std::string, ScenarioConfig> suites;

    // Correlation dip: two users, far one swept in angle across the near
    // one; the full-array sum rate collapses near zero offset where the
    // energy-spread interference peaks. Metric-only, so full scale.
    {
        ScenarioConfig c;
        c.name = "fig2_fullarray_dip";
        c.geometry = ArrayGeometry(256, 30e9);
        c.users.push_back({0.0, 0.0, 5.0, 0.0, 0.0, 1.0});
        c.users.push_back({0.0, 0.0, 150.0, 0.0, 0.0, 1.0});
        c.seeds = {1};
        c.schemes = {"full_array"};
        c.sweep.kind = SweepKind::user_theta_offset;
        c.sweep.user = 1;
        for (int j = -25; j <= 25; ++j)
            c.sweep.values.push_back(0.02 * j);
        c.original_scale = "reference setup: N=256, two users at 5 m and 150 m";
        suites[c.name] = c;
    }

    // Deactivation trajectories for the two-user greedy at full scale.
    {
        ScenarioConfig c;
        c.name = "fig3_greedy_trajectories";
        c.geometry = ArrayGeometry(256, 30e9);
        c.users.push_back({0.0, 0.0, 5.0, 0.0, 0.0, 1.0});
        c.users.push_back({0.0, 0.0, 150.0, 0.0, 0.0, 1.0});
        c.seeds = {1};
        c.schemes = {"greedy"};
        c.trace = TraceKind::greedy_trajectory;
        c.original_scale = "reference setup: N=256, near user angle sweep";
        suites[c.name] = c;
    }

    // Greedy against the exhaustive search at a size the latter can handle.
    {
        ScenarioConfig c;
        c.name = "fig3_oracle_overlay";
        c.geometry = ArrayGeometry(12, 30e9);
        c.users.push_back({-0.30, 0.30, 0.0, 0.05, 0.2, 1.0});
        c.users.push_back({-0.30, 0.30, 0.0, 1.0, 2.0, 1.0});
        c.seeds = {1, 2, 3, 4, 5};
        c.schemes = {"greedy", "oracle"};
        c.original_scale = "reference setup: N=256 with a solver benchmark; desk scale N=12";
        suites[c.name] = c;
    }

    // Two-user sum rate against the angular gap, desk scale.
    {
        ScenarioConfig c;
        c.name = "fig4_two_user_rates";
        c.geometry = ArrayGeometry(64, 30e9);
        c.users.push_back({0.0, 0.0, 0.0, 0.05, 0.05, 1.0}); // near, r = 0.05 Z
        c.users.push_back({0.0, 0.0, 0.0, 1.5, 1.5, 1.0});   // far, r = 1.5 Z
        c.seeds = {1};
        c.schemes = {"full_array", "greedy", "pdd"};
        c.sweep.kind = SweepKind::user_theta_offset;
        c.sweep.user = 1;
        for (int j = -10; j <= 10; ++j)
            c.sweep.values.push_back(0.05 * j);
        c.original_scale = "reference setup: N=256; desk scale N=64";
        suites[c.name] = c;
    }

    // Five-user placement shared by the optimization studies below: two
    // near users inside [0.05, 0.2] Z, three far users in [1, 2] Z.
    const auto five_users = [](ScenarioConfig &c) {
        for (int k = 0; k < 2; ++k)
            c.users.push_back({-0.30, 0.30, 0.0, 0.05, 0.2, 1.0});
        for (int k = 0; k < 3; ++k)
            c.users.push_back({-0.30, 0.30, 0.0, 1.0, 2.0, 1.0});
    };

    // Multi-user aggregate-coupling trajectories.
    {
        ScenarioConfig c;
        c.name = "fig6_multiuser_trajectories";
        c.geometry = ArrayGeometry(64, 30e9);
        five_users(c);
        c.seeds = {1, 2, 3};
        c.schemes = {"greedy"};
        c.trace = TraceKind::greedy_trajectory;
        c.original_scale = "reference setup: N=256, K=5; desk scale N=64";
        suites[c.name] = c;
    }

    // Solver convergence traces at the calibration scale.
    {
        ScenarioConfig c;
        c.name = "fig7_pdd_convergence";
        c.geometry = ArrayGeometry(32, 30e9);
        c.users.push_back({-0.866, 0.866, 0.0, 0.05, 0.2, 1.0});
        c.users.push_back({-0.866, 0.866, 0.0, 0.05, 0.2, 1.0});
        c.users.push_back({-0.866, 0.866, 0.0, 1.0, 2.0, 1.0});
        c.seeds = {1, 2, 3, 4, 5};
        c.schemes = {"pdd"};
        c.trace = TraceKind::pdd_convergence;
        c.original_scale = "reference setup: N=256, K=3; desk scale N=32";
        suites[c.name] = c;
    }

    // Power sweep across schemes.
    {
        ScenarioConfig c;
        c.name = "fig8_power_sweep";
        c.geometry = ArrayGeometry(64, 30e9);
        five_users(c);
        c.seeds = {1, 2, 3, 4, 5};
        c.schemes = {"full_array", "random_as", "common_as", "subarray", "greedy", "pdd", "pdd_equal_power"};
        c.sweep.kind = SweepKind::budget_w;
        for (double dbm : {10.0, 15.0, 20.0, 25.0, 30.0})
            c.sweep.values.push_back(dbm_to_watt(dbm));
        c.original_scale = "reference setup: N=256, K=5; desk scale N=64";
        suites[c.name] = c;
    }

    // CSI robustness sweep.
    {
        ScenarioConfig c;
        c.name = "fig9_csi_sweep";
        c.geometry = ArrayGeometry(64, 30e9);
        five_users(c);
        c.seeds = {1, 2, 3, 4, 5};
        c.schemes = {"full_array", "greedy", "pdd"};
        c.sweep.kind = SweepKind::csi_eps;
        c.sweep.values = {0.0, 0.05, 0.1, 0.15, 0.2};
        c.original_scale = "reference setup: N=256, K=5; desk scale N=64";
        suites[c.name] = c;
    }

    // Far-user priority sweep.
    {
        ScenarioConfig c;
        c.name = "fig10_weight_sweep";
        c.geometry = ArrayGeometry(64, 30e9);
        five_users(c);
        c.seeds = {1, 2, 3, 4, 5};
        c.schemes = {"greedy", "pdd"};
        c.sweep.kind = SweepKind::far_user_weight;
        c.sweep.values = {1.0, 2.0, 4.0, 8.0};
        c.original_scale = "reference setup: N=256, K=5; desk scale N=64";
        suites[c.name] = c;
    }

    return suites;
}

} // namespace xlas
