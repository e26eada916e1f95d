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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xlas/baselines.hpp"
#include "xlas/channel.hpp"
#include "xlas/geometry.hpp"
#include "xlas/pdd.hpp"
#include "xlas/power.hpp"

namespace xlas
{

// User placement rule inside a config: either a fixed angle or a uniform
// angle interval, and either a fixed range or an interval of multiples of
// the effective Rayleigh distance at the drawn angle.
struct UserPlacement
{
    double theta_lo = 0.0;
    double theta_hi = 0.0;       // equal bounds mean a fixed angle
    double range_m = 0.0;        // > 0 means a fixed range in meters
    double range_scale_lo = 0.0; // used when range_m == 0: r ~ U(lo, hi) * Z(theta)
    double range_scale_hi = 0.0;
    double weight = 1.0;
};

// Sweep kinds the runner knows how to apply to a scenario.
enum class SweepKind
{
    none,
    budget_w,          // total transmit power in watts
    csi_eps,           // CSI uncertainty level
    kappa_db,          // Rician factor in dB
    far_user_weight,   // priority weight of every far-field user
    user_theta,        // absolute angle of user `sweep_user`
    user_theta_offset, // angle of user `sweep_user` relative to user 0's
};

struct SweepSpec
{
    SweepKind kind = SweepKind::none;
    std::size_t user = 0; // target user for the per-user kinds
    std::vector<double> values;
};

// What kind of rows an experiment emits: one summary row per scheme, or the
// per-iteration traces used by the convergence and trajectory studies.
enum class TraceKind
{
    summary,
    pdd_convergence,  // (outer_iter, violation, relaxed sum rate) rows
    greedy_trajectory // (user, removals, aggregate coupling) rows
};

struct ChannelConfig
{
    bool rician = false;
    double kappa_linear = 0.0; // 0 encodes infinite kappa (pure LoS) when rician
    std::size_t num_paths = 6;
};

// One experiment: geometry, user placements, budgets, channel and CSI
// models, schemes to run and the sweep grid.
struct ScenarioConfig
{
    std::string name;
    ArrayGeometry geometry{1, 30e9};
    std::vector<UserPlacement> users;
    double budget_w = 1.0;
    double noise_w = 1e-11;
    ChannelConfig channel;
    CsiModel csi;                     // eps = 0 means perfect CSI
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> schemes; // names as accepted by run_experiment
    SweepSpec sweep;
    TraceKind trace = TraceKind::summary;

    // scheme parameters
    std::size_t random_trials = 200;
    std::size_t num_subarrays = 5;
    std::size_t min_active = 1;
    std::size_t oracle_max_antennas = 12;
    PddConfig pdd;
    PowerSolverConfig power;

    // documentation of a desk-scale substitution, carried into the manifest
    std::string original_scale;
};

// Parse a JSON config text. Power-like fields accept watts or dB units
// ("budget_dbm", "noise_dbm", "kappa_db") and are converted to linear at
// parse time. Throws std::invalid_argument with a field path on bad input.
ScenarioConfig parse_scenario(const std::string &json_text);

// Inverse of parse_scenario up to unit normalization; parse(dump(c)) == c.
std::string dump_scenario(const ScenarioConfig &config);

// 64-bit FNV-1a over the canonical dump; recorded in the run manifest so a
// result table can be traced back to its exact configuration.
std::uint64_t config_hash(const ScenarioConfig &config);

// Rectangular result table with a fixed column set; rows are strings so one
// schema serves summaries and traces alike.
struct ResultTable
{
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const ResultTable &table, const std::string &path);

// Runs seeds x sweep values x schemes. Channels are drawn once per
// (seed, sweep value) from the row's derived streams, so schemes inside a
// row are paired. Unknown schemes or per-row failures are reported in the
// table's error column; the run continues. `jobs` > 1 executes rows
// concurrently; row order in the table is by (seed, sweep) regardless.
ResultTable run_experiment(const ScenarioConfig &config, std::size_t jobs = 1);

// Writes table + manifest (config hash, library version, row count, elapsed
// seconds) into out_dir as <name>.csv and <name>.manifest.json.
void write_run(const ScenarioConfig &config, const ResultTable &table, const std::string &out_dir,
               double elapsed_seconds);

// Named desk-scale presets mirroring the reference experiments: correlation
// dip (fig2), deactivation trajectories (fig3), two-user rate sweep (fig4),
// multi-user trajectories (fig6), solver convergence (fig7), power sweep
// (fig8), CSI robustness (fig9) and far-user weight sweep (fig10).
std::map<std::string, ScenarioConfig> figure_suites();

// Realize the channel set for one row: LoS or Rician per config, optional
// CSI perturbation of the design copy. Returns the scenario built on the
// perturbed (design) channels and, via out-parameter, the clean channels
// rates should be evaluated on.
Scenario realize_scenario(const ScenarioConfig &config, std::uint64_t row_seed, double budget_override,
                          const std::vector<UserSpec> &users, std::vector<ChannelVector> *clean_channels);

// Draw user positions for one row from the config's placement rules.
std::vector<UserSpec> draw_users(const ScenarioConfig &config, std::uint64_t row_seed);

} // namespace xlas
