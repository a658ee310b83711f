#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "idiobot/ais.hpp"
#include "idiobot/genome.hpp"
#include "idiobot/stats.hpp"
#include "idiobot/world.hpp"

namespace idiobot {

struct RunRecord {
    int run_id = 0;
    std::string world_id;
    SelectionMode mode = SelectionMode::Idiotypic;
    std::uint64_t seed = 0; // per-run seed; scenario and controller streams derive from it
    double t = 0.0;         // seconds, capped at the time limit
    int c = 0;
    double phi = 0.0;       // filled by score_runs
    bool failed = false;
};

struct BatteryConfig {
    int runs_per_mode = 30;
    bool paired = false;
    std::uint64_t base_seed = 1;
    double dt = 0.1;
    double time_limit = 900.0;
    AisConfig ais;
};

// Executes one run from its per-run seed: the scenario (start pose, variant
// placements) and the controller stream both derive from it, so a record is
// reproducible from (world, genome, profile, mode, seed) alone.
RunRecord run_one(const WorldTemplate& world, const Genome& genome,
                  const PlatformProfile& profile, SelectionMode mode, std::uint64_t run_seed,
                  double dt = 0.1, double time_limit = 900.0, const AisConfig& ais = {},
                  EpisodeSinks sinks = {});

// Runs runs_per_mode episodes per mode, interleaved (idiotypic k, greedy k).
// Paired batteries give the k-th run of both modes the same per-run seed;
// unpaired batteries use disjoint seeds throughout.
std::vector<RunRecord> run_battery(const WorldTemplate& world, const Genome& genome,
                                   const PlatformProfile& profile, const BatteryConfig& cfg);

// Fills phi = (t + sigma * c) / 2 for the world's records and returns sigma,
// the ratio of mean task time to mean collisions over all of them (failed
// runs included at the cap); sigma is 0 when no run collided.
double score_runs(std::vector<RunRecord>& records, const std::string& world_id);

struct Classification {
    std::vector<bool> good; // strictly better (lower) phi than the world mean
    std::vector<bool> bad;  // phi in the worst decile (ties included)
};

// Classifies each record against the other records of its world.
Classification classify(const std::vector<RunRecord>& records);

struct ModeSummary {
    int runs = 0;
    double mean_t = 0.0;
    double mean_c = 0.0;
    double mean_phi = 0.0;
    double good_pct = 0.0;
    double bad_pct = 0.0;
    double fail_pct = 0.0;
};

struct ExperimentReport {
    std::string world_id;
    double sigma = 0.0;
    bool paired = false;
    ModeSummary idiotypic;
    ModeSummary greedy;
    TTestResult test_t;   // idiotypic vs greedy task time
    TTestResult test_c;   // collisions
    TTestResult test_phi; // phi
    bool significant_t = false; // at the 99% level
    bool significant_c = false;
    bool significant_phi = false;
};

ExperimentReport make_report(const std::vector<RunRecord>& records, const std::string& world_id,
                             double sigma, bool paired);

// Plain-text table of the report (means, good/bad/fail percentages, p-values).
std::string render_report(const ExperimentReport& report);

// results CSV, fixed column order: run_id,world,mode,seed,t,c,phi,failed
void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_results_csv(std::istream& in);

// trail CSV: tick,x,y,theta
void write_trail_csv(std::ostream& out, const std::vector<TrailPoint>& trail);

// trace CSV: tick,antigen,mode,selected_set,L,R,v,omega
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace, SelectionMode mode);

// Minimal SVG rendering: walls as lines, the trail as a polyline, start/goal
// markers.
void write_trail_svg(std::ostream& out, const World& world, const std::vector<TrailPoint>& trail);

const char* mode_name(SelectionMode mode);
SelectionMode mode_from_name(const std::string& name);

} // namespace idiobot
