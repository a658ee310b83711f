#include "idiobot/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "idiobot/errors.hpp"
#include "idiobot/rng.hpp"

namespace idiobot {

namespace {

constexpr std::uint64_t kScenarioTag = 0x5ce2a210u;
constexpr std::uint64_t kControllerTag = 0xc0247011u;
constexpr std::uint64_t kModeTag[2] = {0x1d107991u, 0x62eedu}; // idiotypic, greedy

std::string format(const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    return buf;
}

} // namespace

const char* mode_name(SelectionMode mode) {
    return mode == SelectionMode::Idiotypic ? "idiotypic" : "greedy";
}

SelectionMode mode_from_name(const std::string& name) {
    if (name == "idiotypic") return SelectionMode::Idiotypic;
    if (name == "greedy") return SelectionMode::Greedy;
    throw ValidationError("unknown mode: " + name + " (expected idiotypic or greedy)");
}

RunRecord run_one(const WorldTemplate& world, const Genome& genome,
                  const PlatformProfile& profile, SelectionMode mode, std::uint64_t run_seed,
                  double dt, double time_limit, const AisConfig& ais, EpisodeSinks sinks) {
    const World scenario = instantiate(world, Rng::mix(run_seed, kScenarioTag));
    EpisodeConfig cfg;
    cfg.mode = mode;
    cfg.seed = Rng::mix(run_seed, kControllerTag);
    cfg.dt = dt;
    cfg.time_limit = time_limit;
    cfg.ais = ais;
    const EpisodeResult result = run_episode(scenario, profile, genome, cfg, sinks);

    RunRecord record;
    record.world_id = world.base.id;
    record.mode = mode;
    record.seed = run_seed;
    record.t = result.t;
    record.c = result.collisions;
    record.failed = !result.completed;
    return record;
}

std::vector<RunRecord> run_battery(const WorldTemplate& world, const Genome& genome,
                                   const PlatformProfile& profile, const BatteryConfig& cfg) {
    if (cfg.runs_per_mode < 2) throw ValidationError("a battery needs at least two runs per mode");
    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.runs_per_mode) * 2);
    int run_id = 0;
    for (int k = 0; k < cfg.runs_per_mode; ++k) {
        for (SelectionMode mode : {SelectionMode::Idiotypic, SelectionMode::Greedy}) {
            const std::uint64_t run_seed =
                cfg.paired
                    ? Rng::mix(cfg.base_seed, static_cast<std::uint64_t>(k))
                    : Rng::mix(cfg.base_seed, kModeTag[mode == SelectionMode::Greedy ? 1 : 0],
                               static_cast<std::uint64_t>(k));
            RunRecord record =
                run_one(world, genome, profile, mode, run_seed, cfg.dt, cfg.time_limit, cfg.ais);
            record.run_id = run_id++;
            records.push_back(std::move(record));
        }
    }
    return records;
}

double score_runs(std::vector<RunRecord>& records, const std::string& world_id) {
    double sum_t = 0.0;
    double sum_c = 0.0;
    int n = 0;
    for (const RunRecord& r : records) {
        if (r.world_id != world_id) continue;
        sum_t += r.t;
        sum_c += r.c;
        ++n;
    }
    if (n == 0) throw ValidationError("no records for world " + world_id);
    const double sigma = sum_c > 0.0 ? (sum_t / n) / (sum_c / n) : 0.0;
    for (RunRecord& r : records) {
        if (r.world_id != world_id) continue;
        r.phi = (r.t + sigma * r.c) / 2.0;
    }
    return sigma;
}

Classification classify(const std::vector<RunRecord>& records) {
    Classification out;
    out.good.assign(records.size(), false);
    out.bad.assign(records.size(), false);

    std::vector<std::string> worlds;
    for (const RunRecord& r : records)
        if (std::find(worlds.begin(), worlds.end(), r.world_id) == worlds.end())
            worlds.push_back(r.world_id);

    for (const std::string& world : worlds) {
        std::vector<std::size_t> index;
        std::vector<double> phis;
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (records[i].world_id != world) continue;
            index.push_back(i);
            phis.push_back(records[i].phi);
        }
        const double mean =
            std::accumulate(phis.begin(), phis.end(), 0.0) / static_cast<double>(phis.size());

        // worst decile threshold: ties land on the bad side
        std::vector<double> sorted = phis;
        std::sort(sorted.begin(), sorted.end());
        const auto worst = static_cast<std::size_t>(
            std::ceil(0.1 * static_cast<double>(sorted.size())));
        const double threshold = sorted[sorted.size() - worst];

        for (std::size_t k = 0; k < index.size(); ++k) {
            out.good[index[k]] = phis[k] < mean;
            out.bad[index[k]] = phis[k] >= threshold;
        }
    }
    return out;
}

namespace {

ModeSummary summarize(const std::vector<RunRecord>& records, const Classification& cls,
                      const std::string& world_id, SelectionMode mode) {
    ModeSummary s;
    int good = 0, bad = 0, failed = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const RunRecord& r = records[i];
        if (r.world_id != world_id || r.mode != mode) continue;
        ++s.runs;
        s.mean_t += r.t;
        s.mean_c += r.c;
        s.mean_phi += r.phi;
        good += cls.good[i];
        bad += cls.bad[i];
        failed += r.failed;
    }
    if (s.runs == 0) throw ValidationError("no " + std::string(mode_name(mode)) + " records for " + world_id);
    s.mean_t /= s.runs;
    s.mean_c /= s.runs;
    s.mean_phi /= s.runs;
    s.good_pct = 100.0 * good / s.runs;
    s.bad_pct = 100.0 * bad / s.runs;
    s.fail_pct = 100.0 * failed / s.runs;
    return s;
}

// Paired comparison of one metric; degenerate zero-variance differences fall
// back to the indistinguishable / infinitely-separated convention.
TTestResult compare_paired(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    try {
        return paired_t_test(diff);
    } catch (const ValidationError&) {
        TTestResult r;
        r.df = static_cast<double>(diff.size() - 1);
        const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) /
                            static_cast<double>(diff.size());
        if (mean == 0.0) return r; // t = 0, p = 1
        r.t = mean > 0.0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
        r.p = 0.0;
        return r;
    }
}

} // namespace

ExperimentReport make_report(const std::vector<RunRecord>& records, const std::string& world_id,
                             double sigma, bool paired) {
    ExperimentReport report;
    report.world_id = world_id;
    report.sigma = sigma;
    report.paired = paired;

    const Classification cls = classify(records);
    report.idiotypic = summarize(records, cls, world_id, SelectionMode::Idiotypic);
    report.greedy = summarize(records, cls, world_id, SelectionMode::Greedy);

    std::vector<double> ti, tg, ci, cg, pi, pg;
    for (const RunRecord& r : records) {
        if (r.world_id != world_id) continue;
        auto& tv = r.mode == SelectionMode::Idiotypic ? ti : tg;
        auto& cv = r.mode == SelectionMode::Idiotypic ? ci : cg;
        auto& pv = r.mode == SelectionMode::Idiotypic ? pi : pg;
        tv.push_back(r.t);
        cv.push_back(r.c);
        pv.push_back(r.phi);
    }
    if (paired && ti.size() == tg.size()) {
        report.test_t = compare_paired(ti, tg);
        report.test_c = compare_paired(ci, cg);
        report.test_phi = compare_paired(pi, pg);
    } else {
        report.test_t = welch_t_test(ti, tg);
        report.test_c = welch_t_test(ci, cg);
        report.test_phi = welch_t_test(pi, pg);
    }
    report.significant_t = report.test_t.p < 0.01;
    report.significant_c = report.test_c.p < 0.01;
    report.significant_phi = report.test_phi.p < 0.01;
    return report;
}

std::string render_report(const ExperimentReport& report) {
    std::ostringstream out;
    out << "World " << report.world_id << ": " << report.idiotypic.runs << " runs per mode, "
        << (report.paired ? "paired" : "unpaired") << " battery, sigma = "
        << format("%.4f", report.sigma) << " s/collision\n\n";
    out << format("%-11s %5s %9s %9s %10s %7s %7s %7s\n", "Mode", "runs", "t_mean", "c_mean",
                  "phi_mean", "G%", "B%", "F%");
    for (const auto* s : {&report.idiotypic, &report.greedy}) {
        out << format("%-11s %5d %9.1f %9.1f %10.1f %7.1f %7.1f %7.1f\n",
                      s == &report.idiotypic ? "idiotypic" : "greedy", s->runs, s->mean_t,
                      s->mean_c, s->mean_phi, s->good_pct, s->bad_pct, s->fail_pct);
    }
    out << "\nIdiotypic vs greedy (" << (report.paired ? "paired" : "Welch")
        << " two-tailed t-test, alpha = 0.01):\n";
    const auto line = [&](const char* name, const TTestResult& r, bool sig) {
        out << format("  %-4s t = %+.4f, df = %.2f, p = %.6f  [%s]\n", name, r.t, r.df, r.p,
                      sig ? "significant" : "not significant");
    };
    line("t", report.test_t, report.significant_t);
    line("c", report.test_c, report.significant_c);
    line("phi", report.test_phi, report.significant_phi);
    return out.str();
}

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "run_id,world,mode,seed,t,c,phi,failed\n";
    for (const RunRecord& r : records) {
        out << r.run_id << ',' << r.world_id << ',' << mode_name(r.mode) << ',' << r.seed << ','
            << format("%.1f", r.t) << ',' << r.c << ',' << format("%.4f", r.phi) << ','
            << (r.failed ? 1 : 0) << '\n';
    }
}

std::vector<RunRecord> read_results_csv(std::istream& in) {
    std::vector<RunRecord> records;
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty results CSV");
    ++lineno;
    if (line.rfind("run_id,world,mode,seed,t,c,phi,failed", 0) != 0)
        throw ParseError("unexpected results CSV header: " + line, lineno);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 8) throw ParseError("expected 8 CSV fields", lineno);
        try {
            RunRecord r;
            r.run_id = std::stoi(fields[0]);
            r.world_id = fields[1];
            r.mode = mode_from_name(fields[2]);
            r.seed = std::stoull(fields[3]);
            r.t = std::stod(fields[4]);
            r.c = std::stoi(fields[5]);
            r.phi = std::stod(fields[6]);
            r.failed = fields[7] == "1";
            records.push_back(std::move(r));
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), lineno);
        } catch (const std::exception&) {
            throw ParseError("malformed results row", lineno);
        }
    }
    return records;
}

void write_trail_csv(std::ostream& out, const std::vector<TrailPoint>& trail) {
    out << "tick,x,y,theta\n";
    for (const TrailPoint& p : trail)
        out << p.tick << ',' << format("%.6f,%.6f,%.6f", p.pose.x, p.pose.y, p.pose.theta) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace, SelectionMode mode) {
    out << "tick,antigen,mode,selected_set,L,R,v,omega\n";
    for (const TracePoint& p : trace) {
        out << p.tick << ',' << p.antigen << ',' << mode_name(mode) << ',' << p.selected_set << ','
            << format("%.4f,%.4f,%.6f,%.6f", p.left, p.right, p.linear, p.angular) << '\n';
    }
}

void write_trail_svg(std::ostream& out, const World& world, const std::vector<TrailPoint>& trail) {
    constexpr double kScale = 100.0; // px per meter
    const double w = world.width * kScale;
    const double h = world.height * kScale;
    const auto X = [&](double x) { return x * kScale; };
    const auto Y = [&](double y) { return h - y * kScale; }; // world y up, svg y down

    out << format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  w, h, w, h);
    out << format("<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n", w, h);
    for (const Segment& s : world.walls)
        out << format("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                      "stroke=\"black\" stroke-width=\"2\"/>\n",
                      X(s.a.x), Y(s.a.y), X(s.b.x), Y(s.b.y));
    for (const Disc& m : world.markers)
        out << format("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"%s\"/>\n", X(m.center.x),
                      Y(m.center.y), m.radius * kScale, m.color.c_str());
    if (world.block)
        out << format("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"%s\" stroke=\"black\"/>\n",
                      X(world.block->center.x), Y(world.block->center.y),
                      world.block->radius * kScale, world.block->color.c_str());
    if (world.goal)
        out << format("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"none\" stroke=\"green\" "
                      "stroke-dasharray=\"4 3\"/>\n",
                      X(world.goal->center.x), Y(world.goal->center.y), world.goal->radius * kScale);
    if (!trail.empty()) {
        out << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < trail.size(); ++i)
            out << format("%s%.1f,%.1f", i ? " " : "", X(trail[i].pose.x), Y(trail[i].pose.y));
        out << "\"/>\n";
        out << format("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"4\" fill=\"green\"/>\n",
                      X(trail.front().pose.x), Y(trail.front().pose.y));
    }
    out << "</svg>\n";
}

} // namespace idiobot
