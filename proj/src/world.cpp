#include "idiobot/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "idiobot/errors.hpp"
#include "idiobot/rng.hpp"

namespace idiobot {

namespace {

double min_wall_distance(const World& world, const Vec2& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const Segment& w : world.walls) best = std::min(best, point_segment_distance(p, w));
    return best;
}

} // namespace

WorldTemplate parse_world(std::istream& in, const std::string& id) {
    WorldTemplate tmpl;
    tmpl.base.id = id;
    bool have_size = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;

        const auto need = [&](auto&... field) {
            if (!((ls >> field) && ...))
                throw ParseError("malformed " + kw + " directive", lineno);
        };
        if (kw == "WORLD") {
            need(tmpl.base.width, tmpl.base.height);
            if (tmpl.base.width <= 0 || tmpl.base.height <= 0)
                throw ParseError("world size must be positive", lineno);
            have_size = true;
        } else if (kw == "START") {
            Pose p;
            double theta_deg = 0.0;
            need(p.x, p.y, theta_deg);
            p.theta = deg_to_rad(theta_deg);
            tmpl.starts.push_back(p);
        } else if (kw == "WALL") {
            Segment s;
            need(s.a.x, s.a.y, s.b.x, s.b.y);
            tmpl.base.walls.push_back(s);
        } else if (kw == "MARKER") {
            Disc d;
            need(d.center.x, d.center.y, d.radius, d.color);
            tmpl.base.markers.push_back(d);
        } else if (kw == "BLOCK") {
            Disc d;
            need(d.center.x, d.center.y, d.radius, d.color);
            tmpl.blocks.push_back(d);
        } else if (kw == "GOAL") {
            Circle c;
            need(c.center.x, c.center.y, c.radius);
            tmpl.base.goal = c;
        } else if (kw == "JITTER") {
            double dtheta_deg = 0.0;
            need(tmpl.jitter_xy, dtheta_deg);
            tmpl.jitter_theta = deg_to_rad(dtheta_deg);
        } else {
            throw ParseError("unknown world directive: " + kw, lineno);
        }
        std::string extra;
        if (ls >> extra) throw ParseError("trailing junk after " + kw + ": '" + extra + "'", lineno);
    }
    if (!have_size) throw ParseError("missing WORLD directive");
    if (tmpl.starts.empty()) throw ParseError("missing START directive");
    if (!tmpl.base.goal && tmpl.blocks.empty())
        throw ParseError("world needs a GOAL or BLOCK to define task completion");
    if (tmpl.base.goal && !tmpl.blocks.empty())
        throw ParseError("world must not define both GOAL and BLOCK");

    tmpl.base.start = tmpl.starts.front();
    if (!tmpl.blocks.empty()) tmpl.base.block = tmpl.blocks.front();
    if (tmpl.base.block) tmpl.base.track_color = tmpl.base.block->color;
    else if (!tmpl.base.markers.empty()) tmpl.base.track_color = tmpl.base.markers.front().color;
    else tmpl.base.track_color = "blue";
    return tmpl;
}

WorldTemplate load_world(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open world file: " + path);
    std::string id = path;
    const auto slash = id.find_last_of("/\\");
    if (slash != std::string::npos) id.erase(0, slash + 1);
    const auto dot = id.rfind('.');
    if (dot != std::string::npos) id.erase(dot);
    return parse_world(in, id);
}

World instantiate(const WorldTemplate& tmpl, std::uint64_t scenario_seed) {
    World world = tmpl.base;
    Rng rng(Rng::mix(scenario_seed, 0x5ce11a71u));
    if (tmpl.starts.size() > 1)
        world.start = tmpl.starts[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(tmpl.starts.size()) - 1))];
    if (tmpl.blocks.size() > 1)
        world.block = tmpl.blocks[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(tmpl.blocks.size()) - 1))];
    if (tmpl.jitter_xy > 0.0 || tmpl.jitter_theta > 0.0) {
        world.start.x += rng.uniform(-tmpl.jitter_xy, tmpl.jitter_xy);
        world.start.y += rng.uniform(-tmpl.jitter_xy, tmpl.jitter_xy);
        world.start.theta = wrap_angle(world.start.theta +
                                       rng.uniform(-tmpl.jitter_theta, tmpl.jitter_theta));
    }
    return world;
}

RobotState initial_state(const World& world) {
    RobotState s;
    s.pose = world.start;
    return s;
}

RobotState step(const World& world, const RobotState& state, const SpeedCommand& cmd,
                const PlatformProfile& profile, double dt) {
    if (dt <= 0.0) throw ValidationError("step requires dt > 0");
    RobotState next = state;
    next.tick = state.tick + 1;
    next.elapsed = static_cast<double>(next.tick) * dt;

    const auto pose_at = [&](double s) {
        return advance_pose(state.pose, cmd.linear, cmd.angular, s * dt);
    };
    const auto clearance = [&](double s) {
        const Pose p = pose_at(s);
        return min_wall_distance(world, {p.x, p.y}) - profile.body_radius;
    };

    constexpr double kContactTol = 1e-9;
    Pose end = pose_at(1.0);
    bool contact = false;
    if (clearance(1.0) < 0.0) {
        contact = true;
        if (clearance(0.0) <= kContactTol) {
            // already resting on the wall and pushing in: stay put
            end = state.pose;
        } else {
            double lo = 0.0, hi = 1.0; // clearance(lo) > 0 >= clearance(hi)
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (clearance(mid) > 0.0 ? lo : hi) = mid;
            }
            end = pose_at(lo);
        }
    }
    end.theta = wrap_angle(end.theta);
    next.pose = end;
    next.in_contact = contact;
    if (contact && !state.in_contact) ++next.collisions;
    return next;
}

double cast_ray(const World& world, const Vec2& origin, double bearing, double max_range) {
    if (max_range <= 0.0) throw ValidationError("cast_ray requires max_range > 0");
    const Vec2 dir = heading_vector(bearing);
    double best = max_range;
    for (const Segment& w : world.walls) best = std::min(best, ray_segment_distance(origin, dir, w));
    return best;
}

namespace {

bool line_of_sight(const World& world, const Vec2& from, const Vec2& to) {
    const Vec2 delta = to - from;
    const double d = delta.norm();
    if (d < 1e-12) return true;
    const Vec2 dir = delta * (1.0 / d);
    for (const Segment& w : world.walls) {
        if (ray_segment_distance(from, dir, w) < d - 1e-9) return false;
    }
    return true;
}

} // namespace

std::optional<Blob> visible_blob(const World& world, const RobotState& state,
                                 const PlatformProfile& profile, const std::string& color) {
    const Vec2 eye{state.pose.x, state.pose.y};
    std::optional<Blob> best;
    const auto consider = [&](const Disc& target) {
        if (target.color != color) return;
        const Vec2 delta = target.center - eye;
        const double d = delta.norm();
        const double bearing = wrap_angle(std::atan2(delta.y, delta.x) - state.pose.theta);
        if (std::fabs(bearing) > profile.camera_fov / 2.0) return;
        if (!line_of_sight(world, eye, target.center)) return;
        const double width = d <= target.radius ? kPi : 2.0 * std::asin(target.radius / d);
        if (!best || width > best->angular_width) best = Blob{bearing, width};
    };
    for (const Disc& m : world.markers) consider(m);
    if (world.block) consider(*world.block);
    return best;
}

bool task_complete(const World& world, const RobotState& state, const PlatformProfile& profile) {
    Vec2 center;
    double radius = 0.0;
    if (world.goal) {
        center = world.goal->center;
        radius = world.goal->radius;
    } else if (world.block) {
        center = world.block->center;
        radius = world.block->radius;
    } else {
        throw ValidationError("world defines neither goal nor block");
    }
    const Vec2 p{state.pose.x, state.pose.y};
    return (p - center).norm() <= radius + profile.body_radius;
}

} // namespace idiobot
