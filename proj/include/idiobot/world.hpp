#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "idiobot/geometry.hpp"
#include "idiobot/platform.hpp"

namespace idiobot {

struct Circle {
    Vec2 center;
    double radius = 0.0;
};

struct Disc {
    Vec2 center;
    double radius = 0.0;
    std::string color;
};

// Static 2D environment for one run. Walls are the only collision and ray
// geometry; markers and the block are camera targets (the range ring sits
// above them). Task completion is reaching the goal circle or the block.
struct World {
    std::string id;
    double width = 0.0;
    double height = 0.0;
    std::vector<Segment> walls;
    std::vector<Disc> markers;
    std::optional<Circle> goal;
    std::optional<Disc> block;
    Pose start;
    std::string track_color; // colour the camera looks for
};

// Robot bookkeeping across ticks. elapsed always equals tick * dt.
struct RobotState {
    Pose pose;
    std::int64_t tick = 0;
    double elapsed = 0.0;
    int collisions = 0;
    bool in_contact = false;
};

// Parsed world file plus its scenario variation: candidate start poses and
// block placements, and the start-pose jitter amplitude. instantiate() fixes
// one concrete World per scenario seed.
struct WorldTemplate {
    World base;                // first candidates applied, no jitter
    std::vector<Pose> starts;  // >= 1
    std::vector<Disc> blocks;  // candidate block placements (same task colour)
    double jitter_xy = 0.0;    // m
    double jitter_theta = 0.0; // rad
};

// World file format, units meters / degrees, '#' comments:
//   WORLD w h
//   START x y theta_deg          (repeatable: scenario picks one)
//   WALL x1 y1 x2 y2
//   MARKER x y r color
//   BLOCK x y r color            (repeatable: scenario picks one)
//   GOAL x y r
//   JITTER dxy dtheta_deg        (optional start-pose jitter)
WorldTemplate parse_world(std::istream& in, const std::string& id = "world");
WorldTemplate load_world(const std::string& path);

World instantiate(const WorldTemplate& tmpl, std::uint64_t scenario_seed);

RobotState initial_state(const World& world);

// Advances the robot by one tick along the exact unicycle arc. When the swept
// body circle reaches a wall the robot stops at the contact point; the
// collision counter increments once per contact event and re-arms when a tick
// ends contact-free.
RobotState step(const World& world, const RobotState& state, const SpeedCommand& cmd,
                const PlatformProfile& profile, double dt);

// Distance from origin along bearing to the nearest wall, clamped to max_range.
double cast_ray(const World& world, const Vec2& origin, double bearing, double max_range);

struct Blob {
    double bearing = 0.0;       // rad, robot frame
    double angular_width = 0.0; // rad
};

// The colour-matching marker/block with the widest angular extent whose
// center is inside the camera fov and not occluded by a wall.
std::optional<Blob> visible_blob(const World& world, const RobotState& state,
                                 const PlatformProfile& profile, const std::string& color);

// True once the robot center is within goal.radius + body_radius of the goal
// (or block) center. Throws ValidationError when the world defines neither.
bool task_complete(const World& world, const RobotState& state, const PlatformProfile& profile);

} // namespace idiobot
