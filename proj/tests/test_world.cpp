#include <doctest.h>

#include "idiobot/errors.hpp"
#include "idiobot/world.hpp"

#include <cmath>
#include <sstream>

using namespace idiobot;

namespace {

const char* kBoxWorld = R"(# 4x3 box with a goal
WORLD 4 3
START 0.5 1.5 0
WALL 0 0 4 0
WALL 4 0 4 3
WALL 4 3 0 3
WALL 0 3 0 0
MARKER 3.6 1.5 0.1 blue
GOAL 3.5 1.5 0.2
)";

World box_world() {
    std::istringstream in(kBoxWorld);
    return instantiate(parse_world(in, "box"), 1);
}

} // namespace

TEST_CASE("world file parsing") {
    std::istringstream in(kBoxWorld);
    const WorldTemplate tmpl = parse_world(in, "box");
    CHECK(tmpl.base.width == 4.0);
    CHECK(tmpl.base.height == 3.0);
    CHECK(tmpl.base.walls.size() == 4);
    CHECK(tmpl.base.markers.size() == 1);
    REQUIRE(tmpl.base.goal.has_value());
    CHECK(tmpl.base.goal->radius == 0.2);
    CHECK(tmpl.starts.size() == 1);
    CHECK(tmpl.base.track_color == "blue");

    SUBCASE("missing completion condition") {
        std::istringstream bad("WORLD 1 1\nSTART 0.5 0.5 0\n");
        CHECK_THROWS_AS(parse_world(bad), ParseError);
    }
    SUBCASE("unknown directive") {
        std::istringstream bad("WORLD 1 1\nSTART 0.5 0.5 0\nGOAL 0.9 0.5 0.1\nBANANA 1\n");
        CHECK_THROWS_WITH_AS(parse_world(bad), doctest::Contains("line 4"), ParseError);
    }
    SUBCASE("goal and block are mutually exclusive") {
        std::istringstream bad("WORLD 1 1\nSTART 0.5 0.5 0\nGOAL 0.9 0.5 0.1\nBLOCK 0.2 0.2 0.05 blue\n");
        CHECK_THROWS_AS(parse_world(bad), ParseError);
    }
}

TEST_CASE("scenario instantiation is seed-deterministic and uses variants") {
    std::istringstream in(
        "WORLD 4 3\nSTART 0.5 0.5 0\nSTART 3.5 2.5 180\nJITTER 0.05 10\n"
        "BLOCK 1 1 0.1 blue\nBLOCK 3 2 0.1 blue\nWALL 0 0 4 0\n");
    const WorldTemplate tmpl = parse_world(in);

    const World a = instantiate(tmpl, 7);
    const World b = instantiate(tmpl, 7);
    CHECK(a.start.x == b.start.x);
    CHECK(a.start.theta == b.start.theta);
    REQUIRE(a.block.has_value());
    CHECK(a.block->center.x == b.block->center.x);

    // different seeds eventually pick the other candidates
    bool start_varies = false, block_varies = false;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const World w = instantiate(tmpl, s);
        start_varies |= std::fabs(w.start.x - a.start.x) > 0.5;
        block_varies |= std::fabs(w.block->center.x - a.block->center.x) > 0.5;
    }
    CHECK(start_varies);
    CHECK(block_varies);
}

TEST_CASE("step integrates the exact unicycle arc") {
    const World world = box_world();
    const auto& profile = epuck_profile();
    RobotState s = initial_state(world);

    SUBCASE("straight line") {
        const RobotState next = step(world, s, {1.0, 0.0}, profile, 0.1);
        CHECK(next.pose.x == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(next.pose.y == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(next.tick == 1);
        CHECK(next.elapsed == doctest::Approx(0.1));
    }
    SUBCASE("spin in place") {
        const RobotState next = step(world, s, {0.0, kPi}, profile, 1.0);
        CHECK(next.pose.x == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(next.pose.y == doctest::Approx(1.5).epsilon(1e-12));
        CHECK(std::fabs(wrap_angle(next.pose.theta - kPi)) < 1e-12);
    }
    SUBCASE("closed-form arc") {
        const RobotState next = step(world, s, {1.0, 1.0}, profile, 1.0);
        CHECK(next.pose.x - 0.5 == doctest::Approx(std::sin(1.0)).epsilon(1e-9));
        CHECK(next.pose.y - 1.5 == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-9));
    }
    SUBCASE("travel distance never exceeds |v| dt") {
        RobotState state = s;
        for (int i = 0; i < 50; ++i) {
            const RobotState next = step(world, state, {0.9, 2.5}, profile, 0.1);
            const double dist = std::hypot(next.pose.x - state.pose.x, next.pose.y - state.pose.y);
            CHECK(dist <= 0.9 * 0.1 + 1e-12);
            state = next;
        }
    }
}

TEST_CASE("contact stops the robot and counts one collision per event") {
    const World world = box_world();
    const auto& profile = epuck_profile();

    RobotState s = initial_state(world); // (0.5, 1.5) facing +x; east wall at x = 4
    int steps = 0;
    while (!s.in_contact && steps < 500) {
        s = step(world, s, {1.0, 0.0}, profile, 0.1);
        ++steps;
    }
    REQUIRE(s.in_contact);
    CHECK(s.collisions == 1);
    CHECK(s.pose.x == doctest::Approx(4.0 - profile.body_radius).epsilon(1e-6));

    SUBCASE("pushing further keeps the count at one") {
        for (int i = 0; i < 10; ++i) s = step(world, s, {1.0, 0.0}, profile, 0.1);
        CHECK(s.collisions == 1);
        CHECK(s.in_contact);
        CHECK(s.pose.x == doctest::Approx(4.0 - profile.body_radius).epsilon(1e-6));
    }
    SUBCASE("backing off re-arms the counter") {
        s = step(world, s, {-0.5, 0.0}, profile, 0.1);
        CHECK(!s.in_contact);
        s = step(world, s, {1.0, 0.0}, profile, 0.1);
        CHECK(s.collisions == 2);
    }
}

TEST_CASE("cast_ray") {
    const World world = box_world();
    SUBCASE("axis-aligned hit") {
        CHECK(cast_ray(world, {3.0, 1.5}, 0.0, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("miss clamps to max range") {
        CHECK(cast_ray(world, {2.0, 1.5}, 0.0, 0.5) == 0.5);
    }
    SUBCASE("diagonal hit at sqrt(2) of the perpendicular distance") {
        const double d = cast_ray(world, {3.0, 1.5}, kPi / 4.0, 10.0);
        CHECK(d == doctest::Approx(1.0 * std::sqrt(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("visible_blob picks the widest unoccluded colour match") {
    std::istringstream in(
        "WORLD 10 10\nSTART 1 5 0\nGOAL 9 9 0.1\n"
        "MARKER 4 5 0.3 blue\n"   // near, dead ahead
        "MARKER 8 5 0.3 blue\n"   // far, same bearing
        "MARKER 4 1 0.3 red\n");  // wrong colour
    const World world = instantiate(parse_world(in), 0);
    RobotState s = initial_state(world);

    const auto blob = visible_blob(world, s, pioneer_profile(), "blue");
    REQUIRE(blob.has_value());
    CHECK(blob->bearing == doctest::Approx(0.0));
    CHECK(blob->angular_width == doctest::Approx(2.0 * std::asin(0.3 / 3.0)).epsilon(1e-9));

    SUBCASE("occlusion by a wall") {
        std::istringstream blocked(
            "WORLD 10 10\nSTART 1 5 0\nGOAL 9 9 0.1\nMARKER 4 5 0.3 blue\nWALL 2 4 2 6\n");
        const World w2 = instantiate(parse_world(blocked), 0);
        CHECK(!visible_blob(w2, s, pioneer_profile(), "blue").has_value());
    }
    SUBCASE("nothing matching the colour") {
        CHECK(!visible_blob(world, s, pioneer_profile(), "green").has_value());
    }
    SUBCASE("outside the fov") {
        RobotState turned = s;
        turned.pose.theta = kPi / 2.0; // markers now 90 degrees right
        CHECK(!visible_blob(world, turned, pioneer_profile(), "blue").has_value());
    }
}

TEST_CASE("task completion is a closed boundary") {
    const World world = box_world();
    const auto& profile = epuck_profile();
    RobotState s = initial_state(world);

    s.pose = {3.5, 1.5, 0.0}; // at the goal center
    CHECK(task_complete(world, s, profile));

    const double boundary = world.goal->radius + profile.body_radius;
    s.pose = {3.5 - boundary, 1.5, 0.0};
    CHECK(task_complete(world, s, profile)); // exactly on the boundary

    s.pose = {3.5 - boundary - 1e-9, 1.5, 0.0};
    CHECK(!task_complete(world, s, profile));

    World no_goal = world;
    no_goal.goal.reset();
    CHECK_THROWS_AS(task_complete(no_goal, s, profile), ValidationError);
}
