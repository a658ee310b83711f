#include <doctest.h>

#include "idiobot/errors.hpp"
#include "idiobot/geometry.hpp"
#include "idiobot/platform.hpp"
#include "idiobot/rng.hpp"

#include <sstream>

using namespace idiobot;

TEST_CASE("psi conversion matches the reference arithmetic") {
    CHECK(psi_to_radians(600) == doctest::Approx(4.098).epsilon(1e-12));
    CHECK(psi_to_radians(0) == 0.0);
    CHECK(psi_to_radians(537) == doctest::Approx(537 * 0.00683).epsilon(1e-12));
}

TEST_CASE("wheel speed conversion, pioneer executing an epuck genome") {
    const auto& pioneer = pioneer_profile();
    const auto& epuck = epuck_profile();

    SUBCASE("straight drive") {
        const SpeedCommand cmd = wheel_speeds_to_command(600, 600, pioneer, epuck);
        CHECK(cmd.linear == doctest::Approx(0.38931).epsilon(1e-9));
        CHECK(cmd.angular == 0.0);
    }
    SUBCASE("full left turn") {
        // zeta * psi * r_e * (R - L) / a_e with R = 600, L = 0
        const SpeedCommand cmd = wheel_speeds_to_command(0, 600, pioneer, epuck);
        CHECK(cmd.angular == doctest::Approx(1.575 * 0.00683 * 0.0205 * 600 / 0.052).epsilon(1e-12));
        CHECK(cmd.angular == doctest::Approx(2.54445).epsilon(1e-4));
    }
    SUBCASE("swapping wheels negates omega and keeps v") {
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            const double l = rng.uniform(-900, 900);
            const double r = rng.uniform(-900, 900);
            const SpeedCommand a = wheel_speeds_to_command(l, r, pioneer, epuck);
            const SpeedCommand b = wheel_speeds_to_command(r, l, pioneer, epuck);
            CHECK(a.linear == doctest::Approx(b.linear).epsilon(1e-12));
            CHECK(a.angular == doctest::Approx(-b.angular).epsilon(1e-12));
        }
    }
    SUBCASE("linearity in the wheel speeds") {
        const SpeedCommand base = wheel_speeds_to_command(120, 480, pioneer, epuck);
        const SpeedCommand scaled = wheel_speeds_to_command(1.75 * 120, 1.75 * 480, pioneer, epuck);
        CHECK(scaled.linear == doctest::Approx(1.75 * base.linear).epsilon(1e-12));
        CHECK(scaled.angular == doctest::Approx(1.75 * base.angular).epsilon(1e-12));
    }
}

TEST_CASE("reference platform reproduces its own unicycle closed form") {
    const auto& epuck = epuck_profile();
    REQUIRE(epuck.zeta == 1.0);
    for (double l = -600; l <= 600; l += 150) {
        for (double r = -600; r <= 600; r += 150) {
            const SpeedCommand cmd = wheel_speeds_to_command(l, r, epuck, epuck);
            CHECK(cmd.linear ==
                  doctest::Approx(kPsiRadians * 0.0205 * (r + l) / 2.0).epsilon(1e-12));
            CHECK(cmd.angular ==
                  doctest::Approx(kPsiRadians * 0.0205 * (r - l) / 0.052).epsilon(1e-12));
        }
    }
}

TEST_CASE("builtin profiles carry the documented geometry and thresholds") {
    const auto& epuck = epuck_profile();
    CHECK(epuck.wheel_radius == 0.0205);
    CHECK(epuck.axle_length == 0.052);
    CHECK(epuck.body_radius == 0.037);
    CHECK(epuck.sensor_count == 8);
    CHECK(epuck.sensor_range == 0.06);
    CHECK(epuck.tau1 == 250.0);
    CHECK(epuck.tau2 == 2400.0);
    CHECK(epuck.max_is_closest);
    CHECK(epuck.tau1 < epuck.tau2);

    const auto& pioneer = pioneer_profile();
    CHECK(pioneer.wheel_radius == 0.095);
    CHECK(pioneer.axle_length == 0.33);
    CHECK(pioneer.sensor_count == 16);
    CHECK(pioneer.sensor_range == 5.0);
    CHECK(pioneer.tau1 == 0.15);
    CHECK(pioneer.tau2 == 0.04);
    CHECK(!pioneer.max_is_closest);
    CHECK(pioneer.tau2 < pioneer.tau1);
    CHECK(pioneer.zeta == 1.575);

    // index -> side maps
    for (int i : {0, 1, 2}) CHECK(epuck.orientation_map[i] == Orientation::Right);
    for (int i : {3, 4}) CHECK(epuck.orientation_map[i] == Orientation::Rear);
    for (int i : {5, 6, 7}) CHECK(epuck.orientation_map[i] == Orientation::Left);
    for (int i = 4; i <= 9; ++i) CHECK(pioneer.orientation_map[i] == Orientation::Right);
    for (int i = 10; i <= 13; ++i) CHECK(pioneer.orientation_map[i] == Orientation::Rear);
    for (int i : {0, 1, 2, 3, 14, 15}) CHECK(pioneer.orientation_map[i] == Orientation::Left);

    CHECK(builtin_profile("epuck").name == "epuck");
    CHECK_THROWS_AS(builtin_profile("khepera"), ValidationError);
}

TEST_CASE("profile overrides") {
    std::istringstream in("# tweak\n tau1 = 0.2 \n\nzeta = 2.0\n");
    const PlatformProfile p = profile_with_overrides(pioneer_profile(), in);
    CHECK(p.tau1 == 0.2);
    CHECK(p.zeta == 2.0);
    CHECK(p.tau2 == 0.04);

    std::istringstream bad("tau9 = 1\n");
    CHECK_THROWS_AS(profile_with_overrides(pioneer_profile(), bad), ParseError);
}
