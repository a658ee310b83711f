#include "idiobot/perception.hpp"

#include <cmath>

#include "idiobot/errors.hpp"

namespace idiobot {

namespace {

constexpr double kIrPeak = 4095.0;
constexpr double kIrDecay = 0.02; // m; e-folding distance of the reflectance model

double infrared_reading(double distance, double range) {
    if (distance > range) return 0.0;
    return std::round(kIrPeak * std::exp(-distance / kIrDecay));
}

} // namespace

SensorFrame sense(const World& world, const RobotState& state, const PlatformProfile& profile) {
    SensorFrame frame;
    frame.readings.resize(static_cast<std::size_t>(profile.sensor_count));
    const Vec2 center{state.pose.x, state.pose.y};
    for (int i = 0; i < profile.sensor_count; ++i) {
        const double bearing = state.pose.theta + profile.sensor_bearings[static_cast<std::size_t>(i)];
        const Vec2 origin = center + heading_vector(bearing) * profile.body_radius;
        if (profile.sensor_kind == SensorKind::Sonar) {
            frame.readings[static_cast<std::size_t>(i)] =
                cast_ray(world, origin, bearing, profile.sensor_range);
        } else {
            // cast far enough to tell "beyond range" (reading 0) from a hit at the range
            const double horizon = profile.sensor_range + world.width + world.height;
            const double d = cast_ray(world, origin, bearing, horizon);
            frame.readings[static_cast<std::size_t>(i)] = infrared_reading(d, profile.sensor_range);
        }
    }
    frame.blob = visible_blob(world, state, profile, world.track_color);
    return frame;
}

Antigen classify_antigen(const SensorFrame& frame, const PlatformProfile& profile) {
    if (static_cast<int>(frame.readings.size()) != profile.sensor_count)
        throw ValidationError("sensor frame size does not match profile");

    int closest = 0;
    for (int i = 1; i < profile.sensor_count; ++i) {
        const double r = frame.readings[static_cast<std::size_t>(i)];
        const double best = frame.readings[static_cast<std::size_t>(closest)];
        if (profile.max_is_closest ? r > best : r < best) closest = i;
    }
    const double reading = frame.readings[static_cast<std::size_t>(closest)];
    const bool collision = profile.max_is_closest ? reading > profile.tau2 : reading < profile.tau2;
    const bool obstacle = profile.max_is_closest ? reading > profile.tau1 : reading < profile.tau1;
    if (collision || obstacle) {
        const int base = collision ? kAntigenCollisionRight : kAntigenObstacleRight;
        switch (profile.orientation_map[static_cast<std::size_t>(closest)]) {
        case Orientation::Right: return {base};
        case Orientation::Rear: return {base + 1};
        case Orientation::Left: return {base + 2};
        }
    }
    return {frame.blob ? kAntigenTargetSeen : kAntigenTargetUnseen};
}

BlobZone blob_zone(double bearing, const PlatformProfile& profile) {
    if (std::fabs(bearing) > profile.camera_fov / 2.0 + 1e-12)
        throw ValidationError("blob bearing outside the camera fov");
    constexpr double kCentreHalfAngle = 10.0 * kPi / 180.0;
    if (std::fabs(bearing) <= kCentreHalfAngle) return BlobZone::Centre;
    return bearing > 0.0 ? BlobZone::Left : BlobZone::Right;
}

} // namespace idiobot
