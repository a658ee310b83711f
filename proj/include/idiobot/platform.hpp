#pragma once

#include <istream>
#include <string>
#include <vector>

namespace idiobot {

// One epuck wheel-speed unit, in radians of wheel rotation. Genome speeds are
// expressed in psi per second; psi_to_radians converts to rad/s.
inline constexpr double kPsiRadians = 0.00683;

enum class SensorKind { Infrared, Sonar };

enum class Orientation { Right, Rear, Left };

// Static description of a robot platform: drivetrain geometry, ring of range
// sensors with their classification thresholds, and the camera field of view.
//
// Infrared rings report reflected light (higher reading = closer, tau1 < tau2);
// sonar rings report distance in meters (lower reading = closer, tau2 < tau1).
struct PlatformProfile {
    std::string name;
    double wheel_radius = 0.0; // m
    double axle_length = 0.0;  // m
    double body_radius = 0.0;  // m, bounding circle used for collisions
    SensorKind sensor_kind = SensorKind::Infrared;
    int sensor_count = 0;
    std::vector<double> sensor_bearings; // rad, robot frame, positive = left of heading
    double sensor_range = 0.0;           // m
    double tau1 = 0.0;                   // no-obstacle / obstacle boundary, sensor units
    double tau2 = 0.0;                   // obstacle / collision boundary, sensor units
    bool max_is_closest = true;          // true for infrared, false for sonar
    std::vector<Orientation> orientation_map; // sensor index -> body side
    double camera_fov = 0.0;             // rad
    double zeta = 1.0;                   // angular correction when replaying foreign genomes
};

struct SpeedCommand {
    double linear = 0.0;  // m/s
    double angular = 0.0; // rad/s, positive = counter-clockwise
};

double psi_to_radians(double psi_per_second);

// Converts genome-format wheel speeds (psi/s, evolved on `reference`) into the
// unicycle command executed by `target`:
//   v = psi * r_target * (R + L) / 2
//   w = zeta_target * psi * r_reference * (R - L) / a_reference
SpeedCommand wheel_speeds_to_command(double left, double right, const PlatformProfile& target,
                                     const PlatformProfile& reference);

const PlatformProfile& epuck_profile();
const PlatformProfile& pioneer_profile();

// Returns the builtin profile of that name; throws ValidationError otherwise.
const PlatformProfile& builtin_profile(const std::string& name);

// Applies `key = value` numeric overrides (wheel_radius, axle_length,
// body_radius, sensor_range, tau1, tau2, camera_fov_deg, zeta) to a copy of
// the base profile. '#' comments and blank lines are ignored.
PlatformProfile profile_with_overrides(const PlatformProfile& base, std::istream& in);

} // namespace idiobot
