#include "idiobot/platform.hpp"

#include <sstream>

#include "idiobot/errors.hpp"
#include "idiobot/geometry.hpp"

namespace idiobot {

double psi_to_radians(double psi_per_second) { return psi_per_second * kPsiRadians; }

SpeedCommand wheel_speeds_to_command(double left, double right, const PlatformProfile& target,
                                     const PlatformProfile& reference) {
    SpeedCommand cmd;
    cmd.linear = kPsiRadians * target.wheel_radius * (right + left) / 2.0;
    cmd.angular = target.zeta * kPsiRadians * reference.wheel_radius * (right - left) /
                  reference.axle_length;
    return cmd;
}

namespace {

std::vector<double> bearings_deg(std::initializer_list<double> degs) {
    std::vector<double> out;
    out.reserve(degs.size());
    for (double d : degs) out.push_back(deg_to_rad(d));
    return out;
}

PlatformProfile make_epuck() {
    PlatformProfile p;
    p.name = "epuck";
    p.wheel_radius = 0.0205;
    p.axle_length = 0.052;
    p.body_radius = 0.037;
    p.sensor_kind = SensorKind::Infrared;
    p.sensor_count = 8;
    p.sensor_bearings = bearings_deg({-17, -49, -90, -150, 150, 90, 49, 17});
    p.sensor_range = 0.06;
    p.tau1 = 250.0;
    p.tau2 = 2400.0;
    p.max_is_closest = true;
    p.orientation_map = {Orientation::Right, Orientation::Right, Orientation::Right,
                         Orientation::Rear,  Orientation::Rear,  Orientation::Left,
                         Orientation::Left,  Orientation::Left};
    p.camera_fov = deg_to_rad(60.0);
    p.zeta = 1.0;
    return p;
}

PlatformProfile make_pioneer() {
    PlatformProfile p;
    p.name = "pioneer";
    p.wheel_radius = 0.095;
    p.axle_length = 0.33;
    p.body_radius = 0.22;
    p.sensor_kind = SensorKind::Sonar;
    p.sensor_count = 16;
    p.sensor_bearings = bearings_deg({90, 50, 30, 10, -10, -30, -50, -90, // front ring 0-7
                                      -90, -130, -150, -170, 170, 150, 130, 90}); // rear 8-15
    p.sensor_range = 5.0;
    p.tau1 = 0.15;
    p.tau2 = 0.04;
    p.max_is_closest = false;
    p.orientation_map = {Orientation::Left,  Orientation::Left,  Orientation::Left,
                         Orientation::Left,  Orientation::Right, Orientation::Right,
                         Orientation::Right, Orientation::Right, Orientation::Right,
                         Orientation::Right, Orientation::Rear,  Orientation::Rear,
                         Orientation::Rear,  Orientation::Rear,  Orientation::Left,
                         Orientation::Left};
    p.camera_fov = deg_to_rad(60.0);
    p.zeta = 1.575;
    return p;
}

} // namespace

const PlatformProfile& epuck_profile() {
    static const PlatformProfile p = make_epuck();
    return p;
}

const PlatformProfile& pioneer_profile() {
    static const PlatformProfile p = make_pioneer();
    return p;
}

const PlatformProfile& builtin_profile(const std::string& name) {
    if (name == "epuck") return epuck_profile();
    if (name == "pioneer") return pioneer_profile();
    throw ValidationError("unknown platform profile: " + name);
}

PlatformProfile profile_with_overrides(const PlatformProfile& base, std::istream& in) {
    PlatformProfile p = base;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq;
        double value = 0.0;
        if (!(ls >> key)) continue; // blank
        if (!(ls >> eq >> value) || eq != "=") {
            throw ParseError("expected 'key = value'", lineno);
        }
        if (key == "wheel_radius") p.wheel_radius = value;
        else if (key == "axle_length") p.axle_length = value;
        else if (key == "body_radius") p.body_radius = value;
        else if (key == "sensor_range") p.sensor_range = value;
        else if (key == "tau1") p.tau1 = value;
        else if (key == "tau2") p.tau2 = value;
        else if (key == "camera_fov_deg") p.camera_fov = deg_to_rad(value);
        else if (key == "zeta") p.zeta = value;
        else throw ParseError("unknown profile key: " + key, lineno);
    }
    return p;
}

} // namespace idiobot
