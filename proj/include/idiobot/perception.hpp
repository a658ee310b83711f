#pragma once

#include <optional>
#include <vector>

#include "idiobot/platform.hpp"
#include "idiobot/world.hpp"

namespace idiobot {

// Antigen codes: the eight environmental situations the controller reacts to.
inline constexpr int kAntigenTargetUnseen = 1;
inline constexpr int kAntigenTargetSeen = 2;
inline constexpr int kAntigenObstacleRight = 3;
inline constexpr int kAntigenObstacleRear = 4;
inline constexpr int kAntigenObstacleLeft = 5;
inline constexpr int kAntigenCollisionRight = 6;
inline constexpr int kAntigenCollisionRear = 7;
inline constexpr int kAntigenCollisionLeft = 8;

struct Antigen {
    int code = kAntigenTargetUnseen; // 1-8

    bool operator==(const Antigen&) const = default;
};

// One tick worth of raw sensing: the range ring in platform units plus the
// largest camera blob, if any.
struct SensorFrame {
    std::vector<double> readings;
    std::optional<Blob> blob;
};

enum class BlobZone { Left, Centre, Right };

// Samples the range ring from the body edge and the camera for the world's
// tracked colour. Sonar readings are ray distances clamped to the range;
// infrared readings follow reading(d) = round(4095 * exp(-d / 0.02)), zero
// beyond the range.
SensorFrame sense(const World& world, const RobotState& state, const PlatformProfile& profile);

// Maps a frame to its antigen. Priority: collision > obstacle > target seen >
// target unseen; the closest reading (per the platform comparator) decides the
// band and its index decides the orientation.
Antigen classify_antigen(const SensorFrame& frame, const PlatformProfile& profile);

// Camera thirds: centre within +-10 degrees (closed), left above, right below.
BlobZone blob_zone(double bearing, const PlatformProfile& profile);

} // namespace idiobot
