#pragma once

#include <cmath>
#include <vector>

namespace uavtwin::scene {

/// Local east-north-up coordinates in metres.
struct Position3 {
    double east = 0.0;
    double north = 0.0;
    double up = 0.0;

    Position3 operator+(const Position3& o) const { return {east + o.east, north + o.north, up + o.up}; }
    Position3 operator-(const Position3& o) const { return {east - o.east, north - o.north, up - o.up}; }
    Position3 operator*(double s) const { return {east * s, north * s, up * s}; }
    double dot(const Position3& o) const { return east * o.east + north * o.north + up * o.up; }
    double norm() const { return std::sqrt(dot(*this)); }
    double horizontal_norm() const { return std::hypot(east, north); }
    bool finite() const { return std::isfinite(east) && std::isfinite(north) && std::isfinite(up); }

    bool operator==(const Position3&) const = default;
};

inline double distance(const Position3& a, const Position3& b) { return (a - b).norm(); }

/// Propagation time along the straight line a -> b.
double los_delay(const Position3& a, const Position3& b);

/// Transmitter -> target -> receiver propagation time.
double bistatic_delay(const Position3& tx, const Position3& target, const Position3& rx);

enum class AntennaKind { Omni, Directional };

/// Step beam pattern: full gain inside the 10 dB beamwidth cone, a fixed
/// loss outside it. `out_of_beam_loss` is the two-way figure, so each
/// traversal of an out-of-beam antenna costs half of it.
struct Antenna {
    AntennaKind kind = AntennaKind::Omni;
    double boresight_azimuth = 0.0;    // deg, clockwise from north
    double boresight_elevation = 0.0;  // deg above the horizon
    double beamwidth_10db = 40.0;      // deg, full cone angle
    double out_of_beam_loss = 20.0;    // dB, two-way

    bool operator==(const Antenna&) const = default;
};

Antenna omni_antenna();
Antenna directional_antenna(double azimuth_deg, double elevation_deg, double beamwidth_deg = 40.0,
                            double out_of_beam_loss_db = 20.0);

/// Unit vector for an azimuth/elevation pair in degrees.
Position3 direction_from_angles(double azimuth_deg, double elevation_deg);

/// Angle in degrees between the boresight and the from -> to direction.
double off_boresight_angle(const Antenna& antenna, const Position3& from, const Position3& to);

bool in_beam(const Antenna& antenna, const Position3& from, const Position3& to);

/// One-way gain in dB of an antenna located at `from` towards `to`.
/// Throws InvalidArgument when from == to.
double antenna_gain(const Antenna& antenna, const Position3& from, const Position3& to);

struct TrajectorySample {
    double t = 0.0;
    Position3 position;

    bool operator==(const TrajectorySample&) const = default;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;

    double start_time() const { return samples.front().t; }
    double end_time() const { return samples.back().t; }
    bool covers(double t0, double t1) const;

    bool operator==(const Trajectory&) const = default;
};

/// Throws InvalidArgument if empty, non-finite or not strictly increasing.
void validate(const Trajectory& trajectory);

/// Piecewise-linear position at time t; throws InvalidArgument outside
/// [start_time, end_time].
Position3 sample_trajectory(const Trajectory& trajectory, double t);

/// Velocity of the segment containing t (one-sided at the ends).
Position3 trajectory_velocity(const Trajectory& trajectory, double t);

/// Constant-speed horizontal circle at fixed altitude, sampled every `step`
/// seconds. Angles in degrees, counter-clockwise from east.
Trajectory make_circle_trajectory(const Position3& center, double radius, double speed,
                                  double start_time, double duration, double step,
                                  double start_angle_deg = 0.0);

/// Constant-speed polyline through the waypoints, sampled every `step` seconds
/// (the final waypoint is always included).
Trajectory make_waypoint_trajectory(const std::vector<Position3>& waypoints, double speed,
                                    double start_time, double step);

}  // namespace uavtwin::scene
