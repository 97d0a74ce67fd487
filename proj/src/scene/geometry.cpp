#include "uavtwin/scene/geometry.hpp"

#include "uavtwin/common/constants.hpp"
#include "uavtwin/common/errors.hpp"

#include <algorithm>
#include <string>

namespace uavtwin::scene {

double los_delay(const Position3& a, const Position3& b) { return distance(a, b) / kSpeedOfLight; }

double bistatic_delay(const Position3& tx, const Position3& target, const Position3& rx) {
    return (distance(tx, target) + distance(target, rx)) / kSpeedOfLight;
}

Antenna omni_antenna() { return Antenna{}; }

Antenna directional_antenna(double azimuth_deg, double elevation_deg, double beamwidth_deg,
                            double out_of_beam_loss_db) {
    return Antenna{AntennaKind::Directional, azimuth_deg, elevation_deg, beamwidth_deg,
                   out_of_beam_loss_db};
}

Position3 direction_from_angles(double azimuth_deg, double elevation_deg) {
    const double az = azimuth_deg * kPi / 180.0;
    const double el = elevation_deg * kPi / 180.0;
    return {std::cos(el) * std::sin(az), std::cos(el) * std::cos(az), std::sin(el)};
}

double off_boresight_angle(const Antenna& antenna, const Position3& from, const Position3& to) {
    const Position3 d = to - from;
    const double len = d.norm();
    if (!(len > 0.0)) throw InvalidArgument("antenna direction undefined: from == to");
    const Position3 boresight =
        direction_from_angles(antenna.boresight_azimuth, antenna.boresight_elevation);
    const double c = std::clamp(boresight.dot(d) / len, -1.0, 1.0);
    return std::acos(c) * 180.0 / kPi;
}

bool in_beam(const Antenna& antenna, const Position3& from, const Position3& to) {
    if (antenna.kind == AntennaKind::Omni) {
        if (from == to) throw InvalidArgument("antenna direction undefined: from == to");
        return true;
    }
    return off_boresight_angle(antenna, from, to) <= antenna.beamwidth_10db / 2.0;
}

double antenna_gain(const Antenna& antenna, const Position3& from, const Position3& to) {
    return in_beam(antenna, from, to) ? 0.0 : -antenna.out_of_beam_loss / 2.0;
}

bool Trajectory::covers(double t0, double t1) const {
    return !samples.empty() && t0 >= start_time() && t1 <= end_time();
}

void validate(const Trajectory& trajectory) {
    if (trajectory.samples.empty()) throw InvalidArgument("trajectory has no samples");
    for (std::size_t i = 0; i < trajectory.samples.size(); ++i) {
        const auto& s = trajectory.samples[i];
        if (!std::isfinite(s.t) || !s.position.finite())
            throw InvalidArgument("trajectory sample " + std::to_string(i) + " is not finite");
        if (i > 0 && !(s.t > trajectory.samples[i - 1].t))
            throw InvalidArgument("trajectory timestamps not strictly increasing at sample " +
                                  std::to_string(i));
    }
}

namespace {

std::size_t segment_index(const Trajectory& trajectory, double t) {
    const auto& s = trajectory.samples;
    if (s.empty()) throw InvalidArgument("empty trajectory");
    if (!(t >= s.front().t && t <= s.back().t))
        throw InvalidArgument("time " + std::to_string(t) + " s outside trajectory span [" +
                              std::to_string(s.front().t) + ", " + std::to_string(s.back().t) +
                              "]");
    auto it = std::upper_bound(s.begin(), s.end(), t,
                               [](double v, const TrajectorySample& x) { return v < x.t; });
    std::size_t hi = static_cast<std::size_t>(it - s.begin());
    if (hi == 0) hi = 1;
    if (hi >= s.size()) hi = s.size() - 1;
    return hi - 1;
}

}  // namespace

Position3 sample_trajectory(const Trajectory& trajectory, double t) {
    const auto& s = trajectory.samples;
    if (s.size() == 1) {
        if (t != s.front().t) segment_index(trajectory, t);  // throws
        return s.front().position;
    }
    const std::size_t i = segment_index(trajectory, t);
    const auto& a = s[i];
    const auto& b = s[i + 1];
    if (t == a.t) return a.position;
    if (t == b.t) return b.position;
    const double w = (t - a.t) / (b.t - a.t);
    return a.position + (b.position - a.position) * w;
}

Position3 trajectory_velocity(const Trajectory& trajectory, double t) {
    const auto& s = trajectory.samples;
    if (s.size() < 2) {
        segment_index(trajectory, t);
        return {};
    }
    const std::size_t i = segment_index(trajectory, t);
    return (s[i + 1].position - s[i].position) * (1.0 / (s[i + 1].t - s[i].t));
}

Trajectory make_circle_trajectory(const Position3& center, double radius, double speed,
                                  double start_time, double duration, double step,
                                  double start_angle_deg) {
    if (!(radius > 0.0) || !(speed > 0.0) || !(duration > 0.0) || !(step > 0.0))
        throw InvalidArgument("circle trajectory parameters must be positive");
    Trajectory traj;
    const auto n = static_cast<std::size_t>(std::ceil(duration / step - 1e-9));
    const double omega = speed / radius;
    const double phi0 = start_angle_deg * kPi / 180.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double dt = std::min(static_cast<double>(i) * step, duration);
        const double phi = phi0 + omega * dt;
        traj.samples.push_back(
            {start_time + dt,
             {center.east + radius * std::cos(phi), center.north + radius * std::sin(phi),
              center.up}});
    }
    return traj;
}

Trajectory make_waypoint_trajectory(const std::vector<Position3>& waypoints, double speed,
                                    double start_time, double step) {
    if (waypoints.size() < 2) throw InvalidArgument("need at least two waypoints");
    if (!(speed > 0.0) || !(step > 0.0)) throw InvalidArgument("speed and step must be positive");
    std::vector<double> arrival{0.0};
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        const double leg = distance(waypoints[i - 1], waypoints[i]);
        if (!(leg > 0.0)) throw InvalidArgument("repeated waypoint");
        arrival.push_back(arrival.back() + leg / speed);
    }
    Trajectory traj;
    const double total = arrival.back();
    std::size_t leg = 0;
    for (std::size_t i = 0;; ++i) {
        double t = static_cast<double>(i) * step;
        const bool last = t >= total - 1e-9;
        if (last) t = total;
        while (leg + 2 < arrival.size() && t > arrival[leg + 1]) ++leg;
        const double w = (t - arrival[leg]) / (arrival[leg + 1] - arrival[leg]);
        traj.samples.push_back(
            {start_time + t, waypoints[leg] + (waypoints[leg + 1] - waypoints[leg]) * w});
        if (last) break;
    }
    return traj;
}

}  // namespace uavtwin::scene
