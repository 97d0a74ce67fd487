#include "uavtwin/scene/scenario.hpp"

#include "uavtwin/common/constants.hpp"
#include "uavtwin/common/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace uavtwin::scene {

const char* to_string(Mode mode) { return mode == Mode::Radar ? "radar" : "emitter"; }

const char* to_string(Role role) {
    switch (role) {
        case Role::Tx: return "tx";
        case Role::Rx: return "rx";
        case Role::Beacon: return "beacon";
        case Role::Mobile: return "mobile";
    }
    return "?";
}

const Node& ScenarioConfig::node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw InvalidArgument("no node with id '" + id + "'");
}

const Node& ScenarioConfig::mobile() const {
    for (const auto& n : nodes)
        if (n.role == Role::Mobile) return n;
    throw InvalidArgument("scenario has no mobile node");
}

std::vector<const Node*> ScenarioConfig::with_role(Role role) const {
    std::vector<const Node*> out;
    for (const auto& n : nodes)
        if (n.role == role) out.push_back(&n);
    return out;
}

const Node& ScenarioConfig::transmitter() const {
    for (const auto& n : nodes)
        if (n.role == Role::Tx) return n;
    throw InvalidArgument("scenario has no stationary transmitter");
}

double ScenarioConfig::burst_duration() const {
    const auto snapshots = (radar.canceler_order + 1) * radar.average_k;
    return static_cast<double>(snapshots - 1) * capture.snapshot_interval + waveform.symbol_length;
}

// --------------------------------------------------------------------------
// Validation

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw ValidationError(field, what);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

void validate_volume(const SearchVolume& v, const std::string& field) {
    require(v.min.finite() && v.max.finite(), field, "bounds must be finite");
    require(v.min.east < v.max.east && v.min.north < v.max.north && v.min.up <= v.max.up, field,
            "min must be below max");
    require(positive(v.coarse_step), field + ".coarse_step_m", "must be positive");
}

}  // namespace

void validate(const ScenarioConfig& c) {
    require(c.schema_version == kScenarioSchemaVersion, "schema_version",
            "unsupported version " + std::to_string(c.schema_version));
    try {
        waveform::validate(c.waveform);
    } catch (const InvalidArgument& e) {
        throw ValidationError("waveform", e.what());
    }

    std::set<std::string> ids;
    int mobiles = 0;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const auto& n = c.nodes[i];
        const std::string field = "nodes[" + std::to_string(i) + "]";
        require(!n.id.empty(), field + ".id", "must not be empty");
        require(ids.insert(n.id).second, field + ".id", "duplicate node id '" + n.id + "'");
        if (n.role == Role::Mobile) ++mobiles;
        else require(n.position.finite(), field + ".position", "must be finite");
        if (n.role == Role::Tx || n.role == Role::Beacon)
            require(n.eirp_dbm.has_value(), field + ".eirp_dbm", "transmitting node needs eirp");
        if (n.eirp_dbm) require(std::isfinite(*n.eirp_dbm), field + ".eirp_dbm", "must be finite");
        const auto& a = n.antenna;
        if (a.kind == AntennaKind::Directional) {
            require(a.beamwidth_10db > 0.0 && a.beamwidth_10db <= 360.0,
                    field + ".antenna.beamwidth_10db_deg", "must be in (0, 360]");
            require(std::isfinite(a.boresight_azimuth) && std::isfinite(a.boresight_elevation),
                    field + ".antenna", "boresight must be finite");
        }
        require(a.out_of_beam_loss >= 0.0 && std::isfinite(a.out_of_beam_loss),
                field + ".antenna.out_of_beam_loss_db", "must be >= 0");
    }
    require(mobiles == 1, "nodes", "exactly one mobile node required, found " + std::to_string(mobiles));

    try {
        validate(c.trajectory);
    } catch (const InvalidArgument& e) {
        throw ValidationError("trajectory", e.what());
    }

    const auto rx = c.receivers();
    const auto txs = c.with_role(Role::Tx);
    if (c.mode == Mode::Radar) {
        require(!txs.empty(), "nodes", "radar mode requires at least one stationary tx");
        require(rx.size() >= 2, "nodes",
                "radar mode requires at least 2 rx, found " + std::to_string(rx.size()));
    } else {
        const std::size_t needed = c.emitter.altitude_constraint ? 3 : 4;
        require(rx.size() >= needed, "nodes",
                "emitter mode requires at least " + std::to_string(needed) + " rx, found " +
                    std::to_string(rx.size()));
        require(c.mobile().eirp_dbm.has_value(), "nodes", "emitting mobile node needs eirp_dbm");
        // Circular correlation over one symbol only resolves |TDoA| < T/2.
        const double max_baseline = kSpeedOfLight * c.waveform.symbol_length / 2.0;
        for (std::size_t i = 0; i < rx.size(); ++i)
            for (std::size_t j = i + 1; j < rx.size(); ++j)
                require(distance(rx[i]->position, rx[j]->position) < max_baseline, "nodes",
                        "baseline " + rx[i]->id + "-" + rx[j]->id +
                            " exceeds the unambiguous TDoA range of one symbol");
        if (c.emitter.reference_rx) {
            bool found = false;
            for (auto* r : rx) found = found || r->id == *c.emitter.reference_rx;
            require(found, "emitter.reference_rx", "must name an rx node");
        }
        require(positive(c.emitter.search_window) &&
                    c.emitter.search_window <= c.waveform.symbol_length / 2.0,
                "emitter.search_window_s", "must be in (0, symbol_length/2]");
        validate_volume(c.emitter.area, "emitter.area");
    }

    const auto& cap = c.capture;
    require(cap.epochs >= 1, "capture.epochs", "must be >= 1");
    require(positive(cap.epoch_interval), "capture.epoch_interval_s", "must be positive");
    require(std::isfinite(cap.t0), "capture.t0_s", "must be finite");
    require(cap.snapshot_interval >= c.waveform.symbol_length && std::isfinite(cap.snapshot_interval),
            "capture.snapshot_interval_s", "must be >= symbol length");
    require(!std::isnan(cap.snr_db) && cap.snr_db > -std::numeric_limits<double>::infinity(),
            "capture.snr_db", "must be a number or +inf");
    double span_end = cap.t0 + static_cast<double>(cap.epochs - 1) * cap.epoch_interval;
    if (c.mode == Mode::Radar) {
        span_end += static_cast<double>((c.radar.canceler_order + 1) * c.radar.average_k - 1) *
                    cap.snapshot_interval;
        require(cap.epoch_interval >= c.burst_duration(), "capture.epoch_interval_s",
                "radar bursts must not overlap");
    }
    require(c.trajectory.covers(cap.t0, span_end), "trajectory",
            "does not cover the capture window");

    for (std::size_t i = 0; i < c.clutter.size(); ++i) {
        const auto& t = c.clutter[i];
        const std::string field = "clutter[" + std::to_string(i) + "]";
        require(t.delay >= 0.0 && std::isfinite(t.delay), field + ".delay_s", "must be >= 0");
        require(std::isfinite(t.gain_db) && std::isfinite(t.phase_deg), field, "gain must be finite");
        if (t.rx) {
            bool found = false;
            for (auto* r : rx) found = found || r->id == *t.rx;
            require(found, field + ".rx", "must name an rx node");
        }
    }

    if (c.clock.enabled) {
        require(c.clock.sigma_white >= 0.0, "clock.sigma_white_s", "must be >= 0");
        require(c.clock.drift_scale >= 0.0, "clock.drift_scale_s", "must be >= 0");
        require(c.clock.gnss_noise >= 0.0, "clock.gnss_noise_s", "must be >= 0");
        require(positive(c.clock.correlation_time), "clock.correlation_time_s", "must be positive");
        require(positive(c.clock.sample_interval), "clock.sample_interval_s", "must be positive");
    }

    if (c.sync.beacon) {
        bool found = false;
        for (const auto& n : c.nodes) found = found || (n.id == *c.sync.beacon && n.role == Role::Beacon);
        require(found, "sync.beacon", "must name a node with role beacon");
        require(positive(c.sync.calibration_duration), "sync.calibration_duration_s", "must be positive");
        require(c.sync.filter_window >= c.clock.sample_interval, "sync.filter_window_s",
                "must be at least one GNSS sample interval");
    }

    const auto& r = c.radar;
    require(r.average_k >= 1, "radar.average_k", "must be >= 1");
    require(r.canceler_order >= 1, "radar.canceler_order", "must be >= 1");
    require(r.max_targets >= 1, "radar.max_targets", "must be >= 1");
    require(std::isfinite(r.threshold_db), "radar.threshold_db", "must be finite");
    const auto& t = r.tracker;
    require(positive(t.measurement_noise), "radar.tracker.measurement_noise_s", "must be positive");
    require(t.process_noise >= 0.0, "radar.tracker.process_noise", "must be >= 0");
    require(positive(t.initial_rate_std), "radar.tracker.initial_rate_std", "must be positive");
    require(positive(t.gate), "radar.tracker.gate", "must be positive");
    require(t.confirm_hits >= 1 && t.confirm_hits <= t.confirm_window, "radar.tracker.confirm_hits",
            "need 1 <= m <= n");
    require(t.max_misses >= 1, "radar.tracker.max_misses", "must be >= 1");
    if (c.mode == Mode::Radar) validate_volume(r.volume, "radar.volume");
}

// --------------------------------------------------------------------------
// Parsing

namespace {

/// Wraps a YAML mapping, tracks consumed keys and reports errors with the
/// full dotted path.
class Section {
public:
    Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap())
            throw ParseError(label() + " must be a mapping");
    }

    bool has(const std::string& key) {
        used_.insert(key);
        return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
    }

    YAML::Node raw(const std::string& key) {
        used_.insert(key);
        return node_ ? node_[key] : YAML::Node();
    }

    template <typename T>
    T get(const std::string& key) {
        if (!has(key)) throw ParseError(join(key) + " is required");
        return convert<T>(node_[key], join(key));
    }

    template <typename T>
    void read(const std::string& key, T& target) {
        if (has(key)) target = convert<T>(node_[key], join(key));
    }

    template <typename T>
    void read(const std::string& key, std::optional<T>& target) {
        if (has(key)) target = convert<T>(node_[key], join(key));
    }

    Section child(const std::string& key) { return Section(raw(key), join(key)); }

    std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        if (!node_ || !node_.IsMap()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!used_.count(key)) throw ParseError("unknown key " + join(key));
        }
    }

    template <typename T>
    static T convert(const YAML::Node& n, const std::string& where) {
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            throw ParseError(where + " has the wrong type");
        }
    }

private:
    std::string label() const { return path_.empty() ? "document" : path_; }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

Position3 parse_position(const YAML::Node& n, const std::string& where) {
    if (!n.IsSequence() || n.size() != 3) throw ParseError(where + " must be [east, north, up]");
    return {Section::convert<double>(n[0], where), Section::convert<double>(n[1], where),
            Section::convert<double>(n[2], where)};
}

Mode parse_mode(const std::string& s) {
    if (s == "radar") return Mode::Radar;
    if (s == "emitter") return Mode::Emitter;
    throw ParseError("mode must be radar or emitter, got '" + s + "'");
}

Role parse_role(const std::string& s, const std::string& where) {
    if (s == "tx") return Role::Tx;
    if (s == "rx") return Role::Rx;
    if (s == "beacon") return Role::Beacon;
    if (s == "mobile") return Role::Mobile;
    throw ParseError(where + " must be tx, rx, beacon or mobile");
}

Antenna parse_antenna(Section s) {
    Antenna a;
    if (s.has("kind")) {
        const auto kind = s.get<std::string>("kind");
        if (kind == "omni") a.kind = AntennaKind::Omni;
        else if (kind == "directional") a.kind = AntennaKind::Directional;
        else throw ParseError(s.join("kind") + " must be omni or directional");
    }
    s.read("boresight_azimuth_deg", a.boresight_azimuth);
    s.read("boresight_elevation_deg", a.boresight_elevation);
    s.read("beamwidth_10db_deg", a.beamwidth_10db);
    s.read("out_of_beam_loss_db", a.out_of_beam_loss);
    s.finish();
    return a;
}

SearchVolume parse_volume(Section s, SearchVolume v) {
    if (s.has("min")) v.min = parse_position(s.raw("min"), s.join("min"));
    if (s.has("max")) v.max = parse_position(s.raw("max"), s.join("max"));
    s.read("coarse_step_m", v.coarse_step);
    s.finish();
    return v;
}

Trajectory parse_trajectory(Section s) {
    const int forms = int(s.has("samples")) + int(s.has("circle")) + int(s.has("waypoints"));
    if (forms != 1) throw ParseError("trajectory needs exactly one of samples, circle, waypoints");
    if (s.has("samples")) {
        Trajectory traj;
        const auto seq = s.raw("samples");
        if (!seq.IsSequence()) throw ParseError("trajectory.samples must be a list");
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const std::string where = "trajectory.samples[" + std::to_string(i) + "]";
            const auto row = seq[i];
            if (!row.IsSequence() || row.size() != 4) throw ParseError(where + " must be [t, east, north, up]");
            traj.samples.push_back({Section::convert<double>(row[0], where),
                                    {Section::convert<double>(row[1], where),
                                     Section::convert<double>(row[2], where),
                                     Section::convert<double>(row[3], where)}});
        }
        s.finish();
        return traj;
    }
    try {
        if (s.has("circle")) {
            Section c = s.child("circle");
            const auto center = parse_position(c.raw("center"), c.join("center"));
            double start_angle = 0.0, start_time = 0.0;
            c.read("start_angle_deg", start_angle);
            c.read("start_time_s", start_time);
            auto traj = make_circle_trajectory(center, c.get<double>("radius_m"),
                                               c.get<double>("speed_mps"), start_time,
                                               c.get<double>("duration_s"), c.get<double>("step_s"),
                                               start_angle);
            c.finish();
            s.finish();
            return traj;
        }
        Section w = s.child("waypoints");
        std::vector<Position3> points;
        const auto seq = w.raw("points");
        if (!seq.IsSequence()) throw ParseError("trajectory.waypoints.points must be a list");
        for (std::size_t i = 0; i < seq.size(); ++i)
            points.push_back(parse_position(seq[i], "trajectory.waypoints.points[" + std::to_string(i) + "]"));
        double start_time = 0.0;
        w.read("start_time_s", start_time);
        auto traj = make_waypoint_trajectory(points, w.get<double>("speed_mps"), start_time,
                                             w.get<double>("step_s"));
        w.finish();
        s.finish();
        return traj;
    } catch (const InvalidArgument& e) {
        throw ValidationError("trajectory", e.what());
    }
}

ScenarioConfig parse_document(const YAML::Node& doc) {
    ScenarioConfig c;
    Section root(doc, "");
    c.schema_version = root.get<int>("schema_version");
    root.read("name", c.name);
    c.mode = parse_mode(root.get<std::string>("mode"));

    if (root.has("origin")) {
        Section o = root.child("origin");
        o.read("latitude_deg", c.origin.latitude_deg);
        o.read("longitude_deg", c.origin.longitude_deg);
        o.read("altitude_m", c.origin.altitude_m);
        o.finish();
    }

    c.waveform = c.mode == Mode::Radar ? waveform::radar_waveform() : waveform::emitter_waveform();
    if (root.has("waveform")) {
        Section w = root.child("waveform");
        w.read("center_frequency_hz", c.waveform.center_frequency);
        w.read("n_subcarriers", c.waveform.n_subcarriers);
        w.read("symbol_length_s", c.waveform.symbol_length);
        if (w.has("sample_rate_hz")) {
            const double fs = w.get<double>("sample_rate_hz");
            if (std::abs(fs - c.waveform.sample_rate()) > 1e-9 * c.waveform.sample_rate())
                throw ValidationError("waveform.sample_rate_hz",
                                      "must equal n_subcarriers / symbol_length");
        }
        w.finish();
    }

    const auto nodes = root.raw("nodes");
    if (!nodes || !nodes.IsSequence()) throw ParseError("nodes must be a list");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Section s(nodes[i], "nodes[" + std::to_string(i) + "]");
        Node n;
        n.id = s.get<std::string>("id");
        n.role = parse_role(s.get<std::string>("role"), s.join("role"));
        if (s.has("position")) n.position = parse_position(s.raw("position"), s.join("position"));
        else if (n.role != Role::Mobile) throw ParseError(s.join("position") + " is required");
        s.read("eirp_dbm", n.eirp_dbm);
        if (s.has("antenna")) n.antenna = parse_antenna(s.child("antenna"));
        s.finish();
        c.nodes.push_back(std::move(n));
    }

    if (!root.has("trajectory")) throw ParseError("trajectory is required");
    c.trajectory = parse_trajectory(root.child("trajectory"));

    if (root.has("capture")) {
        Section s = root.child("capture");
        s.read("t0_s", c.capture.t0);
        s.read("epochs", c.capture.epochs);
        s.read("epoch_interval_s", c.capture.epoch_interval);
        s.read("snapshot_interval_s", c.capture.snapshot_interval);
        s.read("snr_db", c.capture.snr_db);
        s.finish();
    }
    if (root.has("link")) {
        Section s = root.child("link");
        s.read("reference_power_dbm", c.link.reference_power_dbm);
        s.read("reflectivity_dbsm", c.link.reflectivity_dbsm);
        s.read("direct_path_gain_db", c.link.direct_path_gain_db);
        s.finish();
    }
    if (root.has("clutter")) {
        const auto seq = root.raw("clutter");
        if (!seq.IsSequence()) throw ParseError("clutter must be a list");
        for (std::size_t i = 0; i < seq.size(); ++i) {
            Section s(seq[i], "clutter[" + std::to_string(i) + "]");
            ClutterTap t;
            s.read("rx", t.rx);
            t.delay = s.get<double>("delay_s");
            s.read("gain_db", t.gain_db);
            s.read("phase_deg", t.phase_deg);
            s.finish();
            c.clutter.push_back(t);
        }
    }
    if (root.has("clock")) {
        Section s = root.child("clock");
        s.read("enabled", c.clock.enabled);
        s.read("sigma_white_s", c.clock.sigma_white);
        s.read("drift_scale_s", c.clock.drift_scale);
        s.read("correlation_time_s", c.clock.correlation_time);
        s.read("gnss_noise_s", c.clock.gnss_noise);
        s.read("sample_interval_s", c.clock.sample_interval);
        s.finish();
    }
    if (root.has("sync")) {
        Section s = root.child("sync");
        s.read("beacon", c.sync.beacon);
        s.read("calibration_duration_s", c.sync.calibration_duration);
        s.read("filter_window_s", c.sync.filter_window);
        s.read("snr_db", c.sync.snr_db);
        s.finish();
    }
    if (root.has("radar")) {
        Section s = root.child("radar");
        s.read("average_k", c.radar.average_k);
        s.read("canceler_order", c.radar.canceler_order);
        s.read("max_targets", c.radar.max_targets);
        s.read("threshold_db", c.radar.threshold_db);
        s.read("refinement_sweeps", c.radar.refinement_sweeps);
        s.read("altitude_constraint_m", c.radar.altitude_constraint);
        if (s.has("volume")) c.radar.volume = parse_volume(s.child("volume"), c.radar.volume);
        if (s.has("tracker")) {
            Section t = s.child("tracker");
            auto& k = c.radar.tracker;
            t.read("measurement_noise_s", k.measurement_noise);
            t.read("process_noise", k.process_noise);
            t.read("initial_rate_std", k.initial_rate_std);
            t.read("gate", k.gate);
            t.read("confirm_hits", k.confirm_hits);
            t.read("confirm_window", k.confirm_window);
            t.read("max_misses", k.max_misses);
            t.finish();
        }
        s.finish();
    }
    if (root.has("emitter")) {
        Section s = root.child("emitter");
        s.read("reference_rx", c.emitter.reference_rx);
        s.read("altitude_constraint_m", c.emitter.altitude_constraint);
        s.read("search_window_s", c.emitter.search_window);
        if (s.has("area")) c.emitter.area = parse_volume(s.child("area"), c.emitter.area);
        s.finish();
    }
    root.finish();
    return c;
}

// --------------------------------------------------------------------------
// Emission

void emit_position(YAML::Emitter& out, const Position3& p) {
    out << YAML::Flow << YAML::BeginSeq << p.east << p.north << p.up << YAML::EndSeq;
}

void emit_volume(YAML::Emitter& out, const SearchVolume& v) {
    out << YAML::BeginMap;
    out << YAML::Key << "min" << YAML::Value;
    emit_position(out, v.min);
    out << YAML::Key << "max" << YAML::Value;
    emit_position(out, v.max);
    out << YAML::Key << "coarse_step_m" << YAML::Value << v.coarse_step;
    out << YAML::EndMap;
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    YAML::Node doc;
    try {
        doc = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("malformed scenario: ") + e.what());
    }
    if (!doc.IsMap()) throw ParseError("scenario must be a mapping");
    ScenarioConfig config;
    try {
        config = parse_document(doc);
    } catch (const YAML::Exception& e) {
        throw ParseError(std::string("malformed scenario: ") + e.what());
    }
    validate(config);
    return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read scenario file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string format_scenario(const ScenarioConfig& c) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "schema_version" << YAML::Value << c.schema_version;
    out << YAML::Key << "name" << YAML::Value << c.name;
    out << YAML::Key << "mode" << YAML::Value << to_string(c.mode);

    out << YAML::Key << "origin" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "latitude_deg" << YAML::Value << c.origin.latitude_deg;
    out << YAML::Key << "longitude_deg" << YAML::Value << c.origin.longitude_deg;
    out << YAML::Key << "altitude_m" << YAML::Value << c.origin.altitude_m;
    out << YAML::EndMap;

    out << YAML::Key << "waveform" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "center_frequency_hz" << YAML::Value << c.waveform.center_frequency;
    out << YAML::Key << "n_subcarriers" << YAML::Value << c.waveform.n_subcarriers;
    out << YAML::Key << "symbol_length_s" << YAML::Value << c.waveform.symbol_length;
    out << YAML::EndMap;

    out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
    for (const auto& n : c.nodes) {
        out << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << n.id;
        out << YAML::Key << "role" << YAML::Value << to_string(n.role);
        if (n.role != Role::Mobile) {
            out << YAML::Key << "position" << YAML::Value;
            emit_position(out, n.position);
        }
        if (n.eirp_dbm) out << YAML::Key << "eirp_dbm" << YAML::Value << *n.eirp_dbm;
        const auto& a = n.antenna;
        out << YAML::Key << "antenna" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "kind" << YAML::Value
            << (a.kind == AntennaKind::Omni ? "omni" : "directional");
        out << YAML::Key << "boresight_azimuth_deg" << YAML::Value << a.boresight_azimuth;
        out << YAML::Key << "boresight_elevation_deg" << YAML::Value << a.boresight_elevation;
        out << YAML::Key << "beamwidth_10db_deg" << YAML::Value << a.beamwidth_10db;
        out << YAML::Key << "out_of_beam_loss_db" << YAML::Value << a.out_of_beam_loss;
        out << YAML::EndMap;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    out << YAML::Key << "trajectory" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "samples" << YAML::Value << YAML::BeginSeq;
    for (const auto& s : c.trajectory.samples)
        out << YAML::Flow << YAML::BeginSeq << s.t << s.position.east << s.position.north
            << s.position.up << YAML::EndSeq;
    out << YAML::EndSeq << YAML::EndMap;

    out << YAML::Key << "capture" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "t0_s" << YAML::Value << c.capture.t0;
    out << YAML::Key << "epochs" << YAML::Value << c.capture.epochs;
    out << YAML::Key << "epoch_interval_s" << YAML::Value << c.capture.epoch_interval;
    out << YAML::Key << "snapshot_interval_s" << YAML::Value << c.capture.snapshot_interval;
    out << YAML::Key << "snr_db" << YAML::Value << c.capture.snr_db;
    out << YAML::EndMap;

    out << YAML::Key << "link" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "reference_power_dbm" << YAML::Value << c.link.reference_power_dbm;
    out << YAML::Key << "reflectivity_dbsm" << YAML::Value << c.link.reflectivity_dbsm;
    out << YAML::Key << "direct_path_gain_db" << YAML::Value << c.link.direct_path_gain_db;
    out << YAML::EndMap;

    out << YAML::Key << "clutter" << YAML::Value << YAML::BeginSeq;
    for (const auto& t : c.clutter) {
        out << YAML::BeginMap;
        if (t.rx) out << YAML::Key << "rx" << YAML::Value << *t.rx;
        out << YAML::Key << "delay_s" << YAML::Value << t.delay;
        out << YAML::Key << "gain_db" << YAML::Value << t.gain_db;
        out << YAML::Key << "phase_deg" << YAML::Value << t.phase_deg;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    out << YAML::Key << "clock" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "enabled" << YAML::Value << c.clock.enabled;
    out << YAML::Key << "sigma_white_s" << YAML::Value << c.clock.sigma_white;
    out << YAML::Key << "drift_scale_s" << YAML::Value << c.clock.drift_scale;
    out << YAML::Key << "correlation_time_s" << YAML::Value << c.clock.correlation_time;
    out << YAML::Key << "gnss_noise_s" << YAML::Value << c.clock.gnss_noise;
    out << YAML::Key << "sample_interval_s" << YAML::Value << c.clock.sample_interval;
    out << YAML::EndMap;

    out << YAML::Key << "sync" << YAML::Value << YAML::BeginMap;
    if (c.sync.beacon) out << YAML::Key << "beacon" << YAML::Value << *c.sync.beacon;
    out << YAML::Key << "calibration_duration_s" << YAML::Value << c.sync.calibration_duration;
    out << YAML::Key << "filter_window_s" << YAML::Value << c.sync.filter_window;
    out << YAML::Key << "snr_db" << YAML::Value << c.sync.snr_db;
    out << YAML::EndMap;

    const auto& r = c.radar;
    out << YAML::Key << "radar" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "average_k" << YAML::Value << r.average_k;
    out << YAML::Key << "canceler_order" << YAML::Value << r.canceler_order;
    out << YAML::Key << "max_targets" << YAML::Value << r.max_targets;
    out << YAML::Key << "threshold_db" << YAML::Value << r.threshold_db;
    out << YAML::Key << "refinement_sweeps" << YAML::Value << r.refinement_sweeps;
    if (r.altitude_constraint)
        out << YAML::Key << "altitude_constraint_m" << YAML::Value << *r.altitude_constraint;
    out << YAML::Key << "volume" << YAML::Value;
    emit_volume(out, r.volume);
    out << YAML::Key << "tracker" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "measurement_noise_s" << YAML::Value << r.tracker.measurement_noise;
    out << YAML::Key << "process_noise" << YAML::Value << r.tracker.process_noise;
    out << YAML::Key << "initial_rate_std" << YAML::Value << r.tracker.initial_rate_std;
    out << YAML::Key << "gate" << YAML::Value << r.tracker.gate;
    out << YAML::Key << "confirm_hits" << YAML::Value << r.tracker.confirm_hits;
    out << YAML::Key << "confirm_window" << YAML::Value << r.tracker.confirm_window;
    out << YAML::Key << "max_misses" << YAML::Value << r.tracker.max_misses;
    out << YAML::EndMap;
    out << YAML::EndMap;

    const auto& e = c.emitter;
    out << YAML::Key << "emitter" << YAML::Value << YAML::BeginMap;
    if (e.reference_rx) out << YAML::Key << "reference_rx" << YAML::Value << *e.reference_rx;
    if (e.altitude_constraint)
        out << YAML::Key << "altitude_constraint_m" << YAML::Value << *e.altitude_constraint;
    out << YAML::Key << "search_window_s" << YAML::Value << e.search_window;
    out << YAML::Key << "area" << YAML::Value;
    emit_volume(out, e.area);
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

void write_scenario(const ScenarioConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw RuntimeFailure("cannot write " + path.string());
    out << format_scenario(config);
    if (!out) throw RuntimeFailure("write failed for " + path.string());
}

}  // namespace uavtwin::scene
