#include "oracles.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/scene/geometry.hpp"
#include "uavtwin/scene/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace uavtwin;
using namespace uavtwin::scene;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(UAVTWIN_SOURCE_DIR) / "scenarios";

std::string minimal_radar() {
    return R"(
schema_version: 1
mode: radar
nodes:
  - {id: tx, role: tx, position: [0, 0, 10], eirp_dbm: 46}
  - {id: a, role: rx, position: [5, 0, 10]}
  - {id: b, role: rx, position: [0, 5, 10]}
  - {id: uav, role: mobile}
trajectory:
  samples: [[0, 100, 100, 30], [20, 120, 100, 30]]
capture: {epochs: 10, epoch_interval_s: 0.5}
)";
}

}  // namespace

TEST_CASE("los_delay examples") {
    CHECK(los_delay({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(los_delay({0, 0, 0}, {299.792458, 0, 0}) == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK(los_delay({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0 / oracle::kC).epsilon(1e-15));
}

TEST_CASE("bistatic_delay examples") {
    const Position3 p{40, -20, 35};
    CHECK(bistatic_delay({1, 1, 1}, p, {1, 1, 1}) == doctest::Approx(2 * oracle::dist({1, 1, 1}, p) / oracle::kC));
    CHECK(bistatic_delay({0, 0, 0}, {50, 0, 0}, {200, 0, 0}) == doctest::Approx(200.0 / oracle::kC));
    CHECK(bistatic_delay({0, 0, 0}, {100, 0, 30}, {200, 0, 0}) ==
          doctest::Approx(2 * std::sqrt(10900.0) / oracle::kC));
}

TEST_CASE("delay properties over random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-500, 500);
    for (int i = 0; i < 500; ++i) {
        const Position3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, p{u(rng), u(rng), u(rng)};
        CHECK(los_delay(a, b) == los_delay(b, a));
        CHECK(bistatic_delay(a, p, b) >= los_delay(a, b) * (1 - 1e-15));
    }
}

TEST_CASE("antenna gain step model") {
    const auto omni = omni_antenna();
    CHECK(antenna_gain(omni, {0, 0, 0}, {10, -3, 4}) == 0.0);
    const auto dir = directional_antenna(0.0, 0.0);  // looking north
    CHECK(antenna_gain(dir, {0, 0, 0}, {0, 100, 0}) == 0.0);
    const Position3 off30{100 * std::sin(30 * oracle::kPi / 180), 100 * std::cos(30 * oracle::kPi / 180), 0};
    CHECK(antenna_gain(dir, {0, 0, 0}, off30) == -10.0);
    const Position3 off19{100 * std::sin(19 * oracle::kPi / 180), 100 * std::cos(19 * oracle::kPi / 180), 0};
    CHECK(antenna_gain(dir, {0, 0, 0}, off19) == 0.0);
    CHECK_THROWS_AS(antenna_gain(dir, {1, 1, 1}, {1, 1, 1}), InvalidArgument);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int i = 0; i < 200; ++i) {
        const double g = antenna_gain(dir, {0, 0, 0}, {u(rng), u(rng), u(rng)});
        CHECK((g == 0.0 || g == -10.0));
    }
}

TEST_CASE("direction convention: azimuth clockwise from north") {
    const auto east = direction_from_angles(90.0, 0.0);
    CHECK(east.east == doctest::Approx(1.0));
    CHECK(east.north == doctest::Approx(0.0).epsilon(1e-12));
    const auto up = direction_from_angles(0.0, 90.0);
    CHECK(up.up == doctest::Approx(1.0));
}

TEST_CASE("sample_trajectory") {
    Trajectory traj{{{0.0, {0, 0, 0}}, {10.0, {10, 20, 30}}}};
    CHECK(sample_trajectory(traj, 0.0) == Position3{0, 0, 0});
    const auto mid = sample_trajectory(traj, 5.0);
    CHECK(mid.east == doctest::Approx(5));
    CHECK(mid.north == doctest::Approx(10));
    CHECK(mid.up == doctest::Approx(15));
    CHECK_THROWS_AS(sample_trajectory(traj, 10.5), InvalidArgument);
    CHECK_THROWS_AS(sample_trajectory(traj, -0.1), InvalidArgument);
    CHECK(trajectory_velocity(traj, 3.0).north == doctest::Approx(2.0));
}

TEST_CASE("generated trajectories") {
    const auto circle = make_circle_trajectory({10, 20, 30}, 50.0, 10.0, 0.0, 31.4, 0.1);
    for (const auto& s : circle.samples) {
        CHECK((s.position - Position3{10, 20, 30}).norm() == doctest::Approx(50.0));
        CHECK(s.position.up == 30.0);
    }
    // counter-clockwise: starts east of the centre, quarter period later north of it
    CHECK(circle.samples.front().position.east == doctest::Approx(60.0));
    const auto q = sample_trajectory(circle, 0.25 * 2 * oracle::kPi * 50.0 / 10.0);
    CHECK(q.north == doctest::Approx(70.0).epsilon(1e-3));

    const auto wp = make_waypoint_trajectory({{0, 0, 30}, {100, 0, 30}, {100, 50, 30}}, 10.0, 5.0, 1.0);
    CHECK(wp.start_time() == 5.0);
    CHECK(wp.end_time() == doctest::Approx(20.0));
    CHECK(sample_trajectory(wp, 15.0).east == doctest::Approx(100.0));
    CHECK(wp.samples.back().position == Position3{100, 50, 30});
}

TEST_CASE("scenario parsing and validation") {
    const auto c = parse_scenario(minimal_radar());
    CHECK(c.mode == Mode::Radar);
    CHECK(c.waveform.n_subcarriers == 1280);
    CHECK(c.waveform.sample_rate() == doctest::Approx(80e6));
    CHECK(c.receivers().size() == 2);
    CHECK(c.transmitter().id == "tx");

    auto expect_field = [](const std::string& text, const std::string& field) {
        try {
            parse_scenario(text);
            FAIL("accepted invalid scenario, expected error on " << field);
        } catch (const ValidationError& e) {
            CHECK(e.field() == field);
        }
    };
    auto text = minimal_radar();
    expect_field(std::string(text).replace(text.find("id: b"), 5, "id: a"), "nodes[2].id");
    expect_field(std::string(text).replace(text.find("eirp_dbm: 46"), 12, "antenna: {}"), "nodes[0].eirp_dbm");
    expect_field(std::string(text).replace(text.find("epochs: 10"), 10, "epochs: 100"), "trajectory");
    CHECK_THROWS_AS(parse_scenario(text + "bogus_key: 1\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("schema_version: 1\nmode: radar\nnodes: [\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario(std::string(text).replace(text.find("mode: radar"), 11, "mode: sonar")),
                    ParseError);
}

TEST_CASE("emitter baseline limit is enforced") {
    auto c = load_scenario(kScenarios / "city_emitter.yaml");
    c.nodes[1].position.east = 4000.0;
    try {
        validate(c);
        FAIL("baseline beyond half a symbol accepted");
    } catch (const ValidationError& e) {
        CHECK(e.field() == "nodes");
    }
}

TEST_CASE("shipped scenarios load and round-trip exactly") {
    for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
        if (entry.path().extension() != ".yaml") continue;
        CAPTURE(entry.path().string());
        const auto c = load_scenario(entry.path());
        const auto again = parse_scenario(format_scenario(c));
        CHECK(again == c);
        const auto tmp = std::filesystem::temp_directory_path() / "uavtwin_roundtrip.yaml";
        write_scenario(c, tmp);
        CHECK(load_scenario(tmp) == c);
    }
}
