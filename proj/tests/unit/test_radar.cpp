#include "oracles.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/common/rng.hpp"
#include "uavtwin/radar/hungarian.hpp"
#include "uavtwin/radar/localize.hpp"
#include "uavtwin/radar/ml_estimator.hpp"
#include "uavtwin/radar/pipeline.hpp"
#include "uavtwin/radar/processing.hpp"
#include "uavtwin/radar/tracker.hpp"
#include "uavtwin/scene/scenario.hpp"
#include "uavtwin/waveform/bandlimited.hpp"
#include "uavtwin/waveform/fft.hpp"
#include "uavtwin/waveform/waveform.hpp"

#include <doctest.h>

#include <filesystem>

using namespace uavtwin;
using namespace uavtwin::radar;
using waveform::CIRSnapshot;

namespace {

struct TestPath {
    double bins;
    cdouble gain;
};

// CIR of a symbol received over `paths` with per-sample noise variance.
CIRSnapshot make_cir(const std::vector<TestPath>& paths, std::size_t n, double noise_var,
                     std::mt19937_64* rng = nullptr, double res = 1e-8) {
    const auto ref = waveform::synth_symbol(n);
    std::vector<cdouble> h(n, cdouble{});
    for (const auto& p : paths) waveform::add_path(h, p.gain, p.bins);
    for (std::size_t k = 0; k < n; ++k) h[k] *= ref.spectrum[k];
    auto x = waveform::unitary_idft(h);
    if (noise_var > 0.0)
        for (auto& v : x) v += complex_gaussian(*rng, noise_var);
    return waveform::estimate_cir(x, ref, res, 0.0);
}

CIRSnapshot constant_cir(std::size_t n, cdouble v, double t) {
    CIRSnapshot c;
    c.taps.assign(n, v);
    c.timestamp = t;
    return c;
}

double wrapped_bin_error(double est_bins, double truth_bins, double n) {
    double e = std::fmod(est_bins - truth_bins, n);
    if (e > n / 2) e -= n;
    if (e < -n / 2) e += n;
    return std::abs(e);
}

DelayDetection det(double delay) { return {delay, 1.0, 0.0, "rx"}; }

}  // namespace

TEST_CASE("average_snapshots examples") {
    std::vector<CIRSnapshot> in;
    for (int i = 0; i < 45; ++i) in.push_back(constant_cir(8, {1.0 + i, -0.5}, 0.1 * i));
    const auto same = average_snapshots(in, 1);
    REQUIRE(same.size() == 45);
    for (std::size_t i = 0; i < 45; ++i) CHECK(same[i].taps == in[i].taps);

    const auto blocks = average_snapshots(in, 20);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].taps[3].real() == doctest::Approx(10.5));
    CHECK(blocks[1].taps[0].real() == doctest::Approx(30.5));
    CHECK(blocks[0].timestamp == doctest::Approx(0.95));
    CHECK(average_snapshots(in, 20, true).size() == 26);

    std::vector<CIRSnapshot> identical(40, make_cir({{12.3, {0.4, 0.2}}}, 64, 0.0));
    for (const auto& b : average_snapshots(identical, 20))
        for (std::size_t m = 0; m < 64; ++m) CHECK(std::abs(b.taps[m] - identical[0].taps[m]) < 1e-15);

    CHECK_THROWS_AS(average_snapshots({}, 1), InvalidArgument);
    CHECK_THROWS_AS(average_snapshots(in, 0), InvalidArgument);
    CHECK_THROWS_AS(average_snapshots(in, 46), InvalidArgument);
}

TEST_CASE("averaging 20 AWGN snapshots reduces noise power 20x") {
    auto rng = make_stream(3, StreamKind::Test);
    const std::size_t n = 1280;
    std::vector<CIRSnapshot> noise;
    double before = 0.0;
    for (int i = 0; i < 400; ++i) {
        CIRSnapshot c;
        for (std::size_t m = 0; m < n; ++m) c.taps.push_back(complex_gaussian(rng, 1.0));
        for (const auto& v : c.taps) before += std::norm(v);
        noise.push_back(std::move(c));
    }
    before /= 400.0 * n;
    double after = 0.0;
    const auto avg = average_snapshots(noise, 20);
    for (const auto& c : avg)
        for (const auto& v : c.taps) after += std::norm(v);
    after /= static_cast<double>(avg.size() * n);
    CHECK(before / after == doctest::Approx(20.0).epsilon(0.2));
}

TEST_CASE("delay_line_canceler examples") {
    std::vector<CIRSnapshot> still(5, make_cir({{4.0, 1.0}, {10.6, {0.0, 0.3}}}, 64, 0.0));
    for (const auto& c : delay_line_canceler(still))
        for (const auto& v : c.taps) CHECK(v == cdouble{});
    CHECK(delay_line_canceler(still).size() == 4);
    CHECK(delay_line_canceler(still, 2).size() == 3);

    std::vector<CIRSnapshot> moving(2, constant_cir(16, 0.0, 0.0));
    moving[0].taps[5] = {0.8, 0.1};
    moving[1].taps[6] = {0.8, 0.1};
    moving[1].timestamp = 1.0;
    const auto out = delay_line_canceler(moving);
    REQUIRE(out.size() == 1);
    CHECK(out[0].taps[6] == cdouble{0.8, 0.1});
    CHECK(out[0].taps[5] == cdouble{-0.8, -0.1});
    CHECK(out[0].timestamp == 1.0);

    CHECK_THROWS_AS(delay_line_canceler(std::vector<CIRSnapshot>(1, moving[0])), InvalidArgument);
    CHECK_THROWS_AS(delay_line_canceler(moving, 0), InvalidArgument);
}

TEST_CASE("canceler frequency response is 2 - 2 cos w") {
    for (double w : {0.0, oracle::kPi / 4, oracle::kPi, 1.234}) {
        std::vector<CIRSnapshot> in;
        for (int i = 0; i < 6; ++i) {
            auto c = constant_cir(4, 0.0, i);
            c.taps[2] = std::polar(0.7, w * i);
            in.push_back(c);
        }
        for (const auto& c : delay_line_canceler(in)) {
            const double ratio = std::norm(c.taps[2]) / 0.49;
            CAPTURE(w);
            CHECK(ratio == doctest::Approx(2 - 2 * std::cos(w)).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("average then cancel annihilates constant input") {
    auto rng = make_stream(8, StreamKind::Test);
    CIRSnapshot base;
    for (int m = 0; m < 128; ++m) base.taps.push_back(complex_gaussian(rng, 5.0));
    std::vector<CIRSnapshot> in(60, base);
    for (std::size_t i = 0; i < in.size(); ++i) in[i].timestamp = 1e-4 * i;
    for (std::size_t order : {1u, 2u})
        for (const auto& c : delay_line_canceler(average_snapshots(in, 20), order))
            for (const auto& v : c.taps) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("ml_delay_estimate: single noiseless path") {
    const std::size_t n = 256;
    const auto on_bin = ml_delay_estimate(make_cir({{37.0, {0.6, -0.3}}}, n, 0.0));
    REQUIRE(on_bin.size() == 1);
    CHECK(on_bin[0].delay / 1e-8 == doctest::Approx(37.0).epsilon(1e-9));
    CHECK(on_bin[0].amplitude == doctest::Approx(std::abs(cdouble{0.6, -0.3})));

    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double bins = 80.0 + i / 20.0;
        const auto d = ml_delay_estimate(make_cir({{bins, 1.0}}, n, 0.0));
        REQUIRE(d.size() == 1);
        worst = std::max(worst, wrapped_bin_error(d[0].delay / 1e-8, bins, n));
    }
    CHECK(worst <= 0.02);
    const auto f = ml_delay_estimate(make_cir({{100.37, 1.0}}, n, 0.0));
    CHECK(wrapped_bin_error(f[0].delay / 1e-8, 100.37, n) <= 0.02);
}

TEST_CASE("ml_delay_estimate: two paths 3 bins apart, 6 dB, SNR 30 dB") {
    const std::size_t n = 1280;
    auto rng = make_stream(12, StreamKind::Test);
    std::uniform_real_distribution<double> frac(0.0, 1.0), phase(0.0, 2 * oracle::kPi);
    for (int trial = 0; trial < 15; ++trial) {
        const double a = 200.0 + frac(rng);
        const double b = a + 3.0;
        const auto cir = make_cir({{a, std::polar(1.0, phase(rng))}, {b, std::polar(0.5, phase(rng))}}, n,
                                  1e-3, &rng);
        const auto dets = ml_delay_estimate(cir);
        REQUIRE(dets.size() >= 2);
        CAPTURE(trial);
        CHECK(wrapped_bin_error(dets[0].delay / 1e-8, a, n) <= 0.1);
        CHECK(wrapped_bin_error(dets[1].delay / 1e-8, b, n) <= 0.1);
        CHECK(dets[0].amplitude >= dets[1].amplitude);
    }
}

TEST_CASE("ml_delay_estimate: threshold and equivariance") {
    const std::size_t n = 512;
    auto rng = make_stream(4, StreamKind::Test);
    std::vector<cdouble> taps(n);
    CIRSnapshot noise;
    noise.delay_resolution = 1e-8;
    for (std::size_t m = 0; m < n; ++m) noise.taps.push_back(complex_gaussian(rng, 1.0));
    MlOptions high;
    high.threshold_db = 25.0;
    CHECK(ml_delay_estimate(noise, high).empty());

    const auto cir = make_cir({{40.25, 1.0}, {71.8, {0.0, 0.4}}, {300.1, 0.2}}, n, 1e-4, &rng);
    const auto base = ml_delay_estimate(cir);
    REQUIRE(base.size() == 3);
    for (long d : {1L, 17L, 250L}) {
        CIRSnapshot shifted = cir;
        shifted.taps = waveform::circular_shift(cir.taps, d);
        const auto moved = ml_delay_estimate(shifted);
        REQUIRE(moved.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(wrapped_bin_error(moved[i].delay / 1e-8, base[i].delay / 1e-8 + d, n) < 1e-6);
    }
    CHECK(noise_floor(noise) > 0.0);
}

TEST_CASE("hungarian matches brute force") {
    Eigen::MatrixXd crossed(2, 2);
    crossed << 1.0, 2.0, 1.5, 10.0;  // greedy takes (0,0) then pays 10
    const auto a = hungarian(crossed);
    CHECK(a == std::vector<int>{1, 0});

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int rows = 1 + trial % 5, cols = rows + (trial / 5) % 3;
        Eigen::MatrixXd c(rows, cols);
        std::vector<std::vector<double>> ref(rows, std::vector<double>(cols));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) ref[i][j] = c(i, j) = u(rng);
        const auto assign = hungarian(c);
        double total = 0.0;
        std::vector<bool> used(cols, false);
        for (int i = 0; i < rows; ++i) {
            REQUIRE(assign[i] >= 0);
            CHECK(!used[assign[i]]);
            used[assign[i]] = true;
            total += c(i, assign[i]);
        }
        CHECK(total == doctest::Approx(oracle::brute_force_assignment(ref)));
        // transposed (more rows than columns) leaves rows - cols unassigned
        const auto t = hungarian(c.transpose());
        CHECK(std::count(t.begin(), t.end(), -1) == cols - rows);
    }

    Eigen::MatrixXd forbidden(2, 2);
    const double inf = std::numeric_limits<double>::infinity();
    forbidden << inf, 1.0, inf, 2.0;
    const auto f = hungarian(forbidden);
    CHECK(f[0] + f[1] == 0);  // one row gets column 1, the other nothing
    CHECK(std::count(f.begin(), f.end(), -1) == 1);
}

TEST_CASE("track_step: birth, update and confirmation") {
    const TrackerParams p;
    const auto born = track_step({}, {det(1e-6)}, 0.25, p);
    REQUIRE(born.state.tracks.size() == 1);
    CHECK(born.state.tracks[0].state[0] == 1e-6);
    CHECK_FALSE(born.state.tracks[0].confirmed);
    CHECK(born.confirmed.empty());

    const auto hit = track_step(born.state, {det(1.0005e-6)}, 0.25, p);
    const auto miss = track_step(born.state, {}, 0.25, p);
    REQUIRE(hit.state.tracks.size() == 1);
    CHECK(hit.state.tracks[0].covariance.trace() < miss.state.tracks[0].covariance.trace());
    CHECK(hit.state.tracks[0].confirmed);
    REQUIRE(hit.confirmed.size() == 1);
    CHECK(hit.confirmed[0].track_id == born.state.tracks[0].id);
    const Eigen::Matrix2d cov = hit.state.tracks[0].covariance;
    CHECK((cov - cov.transpose()).norm() <= 1e-12 * cov.norm());
    CHECK(cov.determinant() > 0.0);

    // repeated in-gate updates never grow the covariance trace past the prediction
    auto s = hit.state;
    for (int i = 0; i < 20; ++i) {
        const auto m = track_step(s, {}, 0.25, p);
        const auto h = track_step(s, {det(1.0005e-6 + 1e-10 * i)}, 0.25, p);
        CHECK(h.state.tracks[0].covariance.trace() <= m.state.tracks[0].covariance.trace());
        s = h.state;
    }

    CHECK_THROWS_AS(track_step({}, {}, 0.0, p), InvalidArgument);
}

TEST_CASE("track_step: crossed costs resolved by the global optimum") {
    const TrackerParams p;
    const auto born = track_step({}, {det(100e-9), det(110e-9)}, 0.25, p);
    REQUIRE(born.state.tracks.size() == 2);
    const auto& cov = born.state.tracks[0].covariance;
    CHECK((cov - born.state.tracks[1].covariance).norm() == 0.0);
    // nearest neighbour for 106 ns is the 110 ns track, leaving 117 ns to the 100 ns one
    const std::vector<DelayDetection> dets{det(106e-9), det(117e-9)};
    const auto out = track_step(born.state, dets, 0.25, p);
    REQUIRE(out.state.tracks.size() == 2);
    const double pred[2] = {100e-9, 110e-9};
    const std::vector<std::vector<double>> cost{{std::pow(6.0, 2), std::pow(17.0, 2)},
                                                {std::pow(4.0, 2), std::pow(7.0, 2)}};
    CHECK(oracle::brute_force_assignment(cost) == doctest::Approx(36.0 + 49.0));
    const auto& t0 = out.state.tracks[0].state[0] < out.state.tracks[1].state[0] ? out.state.tracks[0]
                                                                                  : out.state.tracks[1];
    const auto& t1 = &t0 == &out.state.tracks[0] ? out.state.tracks[1] : out.state.tracks[0];
    CHECK(std::abs(t0.state[0] - 106e-9) < std::abs(t0.state[0] - pred[0]));
    CHECK(std::abs(t1.state[0] - 117e-9) < std::abs(t1.state[0] - pred[1]));
    CHECK(t0.id == born.state.tracks[0].id);
}

TEST_CASE("track_step: tentative and confirmed tracks retire") {
    TrackerParams p;
    p.max_misses = 3;
    auto s = track_step({}, {det(2e-6)}, 0.25, p).state;
    for (int i = 0; i < 3; ++i) s = track_step(s, {}, 0.25, p).state;
    CHECK(s.tracks.empty());

    s = track_step({}, {det(2e-6)}, 0.25, p).state;
    s = track_step(s, {det(2e-6)}, 0.25, p).state;
    REQUIRE(s.tracks.size() == 1);
    CHECK(s.tracks[0].confirmed);
    for (int i = 0; i < 2; ++i) s = track_step(s, {}, 0.25, p).state;
    CHECK(s.tracks.size() == 1);
    s = track_step(s, {}, 0.25, p).state;
    CHECK(s.tracks.empty());
}

TEST_CASE("localize_bistatic consistency") {
    const scene::Position3 tx{0, 0, 16};
    const std::vector<scene::Position3> rx{{6, 2, 16}, {-4, 5, 17}, {3, -5, 18}, {0, 9, 15}};
    const scene::Position3 target{40, 160, 42};
    std::vector<RxDelay> delays;
    for (const auto& r : rx) delays.push_back({r, scene::bistatic_delay(tx, target, r)});

    const auto fix = localize_bistatic(tx, {delays.begin(), delays.begin() + 3}, {30, 130, 30});
    CHECK(oracle::dist(fix.position, target) < 1e-3);
    CHECK(fix.status == SolveStatus::Converged);
    CHECK(fix.residual_norm >= 0.0);
    for (std::size_t i = 1; i < fix.cost_trace.size(); ++i) CHECK(fix.cost_trace[i] <= fix.cost_trace[i - 1]);

    LocalizeOptions alt;
    alt.altitude = 42.0;
    const auto two = localize_bistatic(tx, {delays.begin(), delays.begin() + 2}, {20, 120, 0}, alt);
    CHECK(oracle::dist(two.position, target) < 1e-3);
    CHECK(two.position.up == 42.0);

    CHECK(bistatic_cost(tx, delays, target) < 1e-18);
    CHECK_THROWS_AS(localize_bistatic(tx, {delays.begin(), delays.begin() + 2}, {0, 1, 0}), InvalidArgument);
    CHECK_THROWS_AS(localize_bistatic(tx, {delays.begin(), delays.begin() + 1}, {0, 1, 0}, alt), InvalidArgument);

    scene::SearchVolume vol;
    vol.min = {-100, 0, 0};
    vol.max = {100, 300, 100};
    vol.coarse_step = 5.0;
    const auto guess = bistatic_initial_guess(tx, delays, vol);
    CHECK(oracle::dist(guess, target) < 60.0);
}

TEST_CASE("rooftop pipeline: beam visibility and worker invariance") {
    auto sc = scene::load_scenario(std::filesystem::path(UAVTWIN_SOURCE_DIR) / "scenarios/rooftop_radar.yaml");
    CHECK(target_in_beam(sc, {0, 150, 40}));
    CHECK_FALSE(target_in_beam(sc, {0, -150, 40}));
    CHECK_FALSE(target_in_beam(sc, {150, 10, 40}));

    RadarRunOptions opt;
    opt.seed = 5;
    opt.epochs = 24;
    const auto one = run_radar_pipeline(sc, opt);
    opt.workers = 4;
    const auto four = run_radar_pipeline(sc, opt);
    REQUIRE(one.epochs.size() == 24);
    for (std::size_t i = 0; i < 24; ++i) {
        CHECK(one.epochs[i].fix.has_value() == four.epochs[i].fix.has_value());
        if (one.epochs[i].fix && four.epochs[i].fix) {
            CHECK(one.epochs[i].fix->position == four.epochs[i].fix->position);
        }
        CHECK(one.epochs[i].detections.size() == four.epochs[i].detections.size());
        if (one.epochs[i].fix) CHECK(one.epochs[i].in_beam);
    }
    CHECK(one.detection_fraction == four.detection_fraction);
}
