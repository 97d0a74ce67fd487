#include "oracles.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/common/rng.hpp"
#include "uavtwin/emitter/tdoa.hpp"
#include "uavtwin/harness/campaign.hpp"
#include "uavtwin/harness/iq_file.hpp"
#include "uavtwin/harness/report.hpp"
#include "uavtwin/scene/scenario.hpp"
#include "uavtwin/sync/sync.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <cstring>
#include <map>
#include <sys/wait.h>

using namespace uavtwin;
using namespace uavtwin::harness;

namespace fs = std::filesystem;

namespace {

const fs::path kScenarios = fs::path(UAVTWIN_SOURCE_DIR) / "scenarios";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("uavtwin_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

IQStream random_stream(std::size_t n, std::uint64_t seed) {
    auto rng = make_stream(seed, StreamKind::Test);
    IQStream s;
    s.sample_rate = 80e6;
    s.epoch = 1234.5;
    for (std::size_t i = 0; i < n; ++i) {
        const auto z = complex_gaussian(rng, 1.0);
        s.samples.emplace_back(static_cast<float>(z.real()), static_cast<float>(z.imag()));
    }
    return s;
}

std::map<std::string, std::string> csv_files(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") out[e.path().filename().string()] = oracle::slurp(e.path());
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + UAVTWIN_CLI + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("write_iq byte layout") {
    TempDir tmp("iq_layout");
    auto s = random_stream(1000, 1);
    write_iq(s, tmp.path / "plain.cf32");
    CHECK(fs::file_size(tmp.path / "plain.cf32") == 8000);
    CHECK(fs::exists(sidecar_path(tmp.path / "plain.cf32")));

    s.gaps = {{500, 100}};
    write_iq(s, tmp.path / "gap.cf32");
    CHECK(fs::file_size(tmp.path / "gap.cf32") == 8000);
    const auto bytes = oracle::slurp(tmp.path / "gap.cf32");
    for (std::size_t b = 4000; b < 4800; ++b) CHECK(bytes[b] == 0);
    CHECK(bytes.substr(0, 4000) == oracle::slurp(tmp.path / "plain.cf32").substr(0, 4000));

    // little-endian float32 I then Q
    float first[2];
    std::memcpy(first, bytes.data(), 8);
    CHECK(first[0] == s.samples[0].real());
    CHECK(first[1] == s.samples[0].imag());

    const auto meta = oracle::slurp(sidecar_path(tmp.path / "gap.cf32"));
    CHECK(meta.find("schema_version") != std::string::npos);
    CHECK(meta.find("sample_rate") != std::string::npos);
    CHECK(meta.find("epoch") != std::string::npos);
}

TEST_CASE("IQ round trip is bit identical") {
    TempDir tmp("iq_round");
    auto s = random_stream(4096, 2);
    s = simulate_frame_loss(s, 256, {1, 7, 8});
    write_iq(s, tmp.path / "x.cf32");
    const auto back = read_iq(tmp.path / "x.cf32");
    CHECK(back.samples == s.samples);
    CHECK(back.gaps == s.gaps);
    CHECK(back.sample_rate == s.sample_rate);
    CHECK(back.epoch == s.epoch);
    CHECK(back == s);

    // truncated payload is rejected
    fs::resize_file(tmp.path / "x.cf32", 8 * 4000);
    CHECK_THROWS_AS(read_iq(tmp.path / "x.cf32"), ParseError);
    std::ofstream(sidecar_path(tmp.path / "y.cf32")) << "schema_version: 99\n";
    std::ofstream(tmp.path / "y.cf32") << "";
    CHECK_THROWS_AS(read_iq(tmp.path / "y.cf32"), ParseError);
}

TEST_CASE("IQ validation") {
    auto s = random_stream(100, 3);
    s.gaps = {{50, 10}, {55, 10}};
    CHECK_THROWS_AS(validate(s), InvalidArgument);
    s.gaps = {{95, 10}};
    CHECK_THROWS_AS(validate(s), InvalidArgument);
    s.gaps = {};
    s.sample_rate = 0.0;
    CHECK_THROWS_AS(validate(s), InvalidArgument);
}

TEST_CASE("simulate_frame_loss examples") {
    const auto s = random_stream(2048, 4);
    CHECK(simulate_frame_loss(s, 256, {}) == s);

    const auto lost = simulate_frame_loss(s, 256, {3});
    REQUIRE(lost.gaps.size() == 1);
    CHECK(lost.gaps[0] == Gap{768, 256});
    CHECK(lost.samples.size() == s.samples.size());
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        if (i >= 768 && i < 1024)
            CHECK(lost.samples[i] == std::complex<float>{});
        else
            CHECK(lost.samples[i] == s.samples[i]);
    }

    const auto merged = simulate_frame_loss(lost, 256, {4, 6});
    CHECK(merged.gaps == std::vector<Gap>{{768, 512}, {1536, 256}});

    auto odd = random_stream(1000, 5);
    const auto tail = simulate_frame_loss(odd, 256, {3});
    CHECK(tail.gaps == std::vector<Gap>{{768, 232}});
    CHECK_THROWS_AS(simulate_frame_loss(odd, 256, {4}), InvalidArgument);
    CHECK_THROWS_AS(simulate_frame_loss(odd, 0, {0}), InvalidArgument);
}

TEST_CASE("sample times are unaffected by gaps") {
    const auto s = random_stream(5000, 6);
    const auto lost = simulate_frame_loss(s, 100, {0, 3, 4, 17, 49});
    for (std::size_t i = 0; i < 5000; i += 37) CHECK(lost.time_of(i) == s.time_of(i));
    CHECK(lost.time_of(4999) == s.epoch + 4999.0 / s.sample_rate);
}

TEST_CASE("xcorr of lossy and original stream peaks at lag zero") {
    const auto s = random_stream(8192, 7);
    std::vector<std::size_t> frames;
    for (std::size_t f = 0; f < 32; f += 10) frames.push_back(f);
    const auto lost = simulate_frame_loss(s, 256, frames);
    std::vector<cdouble> a(s.samples.begin(), s.samples.end()), b(lost.samples.begin(), lost.samples.end());
    long best = 99;
    double peak = -1.0;
    for (long lag = -64; lag <= 64; ++lag) {
        cdouble acc{};
        for (std::size_t m = 0; m < a.size(); ++m) acc += std::conj(a[m]) * b[(m + a.size() + lag) % a.size()];
        if (std::abs(acc) > peak) {
            peak = std::abs(acc);
            best = lag;
        }
    }
    CHECK(best == 0);
    const auto r = emitter::xcorr_tdoa(a, b, s.sample_rate, 1000 / s.sample_rate);
    CHECK(std::abs(r.tdoa * s.sample_rate) < 0.01);
}

TEST_CASE("quantile agrees with the sort oracle") {
    std::mt19937_64 rng(8);
    std::exponential_distribution<double> e(0.5);
    for (std::size_t n : {1u, 2u, 7u, 100u, 1001u}) {
        std::vector<double> v(n);
        for (auto& x : v) x = e(rng);
        for (double q : {0.0, 0.1, 0.5, 0.9, 0.99, 1.0}) CHECK(quantile(v, q) == oracle::sorted_quantile(v, q));
        const auto st = error_stats(v);
        CHECK(st.count == n);
        CHECK(st.median <= st.p90);
        CHECK(st.p90 <= st.p99);
    }
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == 2.5);
    CHECK_THROWS_AS(quantile({}, 0.5), InvalidArgument);
    CHECK_THROWS_AS(quantile({1.0}, 1.5), InvalidArgument);
    CHECK(error_stats({}).count == 0);
}

TEST_CASE("report CSVs and summary") {
    TempDir tmp("report");
    CampaignReport rep;
    rep.scenario = "unit";
    rep.mode = "emitter";
    rep.epochs = 4;
    rep.fixes = {{0.0, {1, 2, 3}, {1, 2, 3}, 0.0}, {1.0, {4, 0, 3}, {0, 0, 0}, 1e-9}, {2.0, {0, 1, 0}, {0, 0, 0}, 0.0}};
    rep.finalize();
    CHECK(rep.detection_fraction == doctest::Approx(0.75));
    CHECK(rep.horizontal.median == doctest::Approx(1.0));
    CHECK(rep.spatial.count == 3);
    write_errors_csv(rep.fixes, tmp.path / "errors.csv");
    write_fixes_csv(rep.fixes, tmp.path / "fixes.csv");
    const auto back = read_errors_csv(tmp.path / "errors.csv");
    REQUIRE(back.size() == 3);
    CHECK(back[1].estimate == rep.fixes[1].estimate);
    CHECK(back[1].truth == rep.fixes[1].truth);
    CHECK(oracle::slurp(tmp.path / "fixes.csv").rfind("timestamp,east,north,up,residual\n", 0) == 0);
    const auto text = format_summary(rep);
    CHECK(text.find("unit") != std::string::npos);
    CHECK(text.find("median") != std::string::npos);
}

TEST_CASE("campaigns are deterministic across runs and workers") {
    TempDir a("det_a"), b("det_b"), c("det_c");
    CampaignOptions opt;
    opt.seed = 11;
    opt.snapshots = 25;
    opt.snr_db = 20.0;
    opt.output_dir = a.path;
    run_campaign(kScenarios / "city_emitter.yaml", opt);
    opt.output_dir = b.path;
    run_campaign(kScenarios / "city_emitter.yaml", opt);
    opt.output_dir = c.path;
    opt.workers = 4;
    run_campaign(kScenarios / "city_emitter.yaml", opt);
    const auto fa = csv_files(a.path);
    CHECK(fa.count("fixes.csv") == 1);
    CHECK(fa.count("errors.csv") == 1);
    CHECK(fa.count("tdoa.csv") == 1);
    CHECK(fa == csv_files(b.path));
    CHECK(fa == csv_files(c.path));

    opt.seed = 12;
    opt.output_dir = b.path;
    run_campaign(kScenarios / "city_emitter.yaml", opt);
    CHECK(csv_files(b.path).at("tdoa.csv") != fa.at("tdoa.csv"));
}

TEST_CASE("campaign examples") {
    CampaignOptions opt;
    opt.snapshots = 120;
    opt.workers = 4;
    const auto emitter = run_campaign(kScenarios / "city_emitter.yaml", opt);
    CHECK(emitter.horizontal.median < 0.1);
    CHECK(emitter.fixes.size() == 120);

    opt.snapshots = 60;
    const auto radar = run_campaign(kScenarios / "rooftop_radar.yaml", opt);
    CHECK(radar.detection_fraction < 1.0);
    CHECK(radar.detection_fraction >= 0.0);
    REQUIRE(radar.in_beam_fraction.has_value());
    CHECK(*radar.in_beam_fraction < 1.0);

    CampaignOptions wrong;
    wrong.mode = scene::Mode::Emitter;
    CHECK_THROWS_AS(run_campaign(kScenarios / "rooftop_radar.yaml", wrong), ValidationError);
}

TEST_CASE("calibration outputs and filter sweep") {
    const auto sc = scene::load_scenario(kScenarios / "city_emitter_sync.yaml");
    const auto study = simulate_sync_study(sc, 3, 0.0, 0.0, 4);
    REQUIRE(study.delays.size() == 4);

    // window 1 is the identity filter: compensation with the raw GNSS error
    const auto one = evaluate_sync(study, 1.0);
    double manual = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            const auto ci = sync::compensate(study.delays[i], 0.0, study.clocks[i].gnss_raw_error);
            const auto cj = sync::compensate(study.delays[j], 0.0, study.clocks[j].gnss_raw_error);
            manual += variance(sync::pairwise_tdoa(ci, cj, study.geometric[i], study.geometric[j]).value);
            ++pairs;
        }
    CHECK(one.compensated_variance == doctest::Approx(manual / pairs).epsilon(1e-9));
    CHECK(one.pairs.size() == 6);

    const auto sweep = sweep_filter_window(study, {1, 3, 5, 10, 15, 20, 30, 60, 120, 300});
    CHECK(sweep.raw_variance == doctest::Approx(one.raw_variance));
    bool increasing = true;
    for (std::size_t i = 1; i < sweep.rows.size(); ++i)
        if (sweep.rows[i].variance < sweep.rows[i - 1].variance) increasing = false;
    CHECK_FALSE(increasing);
    CHECK(sweep.rows[sweep.best_index].best);
    CHECK(std::count_if(sweep.rows.begin(), sweep.rows.end(), [](const auto& r) { return r.best; }) == 1);
    for (const auto& r : sweep.rows) CHECK(sweep.rows[sweep.best_index].variance <= r.variance);
    CHECK(sweep.rows[sweep.best_index].variance <= sweep.raw_variance / 2.0);

    TempDir tmp("calib");
    CampaignOptions opt;
    opt.seed = 3;
    opt.workers = 4;
    opt.output_dir = tmp.path;
    run_calibration(sc, opt);
    CHECK(fs::exists(tmp.path / "offsets.csv"));
    CHECK(fs::exists(tmp.path / "gnss_raw_rx01.csv"));
    CHECK(fs::exists(tmp.path / "tdoa_raw_rx01_rx02.csv"));
    CHECK(fs::exists(tmp.path / "tdoa_compensated_rx03_rx04.csv"));
    CHECK(fs::exists(tmp.path / "summary.txt"));

    const auto plain = scene::load_scenario(kScenarios / "city_emitter.yaml");
    CHECK_THROWS_AS(simulate_sync_study(plain, 1, 0.0, 0.0), ValidationError);
}

TEST_CASE("simulate_recording writes contiguous recordings") {
    TempDir tmp("sim");
    CampaignOptions opt;
    opt.snapshots = 10;
    opt.output_dir = tmp.path;
    const auto sc = scene::load_scenario(kScenarios / "city_emitter.yaml");
    simulate_recording(sc, opt);
    for (const char* id : {"rx01", "rx02", "rx03", "rx04"}) {
        const auto p = tmp.path / (std::string("rx_") + id + ".cf32");
        REQUIRE(fs::exists(p));
        CHECK(fs::file_size(p) == 10 * 512 * 8);
        const auto s = read_iq(p);
        CHECK(s.sample_rate == doctest::Approx(32e6));
        CHECK(s.gaps.empty());
    }
    CHECK(fs::exists(tmp.path / "truth.csv"));
}

TEST_CASE("CLI exit codes") {
    TempDir tmp("cli");
    const std::string out = " --out \"" + tmp.path.string() + "\"";
    const std::string emitter = " --scenario \"" + (kScenarios / "city_emitter.yaml").string() + "\"";
    const std::string radar = " --scenario \"" + (kScenarios / "rooftop_radar.yaml").string() + "\"";
    CHECK(run_cli("emitter" + emitter + out + " --snapshots 5") == 0);
    CHECK(fs::exists(tmp.path / "fixes.csv"));
    CHECK(run_cli("report --out \"" + tmp.path.string() + "\"") == 0);
    CHECK(run_cli("simulate" + emitter + out + " --snapshots 2") == 0);
    CHECK(run_cli("") == 1);
    CHECK(run_cli("emitter --scenario") == 1);
    CHECK(run_cli("emitter" + radar + out) == 2);

    std::ofstream(tmp.path / "bad.yaml") << "schema_version: 1\nmode: radar\nnodes: []\n";
    CHECK(run_cli("radar --scenario \"" + (tmp.path / "bad.yaml").string() + "\"" + out) == 2);
    std::ofstream(tmp.path / "broken.yaml") << "nodes: [ {id: \n";
    CHECK(run_cli("radar --scenario \"" + (tmp.path / "broken.yaml").string() + "\"" + out) == 2);
    // output path that cannot be created
    std::ofstream(tmp.path / "file") << "x";
    CHECK(run_cli("emitter" + emitter + " --out \"" + (tmp.path / "file" / "sub").string() + "\" --snapshots 2") == 3);
}
