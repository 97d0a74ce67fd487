// uavtwin command line front end.
//
// Exit codes: 0 success, 1 usage error, 2 scenario parse/validation error,
// 3 runtime failure (I/O, numerical, internal).

#include "uavtwin/common/errors.hpp"
#include "uavtwin/harness/campaign.hpp"
#include "uavtwin/harness/report.hpp"
#include "uavtwin/scene/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInvalid = 2, kRuntime = 3 };

struct CommonArgs {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string out;
    std::string mode;
    std::optional<std::size_t> snapshots;
    std::optional<double> snr_db;
    std::size_t workers = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_capture) {
    cmd->add_option("--scenario", args.scenario, "scenario YAML file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", args.seed, "campaign seed");
    cmd->add_option("--out", args.out, "output directory")->required();
    cmd->add_option("--workers", args.workers, "worker threads (0 = all cores)");
    if (with_capture) {
        cmd->add_option("--mode", args.mode, "radar or emitter (must match the scenario)")
            ->check(CLI::IsMember({"radar", "emitter"}));
        cmd->add_option("--snapshots", args.snapshots, "number of epochs/snapshots");
        cmd->add_option("--snr-db", args.snr_db, "per-sample SNR of a 0 dB path");
    }
}

uavtwin::harness::CampaignOptions to_options(const CommonArgs& args) {
    uavtwin::harness::CampaignOptions o;
    if (args.mode == "radar") o.mode = uavtwin::scene::Mode::Radar;
    if (args.mode == "emitter") o.mode = uavtwin::scene::Mode::Emitter;
    o.seed = args.seed;
    o.output_dir = args.out;
    o.snapshots = args.snapshots;
    o.snr_db = args.snr_db;
    o.workers = args.workers;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace uavtwin;
    CLI::App app{"uavtwin: coherent sensor network simulator for UAV localization"};
    app.require_subcommand(1);

    CommonArgs sim, cal, rad, emi, sweep;
    std::vector<double> windows{1, 2, 5, 10, 15, 20, 30, 60, 120, 300};
    std::string report_dir;

    auto* c_sim = app.add_subcommand("simulate", "write per-receiver IQ recordings");
    add_common(c_sim, sim, true);
    auto* c_cal = app.add_subcommand("calibrate", "beacon synchronization calibration");
    add_common(c_cal, cal, false);
    auto* c_rad = app.add_subcommand("radar", "run the radar campaign");
    add_common(c_rad, rad, true);
    auto* c_emi = app.add_subcommand("emitter", "run the emitter campaign");
    add_common(c_emi, emi, true);
    auto* c_sweep = app.add_subcommand("sweep-filter", "sweep the GNSS low-pass window");
    add_common(c_sweep, sweep, false);
    c_sweep->add_option("--windows", windows, "candidate windows in seconds")->delimiter(',');
    auto* c_rep = app.add_subcommand("report", "recompute the summary of a campaign output directory");
    c_rep->add_option("--out", report_dir, "campaign output directory")->required()->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*c_sim) {
            harness::simulate_recording(scene::load_scenario(sim.scenario), to_options(sim));
        } else if (*c_cal) {
            const auto r = harness::run_calibration(scene::load_scenario(cal.scenario), to_options(cal));
            std::cout << "raw pairwise TDoA std [s]: " << std::sqrt(r.raw_variance) << '\n'
                      << "compensated pairwise TDoA std [s]: " << std::sqrt(r.compensated_variance) << '\n';
        } else if (*c_rad || *c_emi) {
            auto args = *c_rad ? rad : emi;
            if (args.mode.empty()) args.mode = *c_rad ? "radar" : "emitter";
            if (args.mode != (*c_rad ? "radar" : "emitter")) {
                std::cerr << "--mode contradicts the subcommand\n";
                return kUsage;
            }
            const auto report = harness::run_campaign(std::filesystem::path(args.scenario), to_options(args));
            std::cout << harness::format_summary(report);
        } else if (*c_sweep) {
            const auto sw = harness::sweep_filter_window(sweep.scenario, windows, sweep.seed, sweep.workers);
            std::filesystem::create_directories(sweep.out);
            harness::write_sweep_csv(sw, std::filesystem::path(sweep.out) / "sweep.csv");
            std::cout << "raw variance [s^2]: " << sw.raw_variance << '\n';
            for (const auto& row : sw.rows)
                std::cout << "window " << row.window << " s: " << row.variance << (row.best ? "  <- best" : "")
                          << '\n';
        } else if (*c_rep) {
            const std::filesystem::path dir(report_dir);
            harness::CampaignReport report;
            report.fixes = harness::read_errors_csv(dir / "errors.csv");
            report.epochs = report.fixes.size();
            report.finalize();
            std::cout << "fixes: " << report.fixes.size() << '\n'
                      << "horizontal_error_median_m: " << report.horizontal.median << '\n'
                      << "horizontal_error_p90_m: " << report.horizontal.p90 << '\n'
                      << "horizontal_error_p99_m: " << report.horizontal.p99 << '\n'
                      << "error_3d_median_m: " << report.spatial.median << '\n'
                      << "error_3d_p90_m: " << report.spatial.p90 << '\n'
                      << "error_3d_p99_m: " << report.spatial.p99 << '\n';
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ValidationError& e) {
        std::cerr << "invalid scenario: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}
