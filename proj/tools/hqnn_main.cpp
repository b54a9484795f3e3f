// Command-line frontend for the hybrid QNN scaling toolkit.
//
// Subcommands:
//   train     --config <file> [--seed N]    single configuration
//   sweep     --config <file> [--resume]    full sweep with reports
//   diag      --qubits Q --layers L ...     QCE/EEE only
//   correlate --input results.json          Spearman matrix
//   report    --input results.json --out d  regenerate CSV/SVG
//
// Exit codes: 0 success, 1 configuration error, 2 data/format error,
// 3 numerical failure.

#include "hqnn/circuit.hpp"
#include "hqnn/diagnostics.hpp"
#include "hqnn/errors.hpp"
#include "hqnn/reports.hpp"
#include "hqnn/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

namespace {

void print_metrics(const hqnn::RunRecord &record) {
    const hqnn::MetricsRow &m = record.metrics;
    std::printf("dataset         %s\n", record.dataset.c_str());
    std::printf("qubits          %d\n", record.qubits);
    std::printf("layers          %d\n", record.layers);
    std::printf("seed            %llu\n",
                static_cast<unsigned long long>(record.seed));
    std::printf("status          %s\n", record.status.c_str());
    if (record.status != "ok") {
        std::printf("error           %s\n", record.error.c_str());
        return;
    }
    std::printf("accuracy        %s\n", hqnn::format_double(m.accuracy).c_str());
    std::printf("macro_precision %s\n",
                hqnn::format_double(m.macro_precision).c_str());
    std::printf("macro_recall    %s\n",
                hqnn::format_double(m.macro_recall).c_str());
    std::printf("macro_f1        %s\n", hqnn::format_double(m.macro_f1).c_str());
    std::printf("pr_auc          %s\n", hqnn::format_double(m.pr_auc).c_str());
    std::printf("qce             %s\n",
                hqnn::format_double(record.diagnostics.qce).c_str());
    std::printf("eee_bits        %s\n",
                hqnn::format_double(record.diagnostics.eee_bits).c_str());
    std::printf("qgn_mean        %s\n",
                hqnn::format_double(record.diagnostics.qgn_mean).c_str());
}

void print_correlations(const hqnn::CorrelationMatrix &m) {
    std::printf("%-10s", "metric");
    for (const char *col : hqnn::CorrelationMatrix::kCols) {
        std::printf(" %12s", col);
    }
    std::printf("\n");
    for (std::size_t r = 0; r < hqnn::CorrelationMatrix::kRows.size(); ++r) {
        std::printf("%-10s", hqnn::CorrelationMatrix::kRows[r]);
        for (std::size_t c = 0; c < hqnn::CorrelationMatrix::kCols.size(); ++c) {
            if (m.rho[r][c].has_value()) {
                std::printf(" %12.6f", *m.rho[r][c]);
            } else {
                std::printf(" %12s", "missing");
            }
        }
        std::printf("\n");
    }
}

int dispatch(int argc, char **argv) {
    CLI::App app{"hybrid quantum-classical classifier scaling toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string input_path;
    std::string out_dir;
    bool resume = false;
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    int qubits = 4;
    int layers = 6;
    int samples = 0;
    std::uint64_t diag_seed = 1;
    int qce_states = 75;
    int eee_samples = 100;

    CLI::App *train_cmd =
        app.add_subcommand("train", "train one configuration and print metrics");
    train_cmd->add_option("--config", config_path, "run config JSON")->required();
    train_cmd->add_option("--seed", seed_override, "override the master seed")
        ->each([&](const std::string &) { seed_given = true; });

    CLI::App *sweep_cmd =
        app.add_subcommand("sweep", "run a full sweep and write reports");
    sweep_cmd->add_option("--config", config_path, "sweep config JSON")
        ->required();
    sweep_cmd->add_flag("--resume", resume, "skip points with existing results");

    CLI::App *diag_cmd =
        app.add_subcommand("diag", "compute QCE/EEE for one circuit shape");
    diag_cmd->add_option("--qubits", qubits, "qubit count Q")->required();
    diag_cmd->add_option("--layers", layers, "layer count L")->required();
    diag_cmd->add_option("--samples", samples,
                         "sample count for both QCE states and EEE draws");
    diag_cmd->add_option("--qce-states", qce_states, "QCE ensemble size");
    diag_cmd->add_option("--eee-samples", eee_samples, "EEE sample count");
    diag_cmd->add_option("--seed", diag_seed, "sampling seed");

    CLI::App *corr_cmd =
        app.add_subcommand("correlate", "Spearman matrix from results.json");
    corr_cmd->add_option("--input", input_path, "results.json path")->required();

    CLI::App *report_cmd =
        app.add_subcommand("report", "regenerate CSV/SVG from results.json");
    report_cmd->add_option("--input", input_path, "results.json path")
        ->required();
    report_cmd->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e); // prints help or the usage error
        return code == 0 ? 0 : 1;
    }

    if (train_cmd->parsed()) {
        hqnn::RunConfig config = hqnn::RunConfig::from_json_file(config_path);
        if (seed_given) {
            config.seed = seed_override;
        }
        const hqnn::RunRecord record = hqnn::run_single(config);
        print_metrics(record);
        return record.status == "ok" ? 0 : 3;
    }

    if (sweep_cmd->parsed()) {
        const hqnn::SweepConfig config =
            hqnn::SweepConfig::from_json_file(config_path);
        const auto records = hqnn::run_sweep(config, resume);
        std::size_t ok = 0;
        for (const auto &r : records) {
            ok += r.status == "ok";
        }
        hqnn::CorrelationMatrix matrix;
        const hqnn::CorrelationMatrix *matrix_ptr = nullptr;
        if (ok >= 3) {
            matrix = hqnn::correlate(records);
            matrix_ptr = &matrix;
        }
        hqnn::emit_reports(records, matrix_ptr, config.output_dir);
        std::printf("%zu/%zu points ok; reports in %s\n", ok, records.size(),
                    config.output_dir.c_str());
        return 0;
    }

    if (diag_cmd->parsed()) {
        hqnn::DiagSampling sampling;
        sampling.qce_states = samples > 0 ? samples : qce_states;
        sampling.eee_samples = samples > 0 ? samples : eee_samples;
        sampling.seed = diag_seed;
        const auto spec = hqnn::CircuitSpec::make(qubits, layers);
        const auto report = hqnn::compute_diagnostics(spec, sampling);
        std::printf("qubits        %d\n", qubits);
        std::printf("layers        %d\n", layers);
        std::printf("qce           %s\n", hqnn::format_double(report.qce).c_str());
        std::printf("qce_std_error %s\n",
                    hqnn::format_double(report.qce_std_error).c_str());
        std::printf("eee_bits      %s\n",
                    hqnn::format_double(report.eee_bits).c_str());
        std::printf("qce_states    %d\n", report.qce_states);
        std::printf("eee_samples   %d\n", report.eee_samples);
        std::printf("seed          %llu\n",
                    static_cast<unsigned long long>(report.seed));
        return 0;
    }

    if (corr_cmd->parsed()) {
        const auto records = hqnn::records_from_json_file(input_path);
        print_correlations(hqnn::correlate(records));
        return 0;
    }

    if (report_cmd->parsed()) {
        const auto records = hqnn::records_from_json_file(input_path);
        hqnn::CorrelationMatrix matrix;
        const hqnn::CorrelationMatrix *matrix_ptr = nullptr;
        std::size_t ok = 0;
        for (const auto &r : records) {
            ok += r.status == "ok";
        }
        if (ok >= 3) {
            matrix = hqnn::correlate(records);
            matrix_ptr = &matrix;
        }
        hqnn::emit_reports(records, matrix_ptr, out_dir);
        std::printf("reports written to %s\n", out_dir.c_str());
        return 0;
    }
    return 1;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return dispatch(argc, argv);
    } catch (const hqnn::ConfigError &e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 1;
    } catch (const hqnn::DataFormatError &e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const hqnn::NumericError &e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
