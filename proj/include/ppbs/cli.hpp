#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "ppbs/optics.hpp"
#include "ppbs/report.hpp"

namespace ppbs::cli {

// Built-in circuit names: "compact-cnot" (three PPBSs with dump ports) and
// "compact-cnot-compensated" (single PPBS, compensated inputs). Anything else
// is treated as a path to a circuit JSON document.
optics::CircuitSpec resolve_circuit(const std::string& name_or_path);

struct SimulateOptions {
    std::string circuit = "compact-cnot";
    std::optional<double> lambda;  // default: circuit noise lambda
    std::string out_dir;
    std::string format = "json";  // truth-table files: json or csv
};

struct CertifyOptions {
    std::string zz_path;
    std::string xx_path;
    std::string out_dir;
};

struct SweepOptions {
    std::string circuit = "compact-cnot";
    double lambda_min = 0.0;
    double lambda_max = 1.0;
    int steps = 11;
    std::string out_dir;
};

struct ReportOptions {
    std::string in_path;
};

// Each command writes its files under out_dir (created if missing) and prints
// the human-readable result to `out`. Failures raise validation_error or
// numeric_error; the binary maps them to exit codes 1 and 2.
report::Report run_simulate(const SimulateOptions& options, std::ostream& out);
report::Report run_certify(const CertifyOptions& options, std::ostream& out);
void run_sweep(const SweepOptions& options, std::ostream& out);
report::Report run_report(const ReportOptions& options, std::ostream& out);

}  // namespace ppbs::cli
