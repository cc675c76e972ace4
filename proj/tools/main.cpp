#include <iostream>

#include <CLI11.hpp>

#include "ppbs/cli.hpp"
#include "ppbs/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Simulator and certification toolkit for the post-selected "
                 "PPBS optical CNOT gate"};
    app.require_subcommand(1);

    ppbs::cli::SimulateOptions sim;
    auto* simulate = app.add_subcommand(
        "simulate", "Simulate a circuit and write truth tables plus a certification report");
    simulate->add_option("--circuit", sim.circuit, "Built-in name or circuit JSON file")
        ->capture_default_str();
    double lambda_flag = -1.0;
    auto* lambda_opt = simulate->add_option("--lambda", lambda_flag,
                                            "Photon indistinguishability in [0,1]");
    simulate->add_option("--out", sim.out_dir, "Output directory")->required();
    simulate->add_option("--format", sim.format, "Truth-table file format: json or csv")
        ->capture_default_str();

    ppbs::cli::CertifyOptions cert;
    auto* certify = app.add_subcommand(
        "certify", "Build a certification report from measured coincidence counts");
    certify->add_option("--zz", cert.zz_path, "ZZ-basis count table (json or csv)")->required();
    certify->add_option("--xx", cert.xx_path, "XX-basis count table (json or csv)")->required();
    certify->add_option("--out", cert.out_dir, "Output directory")->required();

    ppbs::cli::SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Sweep lambda and write fidelities and bounds as CSV");
    sweep_cmd->add_option("--circuit", sweep.circuit, "Built-in name or circuit JSON file")
        ->capture_default_str();
    sweep_cmd->add_option("--lambda-min", sweep.lambda_min, "")->capture_default_str();
    sweep_cmd->add_option("--lambda-max", sweep.lambda_max, "")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep.steps, "Number of sweep points")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")->required();

    ppbs::cli::ReportOptions rep;
    auto* report_cmd = app.add_subcommand("report", "Re-render a stored report.json");
    report_cmd->add_option("--in", rep.in_path, "Report JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: validation: " << e.what() << "\n";
        return 1;
    }

    try {
        if (simulate->parsed()) {
            if (lambda_opt->count() > 0) sim.lambda = lambda_flag;
            ppbs::cli::run_simulate(sim, std::cout);
        } else if (certify->parsed()) {
            ppbs::cli::run_certify(cert, std::cout);
        } else if (sweep_cmd->parsed()) {
            ppbs::cli::run_sweep(sweep, std::cout);
        } else if (report_cmd->parsed()) {
            ppbs::cli::run_report(rep, std::cout);
        }
    } catch (const ppbs::validation_error& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 1;
    } catch (const ppbs::numeric_error& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
