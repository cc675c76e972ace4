#include "ppbs/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ppbs/gate.hpp"
#include "ppbs/ingest.hpp"

namespace ppbs::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

optics::CircuitSpec resolve_circuit(const std::string& name_or_path) {
    if (name_or_path == "compact-cnot") {
        return optics::build_compact_cnot(optics::CnotVariant::FullPpbs);
    }
    if (name_or_path == "compact-cnot-compensated") {
        return optics::build_compact_cnot(optics::CnotVariant::CompensatedInput);
    }
    std::ifstream in(name_or_path, std::ios::binary);
    if (!in) {
        throw validation_error("unknown circuit name and unreadable file: " + name_or_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return optics::circuit_from_json(buffer.str());
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path.string());
    out << content;
}

fs::path prepare_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw validation_error("--out directory is required");
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw validation_error("cannot create output directory: " + dir.string());
    return dir;
}

std::string csv_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

report::Report run_simulate(const SimulateOptions& options, std::ostream& out) {
    if (options.format != "json" && options.format != "csv") {
        throw validation_error("--format must be json or csv");
    }
    fs::path dir = prepare_out_dir(options.out_dir);
    optics::CircuitSpec circuit = resolve_circuit(options.circuit);
    double lambda = options.lambda.value_or(circuit.noise.lambda);

    TruthTable zz = gate::truth_table(circuit, Basis::ZZ, lambda);
    TruthTable xx = gate::truth_table(circuit, Basis::XX, lambda);
    gate::ConditionalProcess process = gate::conditional_process(circuit, lambda);

    json provenance;
    provenance["mode"] = "simulate";
    provenance["circuit"] = options.circuit;
    provenance["lambda"] = lambda;
    provenance["compensate_inputs"] = circuit.compensate_inputs;
    provenance["elements"] = circuit.elements.size();
    if (circuit.clamp_warning) provenance["clamped_parameters"] = true;

    report::Report rep = report::build_report(zz, xx, provenance);
    rep.exact_process_fidelity = gate::process_fidelity_exact(process);
    rep.avg_success = process.avg_success;
    rep.success_ratio = gate::success_ratio(circuit, lambda);

    std::string ext = options.format == "json" ? ".json" : ".csv";
    auto table_doc = [&](const TruthTable& t) {
        return options.format == "json" ? report::truth_table_to_json(t)
                                        : report::truth_table_to_csv(t);
    };
    write_file(dir / ("truth_zz" + ext), table_doc(zz));
    write_file(dir / ("truth_xx" + ext), table_doc(xx));
    write_file(dir / "report.json", report::report_to_json(rep));
    write_file(dir / "report.txt", report::render_report_text(rep));

    out << report::render_truth_table_text(zz) << "\n";
    out << report::render_truth_table_text(xx) << "\n";
    out << report::render_report_text(rep);
    return rep;
}

report::Report run_certify(const CertifyOptions& options, std::ostream& out) {
    fs::path dir = prepare_out_dir(options.out_dir);
    ingest::CountTable zz_counts = ingest::read_count_table_file(options.zz_path);
    ingest::CountTable xx_counts = ingest::read_count_table_file(options.xx_path);
    if (zz_counts.basis != Basis::ZZ || xx_counts.basis != Basis::XX) {
        throw validation_error("basis mismatch: --zz needs a ZZ table and --xx an XX table (got " +
                               basis_name(zz_counts.basis) + " and " +
                               basis_name(xx_counts.basis) + ")");
    }

    TruthTable zz = ingest::normalize_to_truth_table(zz_counts);
    TruthTable xx = ingest::normalize_to_truth_table(xx_counts);

    json provenance;
    provenance["mode"] = "certify";
    provenance["zz_file"] = options.zz_path;
    provenance["xx_file"] = options.xx_path;

    report::Report rep = report::build_report(zz, xx, provenance);
    write_file(dir / "report.json", report::report_to_json(rep));
    write_file(dir / "report.txt", report::render_report_text(rep));

    out << report::render_truth_table_text(zz) << "\n";
    out << report::render_truth_table_text(xx) << "\n";
    out << report::render_report_text(rep);
    return rep;
}

void run_sweep(const SweepOptions& options, std::ostream& out) {
    if (options.steps < 2) throw validation_error("sweep needs at least 2 steps");
    if (!(options.lambda_min >= 0.0 && options.lambda_max <= 1.0 &&
          options.lambda_min <= options.lambda_max)) {
        throw validation_error("sweep lambda range must satisfy 0 <= min <= max <= 1");
    }
    fs::path dir = prepare_out_dir(options.out_dir);
    optics::CircuitSpec circuit = resolve_circuit(options.circuit);

    std::ostringstream csv;
    csv << "lambda,f_zz,f_xx,lower,upper,exact\n";
    for (int k = 0; k < options.steps; ++k) {
        double lambda = options.lambda_min +
                        (options.lambda_max - options.lambda_min) * k / (options.steps - 1);
        TruthTable zz = gate::truth_table(circuit, Basis::ZZ, lambda);
        TruthTable xx = gate::truth_table(circuit, Basis::XX, lambda);
        double f_zz = certify::classical_fidelity(zz);
        double f_xx = certify::classical_fidelity(xx);
        auto [lower, upper] = certify::process_bounds(f_zz, f_xx);
        double exact = gate::process_fidelity_exact(gate::conditional_process(circuit, lambda));
        csv << csv_double(lambda) << "," << csv_double(f_zz) << "," << csv_double(f_xx) << ","
            << csv_double(lower) << "," << csv_double(upper) << "," << csv_double(exact) << "\n";
    }
    write_file(dir / "sweep.csv", csv.str());
    out << "wrote " << (dir / "sweep.csv").string() << " (" << options.steps << " rows)\n";
}

report::Report run_report(const ReportOptions& options, std::ostream& out) {
    std::ifstream in(options.in_path, std::ios::binary);
    if (!in) throw validation_error("cannot open report: " + options.in_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    report::Report rep = report::report_from_json(buffer.str());
    out << report::render_report_text(rep);
    return rep;
}

}  // namespace ppbs::cli
