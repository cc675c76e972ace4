#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ppbs/certify.hpp"
#include "ppbs/truth_table.hpp"

namespace ppbs::report {

// Aggregated certification result: classical fidelities, process-fidelity
// bounds, entanglement-capability bound, syndrome marginals, and the two
// extremal chi-diagonal completions. Simulation-only fields stay empty when
// the report was derived from ingested data.
struct Report {
    double f_zz = 0.0;
    double f_xx = 0.0;
    double bound_lower = 0.0;
    double bound_upper = 0.0;
    double concurrence_lower = 0.0;
    certify::SyndromeMarginals marginals;
    certify::ChiDiagonal chi_worst;
    certify::ChiDiagonal chi_best;
    std::optional<double> exact_process_fidelity;
    std::optional<double> avg_success;
    std::optional<double> success_ratio;  // max/min coincidence probability over basis inputs
    nlohmann::ordered_json provenance = nlohmann::ordered_json::object();
};

// Derives every bound and completion from the two truth tables.
Report build_report(const TruthTable& zz, const TruthTable& xx,
                    nlohmann::ordered_json provenance);

// Machine-readable form, full precision, fixed field order.
std::string report_to_json(const Report& report);

// Parses and re-validates: bounds and the concurrence bound must equal their
// recomputation from f_zz/f_xx exactly.
Report report_from_json(const std::string& document);

// Human-readable form, 3 decimals, tables laid out rows 0X..BX by columns
// X0..XB with marginal sums.
std::string render_report_text(const Report& report);

std::string render_truth_table_text(const TruthTable& table);
std::string truth_table_to_json(const TruthTable& table);
std::string truth_table_to_csv(const TruthTable& table);

}  // namespace ppbs::report
