#include "ppbs/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ppbs::report {

using json = nlohmann::ordered_json;

Report build_report(const TruthTable& zz, const TruthTable& xx, json provenance) {
    if (zz.basis != Basis::ZZ || xx.basis != Basis::XX) {
        throw validation_error("report needs one ZZ table and one XX table");
    }
    Report r;
    r.f_zz = certify::classical_fidelity(zz);
    r.f_xx = certify::classical_fidelity(xx);
    std::tie(r.bound_lower, r.bound_upper) = certify::process_bounds(r.f_zz, r.f_xx);
    r.concurrence_lower = certify::concurrence_bound(r.bound_lower);
    r.marginals = certify::syndrome_marginals(zz, xx);
    r.chi_worst = certify::extremal_chi(r.marginals, certify::ExtremalMode::Worst);
    r.chi_best = certify::extremal_chi(r.marginals, certify::ExtremalMode::Best);
    r.provenance = std::move(provenance);
    return r;
}

namespace {

json vector4_to_json(const Eigen::Vector4d& v) {
    return json::array({v(0), v(1), v(2), v(3)});
}

Eigen::Vector4d vector4_from_json(const json& j) {
    Eigen::Vector4d v;
    for (int i = 0; i < 4; ++i) v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
    return v;
}

json matrix4_to_json(const Eigen::Matrix4d& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        rows.push_back(json::array({m(i, 0), m(i, 1), m(i, 2), m(i, 3)}));
    }
    return rows;
}

Eigen::Matrix4d matrix4_from_json(const json& j) {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            m(i, k) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k))
                          .get<double>();
        }
    }
    return m;
}

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void render_chi_table(std::ostringstream& out, const std::string& title,
                      const Eigen::Matrix4d& chi) {
    const auto& names = certify::syndrome_names();
    out << title << "\n";
    out << "        X0     XC     XT     XB |   sum\n";
    Eigen::Vector4d col_sums = Eigen::Vector4d::Zero();
    for (int i = 0; i < 4; ++i) {
        out << "  " << names[static_cast<std::size_t>(i)] << "X";
        double row_sum = 0.0;
        for (int j = 0; j < 4; ++j) {
            out << "  " << fixed3(chi(i, j));
            row_sum += chi(i, j);
            col_sums(j) += chi(i, j);
        }
        out << " | " << fixed3(row_sum) << "\n";
    }
    out << "  sum";
    for (int j = 0; j < 4; ++j) out << "  " << fixed3(col_sums(j));
    out << " | " << fixed3(col_sums.sum()) << "\n";
}

}  // namespace

std::string report_to_json(const Report& report) {
    json doc;
    doc["f_zz"] = report.f_zz;
    doc["f_xx"] = report.f_xx;
    doc["bounds"] = {{"lower", report.bound_lower}, {"upper", report.bound_upper}};
    doc["concurrence_bound"] = report.concurrence_lower;
    doc["marginals"] = {{"zz", vector4_to_json(report.marginals.zz)},
                        {"xx", vector4_to_json(report.marginals.xx)}};
    doc["chi_worst"] = matrix4_to_json(report.chi_worst.values);
    doc["chi_best"] = matrix4_to_json(report.chi_best.values);
    if (report.exact_process_fidelity) {
        doc["exact_process_fidelity"] = *report.exact_process_fidelity;
    }
    if (report.avg_success) doc["avg_success"] = *report.avg_success;
    if (report.success_ratio) doc["success_ratio"] = *report.success_ratio;
    doc["provenance"] = report.provenance;
    return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("malformed report JSON: ") + err.what());
    }
    Report r;
    try {
        r.f_zz = doc.at("f_zz").get<double>();
        r.f_xx = doc.at("f_xx").get<double>();
        r.bound_lower = doc.at("bounds").at("lower").get<double>();
        r.bound_upper = doc.at("bounds").at("upper").get<double>();
        r.concurrence_lower = doc.at("concurrence_bound").get<double>();
        r.marginals.zz = vector4_from_json(doc.at("marginals").at("zz"));
        r.marginals.xx = vector4_from_json(doc.at("marginals").at("xx"));
        r.chi_worst.values = matrix4_from_json(doc.at("chi_worst"));
        r.chi_best.values = matrix4_from_json(doc.at("chi_best"));
        if (doc.contains("exact_process_fidelity")) {
            r.exact_process_fidelity = doc["exact_process_fidelity"].get<double>();
        }
        if (doc.contains("avg_success")) r.avg_success = doc["avg_success"].get<double>();
        if (doc.contains("success_ratio")) r.success_ratio = doc["success_ratio"].get<double>();
        if (doc.contains("provenance")) r.provenance = doc["provenance"];
    } catch (const json::exception& err) {
        throw validation_error(std::string("invalid report document: ") + err.what());
    }

    auto [lower, upper] = certify::process_bounds(r.f_zz, r.f_xx);
    if (lower != r.bound_lower || upper != r.bound_upper ||
        certify::concurrence_bound(lower) != r.concurrence_lower) {
        throw validation_error("report bounds are inconsistent with its fidelities");
    }
    return r;
}

std::string render_report_text(const Report& report) {
    std::ostringstream out;
    out << "classical truth-table fidelities\n";
    out << "  F_zz = " << fixed3(report.f_zz) << "\n";
    out << "  F_xx = " << fixed3(report.f_xx) << "\n";
    out << "\nprocess fidelity bounds\n";
    out << "  " << fixed3(report.bound_lower) << " <= F_process <= "
        << fixed3(report.bound_upper) << "\n";
    if (report.exact_process_fidelity) {
        out << "  exact process fidelity (simulation): "
            << fixed3(*report.exact_process_fidelity) << "\n";
    }
    out << "\nentanglement capability\n";
    out << "  C >= " << fixed3(report.concurrence_lower) << "\n";
    if (report.avg_success) {
        out << "\naverage success probability\n  " << fixed3(*report.avg_success);
        if (report.success_ratio) {
            out << "   (max/min over basis inputs: " << fixed3(*report.success_ratio) << ")";
        }
        out << "\n";
    }
    out << "\nsyndrome marginals (0, C, T, B)\n";
    out << "  ZZ:";
    for (int i = 0; i < 4; ++i) out << "  " << fixed3(report.marginals.zz(i));
    out << "\n  XX:";
    for (int i = 0; i < 4; ++i) out << "  " << fixed3(report.marginals.xx(i));
    out << "\n\n";
    render_chi_table(out, "chi diagonal, lowest process fidelity", report.chi_worst.values);
    out << "\n";
    render_chi_table(out, "chi diagonal, highest process fidelity", report.chi_best.values);
    return out.str();
}

std::string render_truth_table_text(const TruthTable& table) {
    const auto& labels = basis_labels(table.basis);
    std::ostringstream out;
    out << "truth table, " << basis_name(table.basis) << " basis\n        ";
    for (const auto& l : labels) out << "  <" << l << "|";
    out << "\n";
    for (int i = 0; i < 4; ++i) {
        out << "  |" << labels[static_cast<std::size_t>(i)] << ">";
        for (int o = 0; o < 4; ++o) out << "   " << fixed3(table.probs(i, o));
        out << "\n";
    }
    return out.str();
}

std::string truth_table_to_json(const TruthTable& table) {
    const auto& labels = basis_labels(table.basis);
    json doc;
    doc["basis"] = basis_name(table.basis);
    doc["rows"] = json::array();
    for (int i = 0; i < 4; ++i) {
        json row;
        row["input"] = labels[static_cast<std::size_t>(i)];
        json probs;
        for (int o = 0; o < 4; ++o) {
            probs[labels[static_cast<std::size_t>(o)]] = table.probs(i, o);
        }
        row["probs"] = probs;
        doc["rows"].push_back(row);
    }
    return doc.dump(2) + "\n";
}

std::string truth_table_to_csv(const TruthTable& table) {
    const auto& labels = basis_labels(table.basis);
    std::ostringstream out;
    out << "basis," << basis_name(table.basis) << "\n";
    out << "input,out_00,out_01,out_10,out_11\n";
    out.precision(17);
    for (int i = 0; i < 4; ++i) {
        out << labels[static_cast<std::size_t>(i)];
        for (int o = 0; o < 4; ++o) out << "," << table.probs(i, o);
        out << "\n";
    }
    return out.str();
}

}  // namespace ppbs::report
