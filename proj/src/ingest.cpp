#include "ppbs/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ppbs::ingest {

using json = nlohmann::ordered_json;

Format format_from_name(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw validation_error("unknown format: " + name + " (expected json or csv)");
}

namespace {

int label_index(Basis basis, const std::string& label) {
    const auto& labels = basis_labels(basis);
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw validation_error("unknown " + basis_name(basis) + " state label: " + label);
    }
    return static_cast<int>(it - labels.begin());
}

std::uint64_t parse_count_value(const json& value, const std::string& cell) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer()) {
        throw validation_error("negative count in cell " + cell);
    }
    throw validation_error("count in cell " + cell + " is not a nonnegative integer");
}

CountTable parse_json(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("malformed count-table JSON: ") + err.what());
    }

    CountTable table;
    try {
        table.basis = basis_from_name(doc.at("basis").get<std::string>());
        const auto& labels = basis_labels(table.basis);

        if (!doc.contains("rows") || !doc["rows"].is_array()) {
            throw validation_error("count table needs a \"rows\" array");
        }
        std::array<bool, 4> row_seen{};
        std::array<std::array<bool, 4>, 4> cell_seen{};
        for (const auto& row : doc["rows"]) {
            int i = label_index(table.basis, row.at("input").get<std::string>());
            if (row_seen[static_cast<std::size_t>(i)]) {
                throw validation_error("duplicate row for input " +
                                       labels[static_cast<std::size_t>(i)]);
            }
            row_seen[static_cast<std::size_t>(i)] = true;
            const auto& counts = row.at("counts");
            for (const auto& [key, value] : counts.items()) {
                int o = label_index(table.basis, key);
                std::string cell = "(" + labels[static_cast<std::size_t>(i)] + " -> " + key + ")";
                if (cell_seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)]) {
                    throw validation_error("duplicate cell " + cell);
                }
                cell_seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)] = true;
                table.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)] =
                    parse_count_value(value, cell);
            }
        }
        for (int i = 0; i < 4; ++i) {
            if (!row_seen[static_cast<std::size_t>(i)]) {
                throw validation_error("missing row for input " +
                                       labels[static_cast<std::size_t>(i)]);
            }
            for (int o = 0; o < 4; ++o) {
                if (!cell_seen[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)]) {
                    throw validation_error("missing cell (" + labels[static_cast<std::size_t>(i)] +
                                           " -> " + labels[static_cast<std::size_t>(o)] + ")");
                }
            }
        }
        if (doc.contains("metadata")) {
            for (const auto& [key, value] : doc["metadata"].items()) {
                table.metadata[key] = value.get<std::string>();
            }
        }
    } catch (const json::exception& err) {
        throw validation_error(std::string("invalid count-table document: ") + err.what());
    }
    return table;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::uint64_t parse_count_text(const std::string& text, const std::string& cell) {
    if (text.empty()) throw validation_error("missing cell " + cell);
    if (text[0] == '-') throw validation_error("negative count in cell " + cell);
    std::uint64_t value = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw validation_error("count in cell " + cell + " is not a nonnegative integer");
        }
        value = value * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return value;
}

CountTable parse_csv(const std::string& document) {
    std::vector<std::string> lines;
    std::stringstream ss(document);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.size() != 6) {
        throw validation_error("count-table CSV needs 6 lines: basis, header, 4 rows");
    }

    auto basis_fields = split_csv_line(lines[0]);
    if (basis_fields.size() != 2 || basis_fields[0] != "basis") {
        throw validation_error("count-table CSV must start with a \"basis,<ZZ|XX>\" line");
    }
    CountTable table;
    table.basis = basis_from_name(basis_fields[1]);
    const auto& labels = basis_labels(table.basis);

    auto header = split_csv_line(lines[1]);
    const std::vector<std::string> expected_header = {"input", "out_00", "out_01", "out_10",
                                                      "out_11"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected_header) {
        throw validation_error("count-table CSV header must be input,out_00,out_01,out_10,out_11");
    }

    std::array<bool, 4> row_seen{};
    for (std::size_t r = 2; r < lines.size(); ++r) {
        auto fields = split_csv_line(lines[r]);
        if (fields.size() != 5) {
            throw validation_error("count-table CSV row needs 5 fields: " + lines[r]);
        }
        int i = label_index(table.basis, fields[0]);
        if (row_seen[static_cast<std::size_t>(i)]) {
            throw validation_error("duplicate row for input " + fields[0]);
        }
        row_seen[static_cast<std::size_t>(i)] = true;
        for (int o = 0; o < 4; ++o) {
            std::string cell = "(" + labels[static_cast<std::size_t>(i)] + " -> " +
                               labels[static_cast<std::size_t>(o)] + ")";
            table.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)] =
                parse_count_text(fields[static_cast<std::size_t>(o) + 1], cell);
        }
    }
    for (int i = 0; i < 4; ++i) {
        if (!row_seen[static_cast<std::size_t>(i)]) {
            throw validation_error("missing row for input " + labels[static_cast<std::size_t>(i)]);
        }
    }
    return table;
}

}  // namespace

CountTable parse_count_table(const std::string& document, Format format) {
    return format == Format::Json ? parse_json(document) : parse_csv(document);
}

std::string serialize_count_table(const CountTable& table, Format format) {
    const auto& labels = basis_labels(table.basis);
    if (format == Format::Json) {
        json doc;
        doc["basis"] = basis_name(table.basis);
        doc["rows"] = json::array();
        for (int i = 0; i < 4; ++i) {
            json row;
            row["input"] = labels[static_cast<std::size_t>(i)];
            json counts;
            for (int o = 0; o < 4; ++o) {
                counts[labels[static_cast<std::size_t>(o)]] =
                    table.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)];
            }
            row["counts"] = counts;
            doc["rows"].push_back(row);
        }
        doc["metadata"] = table.metadata;
        return doc.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "basis," << basis_name(table.basis) << "\n";
    out << "input,out_00,out_01,out_10,out_11\n";
    for (int i = 0; i < 4; ++i) {
        out << labels[static_cast<std::size_t>(i)];
        for (int o = 0; o < 4; ++o) {
            out << "," << table.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)];
        }
        out << "\n";
    }
    return out.str();
}

TruthTable normalize_to_truth_table(const CountTable& counts) {
    TruthTable table;
    table.basis = counts.basis;
    for (int i = 0; i < 4; ++i) {
        std::uint64_t total = 0;
        for (int o = 0; o < 4; ++o) {
            total += counts.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)];
        }
        if (total == 0) {
            throw validation_error(
                "zero total count for input state " +
                basis_labels(counts.basis)[static_cast<std::size_t>(i)]);
        }
        for (int o = 0; o < 4; ++o) {
            table.probs(i, o) =
                static_cast<double>(
                    counts.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)]) /
                static_cast<double>(total);
        }
    }
    return table;
}

std::array<std::array<double, 4>, 4> poisson_sigmas(const CountTable& counts) {
    std::array<std::array<double, 4>, 4> sigmas{};
    for (int i = 0; i < 4; ++i) {
        for (int o = 0; o < 4; ++o) {
            sigmas[static_cast<std::size_t>(i)][static_cast<std::size_t>(o)] = std::sqrt(
                static_cast<double>(counts.counts[static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(o)]));
        }
    }
    return sigmas;
}

CountTable read_count_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    Format format = Format::Json;
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") format = Format::Csv;
    return parse_count_table(buffer.str(), format);
}

}  // namespace ppbs::ingest
