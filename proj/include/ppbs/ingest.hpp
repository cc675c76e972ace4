#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "ppbs/truth_table.hpp"

namespace ppbs::ingest {

enum class Format { Json, Csv };

Format format_from_name(const std::string& name);

// Raw coincidence counts for the 16 input/output combinations of one basis.
// Row and column order follows basis_labels().
struct CountTable {
    Basis basis = Basis::ZZ;
    std::array<std::array<std::uint64_t, 4>, 4> counts{};
    std::map<std::string, std::string> metadata;
};

// Parses and validates a count-table document. Unknown or missing labels,
// duplicate cells, and negative or non-integer counts are rejected; nothing
// is imputed. Schemas are documented in docs/schemas.md.
CountTable parse_count_table(const std::string& document, Format format);

std::string serialize_count_table(const CountTable& table, Format format);

// Divides every cell by its row total, mirroring normalization of coincidence
// counts by the per-input sum. Throws naming the input state if a row total
// is zero.
TruthTable normalize_to_truth_table(const CountTable& counts);

// Poissonian counting uncertainties, sqrt(N) per cell. Derived metadata only:
// nothing downstream propagates these into fidelities.
std::array<std::array<double, 4>, 4> poisson_sigmas(const CountTable& counts);

// Convenience: read a file, auto-detecting the format from the extension
// (.json / .csv).
CountTable read_count_table_file(const std::string& path);

}  // namespace ppbs::ingest
