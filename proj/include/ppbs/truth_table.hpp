#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "ppbs/errors.hpp"

namespace ppbs {

enum class Basis { ZZ, XX };

inline std::string basis_name(Basis b) { return b == Basis::ZZ ? "ZZ" : "XX"; }

inline Basis basis_from_name(const std::string& name) {
    if (name == "ZZ") return Basis::ZZ;
    if (name == "XX") return Basis::XX;
    throw validation_error("unknown basis: " + name + " (expected ZZ or XX)");
}

// Canonical state labels, control bit first: index = 2*control + target.
inline const std::array<std::string, 4>& basis_labels(Basis b) {
    static const std::array<std::string, 4> zz = {"0z0z", "0z1z", "1z0z", "1z1z"};
    static const std::array<std::string, 4> xx = {"0x0x", "0x1x", "1x0x", "1x1x"};
    return b == Basis::ZZ ? zz : xx;
}

// Row-stochastic input -> output probability table in a declared basis.
struct TruthTable {
    Basis basis = Basis::ZZ;
    Eigen::Matrix4d probs = Eigen::Matrix4d::Zero();  // rows: inputs, cols: outputs

    // Row-sum tolerance: 1e-9 for simulated tables, 1e-6 for ingested data.
    void validate(double row_tol) const {
        for (int i = 0; i < 4; ++i) {
            double sum = 0.0;
            for (int o = 0; o < 4; ++o) {
                if (probs(i, o) < -1e-12) {
                    throw validation_error("negative probability in truth table row " +
                                           basis_labels(basis)[static_cast<std::size_t>(i)]);
                }
                sum += probs(i, o);
            }
            if (std::abs(sum - 1.0) > row_tol) {
                throw validation_error("truth table row " +
                                       basis_labels(basis)[static_cast<std::size_t>(i)] +
                                       " does not sum to 1");
            }
        }
    }
};

}  // namespace ppbs
