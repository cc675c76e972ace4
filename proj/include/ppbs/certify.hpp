#pragma once

#include <array>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "ppbs/gate.hpp"
#include "ppbs/truth_table.hpp"

namespace ppbs::certify {

// Error syndromes of a classical truth-table row: no error, control flip,
// target flip, or both flipped.
enum class Syndrome : int { None = 0, Control = 1, Target = 2, Both = 3 };

inline const std::array<std::string, 4>& syndrome_names() {
    static const std::array<std::string, 4> names = {"0", "C", "T", "B"};
    return names;
}

// Syndrome of observing `output` where `expected` was the correct label,
// labels encoded as 2*control + target.
Syndrome syndrome_of(int output, int expected);

// Ideal permutation of basis labels: the CNOT action in ZZ, the reverse CNOT
// (target acting on control) in XX.
std::array<int, 4> expected_permutation(Basis basis);

// Probability of the correct output averaged over the four inputs.
double classical_fidelity(const TruthTable& table);

// F_zz + F_xx - 1 <= F_process <= min(F_zz, F_xx); lower is clamped at 0.
std::pair<double, double> process_bounds(double f_zz, double f_xx);

// Entanglement-capability bound C >= 2 F_process - 1, clamped at 0.
double concurrence_bound(double f_lower);

// Per-basis syndrome probabilities, averaged over the four inputs. The
// 0-syndrome component equals the classical fidelity.
struct SyndromeMarginals {
    Eigen::Vector4d zz = Eigen::Vector4d::Zero();
    Eigen::Vector4d xx = Eigen::Vector4d::Zero();

    void validate(double tol = 1e-6) const;
};

SyndromeMarginals syndrome_marginals(const TruthTable& zz, const TruthTable& xx);

// Diagonal of the process matrix in the syndrome basis: rows are ZZ syndromes,
// columns XX syndromes; row sums match the zz marginals and column sums the
// xx marginals.
struct ChiDiagonal {
    Eigen::Matrix4d values = Eigen::Matrix4d::Zero();
};

enum class ExtremalMode { Worst, Best };

// Margin-constrained completion with the smallest (Worst) or largest (Best)
// chi_00. Worst pins chi_00 to max(0, p0+q0-1) and fills the remainder by a
// row-major greedy (northwest-corner) allocation; Best pins chi_00 to
// min(p0, q0) and distributes the residual row/column masses proportionally.
ChiDiagonal extremal_chi(const SyndromeMarginals& marginals, ExtremalMode mode);

// One of the 16 orthogonal unitaries indexed by a (ZZ syndrome, XX syndrome)
// pair; U_(0,0) is the CNOT itself.
struct SyndromeUnitary {
    Syndrome zz = Syndrome::None;
    Syndrome xx = Syndrome::None;
    Eigen::Matrix4cd matrix;
};

// All 16 syndrome unitaries E_a F_b U_CNOT in row-major (zz, xx) order:
// index = 4*zz + xx. E_a are Z-basis bit flips, F_b X-basis bit flips
// (Z-type phase operators).
std::array<SyndromeUnitary, 16> syndrome_unitaries();

// Expansion coefficients of a trace-normalized Choi matrix over the syndrome
// unitaries: chi(a,b) = <<U_a| choi |U_b>> / 4. Hermitian PSD with unit
// diagonal sum whenever choi is a valid normalized Choi matrix.
Eigen::MatrixXcd chi_from_choi(const Eigen::MatrixXcd& choi);

// rho_out = sum_{i,j} chi_{i,j} U_i rho_in U_j^+, applied literally. chi must
// be Hermitian PSD with sum_i chi_{i,i} = 1 within 1e-8 (the map then
// preserves the trace of the maximally mixed input). The matrix overload
// accepts arbitrary inputs (operator-basis elements included); for a
// conditional process the output trace is the input's success probability
// relative to the average.
Eigen::Matrix4cd apply_operator_sum(const Eigen::MatrixXcd& chi,
                                    const Eigen::Matrix4cd& rho_in);
gate::TwoQubitState apply_operator_sum(const Eigen::MatrixXcd& chi,
                                       const gate::TwoQubitState& rho_in);

}  // namespace ppbs::certify
