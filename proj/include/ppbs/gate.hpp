#pragma once

#include <utility>

#include <Eigen/Dense>

#include "ppbs/fock.hpp"
#include "ppbs/optics.hpp"
#include "ppbs/truth_table.hpp"

namespace ppbs::gate {

using fock::complex;

// Polarization encoding of the two qubits, components ordered (H, V).
//
// Control: |0_z> = |V>, |1_z> = |H>; X basis (|V> +/- |H>)/sqrt(2).
// Target:  |0_z> = (|V>+|H>)/sqrt(2), |1_z> = (|V>-|H>)/sqrt(2);
//          |0_x> = |V>, |1_x> = |H>.
namespace encoding {

Eigen::Vector2cd control_state(Basis basis, int bit);
Eigen::Vector2cd target_state(Basis basis, int bit);

// Columns are the logical Z states expressed in (H, V) components.
Eigen::Matrix2cd control_logical_to_pol();
Eigen::Matrix2cd target_logical_to_pol();

// Logical-frame coordinates (ZZ frame) of the basis states; for Basis::ZZ
// these are the computational unit vectors.
Eigen::Vector2cd control_logical_coords(Basis basis, int bit);
Eigen::Vector2cd target_logical_coords(Basis basis, int bit);

}  // namespace encoding

// The ideal two-qubit CNOT unitary in the logical ZZ ordering
// (00, 01, 10, 11), control bit first.
Eigen::Matrix4cd cnot_unitary();

// Pre-scales the V amplitude by 1/sqrt(3) without renormalizing; emulates the
// balancing PPBS-B at state preparation. Input must be normalized.
Eigen::Vector2cd compensate_input(const Eigen::Vector2cd& amps);

// Post-selected two-qubit quantum operation: trace-normalized Choi matrix in
// the logical basis (blocks C[4m..4m+3, 4n..4n+3] = E(|m><n|)) plus the
// average success probability tr(C_unnormalized)/4.
struct ConditionalProcess {
    Eigen::MatrixXcd choi;  // 16x16, Hermitian PSD, trace 1
    double avg_success = 0.0;
    double lambda = 1.0;

    void validate() const;
};

struct TwoQubitState {
    Eigen::Matrix4cd density;

    void validate() const;
};

struct GateOutput {
    fock::FockState state;  // coincidence-projected, sub-normalized
    double success = 0.0;   // coincidence probability
};

// Runs one fully indistinguishable photon pair through the circuit and
// post-selects on a coincidence between the control and target arms.
// Inputs are logical polarization amplitudes (H, V); compensation is applied
// when the circuit requests it.
GateOutput run_gate(const optics::CircuitSpec& circuit, const Eigen::Vector2cd& control,
                    const Eigen::Vector2cd& target);

// The post-selected operator in the logical ZZ basis: column m holds the
// logical amplitudes of the coincidence output for basis input m. The control
// qubit is read from the target input arm and vice versa: the interaction
// reflects both post-selected photons into the opposite arms (the surviving
// both-transmitted path interferes on top of that), so output ports are
// labeled crosswise.
Eigen::Matrix4cd logical_output_operator(const optics::CircuitSpec& circuit);

// Same operator rescaled to unit largest singular value and rotated so its
// largest-magnitude entry is real positive; use for comparisons against ideal
// unitaries where global phase and the post-selection amplitude are
// irrelevant.
Eigen::Matrix4cd normalized_postselected_operator(const optics::CircuitSpec& circuit);

// Unnormalized conditional output density matrix (logical ZZ frame) for a
// product input, mixing the indistinguishable path (weight lambda) with the
// fully tagged path (weight 1-lambda). trace = coincidence probability.
struct ConditionalOutput {
    Eigen::Matrix4cd density;
    double success = 0.0;
};
ConditionalOutput conditional_output(const optics::CircuitSpec& circuit,
                                     const Eigen::Vector2cd& control,
                                     const Eigen::Vector2cd& target, double lambda);

// Full conditional process: Choi matrix of
//   lambda * (indistinguishable map) + (1-lambda) * (distinct-tag map),
// trace-normalized, with avg_success = trace/4 of the unnormalized Choi.
ConditionalProcess conditional_process(const optics::CircuitSpec& circuit, double lambda);

// Input -> output probabilities in the declared basis, each row conditioned on
// that input's coincidence probability. Throws numeric_error naming the input
// state if some row has zero coincidence probability.
TruthTable truth_table(const optics::CircuitSpec& circuit, Basis basis, double lambda);

// Overlap of the process with the ideal CNOT: <Phi|choi|Phi>/4 where
// |Phi> = sum_m |m> (x) CNOT|m>. Equals the 00,00 element of the process
// matrix in the syndrome-unitary basis.
double process_fidelity_exact(const ConditionalProcess& process);

// Ratio of the largest to the smallest coincidence probability over the eight
// complementary-basis product inputs; 1 means input-independent success and
// exact consistency between row-normalized tables and the trace-normalized
// Choi.
double success_ratio(const optics::CircuitSpec& circuit, double lambda);

// Standard two-qubit concurrence (spin-flip eigenvalue formula).
double concurrence(const TwoQubitState& state);

// Applies the trace-normalized Choi to an input density matrix; output is
// unnormalized (its trace is the input's success probability relative to the
// average).
Eigen::Matrix4cd apply_choi(const Eigen::MatrixXcd& choi, const Eigen::Matrix4cd& rho_in);

// Largest output concurrence over the 16 product inputs drawn from the Z and
// X bases of each qubit.
double entanglement_capability_sim(const ConditionalProcess& process);

// Same scan, also reporting which product input realized the maximum.
struct CapabilityWitness {
    double concurrence = 0.0;
    std::string control_state;  // "0z", "1z", "0x", "1x"
    std::string target_state;
};
CapabilityWitness entanglement_capability_witness(const ConditionalProcess& process);

}  // namespace ppbs::gate
