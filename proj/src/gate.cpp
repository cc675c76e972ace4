#include "ppbs/gate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ppbs::gate {

using fock::FockState;
using fock::ModeRegistry;
using fock::OccupationVector;
using fock::Polarization;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

// Output ports are labeled crosswise: coincidence photons reaching the target
// input arm carry the control qubit and vice versa.
const std::string& control_out_arm() { return optics::kTargetArm; }
const std::string& target_out_arm() { return optics::kControlArm; }

Eigen::Vector4cd kron2(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
    Eigen::Vector4cd v;
    v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return v;
}

}  // namespace

namespace encoding {

Eigen::Vector2cd control_state(Basis basis, int bit) {
    if (basis == Basis::ZZ) {
        return bit == 0 ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
    }
    return bit == 0 ? Eigen::Vector2cd(kInvSqrt2, kInvSqrt2)
                    : Eigen::Vector2cd(-kInvSqrt2, kInvSqrt2);
}

Eigen::Vector2cd target_state(Basis basis, int bit) {
    if (basis == Basis::ZZ) {
        return bit == 0 ? Eigen::Vector2cd(kInvSqrt2, kInvSqrt2)
                        : Eigen::Vector2cd(-kInvSqrt2, kInvSqrt2);
    }
    return bit == 0 ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0);
}

Eigen::Matrix2cd control_logical_to_pol() {
    Eigen::Matrix2cd m;
    m.col(0) = control_state(Basis::ZZ, 0);
    m.col(1) = control_state(Basis::ZZ, 1);
    return m;
}

Eigen::Matrix2cd target_logical_to_pol() {
    Eigen::Matrix2cd m;
    m.col(0) = target_state(Basis::ZZ, 0);
    m.col(1) = target_state(Basis::ZZ, 1);
    return m;
}

Eigen::Vector2cd control_logical_coords(Basis basis, int bit) {
    if (basis == Basis::ZZ) {
        return bit == 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    }
    return bit == 0 ? Eigen::Vector2cd(kInvSqrt2, kInvSqrt2)
                    : Eigen::Vector2cd(kInvSqrt2, -kInvSqrt2);
}

Eigen::Vector2cd target_logical_coords(Basis basis, int bit) {
    // Same Hadamard relation as the control qubit.
    return control_logical_coords(basis, bit);
}

}  // namespace encoding

Eigen::Matrix4cd cnot_unitary() {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = 1.0;
    u(2, 3) = 1.0;
    u(3, 2) = 1.0;
    return u;
}

Eigen::Vector2cd compensate_input(const Eigen::Vector2cd& amps) {
    double w = std::norm(amps(0)) + std::norm(amps(1));
    if (std::abs(w - 1.0) > 1e-10) {
        throw validation_error("compensate_input expects a normalized polarization state");
    }
    return {amps(0), amps(1) * kInvSqrt3};
}

void ConditionalProcess::validate() const {
    if (choi.rows() != 16 || choi.cols() != 16) throw validation_error("Choi matrix must be 16x16");
    if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw numeric_error("Choi matrix is not Hermitian");
    }
    if (std::abs(choi.trace().real() - 1.0) > 1e-10) {
        throw numeric_error("Choi matrix is not trace-normalized");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw numeric_error("Choi matrix is not positive semidefinite");
    }
    if (!(avg_success > 0.0 && avg_success <= 1.0)) {
        throw numeric_error("average success probability out of (0,1]");
    }
}

void TwoQubitState::validate() const {
    if ((density - density.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw numeric_error("density matrix is not Hermitian");
    }
    if (std::abs(density.trace().real() - 1.0) > 1e-10) {
        throw numeric_error("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(density);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw numeric_error("density matrix has a negative eigenvalue");
    }
}

namespace {

// Circuit unitaries and registries for the untagged and tagged runs, built
// once per public entry point.
struct RunContext {
    const optics::CircuitSpec* circuit;
    ModeRegistry reg_plain;
    Eigen::MatrixXcd u_plain;
    ModeRegistry reg_tagged;
    Eigen::MatrixXcd u_tagged;
    bool tagged_ready = false;

    explicit RunContext(const optics::CircuitSpec& c, bool need_tagged) : circuit(&c) {
        c.validate();
        reg_plain = c.registry(1);
        u_plain = optics::compose_circuit(c, reg_plain);
        if (need_tagged) {
            reg_tagged = c.registry(2);
            u_tagged = optics::compose_circuit(c, reg_tagged);
            tagged_ready = true;
        }
    }

    Eigen::Vector2cd prepare(const Eigen::Vector2cd& amps) const {
        return circuit->compensate_inputs ? compensate_input(amps) : amps;
    }

    FockState run_plain(const Eigen::Vector2cd& control, const Eigen::Vector2cd& target) const {
        Eigen::Vector2cd c = prepare(control), t = prepare(target);
        FockState psi = fock::make_two_photon_state(
            reg_plain, {optics::kControlArm, c(0), c(1), 0}, {optics::kTargetArm, t(0), t(1), 0});
        FockState out = fock::apply_mode_transform(psi, u_plain, reg_plain.labels());
        return fock::coincidence_project(out, optics::kControlArm, optics::kTargetArm);
    }

    FockState run_tagged(const Eigen::Vector2cd& control, const Eigen::Vector2cd& target) const {
        Eigen::Vector2cd c = prepare(control), t = prepare(target);
        FockState psi = fock::make_two_photon_state(
            reg_tagged, {optics::kControlArm, c(0), c(1), 0}, {optics::kTargetArm, t(0), t(1), 1});
        FockState out = fock::apply_mode_transform(psi, u_tagged, reg_tagged.labels());
        return fock::coincidence_project(out, optics::kControlArm, optics::kTargetArm);
    }
};

// Logical amplitudes of one tag sector of a coincidence state: the photon in
// the control output arm carries tag_c, the one in the target output arm
// carries tag_t.
Eigen::Vector4cd logical_sector(const FockState& state, int tag_c, int tag_t) {
    const ModeRegistry& reg = state.registry();
    const Eigen::Matrix2cd lc = encoding::control_logical_to_pol();
    const Eigen::Matrix2cd lt = encoding::target_logical_to_pol();

    Eigen::Matrix2cd pol_amps = Eigen::Matrix2cd::Zero();  // (control pol, target pol)
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            OccupationVector occ(reg.size(), 0);
            occ[reg.index_of({control_out_arm(), static_cast<Polarization>(p), tag_c})] += 1;
            occ[reg.index_of({target_out_arm(), static_cast<Polarization>(q), tag_t})] += 1;
            pol_amps(p, q) = state.amplitude(occ);
        }
    }

    Eigen::Vector4cd v;
    for (int oc = 0; oc < 2; ++oc) {
        for (int ot = 0; ot < 2; ++ot) {
            fock::complex sum{0.0, 0.0};
            for (int p = 0; p < 2; ++p) {
                for (int q = 0; q < 2; ++q) {
                    sum += std::conj(lc(p, oc) * lt(q, ot)) * pol_amps(p, q);
                }
            }
            v(2 * oc + ot) = sum;
        }
    }
    return v;
}

constexpr std::array<std::pair<int, int>, 4> kTagSectors = {
    {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

struct InputDecomposition {
    Eigen::Vector4cd coherent;                  // single-sector logical amplitudes
    std::array<Eigen::Vector4cd, 4> tagged;     // per tag sector
};

InputDecomposition decompose_input(const RunContext& ctx, const Eigen::Vector2cd& control,
                                   const Eigen::Vector2cd& target, bool need_tagged) {
    InputDecomposition d;
    d.coherent = logical_sector(ctx.run_plain(control, target), 0, 0);
    if (need_tagged) {
        FockState tagged = ctx.run_tagged(control, target);
        for (std::size_t s = 0; s < kTagSectors.size(); ++s) {
            d.tagged[s] = logical_sector(tagged, kTagSectors[s].first, kTagSectors[s].second);
        }
    } else {
        d.tagged.fill(Eigen::Vector4cd::Zero());
    }
    return d;
}

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw validation_error("lambda must lie in [0,1]");
    }
}

}  // namespace

GateOutput run_gate(const optics::CircuitSpec& circuit, const Eigen::Vector2cd& control,
                    const Eigen::Vector2cd& target) {
    RunContext ctx(circuit, false);
    FockState projected = ctx.run_plain(control, target);
    return {projected, projected.norm_sq()};
}

Eigen::Matrix4cd logical_output_operator(const optics::CircuitSpec& circuit) {
    RunContext ctx(circuit, false);
    Eigen::Matrix4cd m;
    for (int in = 0; in < 4; ++in) {
        Eigen::Vector2cd c = encoding::control_state(Basis::ZZ, in >> 1);
        Eigen::Vector2cd t = encoding::target_state(Basis::ZZ, in & 1);
        m.col(in) = logical_sector(ctx.run_plain(c, t), 0, 0);
    }
    return m;
}

Eigen::Matrix4cd normalized_postselected_operator(const optics::CircuitSpec& circuit) {
    Eigen::Matrix4cd m = logical_output_operator(circuit);
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(m);
    double sigma = svd.singularValues()(0);
    if (sigma < 1e-14) throw numeric_error("post-selected operator vanishes");
    m /= sigma;

    Eigen::Index row = 0, col = 0;
    m.cwiseAbs().maxCoeff(&row, &col);
    fock::complex phase = m(row, col) / std::abs(m(row, col));
    return m / phase;
}

ConditionalOutput conditional_output(const optics::CircuitSpec& circuit,
                                     const Eigen::Vector2cd& control,
                                     const Eigen::Vector2cd& target, double lambda) {
    check_lambda(lambda);
    RunContext ctx(circuit, lambda < 1.0);
    InputDecomposition d = decompose_input(ctx, control, target, lambda < 1.0);

    Eigen::Matrix4cd rho = lambda * (d.coherent * d.coherent.adjoint());
    if (lambda < 1.0) {
        for (const auto& w : d.tagged) rho += (1.0 - lambda) * (w * w.adjoint());
    }
    return {rho, rho.trace().real()};
}

ConditionalProcess conditional_process(const optics::CircuitSpec& circuit, double lambda) {
    check_lambda(lambda);
    RunContext ctx(circuit, lambda < 1.0);

    std::array<InputDecomposition, 4> inputs;
    for (int m = 0; m < 4; ++m) {
        Eigen::Vector2cd c = encoding::control_state(Basis::ZZ, m >> 1);
        Eigen::Vector2cd t = encoding::target_state(Basis::ZZ, m & 1);
        inputs[static_cast<std::size_t>(m)] = decompose_input(ctx, c, t, lambda < 1.0);
    }

    Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(16, 16);
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            const auto& dm = inputs[static_cast<std::size_t>(m)];
            const auto& dn = inputs[static_cast<std::size_t>(n)];
            Eigen::Matrix4cd block = lambda * (dm.coherent * dn.coherent.adjoint());
            if (lambda < 1.0) {
                for (std::size_t s = 0; s < kTagSectors.size(); ++s) {
                    block += (1.0 - lambda) * (dm.tagged[s] * dn.tagged[s].adjoint());
                }
            }
            choi.block<4, 4>(4 * m, 4 * n) = block;
        }
    }

    double trace = choi.trace().real();
    if (trace < 1e-15) {
        throw numeric_error("degenerate circuit: zero coincidence probability on every input");
    }
    ConditionalProcess process;
    process.choi = choi / trace;
    process.avg_success = trace / 4.0;
    process.lambda = lambda;
    return process;
}

TruthTable truth_table(const optics::CircuitSpec& circuit, Basis basis, double lambda) {
    check_lambda(lambda);
    RunContext ctx(circuit, lambda < 1.0);

    TruthTable table;
    table.basis = basis;
    for (int in = 0; in < 4; ++in) {
        Eigen::Vector2cd c = encoding::control_state(basis, in >> 1);
        Eigen::Vector2cd t = encoding::target_state(basis, in & 1);
        InputDecomposition d = decompose_input(ctx, c, t, lambda < 1.0);
        Eigen::Matrix4cd rho = lambda * (d.coherent * d.coherent.adjoint());
        if (lambda < 1.0) {
            for (const auto& w : d.tagged) rho += (1.0 - lambda) * (w * w.adjoint());
        }

        Eigen::Vector4d row;
        for (int out = 0; out < 4; ++out) {
            Eigen::Vector4cd proj = kron2(encoding::control_logical_coords(basis, out >> 1),
                                          encoding::target_logical_coords(basis, out & 1));
            row(out) = std::max(0.0, (proj.adjoint() * rho * proj).value().real());
        }
        double total = row.sum();
        if (total < 1e-15) {
            throw numeric_error("zero coincidence probability for input state |" +
                                basis_labels(basis)[static_cast<std::size_t>(in)] + ">");
        }
        table.probs.row(in) = row.transpose() / total;
    }
    return table;
}

double process_fidelity_exact(const ConditionalProcess& process) {
    Eigen::Matrix4cd u = cnot_unitary();
    Eigen::VectorXcd phi(16);
    for (int m = 0; m < 4; ++m) {
        for (int o = 0; o < 4; ++o) phi(4 * m + o) = u(o, m);
    }
    return (phi.adjoint() * process.choi * phi).value().real() / 4.0;
}

double success_ratio(const optics::CircuitSpec& circuit, double lambda) {
    check_lambda(lambda);
    RunContext ctx(circuit, lambda < 1.0);
    double lo = 1.0, hi = 0.0;
    bool first = true;
    for (Basis basis : {Basis::ZZ, Basis::XX}) {
        for (int in = 0; in < 4; ++in) {
            Eigen::Vector2cd c = encoding::control_state(basis, in >> 1);
            Eigen::Vector2cd t = encoding::target_state(basis, in & 1);
            InputDecomposition d = decompose_input(ctx, c, t, lambda < 1.0);
            double p = lambda * d.coherent.squaredNorm();
            if (lambda < 1.0) {
                for (const auto& w : d.tagged) p += (1.0 - lambda) * w.squaredNorm();
            }
            lo = first ? p : std::min(lo, p);
            hi = first ? p : std::max(hi, p);
            first = false;
        }
    }
    if (lo < 1e-15) throw numeric_error("zero coincidence probability for a basis input");
    return hi / lo;
}

double concurrence(const TwoQubitState& state) {
    state.validate();
    Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;

    Eigen::Matrix4cd flipped = yy.cast<fock::complex>() * state.density.conjugate() *
                               yy.cast<fock::complex>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(state.density * flipped);
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i) {
        roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

Eigen::Matrix4cd apply_choi(const Eigen::MatrixXcd& choi, const Eigen::Matrix4cd& rho_in) {
    if (choi.rows() != 16 || choi.cols() != 16) throw validation_error("Choi matrix must be 16x16");
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            out += rho_in(m, n) * choi.block<4, 4>(4 * m, 4 * n);
        }
    }
    // The trace-1 Choi spreads a trace-preserving map over 4 input blocks;
    // the factor restores unit output trace for uniform-success processes.
    return 4.0 * out;
}

CapabilityWitness entanglement_capability_witness(const ConditionalProcess& process) {
    static const std::array<Eigen::Vector2cd, 4> kScan = {
        Eigen::Vector2cd(1.0, 0.0),
        Eigen::Vector2cd(0.0, 1.0),
        Eigen::Vector2cd(kInvSqrt2, kInvSqrt2),
        Eigen::Vector2cd(kInvSqrt2, -kInvSqrt2),
    };
    static const std::array<std::string, 4> kScanNames = {"0z", "1z", "0x", "1x"};

    CapabilityWitness best;
    best.control_state = kScanNames[0];
    best.target_state = kScanNames[0];
    for (std::size_t a = 0; a < kScan.size(); ++a) {
        for (std::size_t b = 0; b < kScan.size(); ++b) {
            Eigen::Vector4cd in = kron2(kScan[a], kScan[b]);
            Eigen::Matrix4cd rho = apply_choi(process.choi, in * in.adjoint());
            double tr = rho.trace().real();
            if (tr < 1e-15) continue;
            rho /= tr;
            rho = ((rho + rho.adjoint()) / 2.0).eval();
            double c = concurrence(TwoQubitState{rho});
            if (c > best.concurrence) {
                best.concurrence = c;
                best.control_state = kScanNames[a];
                best.target_state = kScanNames[b];
            }
        }
    }
    return best;
}

double entanglement_capability_sim(const ConditionalProcess& process) {
    return entanglement_capability_witness(process).concurrence;
}

}  // namespace ppbs::gate
