#include "ppbs/certify.hpp"

#include <cmath>

namespace ppbs::certify {

using fock::complex;

Syndrome syndrome_of(int output, int expected) {
    int diff = (output ^ expected) & 3;
    switch (diff) {
        case 0: return Syndrome::None;
        case 2: return Syndrome::Control;  // control bit is the high bit
        case 1: return Syndrome::Target;
        default: return Syndrome::Both;
    }
}

std::array<int, 4> expected_permutation(Basis basis) {
    if (basis == Basis::ZZ) return {0, 1, 3, 2};
    return {0, 3, 2, 1};
}

double classical_fidelity(const TruthTable& table) {
    table.validate(1e-6);
    auto perm = expected_permutation(table.basis);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += table.probs(i, perm[static_cast<std::size_t>(i)]);
    return sum / 4.0;
}

std::pair<double, double> process_bounds(double f_zz, double f_xx) {
    if (!(f_zz >= 0.0 && f_zz <= 1.0 && f_xx >= 0.0 && f_xx <= 1.0)) {
        throw validation_error("classical fidelities must lie in [0,1]");
    }
    double lower = std::max(0.0, f_zz + f_xx - 1.0);
    double upper = std::min(f_zz, f_xx);
    return {lower, upper};
}

double concurrence_bound(double f_lower) {
    if (!(f_lower >= 0.0 && f_lower <= 1.0)) {
        throw validation_error("fidelity bound must lie in [0,1]");
    }
    return std::max(0.0, 2.0 * f_lower - 1.0);
}

void SyndromeMarginals::validate(double tol) const {
    for (const auto* v : {&zz, &xx}) {
        double sum = 0.0;
        for (int i = 0; i < 4; ++i) {
            if ((*v)(i) < -1e-12) throw validation_error("negative syndrome marginal");
            sum += (*v)(i);
        }
        if (std::abs(sum - 1.0) > tol) {
            throw validation_error("syndrome marginals do not sum to 1");
        }
    }
}

SyndromeMarginals syndrome_marginals(const TruthTable& zz, const TruthTable& xx) {
    if (zz.basis != Basis::ZZ || xx.basis != Basis::XX) {
        throw validation_error("syndrome_marginals expects a ZZ table and an XX table");
    }
    SyndromeMarginals m;
    for (const auto& [table, vec] : {std::pair{&zz, &m.zz}, std::pair{&xx, &m.xx}}) {
        table->validate(1e-6);
        auto perm = expected_permutation(table->basis);
        Eigen::Vector4d sums = Eigen::Vector4d::Zero();
        for (int i = 0; i < 4; ++i) {
            for (int o = 0; o < 4; ++o) {
                int s = static_cast<int>(syndrome_of(o, perm[static_cast<std::size_t>(i)]));
                sums(s) += table->probs(i, o);
            }
        }
        // Summing before the division keeps the 0-syndrome component equal to
        // classical_fidelity bit for bit.
        *vec = sums / 4.0;
    }
    return m;
}

ChiDiagonal extremal_chi(const SyndromeMarginals& marginals, ExtremalMode mode) {
    marginals.validate();
    const Eigen::Vector4d& p = marginals.zz;
    const Eigen::Vector4d& q = marginals.xx;
    ChiDiagonal chi;

    if (mode == ExtremalMode::Best) {
        double chi00 = std::min(p(0), q(0));
        chi.values(0, 0) = chi00;
        Eigen::Vector4d pr = p, qr = q;
        pr(0) -= chi00;
        qr(0) -= chi00;
        double residual = pr.sum();
        if (residual > 1e-15) {
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    if (i == 0 && j == 0) continue;
                    chi.values(i, j) = pr(i) * qr(j) / residual;
                }
            }
        }
        return chi;
    }

    // Worst case: pin chi_00 at the lower Frechet bound, then run a row-major
    // greedy fill over the remaining supplies/demands.
    double chi00 = std::max(0.0, p(0) + q(0) - 1.0);
    chi.values(0, 0) = chi00;
    Eigen::Vector4d supply = p, demand = q;
    supply(0) -= chi00;
    demand(0) -= chi00;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == 0 && j == 0) continue;
            double give = std::min(supply(i), demand(j));
            if (give <= 0.0) continue;
            chi.values(i, j) = give;
            supply(i) -= give;
            demand(j) -= give;
        }
    }
    return chi;
}

namespace {

Eigen::Matrix4cd kron2x2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return k;
}

Eigen::Matrix2cd pauli_i() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

// vec(U) with component (4*m + o) = U(o, m); matches the Choi block layout.
Eigen::VectorXcd vec_operator(const Eigen::Matrix4cd& u) {
    Eigen::VectorXcd v(16);
    for (int m = 0; m < 4; ++m) {
        for (int o = 0; o < 4; ++o) v(4 * m + o) = u(o, m);
    }
    return v;
}

}  // namespace

std::array<SyndromeUnitary, 16> syndrome_unitaries() {
    const std::array<Eigen::Matrix4cd, 4> bit_flips = {
        kron2x2(pauli_i(), pauli_i()),
        kron2x2(pauli_x(), pauli_i()),
        kron2x2(pauli_i(), pauli_x()),
        kron2x2(pauli_x(), pauli_x()),
    };
    const std::array<Eigen::Matrix4cd, 4> phase_flips = {
        kron2x2(pauli_i(), pauli_i()),
        kron2x2(pauli_z(), pauli_i()),
        kron2x2(pauli_i(), pauli_z()),
        kron2x2(pauli_z(), pauli_z()),
    };

    std::array<SyndromeUnitary, 16> basis;
    Eigen::Matrix4cd cnot = gate::cnot_unitary();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            auto& u = basis[static_cast<std::size_t>(4 * a + b)];
            u.zz = static_cast<Syndrome>(a);
            u.xx = static_cast<Syndrome>(b);
            u.matrix = bit_flips[static_cast<std::size_t>(a)] *
                       phase_flips[static_cast<std::size_t>(b)] * cnot;
        }
    }
    return basis;
}

Eigen::MatrixXcd chi_from_choi(const Eigen::MatrixXcd& choi) {
    if (choi.rows() != 16 || choi.cols() != 16) throw validation_error("Choi matrix must be 16x16");
    auto unitaries = syndrome_unitaries();
    Eigen::MatrixXcd basis(16, 16);
    for (std::size_t i = 0; i < unitaries.size(); ++i) {
        basis.col(static_cast<Eigen::Index>(i)) = vec_operator(unitaries[i].matrix) / 2.0;
    }
    return basis.adjoint() * choi * basis;
}

Eigen::Matrix4cd apply_operator_sum(const Eigen::MatrixXcd& chi, const Eigen::Matrix4cd& rho_in) {
    if (chi.rows() != 16 || chi.cols() != 16) throw validation_error("chi matrix must be 16x16");
    if ((chi - chi.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw numeric_error("chi matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(chi);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw numeric_error("chi matrix is not positive semidefinite");
    }
    if (std::abs(chi.trace().real() - 1.0) > 1e-8) {
        throw numeric_error("chi diagonal does not sum to 1: the induced map does not preserve "
                            "the average trace");
    }

    auto unitaries = syndrome_unitaries();
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 16; ++i) {
        Eigen::Matrix4cd left = unitaries[static_cast<std::size_t>(i)].matrix * rho_in;
        for (int j = 0; j < 16; ++j) {
            if (std::abs(chi(i, j)) < 1e-16) continue;
            out += chi(i, j) * left * unitaries[static_cast<std::size_t>(j)].matrix.adjoint();
        }
    }
    return out;
}

gate::TwoQubitState apply_operator_sum(const Eigen::MatrixXcd& chi,
                                       const gate::TwoQubitState& rho_in) {
    rho_in.validate();
    Eigen::Matrix4cd out = apply_operator_sum(chi, rho_in.density);
    out = ((out + out.adjoint()) / 2.0).eval();
    return gate::TwoQubitState{out};
}

}  // namespace ppbs::certify
