#include "ppbs/fock.hpp"

#include <algorithm>
#include <cmath>

namespace ppbs::fock {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

std::string ModeLabel::str() const {
    return spatial + ":" + polarization_char(pol) + (tag != 0 ? "#" + std::to_string(tag) : "");
}

ModeRegistry::ModeRegistry(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
    std::sort(modes_.begin(), modes_.end());
    for (std::size_t i = 1; i < modes_.size(); ++i) {
        if (modes_[i] == modes_[i - 1]) {
            throw validation_error("duplicate mode label in registry: " + modes_[i].str());
        }
    }
}

ModeRegistry ModeRegistry::for_arms(const std::vector<std::string>& arms, int num_tags) {
    if (num_tags < 1) throw validation_error("registry needs at least one tag");
    std::vector<ModeLabel> modes;
    modes.reserve(arms.size() * 2 * static_cast<std::size_t>(num_tags));
    for (const auto& arm : arms) {
        for (auto pol : {Polarization::H, Polarization::V}) {
            for (int tag = 0; tag < num_tags; ++tag) {
                modes.push_back({arm, pol, tag});
            }
        }
    }
    return ModeRegistry(std::move(modes));
}

bool ModeRegistry::contains(const ModeLabel& m) const {
    return std::binary_search(modes_.begin(), modes_.end(), m);
}

bool ModeRegistry::contains_arm(const std::string& spatial) const {
    return std::any_of(modes_.begin(), modes_.end(),
                       [&](const ModeLabel& m) { return m.spatial == spatial; });
}

std::size_t ModeRegistry::index_of(const ModeLabel& m) const {
    auto it = std::lower_bound(modes_.begin(), modes_.end(), m);
    if (it == modes_.end() || *it != m) {
        throw validation_error("unknown mode label: " + m.str());
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

void FockState::add_term(const OccupationVector& occ, complex amp) {
    if (occ.size() != registry_.size()) {
        throw validation_error("occupation vector length does not match registry");
    }
    terms_[occ] += amp;
}

complex FockState::amplitude(const OccupationVector& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? complex{0.0, 0.0} : it->second;
}

double FockState::norm_sq() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms_) s += std::norm(amp);
    return s;
}

int FockState::photon_number() const {
    if (terms_.empty()) return -1;
    int n = 0;
    for (auto c : terms_.begin()->first) n += c;
    return n;
}

void FockState::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < tol) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

FockState make_two_photon_state(const ModeRegistry& registry, const PhotonSpec& photon1,
                                const PhotonSpec& photon2) {
    if (photon1.arm == photon2.arm) {
        throw validation_error("identical spatial labels: one photon per input arm");
    }
    for (const auto* p : {&photon1, &photon2}) {
        double w = std::norm(p->amp_h) + std::norm(p->amp_v);
        if (w > 1.0 + 1e-12) {
            throw validation_error("photon amplitudes exceed unit weight on arm " + p->arm);
        }
        if (!registry.contains_arm(p->arm)) {
            throw validation_error("unknown spatial label: " + p->arm);
        }
    }

    FockState state(registry);
    const std::pair<Polarization, complex> comps1[] = {{Polarization::H, photon1.amp_h},
                                                       {Polarization::V, photon1.amp_v}};
    const std::pair<Polarization, complex> comps2[] = {{Polarization::H, photon2.amp_h},
                                                       {Polarization::V, photon2.amp_v}};
    for (const auto& [p1, a1] : comps1) {
        for (const auto& [p2, a2] : comps2) {
            complex amp = a1 * a2;
            if (amp == complex{0.0, 0.0}) continue;
            OccupationVector occ(registry.size(), 0);
            occ[registry.index_of({photon1.arm, p1, photon1.tag})] += 1;
            occ[registry.index_of({photon2.arm, p2, photon2.tag})] += 1;
            state.add_term(occ, amp);
        }
    }
    state.prune();
    return state;
}

FockState apply_mode_transform(const FockState& state, const Eigen::MatrixXcd& u,
                               const std::vector<ModeLabel>& modes) {
    const auto& registry = state.registry();
    const auto n = static_cast<Eigen::Index>(modes.size());
    if (u.rows() != n || u.cols() != n) {
        throw validation_error("transform size does not match mode subset");
    }
    double udev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (udev > kUnitaryTol) {
        throw numeric_error("mode transform is not unitary (deviation " + std::to_string(udev) +
                            ")");
    }

    // Image of each registry mode under the substitution a^+_k -> sum_j U(j,k) a^+_j.
    std::vector<std::vector<std::pair<std::size_t, complex>>> img(registry.size());
    for (std::size_t k = 0; k < registry.size(); ++k) img[k] = {{k, complex{1.0, 0.0}}};
    std::vector<std::size_t> subset(modes.size());
    for (std::size_t col = 0; col < modes.size(); ++col) {
        subset[col] = registry.index_of(modes[col]);
    }
    for (std::size_t col = 0; col < modes.size(); ++col) {
        std::vector<std::pair<std::size_t, complex>> column;
        for (std::size_t row = 0; row < modes.size(); ++row) {
            complex v = u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
            if (std::abs(v) > 0.0) column.emplace_back(subset[row], v);
        }
        img[subset[col]] = std::move(column);
    }

    // Two-photon monomial expansion: occupation -> creation-operator pair.
    std::map<std::pair<std::size_t, std::size_t>, complex> monomials;
    for (const auto& [occ, amp] : state.terms()) {
        std::size_t first = registry.size(), second = registry.size();
        for (std::size_t k = 0; k < occ.size(); ++k) {
            for (int c = 0; c < occ[k]; ++c) {
                (first == registry.size() ? first : second) = k;
            }
        }
        if (second == registry.size()) {
            throw validation_error("apply_mode_transform expects two-photon states");
        }
        complex coeff = (first == second) ? amp / kSqrt2 : amp;
        for (const auto& [p, alpha] : img[first]) {
            for (const auto& [q, beta] : img[second]) {
                monomials[std::minmax(p, q)] += coeff * alpha * beta;
            }
        }
    }

    FockState out(registry);
    for (const auto& [pq, coeff] : monomials) {
        OccupationVector occ(registry.size(), 0);
        occ[pq.first] += 1;
        occ[pq.second] += 1;
        out.add_term(occ, pq.first == pq.second ? coeff * kSqrt2 : coeff);
    }
    out.prune();
    return out;
}

FockState coincidence_project(const FockState& state, const std::string& arm_a,
                              const std::string& arm_b) {
    if (arm_a == arm_b) throw validation_error("coincidence arms must differ");
    const auto& registry = state.registry();
    if (!registry.contains_arm(arm_a)) throw validation_error("unknown spatial label: " + arm_a);
    if (!registry.contains_arm(arm_b)) throw validation_error("unknown spatial label: " + arm_b);

    FockState out(registry);
    for (const auto& [occ, amp] : state.terms()) {
        int in_a = 0, in_b = 0;
        for (std::size_t k = 0; k < occ.size(); ++k) {
            if (occ[k] == 0) continue;
            if (registry.label(k).spatial == arm_a) in_a += occ[k];
            if (registry.label(k).spatial == arm_b) in_b += occ[k];
        }
        if (in_a == 1 && in_b == 1) out.add_term(occ, amp);
    }
    return out;
}

complex inner_product(const FockState& a, const FockState& b) {
    if (!(a.registry() == b.registry())) {
        throw validation_error("inner product requires matching registries");
    }
    complex s{0.0, 0.0};
    for (const auto& [occ, amp] : a.terms()) {
        s += std::conj(amp) * b.amplitude(occ);
    }
    return s;
}

}  // namespace ppbs::fock
