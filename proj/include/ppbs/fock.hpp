#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ppbs/errors.hpp"

namespace ppbs::fock {

using complex = std::complex<double>;

// Amplitudes below this magnitude are dropped when states are normalized.
inline constexpr double kPruneTol = 1e-12;
// Unitarity tolerance for mode transforms.
inline constexpr double kUnitaryTol = 1e-10;

enum class Polarization : std::uint8_t { H = 0, V = 1 };

inline char polarization_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

// One optical mode: a spatial arm, a polarization, and a distinguishability
// tag. Photons carrying different tags never interfere; tag 0 is the default
// for fully indistinguishable photons.
struct ModeLabel {
    std::string spatial;
    Polarization pol = Polarization::H;
    int tag = 0;

    auto operator<=>(const ModeLabel&) const = default;
    std::string str() const;
};

// Fixed, ordered list of modes. Ordering is lexicographic in
// (spatial, polarization, tag) so that states serialize deterministically.
class ModeRegistry {
public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<ModeLabel> modes);

    // All (arm, polarization, tag) combinations for the given arms and tags.
    static ModeRegistry for_arms(const std::vector<std::string>& arms, int num_tags = 1);

    std::size_t size() const { return modes_.size(); }
    const std::vector<ModeLabel>& labels() const { return modes_; }
    const ModeLabel& label(std::size_t i) const { return modes_[i]; }

    bool contains(const ModeLabel& m) const;
    bool contains_arm(const std::string& spatial) const;
    std::size_t index_of(const ModeLabel& m) const;  // throws validation_error if unknown

    bool operator==(const ModeRegistry&) const = default;

private:
    std::vector<ModeLabel> modes_;
};

// Photon counts per registry mode, in registry order.
using OccupationVector = std::vector<std::uint8_t>;

// A superposition of two-photon occupation states with complex amplitudes.
// Sub-normalized states are legal; they arise from coincidence post-selection.
class FockState {
public:
    explicit FockState(ModeRegistry registry) : registry_(std::move(registry)) {}

    const ModeRegistry& registry() const { return registry_; }
    const std::map<OccupationVector, complex>& terms() const { return terms_; }

    // Accumulates amplitude onto an occupation vector.
    void add_term(const OccupationVector& occ, complex amp);

    complex amplitude(const OccupationVector& occ) const;
    double norm_sq() const;
    int photon_number() const;  // -1 for the zero state

    // Drops terms with |amplitude| < tol.
    void prune(double tol = kPruneTol);

private:
    ModeRegistry registry_;
    std::map<OccupationVector, complex> terms_;
};

struct PhotonSpec {
    std::string arm;
    complex amp_h;
    complex amp_v;
    int tag = 0;
};

// Two photons (c_H a^+_H + c_V a^+_V) on each of two distinct arms applied to
// vacuum. Sub-normalized single-photon amplitudes are accepted; they model
// pre-attenuated (compensated) inputs.
FockState make_two_photon_state(const ModeRegistry& registry, const PhotonSpec& photon1,
                                const PhotonSpec& photon2);

// Replaces every creation operator a^+_k on the listed modes by
// sum_j U(j,k) a^+_j and re-expands into occupation vectors with bosonic
// factors. Modes not listed are untouched. U must be unitary within 1e-10.
FockState apply_mode_transform(const FockState& state, const Eigen::MatrixXcd& u,
                               const std::vector<ModeLabel>& modes);

// Keeps only the terms with exactly one photon (any polarization, any tag) in
// each of the two arms. The squared norm of the result is the coincidence
// probability.
FockState coincidence_project(const FockState& state, const std::string& arm_a,
                              const std::string& arm_b);

// Conjugate-linear in the first argument.
complex inner_product(const FockState& a, const FockState& b);

}  // namespace ppbs::fock
