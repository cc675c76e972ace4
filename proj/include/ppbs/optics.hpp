#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ppbs/fock.hpp"

namespace ppbs::optics {

enum class ElementKind { PPBS, HWP, QWP, PBS, PHASE };

std::string kind_name(ElementKind kind);
ElementKind kind_from_name(const std::string& name);

// One optical element bound to one arm (wave plates, phase) or two arms
// (beam splitters). Beam splitters act per polarization with amplitudes
// t_p = sqrt(T_p), r_p = sqrt(1 - T_p) in the convention
//   a'_1 = t a_1 + r a_2,  a'_2 = -r a_1 + t a_2.
struct ElementSpec {
    ElementKind kind = ElementKind::PPBS;
    double t_h = 1.0;      // PPBS/PBS transmittance for H
    double t_v = 1.0;      // PPBS/PBS transmittance for V
    double theta = 0.0;    // HWP/QWP axis angle, radians
    double phase_h = 0.0;  // PHASE element
    double phase_v = 0.0;
    std::vector<std::string> arms;

    static ElementSpec ppbs(double t_h, double t_v, std::string arm1, std::string arm2);
    static ElementSpec pbs(std::string arm1, std::string arm2);
    static ElementSpec hwp(double theta, std::string arm);
    static ElementSpec qwp(double theta, std::string arm);
    static ElementSpec phase(double phase_h, double phase_v, std::string arm);

    void validate() const;
    // Modes the element acts on, tag 0, in the order matching element_transform.
    std::vector<fock::ModeLabel> bound_modes() const;
};

// Per-element deterministic offsets plus the photon indistinguishability
// used by the gate module's process computation.
struct ElementOffset {
    double d_t_h = 0.0;
    double d_t_v = 0.0;
    double d_theta = 0.0;
};

struct NoiseParams {
    double lambda = 1.0;
    std::vector<ElementOffset> offsets;  // aligned with CircuitSpec::elements; may be shorter

    void validate() const;
};

struct CircuitSpec {
    std::vector<std::string> arms;       // spatial arms, e.g. {"c", "t", "c-dump", "t-dump"}
    std::vector<ElementSpec> elements;   // evaluation order
    NoiseParams noise;
    bool compensate_inputs = false;      // gate pre-scales V amplitudes by 1/sqrt(3)
    bool clamp_warning = false;          // set by perturb when an offset was clamped

    // Registry over all (arm, polarization, tag) modes.
    fock::ModeRegistry registry(int num_tags = 1) const;
    void validate() const;
};

// Unitary of a single element over its bound modes (order: bound_modes()).
Eigen::MatrixXcd element_transform(const ElementSpec& spec);

// Ordered product of all element transforms embedded into the registry's full
// mode space. Elements act identically on every distinguishability tag.
Eigen::MatrixXcd compose_circuit(const CircuitSpec& circuit, const fock::ModeRegistry& registry);
Eigen::MatrixXcd compose_circuit(const CircuitSpec& circuit);

enum class CnotVariant { FullPpbs, CompensatedInput };

// PPBS transmittances realizing the two-photon phase flip and the input
// amplitude balancing.
inline constexpr double kPpbsATransmitH = 2.0 / 3.0;
inline constexpr double kPpbsATransmitV = 0.0;
inline constexpr double kPpbsBTransmitH = 1.0;
inline constexpr double kPpbsBTransmitV = 1.0 / 3.0;

inline const std::string kControlArm = "c";
inline const std::string kTargetArm = "t";
inline const std::string kControlDumpArm = "c-dump";
inline const std::string kTargetDumpArm = "t-dump";

// The post-selected CNOT circuit. FullPpbs places a balancing PPBS-B on each
// input arm (with a vacuum-coupled dump port); CompensatedInput keeps only the
// central PPBS-A and asks the gate module to pre-attenuate V amplitudes.
CircuitSpec build_compact_cnot(CnotVariant variant);

// Applies noise offsets to element parameters, clamping transmittances to
// [0,1] (clamp_warning records whether clamping occurred). lambda is carried
// on the returned circuit for the gate module.
CircuitSpec perturb(const CircuitSpec& circuit, const NoiseParams& noise);

// JSON document form of a circuit; schema documented in docs/schemas.md.
std::string circuit_to_json(const CircuitSpec& circuit);
CircuitSpec circuit_from_json(const std::string& document);

}  // namespace ppbs::optics
