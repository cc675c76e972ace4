#include "ppbs/optics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

namespace ppbs::optics {

using fock::complex;
using fock::ModeLabel;
using fock::ModeRegistry;
using fock::Polarization;
using json = nlohmann::ordered_json;

std::string kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::PPBS: return "PPBS";
        case ElementKind::HWP: return "HWP";
        case ElementKind::QWP: return "QWP";
        case ElementKind::PBS: return "PBS";
        case ElementKind::PHASE: return "PHASE";
    }
    throw validation_error("unknown element kind");
}

ElementKind kind_from_name(const std::string& name) {
    if (name == "PPBS") return ElementKind::PPBS;
    if (name == "HWP") return ElementKind::HWP;
    if (name == "QWP") return ElementKind::QWP;
    if (name == "PBS") return ElementKind::PBS;
    if (name == "PHASE") return ElementKind::PHASE;
    throw validation_error("unknown element kind: " + name);
}

ElementSpec ElementSpec::ppbs(double t_h, double t_v, std::string arm1, std::string arm2) {
    ElementSpec e;
    e.kind = ElementKind::PPBS;
    e.t_h = t_h;
    e.t_v = t_v;
    e.arms = {std::move(arm1), std::move(arm2)};
    e.validate();
    return e;
}

ElementSpec ElementSpec::pbs(std::string arm1, std::string arm2) {
    ElementSpec e = ppbs(1.0, 0.0, std::move(arm1), std::move(arm2));
    e.kind = ElementKind::PBS;
    return e;
}

ElementSpec ElementSpec::hwp(double theta, std::string arm) {
    ElementSpec e;
    e.kind = ElementKind::HWP;
    e.theta = theta;
    e.arms = {std::move(arm)};
    e.validate();
    return e;
}

ElementSpec ElementSpec::qwp(double theta, std::string arm) {
    ElementSpec e;
    e.kind = ElementKind::QWP;
    e.theta = theta;
    e.arms = {std::move(arm)};
    e.validate();
    return e;
}

ElementSpec ElementSpec::phase(double phase_h, double phase_v, std::string arm) {
    ElementSpec e;
    e.kind = ElementKind::PHASE;
    e.phase_h = phase_h;
    e.phase_v = phase_v;
    e.arms = {std::move(arm)};
    e.validate();
    return e;
}

void ElementSpec::validate() const {
    bool two_arm = kind == ElementKind::PPBS || kind == ElementKind::PBS;
    if (arms.size() != (two_arm ? 2u : 1u)) {
        throw validation_error(kind_name(kind) + " binds " + (two_arm ? "two arms" : "one arm"));
    }
    if (two_arm && arms[0] == arms[1]) {
        throw validation_error("beam splitter arms must differ");
    }
    if (two_arm) {
        if (t_h < 0.0 || t_h > 1.0 || t_v < 0.0 || t_v > 1.0) {
            throw validation_error("transmittance out of range [0,1]");
        }
    }
    if (!std::isfinite(theta) || !std::isfinite(phase_h) || !std::isfinite(phase_v)) {
        throw validation_error("element parameter is not finite");
    }
}

std::vector<ModeLabel> ElementSpec::bound_modes() const {
    std::vector<ModeLabel> modes;
    if (arms.size() == 2) {
        // Order (arm1 H, arm2 H, arm1 V, arm2 V): polarization blocks.
        modes = {{arms[0], Polarization::H, 0},
                 {arms[1], Polarization::H, 0},
                 {arms[0], Polarization::V, 0},
                 {arms[1], Polarization::V, 0}};
    } else {
        modes = {{arms[0], Polarization::H, 0}, {arms[0], Polarization::V, 0}};
    }
    return modes;
}

namespace {

Eigen::Matrix2d splitter_block(double transmittance) {
    double t = std::sqrt(transmittance);
    double r = std::sqrt(1.0 - transmittance);
    Eigen::Matrix2d b;
    b << t, r, -r, t;
    return b;
}

}  // namespace

Eigen::MatrixXcd element_transform(const ElementSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case ElementKind::PPBS:
        case ElementKind::PBS: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
            u.block<2, 2>(0, 0) = splitter_block(spec.t_h).cast<complex>();
            u.block<2, 2>(2, 2) = splitter_block(spec.t_v).cast<complex>();
            return u;
        }
        case ElementKind::HWP: {
            double c = std::cos(2.0 * spec.theta), s = std::sin(2.0 * spec.theta);
            Eigen::MatrixXcd u(2, 2);
            u << c, s, s, -c;
            return u;
        }
        case ElementKind::QWP: {
            // R(theta) diag(1, i) R(-theta); diag(1, i) at theta = 0.
            double c = std::cos(spec.theta), s = std::sin(spec.theta);
            Eigen::Matrix2cd rot;
            rot << c, -s, s, c;
            Eigen::Matrix2cd retard = Eigen::Matrix2cd::Zero();
            retard(0, 0) = complex{1.0, 0.0};
            retard(1, 1) = complex{0.0, 1.0};
            return rot * retard * rot.transpose();
        }
        case ElementKind::PHASE: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2, 2);
            u(0, 0) = std::polar(1.0, spec.phase_h);
            u(1, 1) = std::polar(1.0, spec.phase_v);
            return u;
        }
    }
    throw validation_error("unknown element kind");
}

ModeRegistry CircuitSpec::registry(int num_tags) const {
    return ModeRegistry::for_arms(arms, num_tags);
}

void CircuitSpec::validate() const {
    if (arms.empty()) throw validation_error("circuit declares no arms");
    std::vector<std::string> sorted = arms;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw validation_error("duplicate arm in circuit registry");
    }
    for (const auto& e : elements) {
        e.validate();
        for (const auto& arm : e.arms) {
            if (std::find(arms.begin(), arms.end(), arm) == arms.end()) {
                throw validation_error("element arm not in registry: " + arm);
            }
        }
    }
    noise.validate();
}

void NoiseParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw validation_error("indistinguishability lambda must lie in [0,1]");
    }
    for (const auto& o : offsets) {
        if (!std::isfinite(o.d_t_h) || !std::isfinite(o.d_t_v) || !std::isfinite(o.d_theta)) {
            throw validation_error("noise offset is not finite");
        }
    }
}

Eigen::MatrixXcd compose_circuit(const CircuitSpec& circuit, const ModeRegistry& registry) {
    circuit.validate();
    const auto n = static_cast<Eigen::Index>(registry.size());
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(n, n);

    // Distinguishability tags present in the registry.
    std::vector<int> tags;
    for (const auto& m : registry.labels()) {
        if (std::find(tags.begin(), tags.end(), m.tag) == tags.end()) tags.push_back(m.tag);
    }

    for (const auto& element : circuit.elements) {
        Eigen::MatrixXcd u = element_transform(element);
        Eigen::MatrixXcd embedded = Eigen::MatrixXcd::Identity(n, n);
        for (int tag : tags) {
            std::vector<std::size_t> idx;
            for (auto m : element.bound_modes()) {
                m.tag = tag;
                idx.push_back(registry.index_of(m));
            }
            for (std::size_t r = 0; r < idx.size(); ++r) {
                for (std::size_t c = 0; c < idx.size(); ++c) {
                    embedded(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c])) =
                        u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                }
            }
        }
        total = embedded * total;
    }
    return total;
}

Eigen::MatrixXcd compose_circuit(const CircuitSpec& circuit) {
    return compose_circuit(circuit, circuit.registry());
}

CircuitSpec build_compact_cnot(CnotVariant variant) {
    CircuitSpec circuit;
    if (variant == CnotVariant::FullPpbs) {
        circuit.arms = {kControlArm, kTargetArm, kControlDumpArm, kTargetDumpArm};
        circuit.elements = {
            ElementSpec::ppbs(kPpbsBTransmitH, kPpbsBTransmitV, kControlArm, kControlDumpArm),
            ElementSpec::ppbs(kPpbsBTransmitH, kPpbsBTransmitV, kTargetArm, kTargetDumpArm),
            ElementSpec::ppbs(kPpbsATransmitH, kPpbsATransmitV, kControlArm, kTargetArm),
        };
        circuit.compensate_inputs = false;
    } else {
        circuit.arms = {kControlArm, kTargetArm};
        circuit.elements = {
            ElementSpec::ppbs(kPpbsATransmitH, kPpbsATransmitV, kControlArm, kTargetArm),
        };
        circuit.compensate_inputs = true;
    }
    return circuit;
}

CircuitSpec perturb(const CircuitSpec& circuit, const NoiseParams& noise) {
    circuit.validate();
    noise.validate();
    CircuitSpec out = circuit;
    out.noise = noise;
    bool clamped = false;
    auto clamp01 = [&clamped](double v) {
        if (v < 0.0 || v > 1.0) clamped = true;
        return std::clamp(v, 0.0, 1.0);
    };
    for (std::size_t i = 0; i < out.elements.size() && i < noise.offsets.size(); ++i) {
        auto& e = out.elements[i];
        const auto& o = noise.offsets[i];
        switch (e.kind) {
            case ElementKind::PPBS:
            case ElementKind::PBS:
                e.t_h = clamp01(e.t_h + o.d_t_h);
                e.t_v = clamp01(e.t_v + o.d_t_v);
                break;
            case ElementKind::HWP:
            case ElementKind::QWP:
                e.theta += o.d_theta;
                break;
            case ElementKind::PHASE:
                break;
        }
    }
    out.clamp_warning = clamped;
    return out;
}

std::string circuit_to_json(const CircuitSpec& circuit) {
    circuit.validate();
    json doc;
    doc["registry"] = circuit.arms;
    doc["elements"] = json::array();
    for (const auto& e : circuit.elements) {
        json je;
        je["kind"] = kind_name(e.kind);
        switch (e.kind) {
            case ElementKind::PPBS:
            case ElementKind::PBS:
                je["T_H"] = e.t_h;
                je["T_V"] = e.t_v;
                break;
            case ElementKind::HWP:
            case ElementKind::QWP:
                je["theta"] = e.theta;
                break;
            case ElementKind::PHASE:
                je["phase_H"] = e.phase_h;
                je["phase_V"] = e.phase_v;
                break;
        }
        je["arms"] = e.arms;
        doc["elements"].push_back(je);
    }
    json jn;
    jn["lambda"] = circuit.noise.lambda;
    jn["offsets"] = json::array();
    for (const auto& o : circuit.noise.offsets) {
        jn["offsets"].push_back({{"dT_H", o.d_t_h}, {"dT_V", o.d_t_v}, {"dtheta", o.d_theta}});
    }
    doc["noise"] = jn;
    doc["compensate_inputs"] = circuit.compensate_inputs;
    return doc.dump(2) + "\n";
}

CircuitSpec circuit_from_json(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& err) {
        throw validation_error(std::string("malformed circuit JSON: ") + err.what());
    }
    CircuitSpec circuit;
    try {
        if (!doc.contains("registry") || !doc["registry"].is_array()) {
            throw validation_error("circuit JSON needs a \"registry\" array of arm names");
        }
        for (const auto& a : doc["registry"]) circuit.arms.push_back(a.get<std::string>());
        for (const auto& je : doc.value("elements", json::array())) {
            ElementSpec e;
            e.kind = kind_from_name(je.at("kind").get<std::string>());
            switch (e.kind) {
                case ElementKind::PPBS:
                    e.t_h = je.at("T_H").get<double>();
                    e.t_v = je.at("T_V").get<double>();
                    break;
                case ElementKind::PBS:
                    e.t_h = 1.0;
                    e.t_v = 0.0;
                    break;
                case ElementKind::HWP:
                case ElementKind::QWP:
                    e.theta = je.at("theta").get<double>();
                    break;
                case ElementKind::PHASE:
                    e.phase_h = je.at("phase_H").get<double>();
                    e.phase_v = je.at("phase_V").get<double>();
                    break;
            }
            for (const auto& a : je.at("arms")) e.arms.push_back(a.get<std::string>());
            circuit.elements.push_back(std::move(e));
        }
        if (doc.contains("noise")) {
            const auto& jn = doc["noise"];
            circuit.noise.lambda = jn.value("lambda", 1.0);
            for (const auto& jo : jn.value("offsets", json::array())) {
                circuit.noise.offsets.push_back({jo.value("dT_H", 0.0), jo.value("dT_V", 0.0),
                                                 jo.value("dtheta", 0.0)});
            }
        }
        circuit.compensate_inputs = doc.value("compensate_inputs", false);
    } catch (const json::exception& err) {
        throw validation_error(std::string("invalid circuit document: ") + err.what());
    }
    circuit.validate();
    return circuit;
}

}  // namespace ppbs::optics
