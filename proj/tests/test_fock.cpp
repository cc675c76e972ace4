#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ppbs/fock.hpp"

using namespace ppbs;
using namespace ppbs::fock;

namespace {

const std::vector<std::string> kArms = {"c", "t"};

OccupationVector occ_of(const ModeRegistry& reg, const std::vector<ModeLabel>& occupied) {
    OccupationVector occ(reg.size(), 0);
    for (const auto& m : occupied) occ[reg.index_of(m)] += 1;
    return occ;
}

Eigen::MatrixXcd balanced_splitter() {
    double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd u(2, 2);
    u << s, s, -s, s;
    return u;
}

Eigen::MatrixXcd random_unitary(int n, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = complex{gauss(rng), gauss(rng)};
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    return q;
}

}  // namespace

TEST_CASE("registry ordering is lexicographic and lookups work") {
    auto reg = ModeRegistry::for_arms({"t", "c"}, 2);
    REQUIRE(reg.size() == 8);
    CHECK(reg.label(0) == ModeLabel{"c", Polarization::H, 0});
    CHECK(reg.label(1) == ModeLabel{"c", Polarization::H, 1});
    CHECK(reg.label(2) == ModeLabel{"c", Polarization::V, 0});
    CHECK(reg.label(7) == ModeLabel{"t", Polarization::V, 1});
    CHECK(reg.index_of({"t", Polarization::H, 0}) == 4);
    CHECK_THROWS_AS(reg.index_of({"x", Polarization::H, 0}), validation_error);
}

TEST_CASE("two-photon construction: basis product state") {
    auto reg = ModeRegistry::for_arms(kArms);
    auto psi = make_two_photon_state(reg, {"c", 0.0, 1.0, 0}, {"t", 0.0, 1.0, 0});
    REQUIRE(psi.terms().size() == 1);
    auto occ = occ_of(reg, {{"c", Polarization::V, 0}, {"t", Polarization::V, 0}});
    CHECK(psi.amplitude(occ) == complex{1.0, 0.0});
    CHECK(psi.photon_number() == 2);
}

TEST_CASE("two-photon construction: superposition target") {
    auto reg = ModeRegistry::for_arms(kArms);
    double s = 1.0 / std::sqrt(2.0);
    auto psi = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", s, s, 0});
    REQUIRE(psi.terms().size() == 2);
    auto hh = occ_of(reg, {{"c", Polarization::H, 0}, {"t", Polarization::H, 0}});
    auto hv = occ_of(reg, {{"c", Polarization::H, 0}, {"t", Polarization::V, 0}});
    CHECK(psi.amplitude(hh).real() == doctest::Approx(s).epsilon(1e-14));
    CHECK(psi.amplitude(hv).real() == doctest::Approx(s).epsilon(1e-14));
}

TEST_CASE("two-photon construction rejects bad inputs") {
    auto reg = ModeRegistry::for_arms(kArms);
    double s = 1.0 / std::sqrt(2.0);
    CHECK_THROWS_WITH_AS(make_two_photon_state(reg, {"c", s, s, 0}, {"c", s, s, 0}),
                         doctest::Contains("identical spatial labels"), validation_error);
    CHECK_THROWS_AS(make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"nope", 1.0, 0.0, 0}),
                    validation_error);
    CHECK_THROWS_AS(make_two_photon_state(reg, {"c", 1.0, 0.2, 0}, {"t", 1.0, 0.0, 0}),
                    validation_error);
}

TEST_CASE("bosonic factor: both photons into one mode carry sqrt(2)") {
    // A balanced splitter sends identical photons into a'^2-type terms whose
    // occupation amplitude must reflect <2|a+a+|0>/sqrt(2!) = sqrt(2).
    auto reg = ModeRegistry::for_arms(kArms);
    auto psi = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 0});
    std::vector<ModeLabel> pair = {{"c", Polarization::H, 0}, {"t", Polarization::H, 0}};
    auto out = apply_mode_transform(psi, balanced_splitter(), pair);

    OccupationVector both_c(reg.size(), 0);
    both_c[reg.index_of({"c", Polarization::H, 0})] = 2;
    OccupationVector both_t(reg.size(), 0);
    both_t[reg.index_of({"t", Polarization::H, 0})] = 2;

    // (a+_c + a+_t)(-a+_c + a+_t)/2 expands to (a+_t^2 - a+_c^2)/2, and each
    // squared operator contributes amplitude sqrt(2)/2 on its |2> state.
    CHECK(std::abs(out.amplitude(both_c)) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(std::abs(out.amplitude(both_t)) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(out.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hong-Ou-Mandel: identical photons never coincide on a balanced splitter") {
    auto reg = ModeRegistry::for_arms(kArms);
    auto psi = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 0});
    std::vector<ModeLabel> pair = {{"c", Polarization::H, 0}, {"t", Polarization::H, 0}};
    auto out = apply_mode_transform(psi, balanced_splitter(), pair);
    auto coincident = coincidence_project(out, "c", "t");
    CHECK(coincident.norm_sq() < 1e-20);
}

TEST_CASE("Hong-Ou-Mandel: tagged photons coincide with probability 1/2") {
    auto reg = ModeRegistry::for_arms(kArms, 2);
    auto psi = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 1});
    // The splitter acts identically on both tags.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
    Eigen::MatrixXcd b = balanced_splitter();
    std::vector<ModeLabel> modes = {{"c", Polarization::H, 0},
                                    {"t", Polarization::H, 0},
                                    {"c", Polarization::H, 1},
                                    {"t", Polarization::H, 1}};
    u.block<2, 2>(0, 0) = b;
    u.block<2, 2>(2, 2) = b;
    auto out = apply_mode_transform(psi, u, modes);
    auto coincident = coincidence_project(out, "c", "t");
    CHECK(coincident.norm_sq() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("PPBS-A coincidence amplitudes: +-1/3 structure") {
    // T_H = 2/3, T_V = 0 acting on (cH,tH) and (cV,tV).
    auto reg = ModeRegistry::for_arms(kArms);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
    double th = std::sqrt(2.0 / 3.0), rh = std::sqrt(1.0 / 3.0);
    u(0, 0) = th; u(0, 1) = rh; u(1, 0) = -rh; u(1, 1) = th;  // H block
    u(2, 3) = 1.0; u(3, 2) = -1.0;                            // V block, full reflection
    std::vector<ModeLabel> modes = {{"c", Polarization::H, 0},
                                    {"t", Polarization::H, 0},
                                    {"c", Polarization::V, 0},
                                    {"t", Polarization::V, 0}};

    auto hh_in = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 0});
    auto hh_out = coincidence_project(apply_mode_transform(hh_in, u, modes), "c", "t");
    auto hh_occ = occ_of(reg, {{"c", Polarization::H, 0}, {"t", Polarization::H, 0}});
    CHECK(std::abs(hh_out.amplitude(hh_occ)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(hh_out.norm_sq() == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

    auto vv_in = make_two_photon_state(reg, {"c", 0.0, 1.0, 0}, {"t", 0.0, 1.0, 0});
    auto vv_out = coincidence_project(apply_mode_transform(vv_in, u, modes), "c", "t");
    auto vv_occ = occ_of(reg, {{"c", Polarization::V, 0}, {"t", Polarization::V, 0}});
    CHECK(std::abs(vv_out.amplitude(vv_occ)) == doctest::Approx(1.0).epsilon(1e-12));

    // Relative sign: the HH coincidence amplitude is -1/3 of the VV one.
    complex ratio = hh_out.amplitude(hh_occ) / vv_out.amplitude(vv_occ);
    CHECK(ratio.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(ratio.imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("mode transforms preserve photon number and norm") {
    std::mt19937 rng(12345);
    auto reg = ModeRegistry::for_arms(kArms);
    double s = 1.0 / std::sqrt(2.0);
    auto psi = make_two_photon_state(reg, {"c", s, s, 0}, {"t", 0.5, complex{0.5, s / 2}, 0});
    double before = psi.norm_sq();
    for (int trial = 0; trial < 50; ++trial) {
        auto u = random_unitary(4, rng);
        auto out = apply_mode_transform(psi, u, reg.labels());
        CHECK(out.photon_number() == 2);
        CHECK(out.norm_sq() == doctest::Approx(before).epsilon(1e-10));
    }
}

TEST_CASE("non-unitary transforms are rejected") {
    auto reg = ModeRegistry::for_arms(kArms);
    auto psi = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 0});
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(4, 4) * 0.9;
    CHECK_THROWS_AS(apply_mode_transform(psi, bad, reg.labels()), numeric_error);
}

TEST_CASE("coincidence projector is idempotent and norm-nonincreasing") {
    std::mt19937 rng(777);
    auto reg = ModeRegistry::for_arms(kArms);
    double s = 1.0 / std::sqrt(2.0);
    auto psi = make_two_photon_state(reg, {"c", s, s, 0}, {"t", s, -s, 0});
    auto out = apply_mode_transform(psi, random_unitary(4, rng), reg.labels());

    auto once = coincidence_project(out, "c", "t");
    auto twice = coincidence_project(once, "c", "t");
    CHECK(once.norm_sq() <= out.norm_sq() + 1e-12);
    CHECK(std::abs(inner_product(once, once) - inner_product(twice, twice)) < 1e-14);
    for (const auto& [occ, amp] : once.terms()) {
        CHECK(std::abs(twice.amplitude(occ) - amp) < 1e-15);
    }
}

TEST_CASE("coincidence projector kills same-arm states, keeps coincident ones") {
    auto reg = ModeRegistry::for_arms(kArms);
    FockState both_in_c(reg);
    OccupationVector occ(reg.size(), 0);
    occ[reg.index_of({"c", Polarization::H, 0})] = 1;
    occ[reg.index_of({"c", Polarization::V, 0})] = 1;
    both_in_c.add_term(occ, 1.0);
    CHECK(coincidence_project(both_in_c, "c", "t").terms().empty());

    auto coincident = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 0.0, 1.0, 0});
    auto projected = coincidence_project(coincident, "c", "t");
    CHECK(projected.norm_sq() == doctest::Approx(1.0));

    CHECK_THROWS_AS(coincidence_project(coincident, "c", "nope"), validation_error);
}

TEST_CASE("inner product basics") {
    auto reg = ModeRegistry::for_arms(kArms);
    double s = 1.0 / std::sqrt(2.0);
    auto psi = make_two_photon_state(reg, {"c", s, complex{0.0, s}, 0}, {"t", 1.0, 0.0, 0});
    auto ip = inner_product(psi, psi);
    CHECK(ip.real() == doctest::Approx(psi.norm_sq()).epsilon(1e-14));
    CHECK(ip.imag() == doctest::Approx(0.0).epsilon(1e-14));

    auto other = make_two_photon_state(reg, {"c", 0.0, 1.0, 0}, {"t", 0.0, 1.0, 0});
    auto hh = make_two_photon_state(reg, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 0});
    CHECK(std::abs(inner_product(hh, other)) == doctest::Approx(0.0));

    auto tagged = ModeRegistry::for_arms(kArms, 2);
    auto psi2 = make_two_photon_state(tagged, {"c", 1.0, 0.0, 0}, {"t", 1.0, 0.0, 1});
    CHECK_THROWS_AS(inner_product(psi, psi2), validation_error);
}

TEST_CASE("amplitude pruning removes numerical dust") {
    auto reg = ModeRegistry::for_arms(kArms);
    FockState psi(reg);
    OccupationVector occ(reg.size(), 0);
    occ[0] = 1;
    occ[2] = 1;
    psi.add_term(occ, complex{1e-15, 0.0});
    psi.prune();
    CHECK(psi.terms().empty());
}
