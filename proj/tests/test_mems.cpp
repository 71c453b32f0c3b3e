#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "memskit/mems.hpp"
#include "memskit/qed.hpp"
#include "test_helpers.hpp"

using namespace memskit;
using memskit::test::haar_unitary;
using memskit::test::x_state_concurrence;

TEST_CASE("singlet state", "[mems]") {
    const DensityMatrix rho = singlet();
    CMatrix expected = CMatrix::Zero(4, 4);
    expected(1, 1) = 0.5;
    expected(2, 2) = 0.5;
    expected(1, 2) = -0.5;
    expected(2, 1) = -0.5;
    REQUIRE((rho.matrix() - expected).norm() == 0.0);
    REQUIRE(rho.trace() == Catch::Approx(1.0));
    REQUIRE((partial_trace(rho, Keep::first).matrix() - 0.5 * identity(2)).norm() < 1e-15);
    REQUIRE((partial_trace(rho, Keep::second).matrix() - 0.5 * identity(2)).norm() < 1e-15);
    REQUIRE(concurrence(rho) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("mems state families", "[mems]") {
    SECTION("family I closed form") {
        const CMatrix bell = mems1_state(1.0).matrix();
        REQUIRE(std::abs(bell(0, 0).real() - 0.5) < 1e-15);
        REQUIRE(std::abs(bell(0, 3).real() - 0.5) < 1e-15);
        REQUIRE(std::abs(bell(1, 1)) == 0.0);

        const CMatrix boundary = mems1_state(2.0 / 3.0).matrix();
        REQUIRE(std::abs(boundary(0, 0).real() - 1.0 / 3.0) < 1e-15);
        REQUIRE(std::abs(boundary(1, 1).real() - 1.0 / 3.0) < 1e-15);
    }
    SECTION("family II closed form") {
        const CMatrix incoherent = mems2_state(0.0).matrix();
        CMatrix expected = CMatrix::Zero(4, 4);
        expected(0, 0) = 1.0 / 3.0;
        expected(1, 1) = 1.0 / 3.0;
        expected(3, 3) = 1.0 / 3.0;
        REQUIRE((incoherent - expected).norm() < 1e-15);
    }
    SECTION("families meet at p = 2/3 exactly") {
        REQUIRE((mems1_state(2.0 / 3.0).matrix() - mems2_state(2.0 / 3.0).matrix()).norm() == 0.0);
    }
    SECTION("states are what the lifted channels make of the singlet") {
        for (double p : {2.0 / 3.0, 0.71, 0.84, 0.97, 1.0}) {
            REQUIRE((apply(lift_first_qubit(mems1_map(p)), singlet()).matrix() -
                     mems1_state(p).matrix()).norm() < 1e-12);
        }
        for (double p : {0.0, 0.21, 0.5, 2.0 / 3.0}) {
            REQUIRE((apply(lift_first_qubit(mems2_map(p)), singlet()).matrix() -
                     mems2_state(p).matrix()).norm() < 1e-12);
        }
    }
    SECTION("parameter ranges are strict") {
        REQUIRE_THROWS_AS(mems1_state(0.5), std::domain_error);
        REQUIRE_THROWS_AS(mems2_state(0.7), std::domain_error);
    }
}

TEST_CASE("concurrence", "[mems]") {
    SECTION("equals p on both families, against the X-state oracle") {
        for (double p : {2.0 / 3.0, 0.7, 0.8, 0.9, 1.0}) {
            const DensityMatrix rho = mems1_state(p);
            REQUIRE(concurrence(rho) == Catch::Approx(p).margin(1e-9));
            REQUIRE(concurrence(rho) ==
                    Catch::Approx(x_state_concurrence(rho.matrix())).margin(1e-12));
        }
        for (double p : {0.0, 0.3, 2.0 / 3.0}) {
            const DensityMatrix rho = mems2_state(p);
            REQUIRE(concurrence(rho) == Catch::Approx(p).margin(1e-9));
            REQUIRE(concurrence(rho) ==
                    Catch::Approx(x_state_concurrence(rho.matrix())).margin(1e-12));
        }
    }
    SECTION("invariant under local unitaries") {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 100; ++trial) {
            const DensityMatrix rho = hs_random_state(rng);
            const CMatrix u = tensor(haar_unitary(2, rng), haar_unitary(2, rng));
            const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
            REQUIRE(concurrence(rotated) == Catch::Approx(concurrence(rho)).margin(1e-9));
        }
    }
    SECTION("rejects subnormalized states") {
        REQUIRE_THROWS_AS(concurrence(DensityMatrix(0.5 * mems1_state(0.8).matrix())),
                          std::invalid_argument);
    }
}

TEST_CASE("linear entropy", "[mems]") {
    REQUIRE(linear_entropy(singlet()) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(linear_entropy(DensityMatrix(0.25 * identity(4))) == Catch::Approx(1.0));
    REQUIRE(linear_entropy(mems1_state(0.8)) ==
            Catch::Approx((4.0 / 3.0) * 0.32).epsilon(1e-12));
}

TEST_CASE("classify", "[mems]") {
    SECTION("round trip on a fine grid") {
        for (int k = 67; k <= 100; ++k) {
            const double p = k / 100.0;
            const auto family = classify(mems1_state(p), 1e-9);
            REQUIRE(family.has_value());
            REQUIRE(family->tag == MemsFamilyTag::I);
            REQUIRE(family->p == Catch::Approx(p).margin(1e-12));
        }
        for (int k = 0; k <= 66; ++k) {
            const double p = k / 100.0;
            const auto family = classify(mems2_state(p), 1e-9);
            REQUIRE(family.has_value());
            REQUIRE(family->tag == MemsFamilyTag::II);
            REQUIRE(family->p == Catch::Approx(p).margin(1e-12));
        }
    }
    SECTION("the boundary state classifies as family I") {
        const auto family = classify(mems2_state(2.0 / 3.0), 1e-9);
        REQUIRE(family.has_value());
        REQUIRE(family->tag == MemsFamilyTag::I);
    }
    SECTION("maximally mixed is not a MEMS") {
        REQUIRE_FALSE(classify(DensityMatrix(0.25 * identity(4)), 1e-9).has_value());
    }
    SECTION("random states are not MEMS") {
        std::mt19937_64 rng(71);
        for (int trial = 0; trial < 20; ++trial) {
            REQUIRE_FALSE(classify(hs_random_state(rng), 1e-9).has_value());
        }
    }
}

TEST_CASE("locality defect", "[mems]") {
    const DensityMatrix rho_s = singlet();
    SECTION("zero against itself") {
        REQUIRE(locality_defect(rho_s, rho_s) == 0.0);
    }
    SECTION("the truncated MEMS moves photon b's state") {
        REQUIRE(locality_defect(rho_s, mems1_state(0.8)) ==
                Catch::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-12));
        for (double p : {0.7, 0.9, 0.99}) {
            REQUIRE(locality_defect(rho_s, mems1_state(p)) ==
                    Catch::Approx((1.0 - p) / std::sqrt(2.0)).margin(1e-12));
        }
        REQUIRE(locality_defect(rho_s, mems1_state(1.0)) < 1e-15);
    }
    SECTION("the full four-mode output does not") {
        for (double T : {0.0, 0.3, 1.0 / std::sqrt(2.0), 1.0}) {
            const DensityMatrix rho = trace_spatial(channel_output(Transmissivity(T)));
            REQUIRE(locality_defect(rho_s, rho) < 1e-12);
        }
    }
}

TEST_CASE("fidelity", "[mems]") {
    REQUIRE(fidelity(singlet(), singlet()) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(fidelity(singlet(), mems1_state(1.0)) == Catch::Approx(0.0).margin(1e-12));
    const double f = fidelity(mems1_state(0.8), mems1_state(0.9));
    REQUIRE(f > 0.9);
    REQUIRE(f < 1.0);
}

TEST_CASE("report", "[mems]") {
    const MemsReport report = make_report(mems1_state(0.8));
    REQUIRE(report.family.has_value());
    REQUIRE(report.family->tag == MemsFamilyTag::I);
    REQUIRE(report.family->p == Catch::Approx(0.8));
    REQUIRE(report.concurrence == Catch::Approx(0.8).margin(1e-9));
    REQUIRE(report.trace == Catch::Approx(1.0));
    REQUIRE(report.fidelity_to_reference == Catch::Approx(1.0).margin(1e-9));

    const nlohmann::json j = report_to_json(report);
    REQUIRE(j.at("family").at("tag") == "I");
    REQUIRE(j.at("concurrence").get<double>() == Catch::Approx(0.8).margin(1e-9));

    const MemsReport mixed = make_report(DensityMatrix(0.25 * identity(4)));
    REQUIRE_FALSE(mixed.family.has_value());
    REQUIRE(report_to_json(mixed).at("family").is_null());
}

TEST_CASE("hilbert-schmidt sampling", "[mems]") {
    SECTION("samples are unit-trace density matrices") {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            const DensityMatrix rho = hs_random_state(rng);
            REQUIRE(rho.has_unit_trace(1e-12));
        }
    }
    SECTION("seeding is reproducible") {
        std::mt19937_64 a(123);
        std::mt19937_64 b(123);
        REQUIRE(hs_random_state(a).matrix() == hs_random_state(b).matrix());
    }
}

TEST_CASE("no random state beats the MEMS frontier", "[mems][slow]") {
    // Desk-scale falsification of maximality: within a +-0.005 linear-entropy
    // band of any family state, no Hilbert-Schmidt sample may exceed that
    // state's concurrence by more than 0.01. The full-size run lives in the
    // acceptance suite; this is a faster spot check.
    std::mt19937_64 rng(2024);
    std::vector<std::pair<double, double>> curve;  // (S_L, C) along both families
    for (int k = 0; k <= 666; ++k) {
        const DensityMatrix rho = mems2_state(k / 1000.0);
        curve.emplace_back(linear_entropy(rho), concurrence(rho));
    }
    for (int k = 667; k <= 1000; ++k) {
        const DensityMatrix rho = mems1_state(k / 1000.0);
        curve.emplace_back(linear_entropy(rho), concurrence(rho));
    }
    int violations = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const DensityMatrix rho = hs_random_state(rng);
        const double sl = linear_entropy(rho);
        const double c = concurrence(rho);
        for (const auto& [curve_sl, curve_c] : curve) {
            if (std::abs(sl - curve_sl) < 0.005 && c > curve_c + 0.01) {
                ++violations;
            }
        }
    }
    REQUIRE(violations == 0);
}
