#include <doctest.h>

#include <cmath>

#include "heatspec/discriminator.hpp"

using namespace heatspec;

namespace {
constexpr double kTwoPi = 6.283185307179586;
const std::array<OperatorPair, 3> kPairs = {OperatorPair::dirichlet_neumann,
                                            OperatorPair::absolute_01,
                                            OperatorPair::relative_01};
}

TEST_CASE("exact round trip recovers catalog invariants for every model and pair") {
    for (const auto& model : catalog()) {
        BoundaryInvariants truth = model.invariants();
        for (OperatorPair pair : kPairs) {
            if (model.m < 2 && pair != OperatorPair::dirichlet_neumann) continue;
            RecoveryResult rec = recover_invariants(exact_dataset(model, pair));
            REQUIRE(rec.invariants_exact.has_value());
            CHECK(rec.invariants_exact->I0 == truth.I0);
            CHECK(rec.invariants_exact->I1 == truth.I1);
            CHECK(rec.invariants_exact->I2 == truth.I2);
            CHECK(rec.invariants_exact->vol_dM == truth.vol_dM);

            BoundaryClassification expected = classify_boundary(truth);
            CHECK(rec.classification.totally_geodesic == expected.totally_geodesic);
            CHECK(rec.classification.minimal == expected.minimal);
            CHECK(rec.classification.totally_umbillic == expected.totally_umbillic);
            CHECK(rec.classification.strongly_totally_umbillic ==
                  expected.strongly_totally_umbillic);
        }
    }
}

TEST_CASE("solve determinants match the pair matrices") {
    auto disk = make_disk(Rational(1));
    CHECK(recover_invariants(exact_dataset(disk, OperatorPair::dirichlet_neumann)).determinant ==
          Rational(-144));
    CHECK(recover_invariants(exact_dataset(disk, OperatorPair::absolute_01)).determinant ==
          Rational(1584));
    CHECK(recover_invariants(exact_dataset(disk, OperatorPair::relative_01)).determinant ==
          Rational(-432));
}

TEST_CASE("scale equivariance: disk radius recovers mu = 1/R") {
    for (const Rational& r : {Rational(1, 2), Rational(1), Rational(2)}) {
        auto rec = recover_invariants(exact_dataset(make_disk(r), OperatorPair::dirichlet_neumann));
        REQUIRE(rec.classification.mu_exact.has_value());
        CHECK(*rec.classification.mu_exact == ExactValue(Rational(1) / r));
    }
}

TEST_CASE("compare_manifolds on exact data") {
    auto disk = exact_dataset(make_disk(Rational(1)), OperatorPair::dirichlet_neumann);
    SUBCASE("identical inputs transfer everything") {
        TransferReport rep = compare_manifolds(disk, disk);
        CHECK(rep.all_hold());
        CHECK(rep.delta_I0 == 0.0);
        CHECK(rep.delta_I1 == 0.0);
    }
    SUBCASE("cylinder vs disk fails the transfer checks") {
        auto cyl = exact_dataset(make_cylinder(ExactValue(Rational(1), 2), ExactValue(1)),
                                 OperatorPair::dirichlet_neumann);
        TransferReport rep = compare_manifolds(cyl, disk);
        CHECK_FALSE(rep.all_hold());
        CHECK(rep.delta_I1 == doctest::Approx(kTwoPi).epsilon(1e-12));
        CHECK(rep.delta_I2 == doctest::Approx(kTwoPi).epsilon(1e-12));
        // minimal and geodesic hold on the cylinder but not the disk
        CHECK(rep.transfers[0].a_has);
        CHECK_FALSE(rep.transfers[0].b_has);
    }
    SUBCASE("tau mismatch is refused") {
        auto hemi = exact_dataset(make_hemisphere(), OperatorPair::dirichlet_neumann);
        CHECK_THROWS_AS(compare_manifolds(hemi, disk), std::invalid_argument);
    }
    SUBCASE("inconsistent pair volumes are refused") {
        SpectralDataset broken = disk;
        broken.provenance = Provenance::fitted;
        broken.ops[0].a_exact.reset();
        broken.ops[1].a_exact.reset();
        broken.ops[1].a[0] *= 1.2;  // vol(M) disagreement between members
        CHECK_THROWS_AS(recover_invariants(broken), std::invalid_argument);
    }
}

TEST_CASE("umbillic oracle refuses asymmetric input") {
    SecondFundamentalForm asym(3);
    asym.at(1, 0) = Rational(2);
    CHECK_THROWS_AS(pointwise_umbillic_oracle(asym), std::invalid_argument);
}

TEST_CASE("fitted pipeline: hemisphere classified totally geodesic") {
    auto hemi = make_hemisphere();
    std::array<EigenvalueList, 2> spectra = {
        model_spectrum(hemi, 0, BoundaryCondition::dirichlet, 4e4),
        model_spectrum(hemi, 0, BoundaryCondition::neumann, 4e4)};
    RecoveryResult rec = classify_from_spectra(spectra, 2, Rational(2),
                                               OperatorPair::dirichlet_neumann);
    CHECK(rec.tol == doctest::Approx(1e-2 * kTwoPi).epsilon(1e-3));
    CHECK(rec.classification.totally_geodesic);
    CHECK(rec.classification.minimal);
    CHECK(std::abs(rec.I1) < rec.tol);
    CHECK(std::abs(rec.I2) < rec.tol);
    CHECK(rec.vol_dM == doctest::Approx(kTwoPi).epsilon(1e-4));
}

TEST_CASE("fitted pipeline: disk strongly umbillic with mu near 1") {
    auto disk = make_disk(Rational(1));
    std::array<EigenvalueList, 2> spectra = {
        model_spectrum(disk, 0, BoundaryCondition::dirichlet, 4e4),
        model_spectrum(disk, 0, BoundaryCondition::neumann, 4e4)};
    RecoveryResult rec =
        classify_from_spectra(spectra, 2, Rational(0), OperatorPair::dirichlet_neumann);
    CHECK_FALSE(rec.classification.totally_geodesic);
    CHECK_FALSE(rec.classification.minimal);
    CHECK(rec.classification.totally_umbillic);
    CHECK(rec.classification.strongly_totally_umbillic);
    REQUIRE(rec.classification.mu.has_value());
    CHECK(*rec.classification.mu == doctest::Approx(1.0).epsilon(0.02));
    CHECK(rec.I1 == doctest::Approx(kTwoPi).epsilon(0.02));
}

TEST_CASE("fitted pipeline agrees across operator pairs on the disk") {
    auto disk = make_disk(Rational(1));
    std::array<EigenvalueList, 2> dn = {
        model_spectrum(disk, 0, BoundaryCondition::dirichlet, 4e4),
        model_spectrum(disk, 0, BoundaryCondition::neumann, 4e4)};
    std::array<EigenvalueList, 2> abs = {
        model_spectrum(disk, 0, BoundaryCondition::absolute, 4e4),
        model_spectrum(disk, 1, BoundaryCondition::absolute, 4e4)};
    auto rec_dn = classify_from_spectra(dn, 2, Rational(0), OperatorPair::dirichlet_neumann);
    auto rec_abs = classify_from_spectra(abs, 2, Rational(0), OperatorPair::absolute_01);
    CHECK(rec_abs.classification.strongly_totally_umbillic ==
          rec_dn.classification.strongly_totally_umbillic);
    CHECK(rec_abs.classification.totally_geodesic == rec_dn.classification.totally_geodesic);
    CHECK(rec_abs.I1 == doctest::Approx(rec_dn.I1).epsilon(0.02));
    CHECK(rec_abs.I2 == doctest::Approx(rec_dn.I2).epsilon(0.02));
}

TEST_CASE("fitted route matches exact route classification on the catalog") {
    for (const auto& model : catalog()) {
        if (model.m != 2) continue;
        std::array<EigenvalueList, 2> spectra = {
            model_spectrum(model, 0, BoundaryCondition::dirichlet, 4e4),
            model_spectrum(model, 0, BoundaryCondition::neumann, 4e4)};
        auto fitted =
            classify_from_spectra(spectra, 2, model.tau, OperatorPair::dirichlet_neumann);
        auto exact =
            recover_invariants(exact_dataset(model, OperatorPair::dirichlet_neumann));
        CHECK(fitted.classification.totally_geodesic == exact.classification.totally_geodesic);
        CHECK(fitted.classification.minimal == exact.classification.minimal);
        CHECK(fitted.classification.totally_umbillic == exact.classification.totally_umbillic);
        CHECK(fitted.classification.strongly_totally_umbillic ==
              exact.classification.strongly_totally_umbillic);
    }
}
