#include <doctest.h>

#include <cmath>
#include <sstream>

#include "heatspec/bessel.hpp"
#include "heatspec/spectra.hpp"

using namespace heatspec;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Bessel evaluation against reference values") {
    CHECK(bessel_j(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-14));
    CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-14));
    CHECK(bessel_j(0, 10.0) == doctest::Approx(-0.2459357644513483).epsilon(1e-13));
    CHECK(bessel_j(5, 10.0) == doctest::Approx(-0.2340615281867936).epsilon(1e-13));
    CHECK(bessel_j(0, 100.0) == doctest::Approx(0.019985850304223122).epsilon(1e-11));
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);

    SUBCASE("sum of squares identity at arbitrary arguments") {
        for (double x : {0.3, 2.7, 31.4, 120.0, 199.5}) {
            auto seq = bessel_j_sequence(x, static_cast<int>(x) + 60);
            double s = seq[0] * seq[0];
            for (std::size_t k = 1; k < seq.size(); ++k) s += 2.0 * seq[k] * seq[k];
            CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("Bessel zeros") {
    auto z0 = bessel_j_zeros(0, 30.0);
    REQUIRE(z0.size() == 9);
    CHECK(z0[0] == doctest::Approx(2.404825557695773).epsilon(1e-12));
    CHECK(z0[1] == doctest::Approx(5.520078110286311).epsilon(1e-12));
    CHECK(z0[2] == doctest::Approx(8.653727912911013).epsilon(1e-12));

    auto z1 = bessel_j_zeros(1, 20.0);
    CHECK(z1[0] == doctest::Approx(3.831705970207512).epsilon(1e-12));

    auto z1p = bessel_j_prime_zeros(1, 10.0);
    CHECK(z1p[0] == doctest::Approx(1.841183781340659).epsilon(1e-12));
    CHECK(z1p[1] == doctest::Approx(5.331442773525032).epsilon(1e-12));

    SUBCASE("McMahon asymptotics for high zeros") {
        auto zeros = bessel_j_zeros(0, 100.0);
        double b = (25 - 0.25) * kPi;  // k = 25
        double mcmahon = b + 1.0 / (8.0 * b);
        CHECK(zeros[24] == doctest::Approx(mcmahon).epsilon(1e-6));
    }
    SUBCASE("interlacing j'_{n,k} < j_{n,k} < j'_{n,k+1}") {
        for (int n = 1; n <= 6; ++n) {
            auto j = bessel_j_zeros(n, 60.0);
            auto jp = bessel_j_prime_zeros(n, 60.0);
            REQUIRE(jp.size() >= j.size());
            for (std::size_t k = 0; k < j.size(); ++k) {
                CHECK(jp[k] < j[k]);
                if (k + 1 < jp.size()) CHECK(j[k] < jp[k + 1]);
            }
        }
    }
}

TEST_CASE("interval spectrum") {
    auto d = interval_spectrum(kPi, BoundaryCondition::dirichlet, 20.0);
    REQUIRE(d.entries().size() == 4);
    for (int k = 1; k <= 4; ++k) {
        CHECK(d.entries()[k - 1].lambda == doctest::Approx(k * k).epsilon(1e-14));
        CHECK(d.entries()[k - 1].multiplicity == 1);
    }
    auto n = interval_spectrum(kPi, BoundaryCondition::neumann, 10.0);
    REQUIRE(n.entries().size() == 4);
    CHECK(n.entries()[0].lambda == 0.0);

    auto half = interval_spectrum(2.0 * kPi, BoundaryCondition::dirichlet, 2.0);
    REQUIRE(half.entries().size() == 2);
    CHECK(half.entries()[0].lambda == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(half.entries()[1].lambda == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(interval_spectrum(kPi, BoundaryCondition::dirichlet, -1.0),
                    std::invalid_argument);
}

TEST_CASE("disk spectrum") {
    auto d = disk_spectrum(1.0, BoundaryCondition::dirichlet, 40.0);
    CHECK(d.entries().front().lambda == doctest::Approx(5.783185962946785).epsilon(1e-11));
    for (const auto& e : d.entries()) CHECK(e.lambda > 0.0);

    auto n = disk_spectrum(1.0, BoundaryCondition::neumann, 5.0);
    REQUIRE(n.entries().size() == 2);
    CHECK(n.entries()[0].lambda == 0.0);
    CHECK(n.entries()[0].multiplicity == 1);
    CHECK(n.entries()[1].lambda == doctest::Approx(1.841183781340659 * 1.841183781340659)
                                       .epsilon(1e-11));
    CHECK(n.entries()[1].multiplicity == 2);

    SUBCASE("scaling: R = 2 quarters every eigenvalue") {
        auto unit = disk_spectrum(1.0, BoundaryCondition::dirichlet, 60.0);
        auto big = disk_spectrum(2.0, BoundaryCondition::dirichlet, 15.0);
        REQUIRE(big.entries().size() == unit.entries().size());
        for (std::size_t i = 0; i < big.entries().size(); ++i) {
            CHECK(big.entries()[i].lambda ==
                  doctest::Approx(unit.entries()[i].lambda / 4.0).epsilon(1e-12));
            CHECK(big.entries()[i].multiplicity == unit.entries()[i].multiplicity);
        }
    }
    SUBCASE("counting function obeys the Weyl certificate") {
        auto list = disk_spectrum(1.0, BoundaryCondition::neumann, 2000.0);
        for (const auto& e : list.entries()) {
            double bound = list.weyl_constant() * e.lambda + list.weyl_constant();
            CHECK(static_cast<double>(list.count_below(e.lambda)) <= bound);
        }
    }
    SUBCASE("counting function matches the leading Weyl term within 5%") {
        // vol(M) lambda / (4 pi) for the unit disk is lambda / 4
        for (auto bc : {BoundaryCondition::dirichlet, BoundaryCondition::neumann}) {
            auto list = disk_spectrum(1.0, bc, 4e4);
            double weyl_term = 4e4 / 4.0;
            CHECK(std::abs(static_cast<double>(list.total_count()) - weyl_term) <
                  0.05 * weyl_term);
        }
    }
}

TEST_CASE("hemisphere spectrum") {
    auto d = hemisphere_spectrum(BoundaryCondition::dirichlet, 12.5);
    REQUIRE(d.entries().size() == 3);
    CHECK(d.entries()[0].lambda == 2.0);
    CHECK(d.entries()[0].multiplicity == 1);
    CHECK(d.entries()[1].lambda == 6.0);
    CHECK(d.entries()[1].multiplicity == 2);
    CHECK(d.entries()[2].lambda == 12.0);
    CHECK(d.entries()[2].multiplicity == 3);

    auto n = hemisphere_spectrum(BoundaryCondition::neumann, 6.5);
    REQUIRE(n.entries().size() == 3);
    CHECK(n.entries()[0].lambda == 0.0);
    CHECK(n.entries()[0].multiplicity == 1);
    CHECK(n.entries()[1].multiplicity == 2);
    CHECK(n.entries()[2].multiplicity == 3);

    SUBCASE("parity split recombines to full-sphere multiplicity 2l+1") {
        auto dd = hemisphere_spectrum(BoundaryCondition::dirichlet, 500.0);
        auto nn = hemisphere_spectrum(BoundaryCondition::neumann, 500.0);
        for (std::size_t i = 0; i < dd.entries().size(); ++i) {
            long long l = i + 1;
            CHECK(dd.entries()[i].multiplicity + nn.entries()[i + 1].multiplicity == 2 * l + 1);
        }
    }
}

TEST_CASE("cylinder spectrum") {
    auto d = cylinder_spectrum(kPi, 1.0, BoundaryCondition::dirichlet, 5.5);
    // k^2 + n^2 enumeration: 1, 2(x2), 4, 5(x4: both (1,2) and (2,1) hit 5)
    REQUIRE(d.entries().size() == 4);
    CHECK(d.entries()[0].lambda == doctest::Approx(1.0));
    CHECK(d.entries()[0].multiplicity == 1);
    CHECK(d.entries()[1].lambda == doctest::Approx(2.0));
    CHECK(d.entries()[1].multiplicity == 2);
    CHECK(d.entries()[2].lambda == doctest::Approx(4.0));
    CHECK(d.entries()[2].multiplicity == 1);
    CHECK(d.entries()[3].lambda == doctest::Approx(5.0));
    CHECK(d.entries()[3].multiplicity == 4);

    auto n = cylinder_spectrum(kPi, 1.0, BoundaryCondition::neumann, 3.0);
    CHECK(n.entries()[0].lambda == 0.0);

    auto tall = cylinder_spectrum(2.0 * kPi, 1.0, BoundaryCondition::dirichlet, 0.5);
    CHECK(tall.entries()[0].lambda == doctest::Approx(0.25));
}

TEST_CASE("one-form spectra on surfaces from the Hodge decomposition") {
    auto disk = make_disk(Rational(1));
    auto abs = one_form_spectrum_2d(disk, BoundaryCondition::absolute, 50.0);
    // no harmonic one-forms on the disk
    CHECK(abs.entries().front().lambda > 0.0);
    auto neumann = model_spectrum(disk, 0, BoundaryCondition::neumann, 50.0);
    auto dirichlet = model_spectrum(disk, 0, BoundaryCondition::dirichlet, 50.0);
    CHECK(abs.total_count() ==
          neumann.total_count() - 1 + dirichlet.total_count() + disk.b1);

    auto cyl = make_cylinder(ExactValue(Rational(1), 2), ExactValue(1));
    auto cyl_abs = one_form_spectrum_2d(cyl, BoundaryCondition::absolute, 10.0);
    CHECK(cyl_abs.entries().front().lambda == 0.0);
    CHECK(cyl_abs.entries().front().multiplicity == 1);  // b1 = 1

    // relative = absolute on surfaces
    auto rel = one_form_spectrum_2d(disk, BoundaryCondition::relative, 50.0);
    REQUIRE(rel.entries().size() == abs.entries().size());
    for (std::size_t i = 0; i < rel.entries().size(); ++i) {
        CHECK(rel.entries()[i].lambda == abs.entries()[i].lambda);
        CHECK(rel.entries()[i].multiplicity == abs.entries()[i].multiplicity);
    }
}

TEST_CASE("heat trace") {
    auto list = interval_spectrum(kPi, BoundaryCondition::dirichlet, 400.0);
    auto sample = heat_trace(list, 1.0);
    CHECK(sample.theta == doctest::Approx(0.38631860).epsilon(1e-7));
    CHECK(sample.tail_bound < 1e-3 * sample.theta);

    SUBCASE("strictly decreasing and log-convex in t") {
        auto disk = disk_spectrum(1.0, BoundaryCondition::dirichlet, 2000.0);
        std::vector<double> ts = {0.02, 0.05, 0.1, 0.3, 0.9};
        std::vector<double> logs;
        for (double t : ts) logs.push_back(std::log(heat_trace(disk, t).theta));
        for (std::size_t i = 0; i + 1 < logs.size(); ++i) CHECK(logs[i] > logs[i + 1]);
        // log-convexity on the equispaced-log triple would need equal gaps;
        // check the chord inequality pairwise instead
        for (std::size_t i = 0; i + 2 < ts.size(); ++i) {
            double lhs = std::log(heat_trace(disk, 0.5 * (ts[i] + ts[i + 2])).theta);
            double chord = 0.5 * (logs[i] + logs[i + 2]);
            CHECK(lhs <= chord + 1e-12);
        }
    }
    SUBCASE("hemisphere halves sum to the full sphere trace") {
        auto d = hemisphere_spectrum(BoundaryCondition::dirichlet, 3000.0);
        auto n = hemisphere_spectrum(BoundaryCondition::neumann, 3000.0);
        for (double t : {0.05, 0.2, 1.0}) {
            double sum = heat_trace(d, t).theta + heat_trace(n, t).theta;
            double full = 0.0;
            for (long long l = 0; l * (l + 1) <= 3000; ++l)
                full += (2.0 * l + 1.0) * std::exp(-static_cast<double>(l * (l + 1)) * t);
            CHECK(sum == doctest::Approx(full).epsilon(1e-13));
        }
    }
    SUBCASE("large-t limit is the zero-mode count") {
        auto neumann = hemisphere_spectrum(BoundaryCondition::neumann, 500.0);
        CHECK(heat_trace(neumann, 30.0).theta == doctest::Approx(1.0).epsilon(1e-12));
        auto dirichlet = hemisphere_spectrum(BoundaryCondition::dirichlet, 500.0);
        CHECK(heat_trace(dirichlet, 30.0).theta < 1e-12);
    }
    SUBCASE("small t with too small lambda_max is refused") {
        auto short_list = interval_spectrum(kPi, BoundaryCondition::dirichlet, 50.0);
        CHECK_THROWS_AS(heat_trace(short_list, 1e-4), std::runtime_error);
    }
}

TEST_CASE("csv round trip") {
    auto list = disk_spectrum(1.0, BoundaryCondition::dirichlet, 100.0);
    std::ostringstream os;
    write_spectrum_csv(os, list);
    std::istringstream is(os.str());
    auto parsed = read_spectrum_csv(is, 2, list.weyl_constant(), list.lambda_max(),
                                    {"disk", 0, "dirichlet"});
    REQUIRE(parsed.entries().size() == list.entries().size());
    for (std::size_t i = 0; i < parsed.entries().size(); ++i) {
        CHECK(parsed.entries()[i].lambda ==
              doctest::Approx(list.entries()[i].lambda).epsilon(1e-14));
        CHECK(parsed.entries()[i].multiplicity == list.entries()[i].multiplicity);
    }
}
