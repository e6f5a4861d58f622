#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fluxon/bessel.hpp"
#include "fluxon/disk.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/fit.hpp"

using namespace fluxon;
using namespace fluxon::disk;

namespace {

std::vector<double> sorted_energies(const DiskSpectrum& s) {
    std::vector<double> e;
    e.reserve(s.levels.size());
    for (const auto& lv : s.levels) e.push_back(lv.energy);
    return e;  // already ascending by construction
}

}  // namespace

TEST_CASE("effective order realizes the shift rule") {
    CHECK(effective_order(0, 0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(effective_order(-1, 0.3) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(effective_order(2, 0.0) == 2.0);
    CHECK(effective_order(5, 0.25) == doctest::Approx(5.25).epsilon(1e-15));
    CHECK(effective_order(-5, 0.25) == doctest::Approx(4.75).epsilon(1e-15));
    CHECK_THROWS_AS(effective_order(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(effective_order(0, -0.1), std::domain_error);
}

TEST_CASE("zero-flux ground level of the disk") {
    const DiskSpectrum s = disk_spectrum(0.0, 7.0, 6, 5);
    REQUIRE(!s.levels.empty());
    const double j01 = bessel_zero(0.0, 1);
    CHECK(s.levels.front().l == 0);
    CHECK(s.levels.front().k == 1);
    CHECK(s.levels.front().energy == doctest::Approx(j01 * j01 / 98.0).epsilon(1e-13));
    // +/-l degeneracy at zero flux
    int negative = 0, positive = 0;
    for (const auto& lv : s.levels) {
        if (lv.l > 0) ++positive;
        if (lv.l < 0) ++negative;
    }
    CHECK(positive == negative);
}

TEST_CASE("order multiset is flux-periodic and flux-even") {
    const auto base = sorted_energies(disk_spectrum(0.3, 6.0, 8, 6));
    for (const double alpha : {1.3, -0.7, 0.3 + 2.0}) {
        const auto other = sorted_energies(disk_spectrum(alpha, 6.0, 8, 6));
        REQUIRE(other.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            CHECK(other[i] == doctest::Approx(base[i]).epsilon(1e-12));
    }
    // reflection alpha -> 1 - alpha maps l -> -l-1 and preserves the multiset
    const auto reflected = sorted_energies(disk_spectrum(0.7, 6.0, 8, 6));
    REQUIRE(reflected.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(reflected[i] == doctest::Approx(base[i]).epsilon(1e-12));

    // binary-exact fractions reproduce bitwise
    const auto exact_base = sorted_energies(disk_spectrum(0.25, 6.0, 8, 6));
    const auto exact_shift = sorted_energies(disk_spectrum(1.25, 6.0, 8, 6));
    REQUIRE(exact_base.size() == exact_shift.size());
    for (std::size_t i = 0; i < exact_base.size(); ++i)
        CHECK(exact_base[i] == exact_shift[i]);
}

TEST_CASE("half flux pairs channels l and -l-1 exactly") {
    const DiskSpectrum s = disk_spectrum(0.5, 6.0, 7, 5);
    REQUIRE(s.levels.size() % 2 == 0);
    for (std::size_t i = 0; i + 1 < s.levels.size(); i += 2) {
        CHECK(s.levels[i].energy == s.levels[i + 1].energy);
        CHECK(s.levels[i].l + s.levels[i + 1].l == -1);
        CHECK(s.levels[i].nu == s.levels[i + 1].nu);
    }
}

TEST_CASE("fill_states sums the lowest levels") {
    const DiskSpectrum s = disk_spectrum(0.0, 5.0, 14, 8);
    const double j01 = bessel_zero(0.0, 1), j11 = bessel_zero(1.0, 1);
    const double e0 = j01 * j01 / 50.0, e1 = j11 * j11 / 50.0;
    CHECK(fill_states(s, 1) == doctest::Approx(e0).epsilon(1e-13));
    CHECK(fill_states(s, 3) == doctest::Approx(e0 + 2.0 * e1).epsilon(1e-13));
    double prev = 0.0;
    for (int n = 1; n <= 30; ++n) {
        const double e = fill_states(s, n);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("fill_states guards its cutoffs") {
    const DiskSpectrum s = disk_spectrum(0.0, 5.0, 3, 2);
    CHECK_THROWS_AS(fill_states(s, static_cast<int>(s.levels.size())), CutoffError);
    CHECK_THROWS_AS(fill_states(s, 10000), CutoffError);
    CHECK_THROWS_AS(fill_states(s, 0), std::domain_error);
}

TEST_CASE("closed shells have open gaps") {
    const DiskSpectrum s = disk_spectrum(0.0, 8.0, 14, 9);
    const int n = closed_shell_near(s, 40, 1e-8);
    CHECK(std::abs(n - 40) <= 8);
    CHECK(fermi_gap(s, n) >= 1e-8);
}

TEST_CASE("insertion energy vanishes at integer flux") {
    CHECK(insertion_energy_numeric(0.0, 10.0, 20) == 0.0);
    CHECK(insertion_energy_numeric(1.0, 10.0, 20) == 0.0);
    CHECK(insertion_energy_numeric(-2.0, 10.0, 20) == 0.0);
}

TEST_CASE("numeric insertion energy is periodic and reflective") {
    const double radius = 12.0;
    const int n = choose_filling(radius, 0.1);
    for (const double alpha : {0.3, 0.45}) {
        const double base = insertion_energy_numeric(alpha, radius, n);
        CHECK(base > 0.0);
        CHECK(std::abs(insertion_energy_numeric(alpha + 1.0, radius, n) - base) < 1e-9);
        CHECK(std::abs(insertion_energy_numeric(1.0 - alpha, radius, n) - base) < 1e-9);
        CHECK(std::abs(insertion_energy_numeric(-alpha, radius, n) - base) < 1e-9);
    }
}

TEST_CASE("level-pair shifts are positive and quadratic in the flux") {
    // Sum over a +/-|l| pair at fixed (l, k) against the zero-flux pair;
    // the quadratic law holds pairwise even though single channels shift
    // linearly. Frozen radius R = 9.
    const double r2 = 2.0 * 81.0;
    std::vector<double> alpha2, shift;
    for (int l = 1; l <= 4; ++l) {
        for (int k = 1; k <= 3; ++k) {
            const double e0 = std::pow(bessel_zero(static_cast<double>(l), k), 2) / r2;
            alpha2.clear();
            shift.clear();
            for (const double a : {0.05, 0.1, 0.15, 0.2, 0.25}) {
                const double ep = std::pow(bessel_zero(l + a, k), 2) / r2;
                const double em = std::pow(bessel_zero(l - a, k), 2) / r2;
                const double pair = ep + em - 2.0 * e0;
                CHECK(pair > 0.0);
                alpha2.push_back(a * a);
                shift.push_back(pair);
            }
            const FitResult fit = linear_fit(alpha2, shift);
            CHECK(fit.r_squared > 0.95);
        }
    }
}

TEST_CASE("spectrum enumeration respects the order cap") {
    CHECK_THROWS_AS(disk_spectrum(0.3, 10.0, 250, 4), CutoffError);
    CHECK_THROWS_AS(insertion_energy_numeric(0.5, 200.0, 9500), CutoffError);
}
