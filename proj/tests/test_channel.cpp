#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "sbvsim/channel.hpp"
#include "sbvsim/csvio.hpp"
#include "sbvsim/errors.hpp"

using namespace sbvsim;

namespace {

CableModelParams make(double k1, double k2, double kx = -45.0) {
    CableModelParams p;
    p.k1_db_km_sqrtmhz = k1;
    p.k2_db_km_mhz = k2;
    p.kx_db = kx;
    return p;
}

} // namespace

TEST_CASE("insertion loss: zero-length loop") {
    CHECK(insertion_loss_db(make(20, 0), 1e6, 0.0) == 0.0);
}

TEST_CASE("insertion loss: direct evaluations") {
    CHECK(insertion_loss_db(make(20, 0), 1e6, 500.0) == doctest::Approx(10.0));
    CHECK(insertion_loss_db(make(20, 2), 4e6, 1000.0) == doctest::Approx(48.0));
}

TEST_CASE("insertion loss: additivity over cascaded length") {
    const auto p = make(13.7, 1.1);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> fu(1e4, 190e6), du(0.0, 2000.0);
    for (int i = 0; i < 200; ++i) {
        const double f = fu(rng);
        const double d1 = du(rng), d2 = du(rng);
        const double split =
            insertion_loss_db(p, f, d1) + insertion_loss_db(p, f, d2);
        CHECK(insertion_loss_db(p, f, d1 + d2) ==
              doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("insertion loss: domain rejection") {
    const auto p = make(20, 2);
    CHECK_THROWS_AS(insertion_loss_db(p, 0.0, 100.0), domain_error);
    CHECK_THROWS_AS(insertion_loss_db(p, -1e6, 100.0), domain_error);
    CHECK_THROWS_AS(insertion_loss_db(p, 200.1e6, 100.0), domain_error);
    CHECK_THROWS_AS(insertion_loss_db(p, 1e6, -5.0), domain_error);
    // the validity edge itself is accepted
    CHECK_NOTHROW(insertion_loss_db(p, 200e6, 100.0));
}

TEST_CASE("direct gain: identity and decades") {
    const auto p = make(20, 0);
    CHECK(direct_gain(p, 3.3e6, 0.0) == 1.0);
    CHECK(direct_gain(p, 1e6, 500.0) == doctest::Approx(0.1));
    CHECK(direct_gain(p, 1e6, 1500.0) == doctest::Approx(0.001));
}

TEST_CASE("fext gain: no disturbers, no crosstalk") {
    const auto p = make(20, 2);
    CHECK(fext_gain(p, 5e6, 300.0, 0) == 0.0);
    CHECK(fext_gain(p, 5e6, 0.0, 30) == 0.0);
}

TEST_CASE("fext gain: frequency-squared scaling") {
    const auto p = make(14, 1);
    const double lo = fext_gain(p, 6e6, 400.0, 20);
    const double hi = fext_gain(p, 12e6, 400.0, 20);
    // remove the direct-gain part, the coupling itself scales with f^2
    const double lo_c = lo / direct_gain(p, 6e6, 400.0);
    const double hi_c = hi / direct_gain(p, 12e6, 400.0);
    CHECK(hi_c == doctest::Approx(4.0 * lo_c).epsilon(1e-12));
}

TEST_CASE("fext gain: reference-point evaluation") {
    auto p = make(0, 0, -45.0);
    // direct gain 0.1 via k1 alone at 1 MHz, 1000 m
    p.k1_db_km_sqrtmhz = 10.0;
    const double g = fext_gain(p, 1e6, 1000.0, 49);
    CHECK(g == doctest::Approx(0.1 * std::pow(10.0, -4.5)).epsilon(1e-12));
}

TEST_CASE("fext gain: bounded by the 49-disturber envelope") {
    const auto p = make(9, 0.7, -30.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> fu(1e5, 100e6), du(1.0, 1500.0);
    std::uniform_int_distribution<int> nu(0, 49);
    for (int i = 0; i < 200; ++i) {
        const double f = fu(rng), d = du(rng);
        const int n = nu(rng);
        const double envelope = direct_gain(p, f, d) *
                                std::pow(10.0, p.kx_db / 10.0) *
                                (f / p.f0_hz) * (f / p.f0_hz) * (d / p.d0_m);
        CHECK(fext_gain(p, f, d, n) <= envelope * (1.0 + 1e-12));
    }
}

TEST_CASE("fext gain: negative disturber count rejected") {
    CHECK_THROWS_AS(fext_gain(make(20, 2), 1e6, 100.0, -1), domain_error);
}

TEST_CASE("cable parameter file round trip") {
    const char* path = "test_cable_ok.cable";
    atomic_write_file(path,
                      "[cable]\nk1 = 7.5\nk2 = 0.9\nkx_db = -38\n"
                      "f0_hz = 1e6\nd0_m = 500\nf_valid_max_hz = 100e6\n");
    const auto p = load_cable_file(path);
    CHECK(p.k1_db_km_sqrtmhz == 7.5);
    CHECK(p.k2_db_km_mhz == 0.9);
    CHECK(p.kx_db == -38.0);
    CHECK(p.d0_m == 500.0);
    CHECK(p.f_valid_max_hz == 100e6);
    std::remove(path);
}

TEST_CASE("cable parameter file: unknown key is a hard error") {
    const char* path = "test_cable_bad.cable";
    atomic_write_file(path, "[cable]\nk1 = 7.5\nbogus = 1\n");
    CHECK_THROWS_AS(load_cable_file(path), validation_error);
    std::remove(path);
}

TEST_CASE("cable parameter file: positive coupling rejected") {
    const char* path = "test_cable_kx.cable";
    atomic_write_file(path, "[cable]\nkx_db = 3\n");
    CHECK_THROWS_AS(load_cable_file(path), validation_error);
    std::remove(path);
}
