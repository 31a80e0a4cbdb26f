// Framelet transforms: partition-of-unity validation, bank layout, perfect
// reconstruction, tightness, spectral responses, and the Chebyshev
// approximation path.

#include <doctest.h>

#include "plufg/framelet.hpp"
#include "test_support.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace plufg;
using namespace testsup;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("framelet") {

TEST_CASE("Haar scaling set satisfies the partition of unity") {
    const ScalingSet set = haar_scaling_set();
    REQUIRE(set.R() == 1);
    CHECK(validate_identity(set) <= 1e-9);
    CHECK(set.g[0](0.0) == doctest::Approx(1.0));
    CHECK(set.g[1](0.0) == doctest::Approx(0.0));
    CHECK(set.g[0](kPi) == doctest::Approx(0.0).scale(1.0));
    CHECK(set.g[1](kPi) == doctest::Approx(1.0));
}

TEST_CASE("validate_identity rejects broken scaling sets") {
    ScalingSet bad;
    bad.name = "constant-pair";
    bad.g = {[](double) { return 1.0; }, [](double) { return 1.0; }};  // sum = 2
    CHECK_THROWS_AS(validate_identity(bad), std::invalid_argument);

    ScalingSet swapped;  // partition holds but endpoints are exchanged
    swapped.name = "swapped-haar";
    swapped.g = {[](double xi) { return std::sin(xi / 2.0); },
                 [](double xi) { return std::cos(xi / 2.0); }};
    CHECK_THROWS_AS(validate_identity(swapped), std::invalid_argument);
}

TEST_CASE("coarsest_scale thresholds at pi") {
    CHECK(coarsest_scale(2.0, 2.0) == 0);
    CHECK(coarsest_scale(kPi, 2.0) == 0);
    CHECK(coarsest_scale(4.0, 2.0) == 1);
    CHECK(coarsest_scale(12.0, 2.0) == 2);
    CHECK_THROWS_AS(coarsest_scale(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(coarsest_scale(0.0, 2.0), std::invalid_argument);
}

TEST_CASE("bank layout: (0,J) first, then (r,l) for l = 0..J") {
    Rng rng(21);
    const Graph g = random_connected_graph(rng, 12, 12);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 2, 2.0);
    REQUIRE(sys.size() == 4);  // 1 + R * (J + 1) with R = 1, J = 2
    CHECK(sys.indices()[0].r == 0);
    CHECK(sys.indices()[0].level == 2);
    CHECK(sys.indices()[1].r == 1);
    CHECK(sys.indices()[1].level == 0);
    CHECK(sys.indices()[3].level == 2);
    CHECK(sys.find_index(0, 2) == 0);
    CHECK(sys.find_index(1, 1) == 2);
    CHECK_THROWS_AS(sys.find_index(0, 0), std::out_of_range);
    CHECK_THROWS_AS(sys.find_index(2, 0), std::out_of_range);
    CHECK(sys.coarsest() == 0);  // augmented spectrum always fits under pi
}

TEST_CASE("perfect reconstruction in exact mode") {
    Rng rng(22);
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
        const int n = 6 + static_cast<int>(rng.below(25));
        const Graph g = random_connected_graph(rng, n, n);
        const Matrix F = random_signal(rng, n, 3);
        for (int J : {1, 2}) {
            const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), J, 2.0);
            const Matrix back = sys.synthesize(sys.analyze(F));
            worst = std::max(worst, (back - F).norm() / F.norm());
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("tight frame: sum of W^T W is the identity") {
    Rng rng(23);
    const int n = 20;
    const Graph g = random_connected_graph(rng, n, n);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 2, 2.0);
    Matrix acc = Matrix::Zero(n, n);
    const Matrix I = Matrix::Identity(n, n);
    for (std::size_t k = 0; k < sys.size(); ++k) {
        acc += sys.apply_transpose(k, sys.apply(k, I));
    }
    CHECK((acc - I).norm() <= 1e-9 * std::sqrt(static_cast<double>(n)));
}

TEST_CASE("Parseval: analysis preserves the squared norm") {
    Rng rng(24);
    const Graph g = random_connected_graph(rng, 15, 15);
    const Matrix F = random_signal(rng, 15, 2);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    double total = 0.0;
    for (const Matrix& block : sys.analyze(F)) total += block.squaredNorm();
    CHECK(total == doctest::Approx(F.squaredNorm()).epsilon(1e-10));
}

TEST_CASE("squared responses sum to one at every frequency") {
    Rng rng(25);
    const Graph g = random_connected_graph(rng, 10, 10);
    for (int J : {1, 2, 3}) {
        const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), J, 2.0);
        for (int i = 0; i <= 64; ++i) {
            const double xi = kPi * i / 64.0;
            double acc = 0.0;
            for (std::size_t k = 0; k < sys.size(); ++k) {
                acc += sys.response(k, xi) * sys.response(k, xi);
            }
            CHECK(acc == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("low-pass response decreases, first high-pass increases") {
    Rng rng(26);
    const Graph g = random_connected_graph(rng, 10, 10);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    const std::size_t low = sys.find_index(0, 1);
    const std::size_t high0 = sys.find_index(1, 0);
    double prev_low = sys.response(low, 0.0);
    double prev_high = sys.response(high0, 0.0);
    CHECK(prev_low == doctest::Approx(1.0));
    CHECK(prev_high == doctest::Approx(0.0).scale(1.0));
    for (int i = 1; i <= 32; ++i) {
        const double xi = kPi * i / 32.0;
        const double lo = sys.response(low, xi);
        const double hi = sys.response(high0, xi);
        CHECK(lo <= prev_low + 1e-12);
        CHECK(hi >= prev_high - 1e-12);
        prev_low = lo;
        prev_high = hi;
    }
}

TEST_CASE("applying a bank entry to an eigenvector scales by its response") {
    Rng rng(27);
    const Graph g = random_connected_graph(rng, 14, 14);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    const Matrix& U = sys.eigenvectors();
    const Vector& lam = sys.eigenvalues();
    for (int i : {0, 5, 13}) {
        const Matrix v = U.col(i);
        for (std::size_t k = 0; k < sys.size(); ++k) {
            const Matrix got = sys.apply(k, v);
            const Matrix want = sys.response(k, lam(i)) * v;
            CHECK((got - want).norm() <= 1e-10);
        }
    }
}

TEST_CASE("high-pass blocks annihilate the constant signal on a regular graph") {
    // On a cycle the augmented kernel vector D~^{1/2} 1 is the constant
    // vector, and every high-pass chain carries a g_r(0) = 0 factor.
    const Graph g = cycle_graph(12);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 2, 2.0);
    const Matrix ones = Matrix::Ones(12, 1);
    for (std::size_t k = 1; k < sys.size(); ++k) {
        CHECK(sys.apply(k, ones).norm() <= 1e-10);
    }
    // The low-pass chain preserves it (response 1 at xi = 0).
    CHECK((sys.apply(0, ones) - ones).norm() <= 1e-10);
}

TEST_CASE("exact mode is guarded against large graphs") {
    const Graph big = path_graph(3001);
    CHECK_THROWS_AS(FrameletSystem::exact(big, haar_scaling_set(), 1, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(FrameletSystem::exact(triangle(), haar_scaling_set(), -1, 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(FrameletSystem::exact(triangle(), haar_scaling_set(), 1, 1.0),
                    std::invalid_argument);
}

TEST_CASE("synthesize validates block count and shapes") {
    Rng rng(28);
    const Graph g = random_connected_graph(rng, 8, 8);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    const Matrix F = random_signal(rng, 8, 2);
    std::vector<Matrix> blocks = sys.analyze(F);
    std::vector<Matrix> missing(blocks.begin(), blocks.end() - 1);
    CHECK_THROWS_AS(sys.synthesize(missing), std::invalid_argument);
    blocks[1] = Matrix::Zero(7, 2);
    CHECK_THROWS_AS(sys.synthesize(blocks), std::invalid_argument);
}

TEST_CASE("chebyshev_coefficients: constants and interpolation accuracy") {
    const auto c1 = chebyshev_coefficients([](double) { return 1.0; }, 3, 1.0);
    REQUIRE(c1.size() == 4);
    CHECK(c1[0] == doctest::Approx(1.0));
    for (std::size_t j = 1; j < c1.size(); ++j) {
        CHECK(std::abs(c1[j]) <= 1e-12);
    }

    const auto f = [](double xi) { return std::cos(xi / 2.0); };
    const auto c7 = chebyshev_coefficients(f, 7, 1.0);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double xi = kPi * i / 100.0;
        worst = std::max(worst, std::abs(chebyshev_evaluate(c7, xi, 1.0) - f(xi)));
    }
    CHECK(worst <= 1e-7);
    CHECK_THROWS_AS(chebyshev_evaluate({}, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("chebyshev transform error shrinks with the degree") {
    Rng rng(29);
    const Graph g = random_connected_graph(rng, 40, 50);
    const Matrix F = random_signal(rng, 40, 2);
    const FrameletSystem exact = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    double prev = 1e100;
    for (int degree : {2, 3, 7}) {
        const FrameletSystem cheb =
            FrameletSystem::chebyshev(g, haar_scaling_set(), 1, 2.0, degree);
        double worst = 0.0;
        for (std::size_t k = 0; k < exact.size(); ++k) {
            worst = std::max(worst,
                             (cheb.apply(k, F) - exact.apply(k, F)).norm() / F.norm());
        }
        CHECK(worst <= prev + 1e-12);
        prev = worst;
        if (degree == 7) CHECK(worst <= 1e-2);
    }
}

TEST_CASE("chebyshev apply error is bounded by the scalar response error") {
    Rng rng(30);
    const Graph g = random_connected_graph(rng, 25, 30);
    const Matrix F = random_signal(rng, 25, 3);
    const FrameletSystem exact = FrameletSystem::exact(g, haar_scaling_set(), 2, 2.0);
    const FrameletSystem cheb = FrameletSystem::chebyshev(g, haar_scaling_set(), 2, 2.0, 5);
    const Vector& lam = exact.eigenvalues();
    for (std::size_t k = 0; k < exact.size(); ++k) {
        double resp_err = 0.0;
        for (int i = 0; i < lam.size(); ++i) {
            resp_err = std::max(resp_err,
                                std::abs(cheb.response(k, lam(i)) - exact.response(k, lam(i))));
        }
        const double apply_err = (cheb.apply(k, F) - exact.apply(k, F)).norm();
        CHECK(apply_err <= resp_err * F.norm() + 1e-9);
    }
}

TEST_CASE("chebyshev mode reconstructs accurately at degree 12") {
    Rng rng(31);
    const Graph g = random_connected_graph(rng, 30, 35);
    const Matrix F = random_signal(rng, 30, 2);
    const FrameletSystem sys = FrameletSystem::chebyshev(g, haar_scaling_set(), 1, 2.0, 12);
    const Matrix back = sys.synthesize(sys.analyze(F));
    CHECK((back - F).norm() / F.norm() <= 1e-6);
    CHECK_THROWS_AS(sys.eigenvectors(), std::logic_error);
    CHECK_THROWS_AS(sys.eigenvalues(), std::logic_error);
}

TEST_CASE("save_coefficients writes one CSV per bank entry") {
    Rng rng(32);
    const Graph g = random_connected_graph(rng, 9, 9);
    const Matrix F = random_signal(rng, 9, 2);
    const FrameletSystem sys = FrameletSystem::exact(g, haar_scaling_set(), 1, 2.0);
    const ScratchDir dir("coeff");
    sys.save_coefficients(F, dir.str());
    CHECK(std::filesystem::exists(dir.file("coeff_r0_l1.csv")));
    CHECK(std::filesystem::exists(dir.file("coeff_r1_l0.csv")));
    CHECK(std::filesystem::exists(dir.file("coeff_r1_l1.csv")));
}

}  // TEST_SUITE("framelet")
