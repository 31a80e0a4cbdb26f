// The p-Laplacian operator and the implicit-Euler update identity relating
// the fixed-point step to generalized diffusion.

#include <doctest.h>

#include "plufg/diffusion.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace plufg;
using namespace testsup;

TEST_SUITE("diffusion") {

TEST_CASE("p-Laplacian on the toy instance is (-2, 2)") {
    const Graph g = toy_two_node();
    const Matrix Y = toy_signal();
    const Matrix d = p_laplacian_apply(g, Y, 2.0);
    CHECK(d(0, 0) == doctest::Approx(-2.0));
    CHECK(d(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("p = 2 reduces to the raw-degree normalized Laplacian") {
    Rng rng(61);
    for (int t = 0; t < 10; ++t) {
        const int n = 5 + static_cast<int>(rng.below(20));
        const Graph g = random_connected_graph(rng, n, n);
        const Matrix F = random_signal(rng, n, 3);
        const Matrix got = p_laplacian_apply(g, F, 2.0);

        // L_raw F with L_raw = I - D^{-1/2} W D^{-1/2}, raw degrees.
        Matrix want = F;
        const Vector& d = g.degrees_raw();
        for (int i = 0; i < n; ++i) {
            for (int e = g.row_ptr()[static_cast<std::size_t>(i)];
                 e < g.row_ptr()[static_cast<std::size_t>(i) + 1]; ++e) {
                const int j = g.col_idx()[static_cast<std::size_t>(e)];
                want.row(i) -= g.weights()[static_cast<std::size_t>(e)] /
                               std::sqrt(d(i) * d(j)) * F.row(j);
            }
        }
        CHECK((got - want).norm() <= 1e-10 * (1.0 + want.norm()));
    }
}

TEST_CASE("p-Laplacian agrees with the assembled divergence form") {
    Rng rng(62);
    const Graph g = random_connected_graph(rng, 14, 14);
    const Matrix F = random_signal(rng, 14, 2);
    const double p = 1.5;
    const double eps = 1e-8;

    const EdgeField grad = graph_gradient(g, F);
    EdgeField q;
    q.values = grad.values;
    for (int e = 0; e < g.num_entries(); ++e) {
        const double mag = std::max(grad.values.row(e).norm(), eps);
        q.values.row(e) *= std::pow(mag, p - 2.0);
    }
    const Matrix want = -0.5 * graph_divergence(g, q);
    CHECK((p_laplacian_apply(g, F, p, eps) - want).norm() <= 1e-10 * (1.0 + want.norm()));
}

TEST_CASE("constant signals are p-harmonic") {
    const Graph g = cycle_graph(9);
    const Matrix C = Matrix::Constant(9, 2, 4.2);
    for (double p : {1.0, 1.5, 2.0, 2.5}) {
        CHECK(p_laplacian_apply(g, C, p).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("update identity on the toy instance") {
    const Graph g = toy_two_node();
    const Matrix Y = toy_signal();
    PLapConfig cfg;
    cfg.p = 2.0;
    cfg.mu = 1.0;

    const Matrix lhs = euler_lhs(g, Y, Y, cfg);
    CHECK(lhs(0, 0) == doctest::Approx(1.0));
    CHECK(lhs(1, 0) == doctest::Approx(-1.0));

    const Matrix rhs = diffusion_rhs(g, Y, Y, cfg);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);

    // The historical flat-sum right side evaluates to (1, 1) here, a
    // Frobenius gap of exactly 2 against the true update.
    const Matrix lit = diffusion_rhs_literal(g, Y, Y, cfg);
    CHECK(lit(0, 0) == doctest::Approx(1.0));
    CHECK(lit(1, 0) == doctest::Approx(1.0));
    CHECK((lhs - lit).norm() == doctest::Approx(2.0));

    const DiffusionReport rep = verify_diffusion_identity(g, Y, Y, cfg);
    CHECK(rep.corrected_residual <= 1e-12);
    CHECK(rep.literal_residual == doctest::Approx(2.0 / rep.scale));
    CHECK(rep.scale == doctest::Approx(Y.norm()));
}

TEST_CASE("corrected identity holds across admissible profiles") {
    Rng rng(63);
    struct Combo {
        PhiVariant phi;
        double p;
    };
    const std::vector<Combo> combos = {
        {PhiVariant::power_p(), 1.5},      {PhiVariant::power_p(), 2.0},
        {PhiVariant::tikhonov(), 2.0},     {PhiVariant::tikhonov(), 1.5},
        {PhiVariant::identity(), 1.0},     {PhiVariant::log_diffusion(1.0), 2.0},
        {PhiVariant::soft_abs(1e-3), 2.0},
    };
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const int n = 6 + static_cast<int>(rng.below(20));
        const Graph g = random_connected_graph(rng, n, n);
        const Matrix F = random_signal(rng, n, 2);
        const Matrix F0 = random_signal(rng, n, 2);
        const Combo& cb = combos[static_cast<std::size_t>(t) % combos.size()];
        PLapConfig cfg;
        cfg.p = cb.p;
        cfg.phi = cb.phi;
        cfg.mu = 0.5 + 4.0 * rng.uniform();
        const DiffusionReport rep = verify_diffusion_identity(g, F, F0, cfg);
        worst = std::max(worst, rep.corrected_residual);
    }
    CHECK(worst <= 1e-9);
}

}  // TEST_SUITE("diffusion")
