#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <map>
#include <sstream>

#include "ocrp/montecarlo.hpp"
#include "ocrp/semigroup.hpp"

using namespace ocrp;

namespace {

// 4 sigma band for an empirical frequency.
void check_freq(double observed, double expected, std::int64_t n) {
    double se = std::sqrt(std::max(expected * (1 - expected), 1e-12) / double(n));
    INFO("observed " << observed << " expected " << expected << " se " << se);
    CHECK(std::abs(observed - expected) <= 4 * se + 1e-12);
}

}  // namespace

TEST_CASE("rng streams are deterministic and replica-keyed") {
    RngStream a(42, 0), b(42, 0), c(42, 1), d(7, 0);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t va = a.next();
        CHECK(va == b.next());
        CHECK(va != c.next());  // astronomically unlikely to collide repeatedly
        (void)d;
    }
    RngStream u(123, 5);
    for (int i = 0; i < 1000; ++i) {
        double x = u.uniform01();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("up and down steps preserve composition size") {
    RngStream rng(9, 0);
    std::vector<std::int64_t> parts{2, 1};
    up_step_inplace(parts, 3, 0.5, 0.0, rng);
    std::int64_t total = 0;
    for (std::int64_t p : parts) total += p;
    CHECK(total == 4);
    down_step_inplace(parts, 4, rng);
    total = 0;
    for (std::int64_t p : parts) total += p;
    CHECK(total == 3);
    for (std::int64_t p : parts) CHECK(p >= 1);
}

TEST_CASE("one updown step matches the exact kernel") {
    const std::int64_t n = 3, reps = 100000;
    Rational alpha(1, 2);
    KernelMatrix<Rational> T = updown_kernel(n, ChainParams<Rational>(alpha, 0));
    CompositionSpace space(n);
    Composition start{2, 1};
    std::size_t row = space.rank(start);

    std::vector<std::int64_t> counts(space.size(), 0);
    for (std::int64_t r = 0; r < reps; ++r) {
        RngStream rng(2024, static_cast<std::uint64_t>(r));
        std::vector<std::int64_t> parts = start.parts();
        step_updown(parts, n, 0.5, rng);
        ++counts[space.rank(Composition(parts))];
    }
    for (std::size_t c = 0; c < space.size(); ++c)
        check_freq(double(counts[c]) / double(reps), to_double(T.probs(row, c)), reps);
}

TEST_CASE("stationary sampler matches the exact law") {
    const std::int64_t n = 4, reps = 100000;
    std::vector<Rational> pi = stationary_alpha_zero<Rational>(n, Rational(1, 3));
    CompositionSpace space(n);
    std::vector<std::int64_t> counts(space.size(), 0);
    for (std::int64_t r = 0; r < reps; ++r) {
        RngStream rng(99, static_cast<std::uint64_t>(r));
        std::vector<std::int64_t> parts = sample_stationary_alpha_zero(n, 1.0 / 3.0, rng);
        ++counts[space.rank(Composition(parts))];
    }
    for (std::size_t c = 0; c < space.size(); ++c)
        check_freq(double(counts[c]) / double(reps), to_double(pi[c]), reps);
}

TEST_CASE("alpha-alpha stationary sampler matches the exact law") {
    const std::int64_t n = 3, reps = 60000;
    std::vector<Rational> pi = stationary_alpha_alpha<Rational>(n, Rational(1, 2));
    CompositionSpace space(n);
    std::vector<std::int64_t> counts(space.size(), 0);
    for (std::int64_t r = 0; r < reps; ++r) {
        RngStream rng(512, static_cast<std::uint64_t>(r));
        ++counts[space.rank(Composition(sample_stationary_alpha_alpha(n, 0.5, rng)))];
    }
    for (std::size_t c = 0; c < space.size(); ++c)
        check_freq(double(counts[c]) / double(reps), to_double(pi[c]), reps);
}

TEST_CASE("leftmost chain one-step law matches Q") {
    const std::int64_t n = 3, reps = 100000;
    KernelMatrix<Rational> Q = leftmost_kernel_Q<Rational>(n, Rational(1, 2));
    LeftmostChain chain(n, 0.5);
    for (std::int64_t i = 1; i <= n; ++i) {
        std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
        for (std::int64_t r = 0; r < reps; ++r) {
            RngStream rng(31 + static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(r));
            ++counts[static_cast<std::size_t>(chain.step(i, rng) - 1)];
        }
        for (std::int64_t j = 1; j <= n; ++j)
            check_freq(double(counts[static_cast<std::size_t>(j - 1)]) / double(reps),
                       to_double(Q.probs(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1))),
                       reps);
    }
}

TEST_CASE("both simulation methods agree with the exact two-step law") {
    const std::int64_t n = 3, reps = 60000, steps = 2;
    KernelMatrix<Rational> Q = leftmost_kernel_Q<Rational>(n, Rational(1, 2));
    Matrix<Rational> Q2 = multiply(Q.probs, Q.probs);
    const std::int64_t i0 = 2;
    for (LeftmostMethod method : {LeftmostMethod::q_chain, LeftmostMethod::full_chain}) {
        std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
        for (std::int64_t r = 0; r < reps; ++r) {
            RngStream rng(777, static_cast<std::uint64_t>(r));
            std::vector<std::int64_t> path =
                simulate_leftmost(n, 0.5, LeftmostInit::from_index(i0), steps, method, rng);
            REQUIRE(path.size() == static_cast<std::size_t>(steps) + 1);
            CHECK(path[0] == i0);
            ++counts[static_cast<std::size_t>(path.back() - 1)];
        }
        for (std::int64_t j = 1; j <= n; ++j)
            check_freq(double(counts[static_cast<std::size_t>(j - 1)]) / double(reps),
                       to_double(Q2(static_cast<std::size_t>(i0 - 1), static_cast<std::size_t>(j - 1))),
                       reps);
    }
}

TEST_CASE("sample sets are bit-identical for any thread count") {
    std::vector<double> t1 = sample_leftmost_fractions(25, 0.5, 10, 400, 4242, 1, LeftmostMethod::q_chain);
    std::vector<double> t4 = sample_leftmost_fractions(25, 0.5, 10, 400, 4242, 4, LeftmostMethod::q_chain);
    std::vector<double> t7 = sample_leftmost_fractions(25, 0.5, 10, 400, 4242, 7, LeftmostMethod::q_chain);
    CHECK(t1 == t4);
    CHECK(t1 == t7);
}

TEST_CASE("ks distance basics") {
    // all mass at 1/2 against the arcsine law: |F_hat(1/2) - F(1/2)| = 1 - 1/2
    std::vector<double> constant(100, 0.5);
    KsReport k = ks_distance(constant, 0.5, 0.5);
    CHECK(std::abs(k.statistic - 0.5) < 1e-12);
    CHECK(k.count == 100);
    CHECK(k.passes());  // no threshold set
    CHECK_FALSE(ks_distance(constant, 0.5, 0.5, 0.1).passes());
    CHECK(ks_distance(constant, 0.5, 0.5, 0.6).passes());

    // inverse-CDF beta draws pass comfortably at 5000 samples
    RngStream rng(5, 0);
    std::vector<double> draws(5000);
    for (double& x : draws) x = boost::math::ibeta_inv(0.75, 0.25, rng.uniform01());
    CHECK(ks_distance(draws, 0.75, 0.25).statistic < 0.03);
    // and fail against the wrong reference
    CHECK(ks_distance(draws, 0.25, 0.75).statistic > 0.2);
}

TEST_CASE("discrete ks against the exact two-state law") {
    // masses (1/2, 1/2) on {1/2, 1} match the arcsine CDF at both atoms
    KsReport k = ks_distance_discrete({0.5, 0.5}, 2, 0.5, 0.5);
    CHECK(std::abs(k.statistic) < 1e-12);
    // masses (3/4, 1/4): off by 1/4 at the first atom
    KsReport shifted = ks_distance_discrete({0.75, 0.25}, 2, 0.5, 0.5);
    CHECK(std::abs(shifted.statistic - 0.25) < 1e-12);
}

TEST_CASE("stationary leftmost fractions approach the beta law") {
    std::vector<double> values =
        sample_leftmost_fractions(60, 0.5, 0, 4000, 2026, 0, LeftmostMethod::q_chain);
    KsReport k = ks_distance(values, 0.5, 0.5);
    CHECK(k.statistic < 0.06);
}

TEST_CASE("scaling limit diagnostic rows") {
    std::vector<ConvergenceRow> rows = scaling_limit_diagnostic(0.5, {2, 3, 40}, 0.05, 2500, 11, 0);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].exact);
    CHECK(rows[1].exact);
    CHECK_FALSE(rows[2].exact);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].ks < 1e-12);  // the two-atom law matches the arcsine CDF at its atoms
    CHECK(rows[2].steps == static_cast<std::int64_t>(40 * 40 * 0.05));
    CHECK(rows[2].ks < 0.15);
    CHECK_THROWS_AS(scaling_limit_diagnostic(0.5, {1}, 0.05, 10, 1, 1), std::domain_error);
    CHECK_THROWS_AS(scaling_limit_diagnostic(0.5, {4}, 0.0, 10, 1, 1), std::domain_error);
}

TEST_CASE("eigen decay of the leftmost chain mean") {
    // E[f_2(Y_k)] = lambda_2^k f_2(i_0) exactly; empirical mean within 4 SE
    const std::int64_t n = 10, reps = 4000, k = 10, i0 = 5;
    auto [f, lambda] = eigenfunction(n, Rational(1, 2), 2);
    std::vector<double> fd(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) fd[j] = to_double(f[j]);

    std::vector<double> vals(reps);
    run_replicas(reps, 0, [&](std::int64_t r) {
        RngStream rng(606, static_cast<std::uint64_t>(r));
        std::vector<std::int64_t> path =
            simulate_leftmost(n, 0.5, LeftmostInit::from_index(i0), k, LeftmostMethod::q_chain, rng);
        vals[static_cast<std::size_t>(r)] = fd[static_cast<std::size_t>(path.back() - 1)];
    });
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= double(reps);
    double sd = 0;
    for (double v : vals) sd += (v - mean) * (v - mean);
    sd = std::sqrt(sd / double(reps - 1));
    double predicted = std::pow(to_double(lambda), double(k)) * fd[i0 - 1];
    CHECK(std::abs(mean - predicted) <= 4 * sd / std::sqrt(double(reps)));
}

TEST_CASE("samples csv format") {
    std::ostringstream out;
    write_samples_csv(out, {0.5, 0.25}, 12);
    CHECK(out.str() == "replica,step,value\n0,12,0.5\n1,12,0.25\n");
}
