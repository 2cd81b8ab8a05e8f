#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ocrp/semigroup.hpp"

using namespace ocrp;

namespace {

Rational half() { return Rational(1, 2); }

}  // namespace

TEST_CASE("U_t scales eigenpolynomials by exponential factors") {
    Rational a = half();
    Polynomial<Rational> h2 = jacobi_h<Rational>(2, a);
    for (double t : {0.0, 0.01, 0.5, 2.0}) {
        Polynomial<double> ut = U_t(h2, t, a);
        Polynomial<double> expected = to_double_polynomial(h2) * std::exp(-2.0 * t);
        CHECK(grid_distance(ut, expected) < 1e-15);
    }
    // constants are invariant
    Polynomial<double> c = U_t(Polynomial<Rational>::constant(Rational(5, 3)), 1.2, a);
    CHECK(grid_distance(c, Polynomial<double>::constant(5.0 / 3.0)) < 1e-15);
    CHECK_THROWS_AS(U_t(h2, -0.1, a), std::domain_error);
    CHECK_THROWS_AS(U_t(Polynomial<Rational>::monomial(1), 0.1, a), std::domain_error);
}

TEST_CASE("U_t preserves the eta kernel") {
    Rational a(1, 3);
    Polynomial<Rational> f = jacobi_h<Rational>(4, a) * Rational(2) +
                             jacobi_h<Rational>(2, a) * Rational(-1, 5) +
                             Polynomial<Rational>::constant(Rational(7, 2));
    for (double t : {0.05, 0.7}) {
        Polynomial<double> ut = U_t(f, t, a);
        CHECK(std::abs(eta_normalized(ut, 1.0 / 3.0)) < 1e-12);
    }
}

TEST_CASE("discrete eigensystem at n = 2") {
    DiscreteEigenSystem sys = discrete_eigensystem(2, half());
    REQUIRE(sys.indices == std::vector<std::int64_t>{0, 2});
    CHECK(sys.eigenvalues[0] == 1);
    CHECK(sys.eigenvalues[1] == Rational(2, 3));
    CHECK(sys.vectors(0, 0) == 1);
    CHECK(sys.vectors(1, 0) == 1);
    CHECK(sys.vectors(0, 1) == -Rational(3, 8));
    CHECK(sys.vectors(1, 1) == Rational(3, 8));
    CHECK(multiply(sys.vectors, sys.inverse) == Matrix<Rational>::identity(2));
}

TEST_CASE("discrete eigensystem spans every n up to 8") {
    for (std::int64_t n = 1; n <= 8; ++n) {
        DiscreteEigenSystem sys = discrete_eigensystem(n, Rational(2, 5));
        CHECK(static_cast<std::int64_t>(sys.indices.size()) == n);
        // construction already verified Q f_m = lambda_m f_m exactly
        KernelMatrix<Rational> q = leftmost_kernel_Q<Rational>(n, Rational(2, 5));
        for (std::size_t s = 0; s < sys.indices.size(); ++s) {
            std::vector<Rational> f(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = sys.vectors(i, s);
            CHECK(multiply(q.probs, f) == [&] {
                std::vector<Rational> scaled = f;
                for (Rational& v : scaled) v *= sys.eigenvalues[s];
                return scaled;
            }());
        }
    }
}

TEST_CASE("discrete semigroup at n = 2 has the closed form") {
    double t = 0.3;
    Matrix<double> s = discrete_semigroup(2, half(), t);
    double e = std::exp(-2.0 * t);
    CHECK(std::abs(s(0, 0) - (1 + e) / 2) < 1e-14);
    CHECK(std::abs(s(0, 1) - (1 - e) / 2) < 1e-14);
    CHECK(std::abs(s(1, 0) - (1 - e) / 2) < 1e-14);
    CHECK(std::abs(s(1, 1) - (1 + e) / 2) < 1e-14);

    double thalf = std::log(2.0) / 2.0;
    Matrix<double> sh = discrete_semigroup(2, half(), thalf);
    CHECK(std::abs(sh(0, 1) - 0.25) < 1e-14);
}

TEST_CASE("discrete semigroup is stochastic and a semigroup") {
    for (std::int64_t n : {1, 3, 6}) {
        DiscreteEigenSystem sys = discrete_eigensystem(n, Rational(1, 3));
        Matrix<double> s0 = discrete_semigroup(sys, 0.0);
        for (std::size_t i = 0; i < s0.rows(); ++i)
            for (std::size_t j = 0; j < s0.cols(); ++j)
                CHECK(std::abs(s0(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);

        Matrix<double> st = discrete_semigroup(sys, 0.2);
        Matrix<double> ss = discrete_semigroup(sys, 0.5);
        Matrix<double> sts = discrete_semigroup(sys, 0.7);
        CHECK(max_abs_diff(multiply(st, ss), sts) < 1e-10);

        for (const double& sum : st.row_sums()) CHECK(std::abs(sum - 1.0) < 1e-12);
        for (std::size_t i = 0; i < st.rows(); ++i)
            for (std::size_t j = 0; j < st.cols(); ++j) CHECK(st(i, j) > -1e-12);
    }
}

TEST_CASE("semigroup relation U_t K = K S(t)") {
    for (std::int64_t n : {1, 2, 6}) {
        for (double t : {0.01, 0.5}) {
            SimReport r = verify_semigroup_relation(n, half(), t);
            INFO("n = " << n << " t = " << t);
            CHECK(r.ok);
        }
    }
}

TEST_CASE("eigenfunction accessor") {
    auto [f, lambda] = eigenfunction(10, half(), 3);
    CHECK(lambda == Rational(52, 55));
    CHECK(f.size() == 10);

    auto [f0, l0] = eigenfunction(4, half(), 0);
    CHECK(l0 == 1);
    CHECK(f0 == std::vector<Rational>(4, Rational(1)));

    CHECK_THROWS_WITH(eigenfunction(10, half(), 1), Catch::Matchers::ContainsSubstring("degenerate"));
    CHECK_THROWS_AS(eigenfunction(10, half(), 11), std::domain_error);
    CHECK_THROWS_AS(eigenfunction(10, half(), -2), std::domain_error);
}

TEST_CASE("boundary report for eigenpolynomials") {
    SimReport r2 = boundary_checks(jacobi_h<Rational>(2, half()), half());
    CHECK(r2.ok);
    SimReport r5 = boundary_checks(jacobi_h<Rational>(5, Rational(1, 3)), Rational(1, 3));
    CHECK(r5.ok);
    SimReport rc = boundary_checks(Polynomial<Rational>::constant(2), Rational(3, 4));
    CHECK(rc.ok);
    SimReport bad = boundary_checks(Polynomial<Rational>::monomial(1), half());
    CHECK_FALSE(bad.ok);
}

TEST_CASE("eta values on (1-x)^j and unboundedness") {
    // hand values at alpha = 1/2: eta((1-x)) = -1, eta((1-x)^2) = -3/2
    Rational a = half();
    Polynomial<Rational> one_minus_x(std::vector<Rational>{1, -1});
    CHECK(eta_normalized(one_minus_x, a) == -1);
    CHECK(eta_normalized(one_minus_x * one_minus_x, a) == -Rational(3, 2));

    SimReport r = verify_eta_unboundedness(a, 50);
    CHECK(r.ok);
    SimReport r3 = verify_eta_unboundedness(Rational(1, 4), 50);
    CHECK(r3.ok);
}

TEST_CASE("spectrum report") {
    SimReport r = verify_spectrum(5, Rational(1, 3));
    CHECK(r.ok);
    bool saw = false;
    for (const auto& [k, v] : r.metrics)
        if (k == "lambda_m3") {
            CHECK(v == "4/5");  // 1 - 6/30
            saw = true;
        }
    CHECK(saw);
}
