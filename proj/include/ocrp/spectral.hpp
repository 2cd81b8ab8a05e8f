#ifndef OCRP_SPECTRAL_HPP
#define OCRP_SPECTRAL_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chains.hpp"
#include "polynomial.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace ocrp {

// Normalized boundary functional on polynomials:
//   eta(sum a_k x^k) = sum_(k>=1) a_k (1-alpha)_(k-1) / (k-1)!.
// eta(1) = 0 and eta(x) = 1; H is its kernel.
template <class S>
inline S eta_normalized(const Polynomial<S>& f, const S& alpha) {
    S value(0), weight(1);
    for (std::int64_t k = 1; k <= f.degree(); ++k) {
        value += f.coefficient(k) * weight;
        weight *= (S(static_cast<int>(k)) - alpha) / S(static_cast<int>(k));
    }
    return value;
}

template <class S>
struct HMembership {
    S eta;
    bool in_kernel;
};

template <class S>
inline HMembership<S> h_membership(const Polynomial<S>& f, const S& alpha) {
    S e = eta_normalized(f, alpha);
    return HMembership<S>{e, e == S(0)};
}

// x(1-x) f'' - alpha f'.
template <class S>
inline Polynomial<S> generator_B(const Polynomial<S>& f, const S& alpha) {
    Polynomial<S> x1mx(std::vector<S>{S(0), S(1), S(-1)});
    Polynomial<S> df = f.derivative();
    return x1mx * df.derivative() - df * alpha;
}

// Jacobi-type eigenpolynomial of the generator:
//   h_m(x) = sum_(s=0)^m x^s (-1)^(m-s) (m-1)_s / s! * (s-alpha)_(m-s) / (m-s)!,
// satisfying B h_m = -m(m-1) h_m. h_0 = 1 and h_1 is the constant alpha
// (degenerate), so the eigen index set is {0} union {2, 3, ...}.
template <class S>
inline Polynomial<S> jacobi_h(std::int64_t m, const S& alpha) {
    if (m < 0) throw std::domain_error("jacobi index must be >= 0");
    std::vector<S> c(static_cast<std::size_t>(m) + 1, S(0));
    for (std::int64_t s = 0; s <= m; ++s) {
        S term = rising_factorial(S(static_cast<int>(m - 1)), s) /
                 scalar_from_rational<S>(Rational(factorial(s)));
        term *= rising_factorial(S(static_cast<int>(s)) - alpha, m - s) /
                scalar_from_rational<S>(Rational(factorial(m - s)));
        if ((m - s) % 2 != 0) term = -term;
        c[static_cast<std::size_t>(s)] = term;
    }
    return Polynomial<S>(std::move(c));
}

// binom(k,i) x^i (1-x)^(k-i); identically zero outside 0 <= i <= k.
template <class S>
inline Polynomial<S> bernstein(std::int64_t i, std::int64_t k) {
    if (i < 0 || i > k) return Polynomial<S>();
    std::vector<S> c(static_cast<std::size_t>(k) + 1, S(0));
    S lead = scalar_from_rational<S>(Rational(binomial(k, i)));
    for (std::int64_t j = 0; j <= k - i; ++j) {
        S term = lead * scalar_from_rational<S>(Rational(binomial(k - i, j)));
        c[static_cast<std::size_t>(i + j)] = (j % 2 == 0) ? term : -term;
    }
    return Polynomial<S>(std::move(c));
}

// Degenerate Bernstein polynomial on the n-lattice:
//   b*(x) = binom(k,i) (nx)^(falling i) (n-nx)^(falling k-i) / n^(falling k).
template <class S>
inline Polynomial<S> degenerate_bernstein(std::int64_t i, std::int64_t k, std::int64_t n) {
    if (!(0 <= i && i <= k && k <= n)) throw std::domain_error("need 0 <= i <= k <= n");
    Polynomial<S> out =
        Polynomial<S>::constant(scalar_from_rational<S>(Rational(binomial(k, i))) /
                                falling_factorial(S(static_cast<int>(n)), k));
    for (std::int64_t r = 0; r < i; ++r)
        out = out * Polynomial<S>(std::vector<S>{S(static_cast<int>(-r)), S(static_cast<int>(n))});
    for (std::int64_t s = 0; s < k - i; ++s)
        out = out * Polynomial<S>(std::vector<S>{S(static_cast<int>(n - s)), S(static_cast<int>(-n))});
    return out;
}

// Coefficients of f in the Bernstein-n basis, via the lattice degree-raise
//   x^k = sum_j (j^(falling k) / n^(falling k)) b_(j,n):
// d_j = sum_k a_k j^(falling k) / n^(falling k), O(deg) per j. Requires
// deg f <= n.
template <class S>
inline std::vector<S> bernstein_coefficients(const Polynomial<S>& f, std::int64_t n) {
    if (f.degree() > n) throw std::domain_error("polynomial degree exceeds the basis size n");
    std::vector<S> d(static_cast<std::size_t>(n) + 1, S(0));
    for (std::int64_t j = 0; j <= n; ++j) {
        S term(1);
        for (std::int64_t k = 0; k <= f.degree(); ++k) {
            if (f.coefficient(k) != S(0)) d[static_cast<std::size_t>(j)] += f.coefficient(k) * term;
            if (k == f.degree()) break;
            term *= S(static_cast<int>(j - k)) / S(static_cast<int>(n - k));
            // j^(falling k) vanishes for all larger k.
            if (term == S(0)) break;
        }
    }
    return d;
}

template <class S>
inline Polynomial<S> from_bernstein(const std::vector<S>& d, std::int64_t k) {
    if (d.size() != static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("coefficient count must be k+1");
    Polynomial<S> out;
    for (std::int64_t i = 0; i <= k; ++i)
        if (d[static_cast<std::size_t>(i)] != S(0))
            out = out + bernstein<S>(i, k) * d[static_cast<std::size_t>(i)];
    return out;
}

// K g = sum_(i=1)^n g(i) (b_(i,n) + q(i) b_(0,n)): the polynomial kernel
// carrying functions on {1..n} into H.
template <class S>
inline Polynomial<S> K_apply(std::int64_t n, const Rational& alpha, const std::vector<S>& g) {
    if (n < 1) throw std::domain_error("kernel requires n >= 1");
    if (g.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("g must have n entries");
    std::vector<S> q = leftmost_stationary_q<S>(n, alpha);
    Polynomial<S> out;
    S weight0(0);
    for (std::int64_t i = 1; i <= n; ++i) {
        const S& gi = g[static_cast<std::size_t>(i - 1)];
        if (gi == S(0)) continue;
        out = out + bernstein<S>(i, n) * gi;
        weight0 += q[static_cast<std::size_t>(i - 1)] * gi;
    }
    if (weight0 != S(0)) out = out + bernstein<S>(0, n) * weight0;
    return out;
}

// Inverse of K on its range: the Bernstein-n coefficients d_1..d_n of f.
// Rejects polynomials of degree > n and polynomials outside the eta kernel,
// naming the violated condition.
inline std::vector<Rational> K_inverse(std::int64_t n, const Rational& alpha,
                                       const Polynomial<Rational>& f) {
    if (n < 1) throw std::domain_error("kernel requires n >= 1");
    if (f.degree() > n)
        throw std::domain_error("not in the kernel range: polynomial degree exceeds n");
    if (eta_normalized(f, alpha) != 0)
        throw std::domain_error("not in the kernel range: eta functional is nonzero");
    std::vector<Rational> d = bernstein_coefficients(f, n);
    return std::vector<Rational>(d.begin() + 1, d.end());
}

// B b_(i,n) = n(n+1) sum_k (y(k,i) - 1(k=i)) b_(k,n), checked exactly as
// polynomial identities for every 0 <= i <= n.
inline SimReport verify_generator_on_bernstein(std::int64_t n, const Rational& alpha) {
    SimReport report;
    report.command = "verify.generator-bernstein";
    report.param("n", n);
    report.param("alpha", alpha);
    Rational scale = Rational(n) * Rational(n + 1);
    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i <= n; ++i) {
        Polynomial<Rational> lhs = generator_B(bernstein<Rational>(i, n), alpha);
        Polynomial<Rational> rhs;
        for (std::int64_t k = (i > 0 ? i - 1 : 0); k <= std::min(n, i + 1); ++k) {
            LocalProbs<Rational> w = local_weights(n, alpha, k);
            Rational weight = 0;
            if (i == k - 1) weight = w.down;
            else if (i == k + 1) weight = w.up;
            else weight = w.stay_shuffle + w.stay_hold;
            if (k == i) weight -= scale;
            if (weight != 0) rhs = rhs + bernstein<Rational>(k, n) * weight;
        }
        if (lhs != rhs) ++mismatches;
    }
    report.require(mismatches == 0, "generator action on the Bernstein basis mismatch");
    report.metric("basis_elements", n + 1);
    report.metric("mismatches", mismatches);
    return report;
}

// B K = K n(n+1)(Q - 1), columnwise as exact polynomial identities.
inline SimReport verify_generator_relation(std::int64_t n, const Rational& alpha) {
    SimReport report;
    report.command = "verify.generator";
    report.param("n", n);
    report.param("alpha", alpha);
    KernelMatrix<Rational> Q = leftmost_kernel_Q<Rational>(n, alpha);
    Rational scale = Rational(n) * Rational(n + 1);
    std::int64_t mismatches = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        std::vector<Rational> e(static_cast<std::size_t>(n), Rational(0));
        e[static_cast<std::size_t>(i - 1)] = 1;
        Polynomial<Rational> lhs = generator_B(K_apply(n, alpha, e), alpha);
        std::vector<Rational> v(static_cast<std::size_t>(n));
        for (std::int64_t k = 1; k <= n; ++k) {
            Rational entry = Q.probs(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(i - 1));
            if (k == i) entry -= 1;
            v[static_cast<std::size_t>(k - 1)] = scale * entry;
        }
        if (lhs != K_apply(n, alpha, v)) ++mismatches;
    }
    report.require(mismatches == 0, "B K != K n(n+1)(Q - 1)");
    report.metric("columns_checked", n);
    report.metric("mismatches", mismatches);
    return report;
}

// Expansion of f in {h_0} union {h_m : m >= 2} by leading coefficients, top
// degree down; index 1 is always zero. Requires f in H.
template <class S>
inline std::vector<S> h_decompose(const Polynomial<S>& f, const S& alpha) {
    if (eta_normalized(f, alpha) != S(0))
        throw std::domain_error("not decomposable: eta functional is nonzero");
    std::vector<S> out(static_cast<std::size_t>(std::max<std::int64_t>(f.degree(), 0)) + 1, S(0));
    Polynomial<S> rem = f;
    while (rem.degree() >= 2) {
        std::int64_t d = rem.degree();
        Polynomial<S> h = jacobi_h(d, alpha);
        S c = rem.coefficient(d) / h.coefficient(d);
        out[static_cast<std::size_t>(d)] = c;
        rem = rem - h * c;
    }
    if (rem.degree() >= 1)
        throw std::logic_error("eta-kernel remainder of degree 1 cannot occur");
    out[0] = rem.coefficient(0);
    return out;
}

// Bernstein structure identities (derivative, degree raise, x(1-x) scaling)
// for all 0 <= i <= k <= max_k, and the lattice expansion of b_(i,k) in the
// Bernstein-n basis for all k <= n <= max_k. All exact.
inline SimReport verify_bernstein_suite(std::int64_t max_k) {
    SimReport report;
    report.command = "verify.pieri";
    report.param("max_n", max_k);
    std::int64_t identities = 0, mismatches = 0;
    for (std::int64_t k = 0; k <= max_k; ++k)
        for (std::int64_t i = 0; i <= k; ++i) {
            Polynomial<Rational> b = bernstein<Rational>(i, k);
            Rational kk(k);

            Polynomial<Rational> dlhs = b.derivative();
            Polynomial<Rational> drhs =
                (bernstein<Rational>(i - 1, k - 1) - bernstein<Rational>(i, k - 1)) * kk;
            ++identities;
            if (dlhs != drhs) ++mismatches;

            Polynomial<Rational> rlhs = b;
            Polynomial<Rational> rrhs = bernstein<Rational>(i, k + 1) * (Rational(k + 1 - i) / Rational(k + 1)) +
                                        bernstein<Rational>(i + 1, k + 1) * (Rational(i + 1) / Rational(k + 1));
            ++identities;
            if (rlhs != rrhs) ++mismatches;

            Polynomial<Rational> x1mx(std::vector<Rational>{0, 1, -1});
            Polynomial<Rational> slhs = x1mx * b;
            Polynomial<Rational> srhs =
                bernstein<Rational>(i + 1, k + 2) *
                (Rational((i + 1) * (k + 1 - i)) / Rational((k + 1) * (k + 2)));
            ++identities;
            if (slhs != srhs) ++mismatches;

            for (std::int64_t n = std::max<std::int64_t>(k, 1); n <= max_k; ++n) {
                Polynomial<Rational> sum;
                for (std::int64_t j = 0; j <= n; ++j) {
                    Rational w = degenerate_bernstein<Rational>(i, k, n)(Rational(j) / Rational(n));
                    if (w != 0) sum = sum + bernstein<Rational>(j, n) * w;
                }
                ++identities;
                if (sum != b) ++mismatches;
            }
        }
    report.require(mismatches == 0, "bernstein identity mismatch");
    report.metric("identities_checked", identities);
    report.metric("mismatches", mismatches);
    return report;
}

// Single lattice expansion b_(i,k) = sum_j b*(j/n) b_(j,n), exact.
inline SimReport verify_pieri(std::int64_t i, std::int64_t k, std::int64_t n) {
    SimReport report;
    report.command = "verify.pieri";
    report.param("i", i);
    report.param("k", k);
    report.param("n", n);
    if (!(0 <= i && i <= k && k <= n && n >= 1)) {
        report.fail("need 0 <= i <= k <= n, n >= 1");
        return report;
    }
    Polynomial<Rational> bstar = degenerate_bernstein<Rational>(i, k, n);
    Polynomial<Rational> sum;
    for (std::int64_t j = 0; j <= n; ++j) {
        Rational w = bstar(Rational(j) / Rational(n));
        if (w != 0) sum = sum + bernstein<Rational>(j, n) * w;
    }
    report.require(sum == bernstein<Rational>(i, k), "lattice expansion mismatch");
    report.metric("terms", n + 1);
    return report;
}

}  // namespace ocrp

#endif
