#ifndef OCRP_CHAINS_HPP
#define OCRP_CHAINS_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "composition.hpp"
#include "matrix.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace ocrp {

template <class S>
struct ChainParams {
    S alpha;
    S theta;

    ChainParams(S a, S t) : alpha(std::move(a)), theta(std::move(t)) {
        if (!(alpha > S(0) && alpha < S(1))) throw std::domain_error("alpha must satisfy 0 < alpha < 1");
        if (theta < S(0)) throw std::domain_error("theta must be >= 0");
        if (!(alpha + theta > S(0))) throw std::domain_error("alpha + theta must be > 0");
    }
};

// One up step from sigma: join table i with mass (sigma_i - alpha)/(n+theta),
// open a new table directly after table i with mass alpha/(n+theta), open a
// new leftmost table with mass theta/(n+theta). Moves landing on the same
// composition are aggregated; results in lexicographic order.
template <class S>
inline std::vector<std::pair<Composition, S>> up_kernel_row(const Composition& sigma,
                                                            const ChainParams<S>& params) {
    std::int64_t n = sigma.size();
    if (n == 0 && params.theta == S(0))
        throw std::domain_error("up step from the empty composition requires theta > 0");
    S denom = S(static_cast<int>(n)) + params.theta;
    std::map<Composition, S> row;
    std::vector<std::int64_t> parts = sigma.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        S join = (S(static_cast<int>(parts[i])) - params.alpha) / denom;
        if (join != S(0)) {
            parts[i] += 1;
            row[Composition(parts)] += join;
            parts[i] -= 1;
        }
        parts.insert(parts.begin() + i + 1, 1);
        row[Composition(parts)] += params.alpha / denom;
        parts.erase(parts.begin() + i + 1);
    }
    if (params.theta != S(0)) row[prepend(1, sigma)] += params.theta / denom;
    return std::vector<std::pair<Composition, S>>(row.begin(), row.end());
}

// One down step from tau: remove a uniformly random unit (table i with mass
// tau_i/n), dropping the table if it empties.
template <class S>
inline std::vector<std::pair<Composition, S>> down_kernel_row(const Composition& tau) {
    std::int64_t n = tau.size();
    if (n == 0) throw std::domain_error("down step undefined on the empty composition");
    std::map<Composition, S> row;
    std::vector<std::int64_t> parts = tau.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        S mass = S(static_cast<int>(parts[i])) / S(static_cast<int>(n));
        if (parts[i] == 1) {
            std::vector<std::int64_t> rest = parts;
            rest.erase(rest.begin() + i);
            row[Composition(std::move(rest))] += mass;
        } else {
            parts[i] -= 1;
            row[Composition(parts)] += mass;
            parts[i] += 1;
        }
    }
    return std::vector<std::pair<Composition, S>>(row.begin(), row.end());
}

template <class S>
inline KernelMatrix<S> up_kernel(std::int64_t n, const ChainParams<S>& params) {
    CompositionSpace from(n), to(n + 1);
    KernelMatrix<S> k{composition_states(n), composition_states(n + 1),
                      Matrix<S>(from.size(), to.size())};
    for (std::size_t r = 0; r < from.size(); ++r)
        for (const auto& [tau, p] : up_kernel_row(from.unrank(r), params))
            k.probs(r, to.rank(tau)) = p;
    return k;
}

template <class S>
inline KernelMatrix<S> down_kernel(std::int64_t n) {
    if (n < 1) throw std::domain_error("down kernel requires n >= 1");
    CompositionSpace from(n), to(n - 1);
    KernelMatrix<S> k{composition_states(n), composition_states(n - 1),
                      Matrix<S>(from.size(), to.size())};
    for (std::size_t r = 0; r < from.size(); ++r)
        for (const auto& [tau, p] : down_kernel_row<S>(from.unrank(r)))
            k.probs(r, to.rank(tau)) = p;
    return k;
}

// T_n = (up)(down): one up step to size n+1 followed by one down step back.
template <class S>
inline KernelMatrix<S> updown_kernel(std::int64_t n, const ChainParams<S>& params) {
    return kernel_multiply(up_kernel(n, params), down_kernel<S>(n + 1));
}

// Sparse application of a distribution to the up / down kernels; avoids
// materializing matrices when only vectors are needed.
template <class S>
inline std::vector<S> apply_up(const std::vector<S>& v, std::int64_t n, const ChainParams<S>& params) {
    CompositionSpace from(n), to(n + 1);
    if (v.size() != from.size()) throw std::invalid_argument("distribution size mismatch");
    std::vector<S> out(to.size(), S(0));
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (v[r] == S(0)) continue;
        for (const auto& [tau, p] : up_kernel_row(from.unrank(r), params)) out[to.rank(tau)] += v[r] * p;
    }
    return out;
}

template <class S>
inline std::vector<S> apply_down(const std::vector<S>& v, std::int64_t n) {
    CompositionSpace from(n), to(n - 1);
    if (v.size() != from.size()) throw std::invalid_argument("distribution size mismatch");
    std::vector<S> out(to.size(), S(0));
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (v[r] == S(0)) continue;
        for (const auto& [tau, p] : down_kernel_row<S>(from.unrank(r))) out[to.rank(tau)] += v[r] * p;
    }
    return out;
}

// Stationary law of the (alpha, alpha) up-down chain on C_n:
//   pi(sigma) = multinomial(n; sigma) / (alpha)_n * prod_j alpha (1-alpha)_(sigma_j - 1).
template <class S>
inline std::vector<S> stationary_alpha_alpha(std::int64_t n, const Rational& alpha) {
    CompositionSpace space(n);
    Rational pochhammer = rising_factorial(alpha, n);
    std::vector<S> out(space.size());
    for (std::size_t r = 0; r < space.size(); ++r) {
        Composition sigma = space.unrank(r);
        BigInt multinomial = factorial(n);
        for (std::int64_t p : sigma.parts()) multinomial /= factorial(p);
        Rational mass = Rational(multinomial) / pochhammer;
        for (std::int64_t p : sigma.parts()) mass *= alpha * rising_factorial(Rational(1) - alpha, p - 1);
        out[r] = scalar_from_rational<S>(mass);
    }
    return out;
}

// Stationary law of the (alpha, 0) chain on C_n, built as n-1 up steps from
// the single customer: delta_(1) (up)^(n-1). Not an eigenproblem solve.
template <class S>
inline std::vector<S> stationary_alpha_zero(std::int64_t n, const Rational& alpha) {
    if (n < 1) throw std::domain_error("stationary law on C_n requires n >= 1");
    ChainParams<S> params(scalar_from_rational<S>(alpha), S(0));
    std::vector<S> v{S(1)};
    for (std::int64_t k = 1; k < n; ++k) v = apply_up(v, k, params);
    return v;
}

// Leftmost-column marginal of the (alpha, alpha) stationary law:
//   q(i) = binom(n, i) alpha (1-alpha)_(i-1) / (n-i+alpha)_i, i = 1..n.
template <class S>
inline std::vector<S> leftmost_stationary_q(std::int64_t n, const Rational& alpha) {
    if (n < 1) throw std::domain_error("leftmost marginal requires n >= 1");
    std::vector<S> out(n);
    for (std::int64_t i = 1; i <= n; ++i) {
        Rational q = Rational(binomial(n, i)) * alpha * rising_factorial(Rational(1) - alpha, i - 1) /
                     rising_factorial(Rational(n - i) + alpha, i);
        out[i - 1] = scalar_from_rational<S>(q);
    }
    return out;
}

// Same marginal via the ratio recurrence
//   q(i+1) = q(i) (n-i)(i-alpha) / ((i+1)(n-i-1+alpha)),
// which stays in range for n far beyond what binomials in floating point
// allow.
inline std::vector<double> leftmost_stationary_q_double(std::int64_t n, double alpha) {
    if (n < 1) throw std::domain_error("leftmost marginal requires n >= 1");
    std::vector<double> q(n);
    q[0] = double(n) * alpha / (double(n - 1) + alpha);
    for (std::int64_t i = 1; i < n; ++i)
        q[i] = q[i - 1] * double(n - i) * (double(i) - alpha) /
               (double(i + 1) * (double(n - i - 1) + alpha));
    return q;
}

// One-step move probabilities of the leftmost column when the rest of the
// composition is at its (alpha, alpha) equilibrium. Common denominator
// n(n+1). stay_shuffle: leftmost part holds while the rest takes an
// (alpha, alpha) up-down step; stay_hold: the whole composition is unchanged.
template <class S>
struct LocalProbs {
    S down;
    S up;
    S stay_shuffle;
    S stay_hold;

    S stay() const { return stay_shuffle + stay_hold; }
    S sum() const { return down + up + stay_shuffle + stay_hold; }
};

// Numerators over the common denominator n(n+1); valid for 0 <= i <= n (the
// i = 0 values extend the formulas and may be negative).
template <class S>
inline LocalProbs<S> local_weights(std::int64_t n, const S& alpha, std::int64_t i) {
    if (n < 0) throw std::domain_error("local probabilities require n >= 0");
    if (i < 0 || i > n) throw std::domain_error("local probabilities require 0 <= i <= n");
    S si(static_cast<int>(i)), sn(static_cast<int>(n));
    return LocalProbs<S>{
        si * (sn - si + alpha),
        (si - alpha) * (sn - si),
        (sn - si + S(1)) * (sn - si + alpha),
        (si - alpha) * (si + S(1)),
    };
}

template <class S>
inline LocalProbs<S> local_probs(std::int64_t n, const S& alpha, std::int64_t i) {
    if (n < 1) throw std::domain_error("local probabilities require n >= 1");
    LocalProbs<S> w = local_weights(n, alpha, i);
    S denom = S(static_cast<int>(n)) * S(static_cast<int>(n + 1));
    return LocalProbs<S>{w.down / denom, w.up / denom, w.stay_shuffle / denom, w.stay_hold / denom};
}

// Leftmost-column kernel on {1..n}: tridiagonal local probabilities plus the
// rank-one first-row term q(j) weighted by the mass that would drop to 0.
template <class S>
inline KernelMatrix<S> leftmost_kernel_Q(std::int64_t n, const Rational& alpha) {
    if (n < 1) throw std::domain_error("leftmost kernel requires n >= 1");
    S a = scalar_from_rational<S>(alpha);
    KernelMatrix<S> k{integer_states(n), integer_states(n),
                      Matrix<S>(static_cast<std::size_t>(n), static_cast<std::size_t>(n))};
    std::vector<S> q = leftmost_stationary_q<S>(n, alpha);
    for (std::int64_t i = 1; i <= n; ++i) {
        LocalProbs<S> y = local_probs(n, a, i);
        if (i > 1) k.probs(i - 1, i - 2) = y.down;
        if (i < n) k.probs(i - 1, i) = y.up;
        k.probs(i - 1, i - 1) = y.stay();
    }
    LocalProbs<S> y1 = local_probs(n, a, 1);
    for (std::int64_t j = 1; j <= n; ++j) k.probs(0, j - 1) += y1.down * q[j - 1];
    return k;
}

// Lambda(i, (i, sigma)) = pi_(n-i)(sigma): conditionally on leftmost part i,
// the rest of the composition at (alpha, alpha) equilibrium.
template <class S>
inline KernelMatrix<S> lambda_kernel(std::int64_t n, const Rational& alpha) {
    if (n < 1) throw std::domain_error("lambda kernel requires n >= 1");
    CompositionSpace full(n);
    KernelMatrix<S> k{integer_states(n), composition_states(n),
                      Matrix<S>(static_cast<std::size_t>(n), full.size())};
    for (std::int64_t i = 1; i <= n; ++i) {
        CompositionSpace rest(n - i);
        std::vector<S> pi = stationary_alpha_alpha<S>(n - i, alpha);
        for (std::size_t r = 0; r < rest.size(); ++r)
            k.probs(i - 1, full.rank(prepend(i, rest.unrank(r)))) = pi[r];
    }
    return k;
}

// Phi(sigma, i) = 1 iff sigma_1 = i: the projection onto the leftmost part.
template <class S>
inline KernelMatrix<S> phi_kernel(std::int64_t n) {
    if (n < 1) throw std::domain_error("phi kernel requires n >= 1");
    CompositionSpace full(n);
    KernelMatrix<S> k{composition_states(n), integer_states(n),
                      Matrix<S>(full.size(), static_cast<std::size_t>(n))};
    for (std::size_t r = 0; r < full.size(); ++r)
        k.probs(r, full.unrank(r).part(0) - 1) = S(1);
    return k;
}

namespace detail {

inline Composition tail_of(const Composition& sigma) {
    std::vector<std::int64_t> rest(sigma.parts().begin() + 1, sigma.parts().end());
    return Composition(std::move(rest));
}

}  // namespace detail

// Exact check that Lambda intertwines the (alpha, 0) up-down kernel with the
// leftmost-column kernel: Lambda T = Q Lambda, with Q both in closed form and
// re-derived as Lambda T Phi. Also checks Lambda Phi = identity.
inline SimReport verify_intertwining(std::int64_t n, const Rational& alpha) {
    SimReport report;
    report.command = "verify.intertwining";
    report.param("n", n);
    report.param("alpha", alpha);

    ChainParams<Rational> params(alpha, 0);
    KernelMatrix<Rational> T = updown_kernel(n, params);
    KernelMatrix<Rational> L = lambda_kernel<Rational>(n, alpha);
    KernelMatrix<Rational> Phi = phi_kernel<Rational>(n);
    KernelMatrix<Rational> Q = leftmost_kernel_Q<Rational>(n, alpha);

    report.require(T.is_stochastic(), "updown kernel is not row-stochastic");
    report.require(L.is_stochastic(), "lambda kernel is not row-stochastic");
    report.require(Q.is_stochastic(), "leftmost kernel is not row-stochastic");

    Matrix<Rational> LPhi = multiply(L.probs, Phi.probs);
    report.require(LPhi == Matrix<Rational>::identity(static_cast<std::size_t>(n)),
                   "lambda phi is not the identity");

    Matrix<Rational> derived = multiply(multiply(L.probs, T.probs), Phi.probs);
    report.require(derived == Q.probs, "lambda T phi does not match the closed-form Q");

    Matrix<Rational> lhs = multiply(L.probs, T.probs);
    Matrix<Rational> rhs = multiply(Q.probs, L.probs);
    std::int64_t mismatches = 0;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (lhs(i, j) != rhs(i, j)) ++mismatches;
    report.require(mismatches == 0, "lambda T != Q lambda");

    report.metric("states", static_cast<std::int64_t>(CompositionSpace(n).size()));
    report.metric("entries_checked", static_cast<std::int64_t>(lhs.rows() * lhs.cols()));
    report.metric("mismatches", mismatches);
    return report;
}

// Exact check of the four-term decomposition of the (alpha, 0) up-down kernel
// by leftmost part: down-shift x (alpha, alpha) up step, up-shift x down
// step, hold x (alpha, alpha) up-down step, hold x identity, plus the
// leftmost-refresh term from i = 1.
inline SimReport verify_transition_recurrence(std::int64_t n, const Rational& alpha) {
    SimReport report;
    report.command = "verify.recurrence";
    report.param("n", n);
    report.param("alpha", alpha);
    if (n < 2) {
        report.fail("recurrence check requires n >= 2");
        return report;
    }

    ChainParams<Rational> zero(alpha, 0), aa(alpha, alpha);
    KernelMatrix<Rational> T = updown_kernel(n, zero);
    CompositionSpace full(n);

    // Per leftmost value i: kernels on the remainder C_(n-i).
    std::vector<KernelMatrix<Rational>> up_aa(n + 1), down(n + 1), t_aa(n + 1);
    for (std::int64_t i = 1; i <= n; ++i) {
        std::int64_t m = n - i;
        up_aa[i] = up_kernel(m, aa);
        if (m >= 1) down[i] = down_kernel<Rational>(m);
        t_aa[i] = updown_kernel(m, aa);
    }

    std::int64_t mismatches = 0;
    for (std::size_t r = 0; r < full.size(); ++r) {
        Composition rho = full.unrank(r);
        std::int64_t i = rho.part(0);
        Composition sigma = detail::tail_of(rho);
        CompositionSpace rest(n - i);
        std::size_t sr = rest.rank(sigma);
        LocalProbs<Rational> y = local_probs(n, alpha, i);
        for (std::size_t c = 0; c < full.size(); ++c) {
            Composition rho2 = full.unrank(c);
            std::int64_t j = rho2.part(0);
            Composition sigma2 = detail::tail_of(rho2);
            Rational rhs = 0;
            if (j == i - 1)
                rhs += y.down * up_aa[i].probs(sr, CompositionSpace(n - i + 1).rank(sigma2));
            if (j == i + 1)
                rhs += y.up * down[i].probs(sr, CompositionSpace(n - i - 1).rank(sigma2));
            if (j == i) {
                rhs += y.stay_shuffle * t_aa[i].probs(sr, rest.rank(sigma2));
                if (sigma == sigma2) rhs += y.stay_hold;
            }
            if (i == 1) rhs += y.down * up_aa[1].probs(sr, full.rank(rho2));
            if (T.probs(r, c) != rhs) ++mismatches;
        }
    }
    report.require(mismatches == 0, "four-term decomposition does not match the updown kernel");
    report.metric("entries_checked", static_cast<std::int64_t>(full.size() * full.size()));
    report.metric("mismatches", mismatches);
    return report;
}

// pi_n = pi_(n-1) up = pi_(n+1) down, exactly.
inline SimReport verify_stationary_consistency(std::int64_t n, const Rational& alpha) {
    SimReport report;
    report.command = "verify.consistency";
    report.param("n", n);
    report.param("alpha", alpha);
    if (n < 1) {
        report.fail("consistency check requires n >= 1");
        return report;
    }
    ChainParams<Rational> aa(alpha, alpha);
    std::vector<Rational> pi_n = stationary_alpha_alpha<Rational>(n, alpha);
    std::vector<Rational> from_below = apply_up(stationary_alpha_alpha<Rational>(n - 1, alpha), n - 1, aa);
    std::vector<Rational> from_above = apply_down(stationary_alpha_alpha<Rational>(n + 1, alpha), n + 1);
    report.require(from_below == pi_n, "pi_(n-1) up != pi_n");
    report.require(from_above == pi_n, "pi_(n+1) down != pi_n");
    Rational total = 0;
    for (const Rational& p : pi_n) total += p;
    report.require(total == 1, "pi_n does not sum to 1");
    report.metric("states", static_cast<std::int64_t>(pi_n.size()));
    return report;
}

}  // namespace ocrp

#endif
