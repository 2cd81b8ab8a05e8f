#ifndef OCRP_MONTECARLO_HPP
#define OCRP_MONTECARLO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "chains.hpp"
#include "composition.hpp"
#include "rng.hpp"
#include "scalar.hpp"

namespace ocrp {

// One up step on raw parts. Mass is consumed in a fixed order (join table 1,
// open after table 1, join table 2, ..., open leftmost), so trajectories are
// reproducible from the stream alone. A fall-through from rounding is clamped
// to the last nonzero-mass move.
inline void up_step_inplace(std::vector<std::int64_t>& parts, std::int64_t n, double alpha,
                            double theta, RngStream& rng) {
    if (parts.empty() && theta == 0) throw std::domain_error("up step from empty state requires theta > 0");
    double u = rng.uniform(double(n) + theta);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        double join = double(parts[i]) - alpha;
        if (u < join) {
            parts[i] += 1;
            return;
        }
        u -= join;
        if (u < alpha) {
            parts.insert(parts.begin() + i + 1, 1);
            return;
        }
        u -= alpha;
    }
    if (theta > 0) {
        parts.insert(parts.begin(), 1);
        return;
    }
    parts.insert(parts.end(), 1);
}

// One down step: remove a uniform unit, dropping emptied tables.
inline void down_step_inplace(std::vector<std::int64_t>& parts, std::int64_t n, RngStream& rng) {
    if (parts.empty()) throw std::domain_error("down step undefined on empty state");
    double u = rng.uniform(double(n));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (u < double(parts[i])) {
            if (parts[i] == 1)
                parts.erase(parts.begin() + i);
            else
                parts[i] -= 1;
            return;
        }
        u -= double(parts[i]);
    }
    if (parts.back() == 1)
        parts.pop_back();
    else
        parts.back() -= 1;
}

// Up step with theta = 0 followed by a down step; size returns to n.
inline void step_updown(std::vector<std::int64_t>& parts, std::int64_t n, double alpha,
                        RngStream& rng) {
    up_step_inplace(parts, n, alpha, 0.0, rng);
    down_step_inplace(parts, n + 1, rng);
}

// Draw from the (alpha, 0) stationary law on C_n: n-1 up steps from a single
// customer; this is the law itself, not an approximation.
inline std::vector<std::int64_t> sample_stationary_alpha_zero(std::int64_t n, double alpha,
                                                              RngStream& rng) {
    if (n < 1) throw std::domain_error("stationary sample requires n >= 1");
    std::vector<std::int64_t> parts{1};
    for (std::int64_t k = 1; k < n; ++k) up_step_inplace(parts, k, alpha, 0.0, rng);
    return parts;
}

// Draw from the (alpha, alpha) stationary law on C_n: n up steps from the
// empty composition (the consistent family starts at the empty state).
inline std::vector<std::int64_t> sample_stationary_alpha_alpha(std::int64_t n, double alpha,
                                                               RngStream& rng) {
    std::vector<std::int64_t> parts;
    for (std::int64_t k = 0; k < n; ++k) up_step_inplace(parts, k, alpha, alpha, rng);
    return parts;
}

// O(1)-per-step sampler of the leftmost-column chain: tridiagonal moves plus
// the first-row refresh drawn from q by inverse CDF. Mass order per step:
// down (or refresh at i = 1), up, stay.
class LeftmostChain {
  public:
    LeftmostChain(std::int64_t n, double alpha) : n_(n), alpha_(alpha) {
        if (n < 1) throw std::domain_error("leftmost chain requires n >= 1");
        std::vector<double> q = leftmost_stationary_q_double(n, alpha);
        q_cum_.resize(q.size());
        double acc = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            acc += q[i];
            q_cum_[i] = acc;
        }
        q_cum_.back() = 1.0;  // guard the binary search against rounding
    }

    std::int64_t n() const { return n_; }

    std::int64_t sample_q(RngStream& rng) const {
        double u = rng.uniform01();
        auto it = std::upper_bound(q_cum_.begin(), q_cum_.end(), u);
        if (it == q_cum_.end()) --it;
        return static_cast<std::int64_t>(it - q_cum_.begin()) + 1;
    }

    std::int64_t step(std::int64_t i, RngStream& rng) const {
        double denom = double(n_) * double(n_ + 1);
        double down = double(i) * (double(n_ - i) + alpha_) / denom;
        double up = (double(i) - alpha_) * double(n_ - i) / denom;
        double u = rng.uniform01();
        if (u < down) return i == 1 ? sample_q(rng) : i - 1;
        u -= down;
        if (u < up) return i + 1;
        return i;
    }

  private:
    std::int64_t n_;
    double alpha_;
    std::vector<double> q_cum_;
};

struct LeftmostInit {
    bool stationary;
    std::int64_t i0;

    static LeftmostInit from_index(std::int64_t i0) { return LeftmostInit{false, i0}; }
    static LeftmostInit from_stationary() { return LeftmostInit{true, 0}; }
};

enum class LeftmostMethod { q_chain, full_chain };

// One replica trajectory Y_0..Y_steps of the leftmost column. q_chain runs
// the projected chain directly; full_chain runs the composition chain and
// projects. From a fixed index the full chain starts at (i0, sigma) with
// sigma drawn from the (alpha, alpha) equilibrium on the remaining n - i0.
inline std::vector<std::int64_t> simulate_leftmost(std::int64_t n, double alpha, LeftmostInit init,
                                                   std::int64_t steps, LeftmostMethod method,
                                                   RngStream& rng) {
    if (n < 1) throw std::domain_error("simulation requires n >= 1");
    if (!init.stationary && (init.i0 < 1 || init.i0 > n))
        throw std::domain_error("initial index must lie in 1..n");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    if (method == LeftmostMethod::q_chain) {
        LeftmostChain chain(n, alpha);
        std::int64_t y = init.stationary ? sample_stationary_alpha_zero(n, alpha, rng)[0] : init.i0;
        out.push_back(y);
        for (std::int64_t k = 0; k < steps; ++k) {
            y = chain.step(y, rng);
            out.push_back(y);
        }
        return out;
    }
    std::vector<std::int64_t> parts;
    if (init.stationary) {
        parts = sample_stationary_alpha_zero(n, alpha, rng);
    } else {
        parts = sample_stationary_alpha_alpha(n - init.i0, alpha, rng);
        parts.insert(parts.begin(), init.i0);
    }
    out.push_back(parts[0]);
    for (std::int64_t k = 0; k < steps; ++k) {
        step_updown(parts, n, alpha, rng);
        out.push_back(parts[0]);
    }
    return out;
}

// Static replica partition over threads. Each replica owns the RngStream
// keyed by its index and writes only its own slots, so results are identical
// for any thread count.
template <class Fn>
inline void run_replicas(std::int64_t replicas, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<std::int64_t>(threads, std::max<std::int64_t>(replicas, 1)));
    if (threads == 1) {
        for (std::int64_t r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::int64_t r = w; r < replicas; r += threads) fn(r);
        });
    for (auto& th : pool) th.join();
}

struct KsReport {
    std::size_t count;
    double statistic;
    double beta_a;
    double beta_b;
    double threshold;  // 0 when the caller applies no fixed bound

    bool passes() const { return threshold <= 0 || statistic < threshold; }
};

// KS distance of the sample to Beta(a, b): sup over distinct sample values v
// of |F_hat(v) - F(v)|, with F the regularized incomplete beta. Both CDFs are
// compared at the sample's support atoms, so a lattice-valued sample is
// charged for misplaced mass, not for the lattice spacing itself.
inline KsReport ks_distance(std::vector<double> values, double a, double b,
                            double threshold = 0) {
    if (values.empty()) throw std::invalid_argument("ks distance of an empty sample");
    std::sort(values.begin(), values.end());
    double n = double(values.size());
    double worst = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;  // tie block interior
        double f = boost::math::ibeta(a, b, std::clamp(values[i], 0.0, 1.0));
        worst = std::max(worst, std::abs(double(i + 1) / n - f));
    }
    return KsReport{values.size(), worst, a, b, threshold};
}

// Same statistic for an exact discrete law (masses on i/n, i = 1..n):
// sup over atoms of |F_hat(i/n) - F(i/n)|.
inline KsReport ks_distance_discrete(const std::vector<double>& masses, std::int64_t n, double a,
                                     double b, double threshold = 0) {
    double cum = 0, worst = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
        double f = boost::math::ibeta(a, b, double(i) / double(n));
        cum += masses[static_cast<std::size_t>(i - 1)];
        worst = std::max(worst, std::abs(f - cum));
    }
    return KsReport{static_cast<std::size_t>(n), worst, a, b, threshold};
}

// Leftmost fractions n^(-1) Y(floor(n^2 t)) from a stationary start, one per
// replica; steps = 0 is the pure stationary sample.
inline std::vector<double> sample_leftmost_fractions(std::int64_t n, double alpha,
                                                     std::int64_t steps, std::int64_t replicas,
                                                     std::uint64_t seed, int threads,
                                                     LeftmostMethod method) {
    std::vector<double> values(static_cast<std::size_t>(replicas));
    run_replicas(replicas, threads, [&](std::int64_t r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        std::vector<std::int64_t> path =
            simulate_leftmost(n, alpha, LeftmostInit::from_stationary(), steps, method, rng);
        values[static_cast<std::size_t>(r)] = double(path.back()) / double(n);
    });
    return values;
}

struct ConvergenceRow {
    std::int64_t n;
    std::int64_t steps;
    std::int64_t samples;
    double ks;
    bool exact;
};

// KS-to-Beta(1-alpha, alpha) as n grows, leftmost fraction sampled at time
// floor(n^2 t) from stationarity (the law is stationary, so the chain run
// exercises the dynamics without changing the target). Rows with n <= 10 are
// computed from the exact stationary law, bypassing sampling noise.
inline std::vector<ConvergenceRow> scaling_limit_diagnostic(double alpha,
                                                            const std::vector<std::int64_t>& n_list,
                                                            double t, std::int64_t replicas,
                                                            std::uint64_t seed, int threads) {
    if (t <= 0) throw std::domain_error("diagnostic requires t > 0");
    std::vector<ConvergenceRow> rows;
    for (std::int64_t n : n_list) {
        if (n < 2) throw std::domain_error("diagnostic requires each n >= 2");
        std::int64_t steps = static_cast<std::int64_t>(double(n) * double(n) * t);
        if (n <= 10) {
            // exact row at the dyadic rational the double alpha denotes
            std::vector<Rational> pi = stationary_alpha_zero<Rational>(n, Rational(alpha));
            CompositionSpace space(n);
            std::vector<double> marginal(static_cast<std::size_t>(n), 0.0);
            for (std::size_t r = 0; r < pi.size(); ++r)
                marginal[static_cast<std::size_t>(space.unrank(r).part(0) - 1)] += to_double(pi[r]);
            KsReport ks = ks_distance_discrete(marginal, n, 1 - alpha, alpha);
            rows.push_back(ConvergenceRow{n, steps, 0, ks.statistic, true});
            continue;
        }
        std::vector<double> values = sample_leftmost_fractions(n, alpha, steps, replicas, seed,
                                                               threads, LeftmostMethod::q_chain);
        KsReport ks = ks_distance(values, 1 - alpha, alpha);
        rows.push_back(ConvergenceRow{n, steps, replicas, ks.statistic, false});
    }
    return rows;
}

// Monotone-with-slack rule over all ordered pairs: no later KS value may
// exceed an earlier one by more than slack.
inline bool ks_monotone_with_slack(const std::vector<ConvergenceRow>& rows, double slack = 0.02) {
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t k = j + 1; k < rows.size(); ++k)
            if (rows[k].ks > rows[j].ks + slack) return false;
    return true;
}

// header: replica,step,value
inline void write_samples_csv(std::ostream& out, const std::vector<double>& values,
                              std::int64_t steps) {
    out << "replica,step,value\n";
    char buf[64];
    for (std::size_t r = 0; r < values.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%zu,%lld,%.17g\n", r,
                      static_cast<long long>(steps), values[r]);
        out << buf;
    }
}

}  // namespace ocrp

#endif
