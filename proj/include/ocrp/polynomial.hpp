#ifndef OCRP_POLYNOMIAL_HPP
#define OCRP_POLYNOMIAL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace ocrp {

// Dense univariate polynomial, monomial coefficients ascending by degree.
// Trailing zeros are trimmed; the zero polynomial has no coefficients.
template <class S>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(const S& v) { return Polynomial(std::vector<S>{v}); }

    static Polynomial monomial(std::int64_t degree, const S& coeff = S(1)) {
        std::vector<S> c(static_cast<std::size_t>(degree) + 1, S(0));
        c.back() = coeff;
        return Polynomial(std::move(c));
    }

    const std::vector<S>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial reported as -1.
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }

    S coefficient(std::int64_t k) const {
        if (k < 0 || k >= static_cast<std::int64_t>(c_.size())) return S(0);
        return c_[static_cast<std::size_t>(k)];
    }

    S operator()(const S& x) const {
        S acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<S> out(std::max(c_.size(), o.c_.size()), S(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
        return Polynomial(std::move(out));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (o * S(-1)); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return Polynomial();
        std::vector<S> out(c_.size() + o.c_.size() - 1, S(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == S(0)) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
        }
        return Polynomial(std::move(out));
    }

    Polynomial operator*(const S& s) const {
        std::vector<S> out = c_;
        for (S& v : out) v *= s;
        return Polynomial(std::move(out));
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial();
        std::vector<S> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * S(static_cast<int>(i));
        return Polynomial(std::move(out));
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

    // Ascending comma-separated coefficient list; zero polynomial is "0".
    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ',';
            out += scalar_to_string<S>(c_[i]);
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == S(0)) c_.pop_back();
    }

    std::vector<S> c_;
};

inline Polynomial<double> to_double_polynomial(const Polynomial<Rational>& p) {
    std::vector<double> c(p.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_double(p.coeffs()[i]);
    return Polynomial<double>(std::move(c));
}

// Max |f - g| over the uniform grid {0, 1/(points-1), ..., 1}.
inline double grid_distance(const Polynomial<double>& f, const Polynomial<double>& g,
                            std::size_t points = 1001) {
    double worst = 0;
    for (std::size_t k = 0; k < points; ++k) {
        double x = double(k) / double(points - 1);
        double d = std::abs(f(x) - g(x));
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace ocrp

#endif
