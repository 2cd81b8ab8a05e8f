#ifndef OCRP_MATRIX_HPP
#define OCRP_MATRIX_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "composition.hpp"
#include "scalar.hpp"

namespace ocrp {

template <class S>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::vector<S> row_sums() const {
        std::vector<S> sums(rows_, S(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) sums[i] += (*this)(i, j);
        return sums;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<S> data_;
};

// Zero entries are skipped on both factors; kernel rows are sparse and exact
// products dominate the cost otherwise.
template <class S>
inline Matrix<S> multiply(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix<S> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const S& aik = a(i, k);
            if (aik == S(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const S& bkj = b(k, j);
                if (bkj == S(0)) continue;
                out(i, j) += aik * bkj;
            }
        }
    return out;
}

// row * M, zero-skipping.
template <class S>
inline std::vector<S> multiply(const std::vector<S>& v, const Matrix<S>& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector/matrix shape mismatch");
    std::vector<S> out(m.cols(), S(0));
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == S(0)) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(k, j) == S(0)) continue;
            out[j] += v[k] * m(k, j);
        }
    }
    return out;
}

// M * col.
template <class S>
inline std::vector<S> multiply(const Matrix<S>& m, const std::vector<S>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<S> out(m.rows(), S(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (m(i, k) == S(0) || v[k] == S(0)) continue;
            out[i] += m(i, k) * v[k];
        }
    return out;
}

template <class S>
inline double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
    double worst = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            double d = scalar_to_double<S>(scalar_abs<S>(a(i, j) - b(i, j)));
            if (d > worst) worst = d;
        }
    return worst;
}

// Enumerated index set of a kernel: either C_n or {1..n}.
struct StateSet {
    enum class Kind { compositions, integers };
    Kind kind;
    std::int64_t n;

    std::size_t size() const {
        if (kind == Kind::compositions) return n == 0 ? 1 : std::size_t(1) << (n - 1);
        return static_cast<std::size_t>(n);
    }

    std::string label(std::size_t k) const {
        if (kind == Kind::compositions) return CompositionSpace(n).unrank(k).str();
        return std::to_string(k + 1);
    }

    bool operator==(const StateSet& o) const { return kind == o.kind && n == o.n; }
    bool operator!=(const StateSet& o) const { return !(*this == o); }
};

inline StateSet composition_states(std::int64_t n) {
    return StateSet{StateSet::Kind::compositions, n};
}
inline StateSet integer_states(std::int64_t n) { return StateSet{StateSet::Kind::integers, n}; }

// Markov kernel between enumerated state sets: entries >= 0, rows sum to 1
// (exactly in exact mode, within 1e-12 in float mode).
template <class S>
struct KernelMatrix {
    StateSet row_set;
    StateSet col_set;
    Matrix<S> probs;

    bool is_stochastic(double tol = 1e-12) const {
        for (std::size_t i = 0; i < probs.rows(); ++i)
            for (std::size_t j = 0; j < probs.cols(); ++j)
                if (scalar_to_double<S>(probs(i, j)) < -tol) return false;
        for (const S& s : probs.row_sums()) {
            if constexpr (is_exact_v<S>) {
                if (s != S(1)) return false;
            } else {
                if (scalar_abs<S>(s - S(1)) > tol) return false;
            }
        }
        return true;
    }
};

template <class S>
inline KernelMatrix<S> kernel_multiply(const KernelMatrix<S>& a, const KernelMatrix<S>& b) {
    if (a.col_set != b.row_set) throw std::invalid_argument("kernel state sets do not compose");
    return KernelMatrix<S>{a.row_set, b.col_set, multiply(a.probs, b.probs)};
}

// One line per entry: "row label","column label",value. Zero entries skipped.
template <class S>
inline void kernel_to_csv(const KernelMatrix<S>& k, std::ostream& out) {
    out << "row,col,value\n";
    for (std::size_t i = 0; i < k.probs.rows(); ++i)
        for (std::size_t j = 0; j < k.probs.cols(); ++j) {
            if (k.probs(i, j) == S(0)) continue;
            out << '"' << k.row_set.label(i) << "\",\"" << k.col_set.label(j) << "\","
                << scalar_to_string<S>(k.probs(i, j)) << '\n';
        }
}

// Gauss-Jordan over the rationals; throws on a singular input.
inline Matrix<Rational> invert(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
    std::size_t n = m.rows();
    Matrix<Rational> a = m;
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw std::domain_error("matrix is singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(pivot, j));
            std::swap(inv(col, j), inv(pivot, j));
        }
        Rational d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

// Exact nullity of (M - I): dimension of the fixed space of a kernel on a
// finite state set. Gaussian elimination over the rationals.
inline std::size_t fixed_space_dimension(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("square matrix required");
    std::size_t n = m.rows();
    Matrix<Rational> a = m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) -= 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(rank, j), a(pivot, j));
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || a(i, col) == 0) continue;
            Rational f = a(i, col) / a(rank, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(rank, j);
        }
        ++rank;
    }
    return n - rank;
}

}  // namespace ocrp

#endif
