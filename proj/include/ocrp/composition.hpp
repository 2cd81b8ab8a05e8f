#ifndef OCRP_COMPOSITION_HPP
#define OCRP_COMPOSITION_HPP

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace ocrp {

// Composition of n: ordered list of parts >= 1 (occupied table sizes, left to
// right). The empty composition is the unique composition of 0.
class Composition {
  public:
    Composition() = default;

    explicit Composition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
        for (std::int64_t p : parts_)
            if (p < 1) throw std::invalid_argument("composition parts must be >= 1");
    }

    Composition(std::initializer_list<std::int64_t> parts)
        : Composition(std::vector<std::int64_t>(parts)) {}

    const std::vector<std::int64_t>& parts() const { return parts_; }
    std::int64_t part(std::size_t i) const { return parts_[i]; }
    std::size_t length() const { return parts_.size(); }

    std::int64_t size() const {
        std::int64_t n = 0;
        for (std::int64_t p : parts_) n += p;
        return n;
    }

    bool operator==(const Composition& o) const { return parts_ == o.parts_; }
    bool operator!=(const Composition& o) const { return parts_ != o.parts_; }
    // Lexicographic; total order used for deterministic aggregation.
    bool operator<(const Composition& o) const { return parts_ < o.parts_; }

    // "2,1"; empty composition serializes as the empty string.
    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    static Composition parse(const std::string& text) {
        if (text.empty()) return Composition();
        std::vector<std::int64_t> parts;
        std::istringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ','))
            parts.push_back(std::stoll(tok));
        return Composition(std::move(parts));
    }

  private:
    std::vector<std::int64_t> parts_;
};

// (i, sigma): new first part i followed by the parts of sigma.
inline Composition prepend(std::int64_t i, const Composition& sigma) {
    if (i < 1) throw std::invalid_argument("prepended part must be >= 1");
    std::vector<std::int64_t> parts;
    parts.reserve(sigma.length() + 1);
    parts.push_back(i);
    parts.insert(parts.end(), sigma.parts().begin(), sigma.parts().end());
    return Composition(std::move(parts));
}

// First part over total size; undefined on the empty composition.
template <class S>
inline S leftmost_fraction(const Composition& sigma) {
    if (sigma.length() == 0) throw std::invalid_argument("empty composition has no leftmost part");
    return S(static_cast<int>(sigma.part(0))) / S(static_cast<int>(sigma.size()));
}

// Normalized cumulative sums s_1/n, ..., s_l/n (right endpoints of the
// interval blocks; last entry is 1).
template <class S>
inline std::vector<S> to_breakpoints(const Composition& sigma) {
    std::int64_t n = sigma.size();
    std::vector<S> out;
    out.reserve(sigma.length());
    std::int64_t cum = 0;
    for (std::int64_t p : sigma.parts()) {
        cum += p;
        out.push_back(S(static_cast<int>(cum)) / S(static_cast<int>(n)));
    }
    return out;
}

// Compositions of n indexed by the subset of {1..n-1} of interior cumulative
// sums, encoded as a bitmask (bit j-1 set iff j is a cumulative sum). Rank =
// mask value, so |C_n| = 2^(n-1) and enumeration order starts at (n).
class CompositionSpace {
  public:
    static constexpr std::int64_t kMaxN = 20;

    explicit CompositionSpace(std::int64_t n) : n_(n) {
        if (n < 0) throw std::invalid_argument("composition size must be >= 0");
        if (n > kMaxN) throw std::domain_error("composition enumeration capped at n = 20");
    }

    std::int64_t n() const { return n_; }
    std::size_t size() const { return n_ == 0 ? 1 : std::size_t(1) << (n_ - 1); }

    std::size_t rank(const Composition& sigma) const {
        if (sigma.size() != n_) throw std::invalid_argument("composition size mismatch");
        std::size_t mask = 0;
        std::int64_t cum = 0;
        for (std::size_t i = 0; i + 1 < sigma.length(); ++i) {
            cum += sigma.part(i);
            mask |= std::size_t(1) << (cum - 1);
        }
        return mask;
    }

    Composition unrank(std::size_t k) const {
        if (k >= size()) throw std::out_of_range("composition rank out of range");
        if (n_ == 0) return Composition();
        std::vector<std::int64_t> parts;
        std::int64_t prev = 0;
        for (std::int64_t j = 1; j < n_; ++j)
            if (k & (std::size_t(1) << (j - 1))) {
                parts.push_back(j - prev);
                prev = j;
            }
        parts.push_back(n_ - prev);
        return Composition(std::move(parts));
    }

  private:
    std::int64_t n_;
};

// All compositions of n in rank order.
inline std::vector<Composition> enumerate_compositions(std::int64_t n) {
    CompositionSpace space(n);
    std::vector<Composition> out;
    out.reserve(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) out.push_back(space.unrank(k));
    return out;
}

}  // namespace ocrp

#endif
