#pragma once

/**
 * @file enumerate.hpp
 * @brief Enumeration of the monic polynomials of a fixed degree.
 *
 * The monic polynomials of degree n are indexed by i in [0, q^n): the
 * base-q digits of i, least significant first, are the coefficients
 * c_0, ..., c_{n-1}. Iteration visits them in increasing index order, i.e.
 * lexicographically in (c_{n-1}, ..., c_0).
 */

#include "ffbias/field.hpp"
#include "ffbias/poly.hpp"

#include <cstdint>
#include <iterator>
#include <vector>

namespace ffbias {

/// q^n, or throws if it does not fit in 64 bits.
inline std::uint64_t monic_count(Field const& F, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (r > UINT64_MAX / F.q()) throw DomainError("q^n overflows 64 bits");
        r *= F.q();
    }
    return r;
}

inline Poly monic_from_index(Field const& F, std::size_t n, std::uint64_t index) {
    std::vector<Fe> c(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = Fe{static_cast<std::uint32_t>(index % F.q())};
        index /= F.q();
    }
    c[n] = F.one();
    return Poly(std::move(c));
}

inline std::uint64_t monic_index(Field const& F, Poly const& f) {
    if (!f.is_monic()) throw DomainError("monic_index of a non-monic polynomial");
    std::uint64_t idx = 0;
    for (std::size_t j = f.size() - 1; j-- > 0;) idx = idx * F.q() + f[j].v;
    return idx;
}

/// Input range over the q^n monic polynomials of degree n.
class MonicRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;
        using pointer = Poly const*;
        using reference = Poly const&;

        iterator() = default;
        iterator(std::uint32_t q, std::size_t n, std::uint64_t pos, std::uint64_t end)
            : q_(q), pos_(pos), end_(end), digits_(n, 0) {
            if (pos_ < end_) refresh();
        }

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }

        iterator& operator++() {
            ++pos_;
            for (auto& d : digits_) {
                if (++d < q_) break;
                d = 0;
            }
            if (pos_ < end_) refresh();
            return *this;
        }
        void operator++(int) { ++*this; }

        bool operator==(iterator const& o) const { return pos_ == o.pos_; }

    private:
        void refresh() {
            std::vector<Fe> c(digits_.size() + 1);
            for (std::size_t j = 0; j < digits_.size(); ++j) c[j] = Fe{digits_[j]};
            c.back() = Fe{1};
            current_ = Poly(std::move(c));
        }

        std::uint32_t q_ = 0;
        std::uint64_t pos_ = 0, end_ = 0;
        std::vector<std::uint32_t> digits_;
        Poly current_;
    };

    MonicRange(Field const& F, std::size_t n) : q_(F.q()), n_(n), count_(monic_count(F, n)) {}

    [[nodiscard]] iterator begin() const { return iterator(q_, n_, 0, count_); }
    [[nodiscard]] iterator end() const { return iterator(q_, n_, count_, count_); }
    [[nodiscard]] std::uint64_t size() const { return count_; }

private:
    std::uint32_t q_;
    std::size_t n_;
    std::uint64_t count_;
};

inline MonicRange enumerate_monic(Field const& F, std::size_t n) { return MonicRange(F, n); }

} // namespace ffbias
