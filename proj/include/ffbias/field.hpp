#pragma once

/**
 * @file field.hpp
 * @brief Arithmetic in F_q, q = p^k with p an odd prime.
 *
 * Elements are packed into a single integer index in [0, q): the base-p
 * digits of the index are the coordinates of the element in the power
 * basis 1, x, ..., x^{k-1} of F_p[x]/(ext_modulus). For k = 1 the index is
 * simply the residue mod p, so the prime field is the fast path.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffbias {

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (inverting zero, dividing by the zero polynomial, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Element of F_q as a packed digit index.
struct Fe {
    std::uint32_t v = 0;

    constexpr bool operator==(Fe const&) const = default;
    constexpr auto operator<=>(Fe const&) const = default;
    [[nodiscard]] constexpr bool is_zero() const { return v == 0; }
};

struct FieldSpec {
    std::uint32_t p = 3;
    std::uint32_t k = 1;
    /// Ascending coefficients over F_p of a monic irreducible of degree k.
    /// Empty when k == 1.
    std::vector<std::uint32_t> ext_modulus;

    [[nodiscard]] std::uint64_t q() const {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < k; ++i) r *= p;
        return r;
    }
    bool operator==(FieldSpec const&) const = default;
};

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace detail

/**
 * The finite field F_q. Immutable after construction and cheap to copy.
 *
 * The constructor checks that p is an odd prime and that the extension
 * modulus is monic of degree k. Irreducibility of the modulus is checked by
 * make_field() in multfunc.hpp, which is the intended entry point for k > 1.
 */
class Field {
public:
    Field() : Field(FieldSpec{}) {}

    explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
        if (!detail::is_prime_u32(spec_.p) || spec_.p == 2)
            throw DomainError("field characteristic must be an odd prime, got " +
                              std::to_string(spec_.p));
        if (spec_.k == 0) throw DomainError("extension degree must be >= 1");
        if (spec_.k == 1) {
            spec_.ext_modulus.clear();
        } else {
            auto const& m = spec_.ext_modulus;
            if (m.size() != spec_.k + 1 || m.back() != 1)
                throw DomainError("extension modulus must be monic of degree k");
            for (auto c : m)
                if (c >= spec_.p) throw DomainError("extension modulus coefficient >= p");
        }
        std::uint64_t q = spec_.q();
        if (q > (1ull << 31)) throw DomainError("field too large");
        q_ = static_cast<std::uint32_t>(q);
    }

    [[nodiscard]] FieldSpec const& spec() const { return spec_; }
    [[nodiscard]] std::uint32_t p() const { return spec_.p; }
    [[nodiscard]] std::uint32_t k() const { return spec_.k; }
    [[nodiscard]] std::uint32_t q() const { return q_; }
    [[nodiscard]] bool is_prime_field() const { return spec_.k == 1; }

    [[nodiscard]] Fe zero() const { return Fe{0}; }
    [[nodiscard]] Fe one() const { return Fe{1}; }

    /// Image of an integer in the prime subfield.
    [[nodiscard]] Fe from_int(long long x) const {
        long long r = x % static_cast<long long>(spec_.p);
        if (r < 0) r += spec_.p;
        return Fe{static_cast<std::uint32_t>(r)};
    }

    /// Element with packed index i; throws if i >= q.
    [[nodiscard]] Fe element(std::uint64_t i) const {
        if (i >= q_) throw DomainError("field element index out of range");
        return Fe{static_cast<std::uint32_t>(i)};
    }

    [[nodiscard]] bool in_prime_subfield(Fe a) const { return a.v < spec_.p; }

    [[nodiscard]] Fe add(Fe a, Fe b) const {
        if (is_prime_field()) {
            std::uint32_t s = a.v + b.v;
            return Fe{s >= spec_.p ? s - spec_.p : s};
        }
        return digitwise(a, b, [p = spec_.p](std::uint32_t x, std::uint32_t y) { return (x + y) % p; });
    }

    [[nodiscard]] Fe neg(Fe a) const {
        if (is_prime_field()) return Fe{a.v == 0 ? 0 : spec_.p - a.v};
        return digitwise(a, Fe{0}, [p = spec_.p](std::uint32_t x, std::uint32_t) { return (p - x) % p; });
    }

    [[nodiscard]] Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    [[nodiscard]] Fe mul(Fe a, Fe b) const {
        if (is_prime_field())
            return Fe{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % spec_.p)};
        return mul_ext(a, b);
    }

    [[nodiscard]] Fe pow(Fe a, std::uint64_t e) const {
        Fe r = one();
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    [[nodiscard]] Fe inv(Fe a) const {
        if (a.is_zero()) throw DomainError("inverse of zero in F_" + std::to_string(q_));
        return pow(a, q_ - 2);
    }

    [[nodiscard]] Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    /// Quadratic character of F_q^*: +1 on squares, -1 on non-squares, 0 on 0.
    [[nodiscard]] int quadratic_sign(Fe a) const {
        if (a.is_zero()) return 0;
        return pow(a, (q_ - 1) / 2) == one() ? 1 : -1;
    }

    /// Frobenius inverse: the unique b with b^p = a.
    [[nodiscard]] Fe pth_root(Fe a) const {
        if (is_prime_field()) return a;
        std::uint64_t e = 1;
        for (std::uint32_t i = 1; i < spec_.k; ++i) e *= spec_.p;
        return pow(a, e);
    }

    bool operator==(Field const& o) const { return spec_ == o.spec_; }

private:
    template <class Op>
    [[nodiscard]] Fe digitwise(Fe a, Fe b, Op op) const {
        std::uint32_t r = 0, scale = 1;
        for (std::uint32_t i = 0; i < spec_.k; ++i) {
            std::uint32_t x = a.v % spec_.p, y = b.v % spec_.p;
            a.v /= spec_.p;
            b.v /= spec_.p;
            r += op(x, y) * scale;
            scale *= spec_.p;
        }
        return Fe{r};
    }

    [[nodiscard]] Fe mul_ext(Fe a, Fe b) const {
        std::uint32_t const p = spec_.p, k = spec_.k;
        std::vector<std::uint64_t> x(k), y(k), prod(2 * k - 1, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            x[i] = a.v % p;
            a.v /= p;
            y[i] = b.v % p;
            b.v /= p;
        }
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        auto const& m = spec_.ext_modulus;
        for (std::size_t d = prod.size(); d-- > k;) {
            std::uint64_t c = prod[d];
            if (c == 0) continue;
            for (std::uint32_t i = 0; i <= k; ++i)
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m[i]) % p;
        }
        std::uint32_t r = 0, scale = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            r += static_cast<std::uint32_t>(prod[i]) * scale;
            scale *= p;
        }
        return Fe{r};
    }

    FieldSpec spec_;
    std::uint32_t q_ = 0;
};

} // namespace ffbias
