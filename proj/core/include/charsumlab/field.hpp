#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace csl {

class PrimeField;
using FieldPtr = std::shared_ptr<const PrimeField>;

// Arithmetic in F_p for a prime p, with a precomputed discrete-log table.
//
// The table maps every nonzero residue x to the exponent k with g^k = x,
// where g is the smallest primitive root of p. Construction costs O(p) time
// and memory; p is capped so the table always fits in RAM. All residues are
// canonical, i.e. in [0, p).
class PrimeField {
public:
    static constexpr std::uint64_t max_modulus = std::uint64_t{1} << 26;

    // Validates primality and the modulus cap, then builds the tables.
    static FieldPtr make(std::uint64_t p);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t generator() const noexcept { return g_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    // p < 2^26 keeps the product below 2^52: no widening needed.
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return a * b % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
    // Multiplicative inverse; precondition a != 0.
    std::uint64_t inv(std::uint64_t a) const;
    // Canonical residue of a signed integer.
    std::uint64_t reduce_int(std::int64_t v) const noexcept {
        std::int64_t m = v % static_cast<std::int64_t>(p_);
        if (m < 0) m += static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(m);
    }

    // dlog(x) = k with generator()^k = x; precondition x in (0, p).
    std::uint32_t dlog(std::uint64_t x) const { return dlog_[x]; }

    static bool is_prime(std::uint64_t n);
    // Smallest generator of the multiplicative group of F_p.
    static std::uint64_t find_primitive_root(std::uint64_t p);
    // Distinct prime factors of n, ascending.
    static std::vector<std::uint64_t> prime_factors(std::uint64_t n);

private:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t p_;
    std::uint64_t g_;
    std::vector<std::uint32_t> dlog_;
};

// Multiplicative character mod p of order d (d must divide p-1), evaluated
// as a unit-root exponent: value(x) = exp(2*pi*i*index(x)/d) for x != 0 and
// value(0) = 0. Carrying the exponent keeps every character value exact;
// complex numbers only appear when sums are materialized.
class Character {
public:
    // index() result marking x == 0; every true exponent lies in [0, d).
    static constexpr std::int64_t zero_mark = -1;

    Character(FieldPtr field, std::uint64_t order);

    std::uint64_t order() const noexcept { return d_; }
    bool trivial() const noexcept { return d_ == 1; }
    const PrimeField& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }

    std::int64_t index(std::uint64_t x) const {
        if (x == 0) return zero_mark;
        return static_cast<std::int64_t>((field_->dlog(x) % d_) * twist_ % d_);
    }

    std::complex<double> value(std::uint64_t x) const {
        std::int64_t k = index(x);
        if (k == zero_mark) return {0.0, 0.0};
        return roots_[static_cast<std::size_t>(k)];
    }

    std::complex<double> unit_root(std::uint64_t k) const { return roots_[k % d_]; }

    // +1 / -1 / 0; only for orders 1 and 2.
    int sign(std::uint64_t x) const;

    // The character x -> conj(value(x)); same order.
    Character conjugate() const;

private:
    Character(FieldPtr field, std::uint64_t order, std::uint64_t twist);
    void build_roots();

    FieldPtr field_;
    std::uint64_t d_;
    std::uint64_t twist_;  // evaluates the canonical character raised to this power
    std::vector<std::complex<double>> roots_;
};

// Absolute tolerance for floating-point sums of `summands` unit roots.
inline double sum_tolerance(std::uint64_t summands) {
    return 1e-9 * static_cast<double>(summands);
}

}  // namespace csl
