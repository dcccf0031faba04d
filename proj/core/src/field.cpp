#include "charsumlab/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csl {
namespace {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    std::uint64_t b = base % mod;
    while (exp) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool PrimeField::is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    for (std::uint64_t f = 11; f * f <= n; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> PrimeField::prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t PrimeField::find_primitive_root(std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("find_primitive_root: " + std::to_string(p) + " is not prime");
    if (p > max_modulus)
        throw std::invalid_argument("find_primitive_root: modulus exceeds 2^26 cap");
    const auto factors = prime_factors(p - 1);
    for (std::uint64_t g = 1; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t q : factors) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;  // p = 2 has no factors: g = 1 generates the trivial group
    }
    throw std::logic_error("find_primitive_root: no generator found");
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), g_(find_primitive_root(p)) {
    dlog_.assign(p_, 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k + 1 < p_; ++k) {
        dlog_[x] = static_cast<std::uint32_t>(k);
        x = x * g_ % p_;
    }
}

FieldPtr PrimeField::make(std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    if (p > max_modulus) throw std::invalid_argument("PrimeField: modulus exceeds 2^26 cap");
    return FieldPtr(new PrimeField(p));
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept {
    return powmod(a, e, p_);
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
    return pow(a, p_ - 2);
}

Character::Character(FieldPtr field, std::uint64_t order)
    : Character(std::move(field), order, order > 0 ? 1 % order : 0) {}

Character::Character(FieldPtr field, std::uint64_t order, std::uint64_t twist)
    : field_(std::move(field)), d_(order), twist_(twist) {
    if (!field_) throw std::invalid_argument("Character: null field");
    if (d_ == 0) throw std::invalid_argument("Character: order must be positive");
    if ((field_->p() - 1) % d_ != 0)
        throw std::invalid_argument("Character: order " + std::to_string(d_) +
                                    " does not divide p-1 for p = " + std::to_string(field_->p()));
    build_roots();
}

void Character::build_roots() {
    roots_.resize(d_);
    for (std::uint64_t k = 0; k < d_; ++k) {
        double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d_);
        roots_[k] = {std::cos(a), std::sin(a)};
    }
}

int Character::sign(std::uint64_t x) const {
    if (d_ > 2) throw std::logic_error("Character::sign: order exceeds 2");
    if (x == 0) return 0;
    return index(x) == 0 ? 1 : -1;
}

Character Character::conjugate() const {
    return Character(field_, d_, (d_ - twist_) % d_);
}

}  // namespace csl
