#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>

#include "charsumlab/field.hpp"
#include "charsumlab/sets.hpp"

namespace csl {

// lambda -> #{(a, a') in A^2 : a = lambda * a'}. Requires 0 not in A.
// Counts sum to |A|^2, the count at 1 is exactly |A|, and the profile is
// symmetric under lambda -> 1/lambda.
class RatioProfile {
public:
    static RatioProfile of(const FpSet& a, unsigned workers = 1);

    std::uint64_t at(std::uint64_t lambda) const;
    const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t source_size() const noexcept { return source_size_; }
    std::uint64_t pair_total() const noexcept { return source_size_ * source_size_; }

private:
    std::map<std::uint64_t, std::uint64_t> counts_;
    std::uint64_t source_size_ = 0;
};

// Third moment of the ratio profile: the number of sextuples
// (a1, a1', a2, a2', a3, a3') in A^6 with a1/a1' = a2/a2' = a3/a3'.
std::uint64_t e3_mult(const FpSet& a);

struct SystemCount {
    std::uint64_t total = 0;          // all solutions
    std::uint64_t nonzero = 0;        // solutions with all four b's nonzero
    std::uint64_t one_pair_zero = 0;  // exactly one of the b-pairs is (0, 0)
    std::uint64_t all_zero = 0;       // both b-pairs zero; equals |A|^2 when 0 is in B
    bool zeros_in_b = false;
};

// Number of solutions of  b1/a = b1'/a',  b2/a = b2'/a'  over A^2 x B^4.
// 0 in A is always an error. 0 in B is an error unless allow_zero_in_b is
// set, in which case the zero-numerator solutions are counted exactly and
// reported in the component fields.
SystemCount system_count(const FpSet& a, const FpSet& b, bool allow_zero_in_b = false);

struct HolderCheck {
    std::uint64_t lhs = 0;  // system_count(A, B)
    double rhs = 0;         // e3(A)^(1/3) * e3(B)^(2/3)
    std::uint64_t e3_a = 0;
    std::uint64_t e3_b = 0;
    bool ok = false;  // lhs <= rhs with 1e-9 relative slack for the real roots
};

// system_count(A, B) <= e3(A)^(1/3) e3(B)^(2/3); an equality when A = B,
// where lhs == e3_a holds in exact integers. Requires 0 not in A or B.
HolderCheck holder_chain_check(const FpSet& a, const FpSet& b);

struct E3BoundReport {
    std::uint64_t e3 = 0;
    double bound_body = 0;        // |A+A|^(15/4) * |A|^(-3/4) * log|A|
    double ratio = 0;             // e3 / bound_body
    bool precondition_ok = false; // |A|^11 * |A+A| <= p^8
};

// Report only: no inequality is asserted because the bound carries an
// unspecified constant. Logs are natural.
E3BoundReport e3_bound_report(const FpSet& a);

// (u1, u2) -> #{(b1, b2, x) in B_a^2 x A0 : b1 = u1 * x, b2 = u2 * x},
// where B_a = a + B. Rows with x = 0 cannot be formed (the map divides by
// x); they are an error unless exclude_zero is set, which drops them and
// reports |B|^2 excluded triples.
class NuProfile {
public:
    static NuProfile of(const FpSet& a0, const FpSet& b, std::uint64_t a_shift,
                        bool exclude_zero = false);

    // sum of nu = |B|^2 * |A0 \ {0}|
    std::uint64_t total() const noexcept { return total_; }
    // sum of nu^2; matches system_count(A0 \ {0}, a + B) by the
    // quadruple-system correspondence.
    std::uint64_t second_moment() const noexcept { return second_moment_; }
    std::uint64_t excluded_rows() const noexcept { return excluded_rows_; }
    std::uint64_t used_a0_size() const noexcept { return used_a0_size_; }
    const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const noexcept {
        return counts_;  // keyed u1 * p + u2; iteration order unspecified
    }

private:
    std::unordered_map<std::uint64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::uint64_t second_moment_ = 0;
    std::uint64_t excluded_rows_ = 0;
    std::uint64_t used_a0_size_ = 0;
};

}  // namespace csl
