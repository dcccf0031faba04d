#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "charsumlab/field.hpp"
#include "charsumlab/sets.hpp"

namespace csl {

// A finished character sum, carried as exact per-exponent counts. counts[k]
// is the number of summands equal to the k-th power of the primitive d-th
// root of unity; the complex value is only materialized on demand, so sums
// of order-1 and order-2 characters stay in exact integers.
class CharSum {
public:
    explicit CharSum(std::uint64_t order) : order_(order), counts_(order, 0) {}

    void tally(std::int64_t index) {
        if (index == Character::zero_mark) return;
        ++counts_[static_cast<std::size_t>(index)];
        ++terms_;
    }
    void merge(const CharSum& other);

    std::uint64_t order() const noexcept { return order_; }
    // Number of nonzero summands.
    std::uint64_t terms() const noexcept { return terms_; }
    const std::vector<std::uint64_t>& index_counts() const noexcept { return counts_; }

    bool exact() const noexcept { return order_ <= 2; }
    // counts[0] - counts[1]; the exact value for orders 1 and 2.
    std::int64_t signed_value() const;
    std::complex<double> value() const;
    double abs() const;

private:
    std::uint64_t order_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t terms_ = 0;
};

// sum over (a, b) in A x B of chi(a + b).
CharSum char_sum(const Character& chi, const FpSet& a, const FpSet& b);

// Monic split polynomial prod_i (x + shifts[i])^{mults[i]} with pairwise
// distinct shifts (so the roots are the -shifts[i]).
struct SplitPoly {
    std::vector<std::uint64_t> shifts;
    std::vector<std::uint32_t> mults;

    std::size_t distinct_roots() const noexcept { return shifts.size(); }
    void validate(const PrimeField& f) const;
};

struct WeilSum {
    CharSum sum;             // sum over x in F_p of chi(f(x))
    double bound;            // (m - 1) * sqrt(p)
    bool is_power_of_order;  // every multiplicity divisible by the order: bound not applicable
    bool within_bound;       // |sum| <= bound; meaningful only when !is_power_of_order
};

WeilSum weil_sum(const Character& chi, const SplitPoly& f, unsigned workers = 1);

// Modulus cap for the full O(p^2 |I|) moment check below.
inline constexpr std::uint64_t moment_check_max_p = 2000;

struct MomentCheck {
    long double lhs = 0;  // sum over (u1,u2) of |sum_{t in I} chi(u1+t) conj(chi)(u2+t)|^(2r)
    long double rhs = 0;  // p^2 |I|^r r^(2r) + 4 r^2 p |I|^(2r)
    bool ok = false;      // lhs < rhs
    bool exact = false;   // both sides compared in exact integer arithmetic
};

// Exhaustive 2r-th moment over all shift pairs (u1, u2) in F_p^2 of the
// inner product of chi over the interval I. Requires r >= 2 and
// p <= moment_check_max_p. Order-2 characters are checked in exact integers
// whenever both sides fit in 128 bits.
MomentCheck davenport_check(const Character& chi, const FpSet& interval, unsigned r,
                            unsigned workers = 1);

struct TranslateAverage {
    std::vector<double> row_sums;  // per (x, y) in A0 x I, x-major, both ascending
    double mean = 0;
    double min = 0;
    double char_sum_abs = 0;  // |char_sum(chi, A, B)|
    bool min_le_mean = false;
    bool sum_le_mean = false;
};

// For each (x, y) in A0 x I computes
//   T(x, y) = sum over a in (A - A0*I) of |sum_{b in B} chi(a + b + x*y)|,
// then the mean and min over all (x, y). Because A - x*y lies inside the
// hull A - A0*I, |char_sum(A, B)| is bounded by every T(x, y) and hence by
// the mean; both orderings are checked exactly for order-2 characters.
TranslateAverage translate_average(const Character& chi, const FpSet& a, const FpSet& b,
                                   const FpSet& a0, const FpSet& interval);

}  // namespace csl
