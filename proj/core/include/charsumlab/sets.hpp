#pragma once

#include <cstdint>
#include <vector>

#include "charsumlab/field.hpp"

namespace csl {

// Reduced fraction of two set sizes, e.g. the doubling constant |A+A|/|A|.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    static Ratio of(std::uint64_t num, std::uint64_t den);
};

// Finite subset of F_p, stored as a strictly increasing list of canonical
// residues. Construction normalizes (sorts and deduplicates) its input.
class FpSet {
public:
    FpSet(FieldPtr field, std::vector<std::uint64_t> elements);

    static FpSet empty_set(FieldPtr field);
    // Integers lo..hi embedded mod p; the whole field once the range covers it.
    static FpSet interval(FieldPtr field, std::int64_t lo, std::int64_t hi);
    static FpSet full(FieldPtr field);
    // The multiplicative subgroup of the given order; order must divide p-1.
    static FpSet subgroup(FieldPtr field, std::uint64_t order);

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    bool contains(std::uint64_t x) const;
    bool contains_zero() const { return !elems_.empty() && elems_.front() == 0; }
    const std::vector<std::uint64_t>& elements() const noexcept { return elems_; }
    const PrimeField& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }

    std::uint64_t min_element() const;
    FpSet without_zero() const;
    FpSet translate(std::uint64_t t) const;
    FpSet negate() const;
    bool is_subset_of(const FpSet& other) const;

    bool operator==(const FpSet& other) const {
        return field_->p() == other.field_->p() && elems_ == other.elems_;
    }

private:
    FieldPtr field_;
    std::vector<std::uint64_t> elems_;
};

// {a + b}. Uses bitset convolution when the modulus is small and the sets
// are dense, pairwise accumulation otherwise; both are exact.
FpSet sumset(const FpSet& a, const FpSet& b);
// {a - b}.
FpSet difference(const FpSet& a, const FpSet& b);
// {a * b}.
FpSet product_set(const FpSet& a, const FpSet& b);
// |A+A| / |A| as an exact reduced fraction.
Ratio doubling_constant(const FpSet& a);

// Generalized arithmetic progression
//   base + { sum_j x_j * gens[j] : 0 <= x_j < bounds[j] }.
struct Gap {
    FieldPtr field;
    std::uint64_t base = 0;
    std::vector<std::uint64_t> gens;
    std::vector<std::uint64_t> bounds;

    std::size_t dimension() const noexcept { return gens.size(); }
    // prod bounds[j], overflow-checked.
    std::uint64_t index_box_volume() const;
    void validate() const;
};

struct GapEnumeration {
    FpSet set;
    bool proper;  // no two index tuples collide, i.e. |set| == volume
};

// Every value of the progression. Guarded: the index box volume may not
// exceed 10^8.
GapEnumeration gap_enumerate(const Gap& g);

// Shrinks the index box by the factor p^(-2*alpha): each bound H becomes
// floor(p^(-2*alpha) * H) + 1 (the +1 counts the closed index range
// [0, floor(...)]) and the base is dropped. alpha must be positive.
Gap gap_shrink(const Gap& g, double alpha);

struct BoxContainment {
    bool contained;           // A - A0*I inside the expanded box
    std::uint64_t box_size;   // enumerated size of the expanded box
    std::uint64_t diff_size;  // |A - A0*I|
};

// Checks A - A0*I against the coefficient box spanned by P's generators,
// widened downward by the largest coefficient an A0*I product can carry:
// index ranges [-(bound0_j - 1) * max(I), bounds_j]. A must be a subset of
// the enumerated P, and I must be an integer interval embedded in F_p.
BoxContainment box_containment(const FpSet& a, const Gap& a0, const FpSet& interval,
                               const Gap& p_gap);

}  // namespace csl
