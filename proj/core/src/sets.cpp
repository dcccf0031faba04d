#include "charsumlab/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "charsumlab/bitset.hpp"

namespace csl {
namespace {

constexpr std::uint64_t max_box_volume = 100'000'000;  // gap enumeration guard
constexpr std::uint64_t bitset_modulus_cap = std::uint64_t{1} << 20;

void require_same_field(const FpSet& a, const FpSet& b, const char* op) {
    if (a.field().p() != b.field().p())
        throw std::invalid_argument(std::string(op) + ": operands live in different fields");
}

// Collects a+b (or a-b via negated b) for all pairs; exact, O(|A||B| log).
std::vector<std::uint64_t> pairwise_sums(const PrimeField& f,
                                         const std::vector<std::uint64_t>& a,
                                         const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> out;
    out.reserve(a.size() * b.size());
    for (std::uint64_t x : a)
        for (std::uint64_t y : b) out.push_back(f.add(x, y));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> bitset_sums(const PrimeField& f,
                                       const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b) {
    const std::size_t p = f.p();
    Bitset bb(p);
    for (std::uint64_t y : b) bb.set(y);
    Bitset rr(p);
    for (std::uint64_t x : a) rr.or_rotated(bb, x);
    std::vector<std::uint64_t> out;
    out.reserve(rr.count());
    rr.for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::vector<std::uint64_t> sum_elements(const PrimeField& f,
                                        const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b) {
    if (a.empty() || b.empty()) return {};
    // Convolution costs ~|A| * p/64 word ops, pairwise |A||B| log(|A||B|).
    const bool dense = f.p() <= bitset_modulus_cap && a.size() * b.size() >= f.p();
    return dense ? bitset_sums(f, a, b) : pairwise_sums(f, a, b);
}

}  // namespace

Ratio Ratio::of(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
    std::uint64_t g = std::gcd(num, den);
    return Ratio{num / g, den / g};
}

FpSet::FpSet(FieldPtr field, std::vector<std::uint64_t> elements)
    : field_(std::move(field)), elems_(std::move(elements)) {
    if (!field_) throw std::invalid_argument("FpSet: null field");
    for (std::uint64_t x : elems_) {
        if (x >= field_->p())
            throw std::invalid_argument("FpSet: element " + std::to_string(x) +
                                        " outside [0, p) for p = " + std::to_string(field_->p()));
    }
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FpSet FpSet::empty_set(FieldPtr field) { return FpSet(std::move(field), {}); }

FpSet FpSet::interval(FieldPtr field, std::int64_t lo, std::int64_t hi) {
    if (!field) throw std::invalid_argument("FpSet::interval: null field");
    if (lo > hi) throw std::invalid_argument("FpSet::interval: empty range");
    const std::uint64_t p = field->p();
    const std::uint64_t len = static_cast<std::uint64_t>(hi - lo) + 1;
    if (len >= p) return full(std::move(field));
    std::vector<std::uint64_t> elems;
    elems.reserve(len);
    for (std::int64_t v = lo; v <= hi; ++v) elems.push_back(field->reduce_int(v));
    return FpSet(std::move(field), std::move(elems));
}

FpSet FpSet::full(FieldPtr field) {
    if (!field) throw std::invalid_argument("FpSet::full: null field");
    std::vector<std::uint64_t> elems(field->p());
    for (std::uint64_t i = 0; i < elems.size(); ++i) elems[i] = i;
    return FpSet(std::move(field), std::move(elems));
}

FpSet FpSet::subgroup(FieldPtr field, std::uint64_t order) {
    if (!field) throw std::invalid_argument("FpSet::subgroup: null field");
    if (order == 0 || (field->p() - 1) % order != 0)
        throw std::invalid_argument("FpSet::subgroup: order must divide p-1");
    const std::uint64_t h = field->pow(field->generator(), (field->p() - 1) / order);
    std::vector<std::uint64_t> elems;
    elems.reserve(order);
    std::uint64_t x = 1;
    for (std::uint64_t j = 0; j < order; ++j) {
        elems.push_back(x);
        x = field->mul(x, h);
    }
    return FpSet(std::move(field), std::move(elems));
}

bool FpSet::contains(std::uint64_t x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::uint64_t FpSet::min_element() const {
    if (elems_.empty()) throw std::invalid_argument("FpSet::min_element: empty set");
    return elems_.front();
}

FpSet FpSet::without_zero() const {
    std::vector<std::uint64_t> elems = elems_;
    if (!elems.empty() && elems.front() == 0) elems.erase(elems.begin());
    return FpSet(field_, std::move(elems));
}

FpSet FpSet::translate(std::uint64_t t) const {
    std::vector<std::uint64_t> elems;
    elems.reserve(elems_.size());
    for (std::uint64_t x : elems_) elems.push_back(field_->add(x, t));
    return FpSet(field_, std::move(elems));
}

FpSet FpSet::negate() const {
    std::vector<std::uint64_t> elems;
    elems.reserve(elems_.size());
    for (std::uint64_t x : elems_) elems.push_back(field_->neg(x));
    return FpSet(field_, std::move(elems));
}

bool FpSet::is_subset_of(const FpSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

FpSet sumset(const FpSet& a, const FpSet& b) {
    require_same_field(a, b, "sumset");
    return FpSet(a.field_ptr(), sum_elements(a.field(), a.elements(), b.elements()));
}

FpSet difference(const FpSet& a, const FpSet& b) {
    require_same_field(a, b, "difference");
    FpSet nb = b.negate();
    return FpSet(a.field_ptr(), sum_elements(a.field(), a.elements(), nb.elements()));
}

FpSet product_set(const FpSet& a, const FpSet& b) {
    require_same_field(a, b, "product_set");
    const PrimeField& f = a.field();
    std::vector<std::uint64_t> out;
    out.reserve(a.size() * b.size());
    for (std::uint64_t x : a.elements())
        for (std::uint64_t y : b.elements()) out.push_back(f.mul(x, y));
    return FpSet(a.field_ptr(), std::move(out));
}

Ratio doubling_constant(const FpSet& a) {
    if (a.empty()) throw std::invalid_argument("doubling_constant: empty set");
    return Ratio::of(sumset(a, a).size(), a.size());
}

std::uint64_t Gap::index_box_volume() const {
    std::uint64_t v = 1;
    for (std::uint64_t h : bounds) {
        if (h == 0) return 0;
        if (v > UINT64_MAX / h) return UINT64_MAX;  // saturate; validate() rejects
        v *= h;
    }
    return v;
}

void Gap::validate() const {
    if (!field) throw std::invalid_argument("Gap: null field");
    if (gens.empty()) throw std::invalid_argument("Gap: dimension must be at least 1");
    if (gens.size() != bounds.size())
        throw std::invalid_argument("Gap: generator and bound counts differ");
    const std::uint64_t p = field->p();
    if (base >= p) throw std::invalid_argument("Gap: base outside [0, p)");
    for (std::uint64_t g : gens)
        if (g >= p) throw std::invalid_argument("Gap: generator outside [0, p)");
    for (std::uint64_t h : bounds)
        if (h == 0) throw std::invalid_argument("Gap: zero bound");
    if (index_box_volume() > max_box_volume)
        throw std::invalid_argument("Gap: index box volume exceeds the 1e8 guard");
}

namespace {

// Depth-first walk over the index box, feeding each value to sink.
template <typename Sink>
void walk_gap(const Gap& g, std::size_t dim, std::uint64_t acc, Sink&& sink) {
    if (dim == g.gens.size()) {
        sink(acc);
        return;
    }
    const PrimeField& f = *g.field;
    std::uint64_t v = acc;
    for (std::uint64_t x = 0; x < g.bounds[dim]; ++x) {
        walk_gap(g, dim + 1, v, sink);
        v = f.add(v, g.gens[dim]);
    }
}

}  // namespace

GapEnumeration gap_enumerate(const Gap& g) {
    g.validate();
    const std::uint64_t volume = g.index_box_volume();
    const std::uint64_t p = g.field->p();
    if (volume > p || volume > (std::uint64_t{1} << 22)) {
        // Dedup on the fly; properness still falls out of the popcount.
        Bitset bits(p);
        walk_gap(g, 0, g.base, [&](std::uint64_t v) { bits.set(v); });
        std::vector<std::uint64_t> elems;
        elems.reserve(bits.count());
        bits.for_each([&](std::size_t i) { elems.push_back(i); });
        FpSet set(g.field, std::move(elems));
        bool proper = set.size() == volume;
        return {std::move(set), proper};
    }
    std::vector<std::uint64_t> vals;
    vals.reserve(volume);
    walk_gap(g, 0, g.base, [&](std::uint64_t v) { vals.push_back(v); });
    FpSet set(g.field, std::move(vals));
    bool proper = set.size() == volume;
    return {std::move(set), proper};
}

Gap gap_shrink(const Gap& g, double alpha) {
    g.validate();
    if (!(alpha > 0.0)) throw std::invalid_argument("gap_shrink: alpha must be positive");
    const double factor = std::pow(static_cast<double>(g.field->p()), -2.0 * alpha);
    std::vector<std::uint64_t> bounds;
    bounds.reserve(g.bounds.size());
    for (std::uint64_t h : g.bounds) {
        double scaled = std::floor(factor * static_cast<double>(h));
        bounds.push_back(static_cast<std::uint64_t>(scaled) + 1);
    }
    return Gap{g.field, 0, g.gens, std::move(bounds)};
}

BoxContainment box_containment(const FpSet& a, const Gap& a0, const FpSet& interval,
                               const Gap& p_gap) {
    p_gap.validate();
    a0.validate();
    if (a.field().p() != p_gap.field->p() || interval.field().p() != p_gap.field->p() ||
        a0.field->p() != p_gap.field->p())
        throw std::invalid_argument("box_containment: operands live in different fields");
    if (a0.gens != p_gap.gens)
        throw std::invalid_argument("box_containment: shrunk progression has different generators");
    if (interval.empty()) throw std::invalid_argument("box_containment: empty interval");
    {
        const auto& e = interval.elements();
        if (e.back() - e.front() + 1 != e.size())
            throw std::invalid_argument("box_containment: I is not an integer interval");
    }
    GapEnumeration penum = gap_enumerate(p_gap);
    if (!a.is_subset_of(penum.set))
        throw std::invalid_argument("box_containment: A is not a subset of the enumerated progression");

    const PrimeField& f = *p_gap.field;
    const std::uint64_t y_max = interval.elements().back();

    // Index ranges [-(bound0_j - 1) * y_max, bounds_j], re-based so the gap
    // machinery can enumerate them with nonnegative coefficients.
    std::uint64_t base = p_gap.base;
    std::vector<std::uint64_t> bounds;
    bounds.reserve(p_gap.bounds.size());
    for (std::size_t j = 0; j < p_gap.bounds.size(); ++j) {
        const std::uint64_t widen = (a0.bounds[j] - 1) * y_max;
        base = f.sub(base, f.mul(widen % f.p(), p_gap.gens[j]));
        bounds.push_back(p_gap.bounds[j] + widen + 1);
    }
    Gap box{p_gap.field, base, p_gap.gens, std::move(bounds)};
    GapEnumeration box_enum = gap_enumerate(box);

    FpSet a0_set = gap_enumerate(a0).set;
    FpSet diff = difference(a, product_set(a0_set, interval));
    bool contained = diff.is_subset_of(box_enum.set);
    return {contained, box_enum.set.size(), diff.size()};
}

}  // namespace csl
