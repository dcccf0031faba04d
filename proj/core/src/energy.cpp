#include "charsumlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "charsumlab/parallel.hpp"

namespace csl {
namespace {

void require_no_zero(const FpSet& s, const char* op, const char* which) {
    if (s.contains_zero())
        throw std::domain_error(std::string(op) + ": " + which + " contains 0; strip it first");
}

}  // namespace

RatioProfile RatioProfile::of(const FpSet& a, unsigned workers) {
    require_no_zero(a, "RatioProfile", "A");
    const PrimeField& f = a.field();
    const auto& elems = a.elements();

    std::vector<std::uint64_t> inv(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) inv[i] = f.inv(elems[i]);

    const unsigned w = resolve_workers(workers);
    RatioProfile out;
    out.source_size_ = elems.size();
    if (w <= 1 || elems.size() < 64) {
        for (std::uint64_t x : elems)
            for (std::uint64_t iy : inv) ++out.counts_[f.mul(x, iy)];
        return out;
    }
    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(w);
    const std::size_t step = (elems.size() + w - 1) / w;
    parallel_for(w, w, [&](std::size_t wi) {
        const std::size_t lo = wi * step;
        const std::size_t hi = std::min(lo + step, elems.size());
        auto& local = partial[wi];
        for (std::size_t i = lo; i < hi; ++i)
            for (std::uint64_t iy : inv) ++local[f.mul(elems[i], iy)];
    });
    for (const auto& local : partial)
        for (const auto& [k, v] : local) out.counts_[k] += v;
    return out;
}

std::uint64_t RatioProfile::at(std::uint64_t lambda) const {
    auto it = counts_.find(lambda);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t e3_mult(const FpSet& a) {
    const RatioProfile prof = RatioProfile::of(a);
    std::uint64_t sum = 0;
    for (const auto& [lambda, f] : prof.counts()) sum += f * f * f;
    return sum;
}

SystemCount system_count(const FpSet& a, const FpSet& b, bool allow_zero_in_b) {
    require_no_zero(a, "system_count", "A");
    if (b.contains_zero() && !allow_zero_in_b)
        throw std::domain_error("system_count: B contains 0; pass allow_zero_in_b to count it");
    if (a.empty() || b.empty()) return {};

    const bool zb = b.contains_zero();
    const FpSet b_star = zb ? b.without_zero() : b;
    const RatioProfile fa = RatioProfile::of(a);
    // Empty B* (B == {0}) leaves only the all-zero solutions.
    SystemCount out;
    out.zeros_in_b = zb;
    const std::uint64_t z = zb ? 1 : 0;
    if (!b_star.empty()) {
        const RatioProfile gb = RatioProfile::of(b_star);
        for (const auto& [lambda, fcount] : fa.counts()) {
            const std::uint64_t g = gb.at(lambda);
            out.nonzero += fcount * g * g;
            out.one_pair_zero += 2 * z * fcount * g;
        }
    }
    out.all_zero = z * a.size() * a.size();
    out.total = out.nonzero + out.one_pair_zero + out.all_zero;
    return out;
}

HolderCheck holder_chain_check(const FpSet& a, const FpSet& b) {
    require_no_zero(a, "holder_chain_check", "A");
    require_no_zero(b, "holder_chain_check", "B");
    HolderCheck out;
    out.lhs = system_count(a, b).total;
    out.e3_a = e3_mult(a);
    out.e3_b = e3_mult(b);
    const long double rhs = powl(static_cast<long double>(out.e3_a), 1.0L / 3.0L) *
                            powl(static_cast<long double>(out.e3_b), 2.0L / 3.0L);
    out.rhs = static_cast<double>(rhs);
    out.ok = static_cast<long double>(out.lhs) <= rhs * (1.0L + 1e-9L);
    return out;
}

E3BoundReport e3_bound_report(const FpSet& a) {
    require_no_zero(a, "e3_bound_report", "A");
    if (a.size() < 2) throw std::invalid_argument("e3_bound_report: |A| must be at least 2");
    const std::uint64_t p = a.field().p();
    const std::uint64_t na = a.size();
    const std::uint64_t naa = sumset(a, a).size();

    E3BoundReport out;
    out.e3 = e3_mult(a);
    const double bound = std::pow(static_cast<double>(naa), 15.0 / 4.0) *
                         std::pow(static_cast<double>(na), -3.0 / 4.0) *
                         std::log(static_cast<double>(na));
    out.bound_body = bound;
    out.ratio = static_cast<double>(out.e3) / bound;
    // |A|^11 |A+A| <= p^8, compared in log space (values overflow integers fast)
    const long double lhs_log = 11.0L * logl(static_cast<long double>(na)) +
                                logl(static_cast<long double>(naa));
    out.precondition_ok = lhs_log <= 8.0L * logl(static_cast<long double>(p));
    return out;
}

NuProfile NuProfile::of(const FpSet& a0, const FpSet& b, std::uint64_t a_shift,
                        bool exclude_zero) {
    if (a0.field().p() != b.field().p())
        throw std::invalid_argument("NuProfile: operands live in different fields");
    const PrimeField& f = a0.field();
    if (a_shift >= f.p()) throw std::invalid_argument("NuProfile: shift outside [0, p)");
    if (a0.contains_zero() && !exclude_zero)
        throw std::domain_error("NuProfile: A0 contains 0; pass exclude_zero to drop that row");

    NuProfile out;
    const FpSet a0_star = a0.without_zero();
    out.used_a0_size_ = a0_star.size();
    out.excluded_rows_ = a0.contains_zero() ? b.size() * b.size() : 0;

    const FpSet b_a = b.translate(a_shift);
    const std::uint64_t p = f.p();
    out.counts_.reserve(a0_star.size() * b_a.size());
    for (std::uint64_t x : a0_star.elements()) {
        const std::uint64_t ix = f.inv(x);
        for (std::uint64_t b1 : b_a.elements()) {
            const std::uint64_t u1 = f.mul(b1, ix);
            for (std::uint64_t b2 : b_a.elements()) {
                const std::uint64_t u2 = f.mul(b2, ix);
                ++out.counts_[u1 * p + u2];
            }
        }
    }
    for (const auto& [key, c] : out.counts_) {
        out.total_ += c;
        out.second_moment_ += c * c;
    }
    return out;
}

}  // namespace csl
