#include "charsumlab/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "charsumlab/parallel.hpp"

namespace csl {
namespace {

using u128 = unsigned __int128;

void require_field(const Character& chi, const FpSet& s, const char* op) {
    if (chi.field().p() != s.field().p())
        throw std::invalid_argument(std::string(op) + ": character and set use different fields");
}

// |base|^exp with overflow detection; returns false once the value leaves
// the 128-bit range.
bool checked_pow_u128(u128 base, unsigned exp, u128& out) {
    u128 r = 1;
    while (exp) {
        if (exp & 1) {
            if (base != 0 && r > ~u128{0} / base) return false;
            r *= base;
        }
        exp >>= 1;
        if (exp) {
            if (base != 0 && base > ~u128{0} / base) return false;
            base *= base;
        }
    }
    out = r;
    return true;
}

bool checked_mul_u128(u128 a, u128 b, u128& out) {
    if (a != 0 && b > ~u128{0} / a) return false;
    out = a * b;
    return true;
}

bool checked_add_u128(u128 a, u128 b, u128& out) {
    if (a > ~u128{0} - b) return false;
    out = a + b;
    return true;
}

long double to_ld(u128 v) {
    return static_cast<long double>(static_cast<std::uint64_t>(v >> 64)) * 18446744073709551616.0L +
           static_cast<long double>(static_cast<std::uint64_t>(v));
}

void require_interval(const FpSet& interval, const char* op) {
    if (interval.empty()) throw std::invalid_argument(std::string(op) + ": empty interval");
    const auto& e = interval.elements();
    if (e.back() - e.front() + 1 != e.size())
        throw std::invalid_argument(std::string(op) + ": I is not an integer interval");
}

}  // namespace

void CharSum::merge(const CharSum& other) {
    if (order_ != other.order_) throw std::invalid_argument("CharSum::merge: order mismatch");
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
    terms_ += other.terms_;
}

std::int64_t CharSum::signed_value() const {
    if (order_ > 2) throw std::logic_error("CharSum::signed_value: order exceeds 2");
    if (order_ == 1) return static_cast<std::int64_t>(counts_[0]);
    return static_cast<std::int64_t>(counts_[0]) - static_cast<std::int64_t>(counts_[1]);
}

std::complex<double> CharSum::value() const {
    if (order_ <= 2) return {static_cast<double>(signed_value()), 0.0};
    std::complex<double> v{0.0, 0.0};
    for (std::uint64_t k = 0; k < order_; ++k) {
        if (counts_[k] == 0) continue;
        double a = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / static_cast<double>(order_);
        v += static_cast<double>(counts_[k]) * std::complex<double>{std::cos(a), std::sin(a)};
    }
    return v;
}

double CharSum::abs() const {
    if (order_ <= 2) return static_cast<double>(std::llabs(signed_value()));
    return std::abs(value());
}

CharSum char_sum(const Character& chi, const FpSet& a, const FpSet& b) {
    require_field(chi, a, "char_sum");
    require_field(chi, b, "char_sum");
    const PrimeField& f = chi.field();
    CharSum acc(chi.order());
    for (std::uint64_t x : a.elements())
        for (std::uint64_t y : b.elements()) acc.tally(chi.index(f.add(x, y)));
    return acc;
}

void SplitPoly::validate(const PrimeField& f) const {
    if (shifts.empty()) throw std::invalid_argument("SplitPoly: needs at least one factor");
    if (shifts.size() != mults.size())
        throw std::invalid_argument("SplitPoly: shift and multiplicity counts differ");
    for (std::uint64_t c : shifts)
        if (c >= f.p()) throw std::invalid_argument("SplitPoly: shift outside [0, p)");
    for (std::uint32_t e : mults)
        if (e == 0) throw std::invalid_argument("SplitPoly: zero multiplicity");
    std::vector<std::uint64_t> sorted = shifts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("SplitPoly: repeated shift");
}

WeilSum weil_sum(const Character& chi, const SplitPoly& f, unsigned workers) {
    const PrimeField& fld = chi.field();
    f.validate(fld);
    const std::uint64_t p = fld.p();
    const std::uint64_t d = chi.order();
    const std::size_t m = f.distinct_roots();

    bool power = true;
    for (std::uint32_t e : f.mults)
        if (e % d != 0) power = false;

    // chi(prod (x+c_i)^{e_i}) has exponent sum e_i * dlog(x+c_i) mod d,
    // and is zero as soon as one factor vanishes.
    const unsigned w = resolve_workers(workers);
    const std::size_t chunks = w <= 1 ? 1 : w * 4;
    std::vector<CharSum> partial(chunks, CharSum(d));
    const std::uint64_t step = (p + chunks - 1) / chunks;
    parallel_for(chunks, w, [&](std::size_t ci) {
        const std::uint64_t lo = ci * step;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + step, p);
        CharSum& acc = partial[ci];
        for (std::uint64_t x = lo; x < hi; ++x) {
            std::uint64_t idx = 0;
            bool zero = false;
            for (std::size_t i = 0; i < f.shifts.size(); ++i) {
                const std::uint64_t t = fld.add(x, f.shifts[i]);
                if (t == 0) {
                    zero = true;
                    break;
                }
                idx += static_cast<std::uint64_t>(f.mults[i]) * (fld.dlog(t) % d);
            }
            if (!zero) acc.tally(static_cast<std::int64_t>(idx % d));
        }
    });
    CharSum total(d);
    for (const CharSum& c : partial) total.merge(c);

    WeilSum out{std::move(total), (static_cast<double>(m) - 1.0) * std::sqrt(static_cast<double>(p)),
                power, false};
    if (!power) {
        if (out.sum.exact()) {
            // |S|^2 <= (m-1)^2 p in integers
            const std::int64_t sv = out.sum.signed_value();
            const u128 lhs = static_cast<u128>(sv < 0 ? -sv : sv) * static_cast<u128>(sv < 0 ? -sv : sv);
            const u128 rhs = static_cast<u128>((m - 1) * (m - 1)) * static_cast<u128>(p);
            out.within_bound = lhs <= rhs;
        } else {
            out.within_bound = out.sum.abs() <= out.bound + sum_tolerance(out.sum.terms());
        }
    }
    return out;
}

namespace {

// Exact order-2 moment accumulation; per-u1 slice.
u128 moment_slice_signed(const std::vector<std::int8_t>& sign, std::uint64_t p,
                         std::uint64_t i_lo, std::uint64_t i_len, unsigned two_r,
                         std::uint64_t u1) {
    u128 acc = 0;
    for (std::uint64_t u2 = 0; u2 < p; ++u2) {
        std::int64_t inner = 0;
        std::uint64_t s1 = (u1 + i_lo) % p;
        std::uint64_t s2 = (u2 + i_lo) % p;
        for (std::uint64_t t = 0; t < i_len; ++t) {
            inner += static_cast<std::int64_t>(sign[s1]) * static_cast<std::int64_t>(sign[s2]);
            if (++s1 == p) s1 = 0;
            if (++s2 == p) s2 = 0;
        }
        u128 term;
        if (!checked_pow_u128(static_cast<u128>(inner < 0 ? -inner : inner), two_r, term))
            throw std::overflow_error("davenport_check: moment power overflow");
        u128 next;
        if (!checked_add_u128(acc, term, next))
            throw std::overflow_error("davenport_check: moment sum overflow");
        acc = next;
    }
    return acc;
}

long double moment_slice_complex(const std::vector<std::int32_t>& idx, std::uint64_t p,
                                 std::uint64_t d, std::uint64_t i_lo, std::uint64_t i_len,
                                 unsigned r, std::uint64_t u1) {
    // inner product collected as exact counts of exponent differences
    std::vector<std::uint64_t> cnt(d);
    long double acc = 0;
    for (std::uint64_t u2 = 0; u2 < p; ++u2) {
        std::fill(cnt.begin(), cnt.end(), 0);
        std::uint64_t s1 = (u1 + i_lo) % p;
        std::uint64_t s2 = (u2 + i_lo) % p;
        for (std::uint64_t t = 0; t < i_len; ++t) {
            if (idx[s1] >= 0 && idx[s2] >= 0) {
                std::uint64_t diff = static_cast<std::uint64_t>(idx[s1] - idx[s2] + static_cast<std::int32_t>(d)) % d;
                ++cnt[diff];
            }
            if (++s1 == p) s1 = 0;
            if (++s2 == p) s2 = 0;
        }
        long double re = 0, im = 0;
        for (std::uint64_t k = 0; k < d; ++k) {
            if (cnt[k] == 0) continue;
            long double ang = 2.0L * 3.141592653589793238462643383279L * static_cast<long double>(k) /
                              static_cast<long double>(d);
            re += static_cast<long double>(cnt[k]) * std::cos(ang);
            im += static_cast<long double>(cnt[k]) * std::sin(ang);
        }
        acc += std::pow(re * re + im * im, static_cast<long double>(r));
    }
    return acc;
}

}  // namespace

MomentCheck davenport_check(const Character& chi, const FpSet& interval, unsigned r,
                            unsigned workers) {
    require_field(chi, interval, "davenport_check");
    require_interval(interval, "davenport_check");
    if (r < 2) throw std::invalid_argument("davenport_check: r must be at least 2");
    const PrimeField& f = chi.field();
    const std::uint64_t p = f.p();
    if (p > moment_check_max_p)
        throw std::invalid_argument("davenport_check: p exceeds the " +
                                    std::to_string(moment_check_max_p) + " cost guard");

    const std::uint64_t d = chi.order();
    const std::uint64_t i_lo = interval.elements().front();
    const std::uint64_t i_len = interval.size();
    const unsigned two_r = 2 * r;

    MomentCheck out;

    // rhs = p^2 |I|^r r^(2r) + 4 r^2 p |I|^(2r), exact while it fits.
    u128 rhs_int = 0;
    bool rhs_fits = true;
    {
        u128 t1, t2, pow_i_r, pow_i_2r, pow_r_2r;
        rhs_fits = checked_pow_u128(i_len, r, pow_i_r) && checked_pow_u128(i_len, two_r, pow_i_2r) &&
                   checked_pow_u128(r, two_r, pow_r_2r) &&
                   checked_mul_u128(static_cast<u128>(p) * p, pow_i_r, t1) &&
                   checked_mul_u128(t1, pow_r_2r, t1) &&
                   checked_mul_u128(static_cast<u128>(4) * r * r * p, pow_i_2r, t2) &&
                   checked_add_u128(t1, t2, rhs_int);
    }
    const long double rhs_ld =
        powl(static_cast<long double>(p), 2) * powl(static_cast<long double>(i_len), r) *
            powl(static_cast<long double>(r), two_r) +
        4.0L * r * r * static_cast<long double>(p) * powl(static_cast<long double>(i_len), two_r);
    out.rhs = rhs_fits ? to_ld(rhs_int) : rhs_ld;

    if (d <= 2) {
        std::vector<std::int8_t> sign(p);
        for (std::uint64_t x = 0; x < p; ++x)
            sign[x] = static_cast<std::int8_t>(x == 0 ? 0 : (chi.index(x) == 0 ? 1 : -1));
        std::vector<u128> partial(p);
        parallel_for(p, workers, [&](std::size_t u1) {
            partial[u1] = moment_slice_signed(sign, p, i_lo, i_len, two_r, u1);
        });
        u128 lhs = 0;
        for (u128 v : partial) {
            if (!checked_add_u128(lhs, v, lhs))
                throw std::overflow_error("davenport_check: moment sum overflow");
        }
        out.lhs = to_ld(lhs);
        if (rhs_fits) {
            out.ok = lhs < rhs_int;
            out.exact = true;
        } else {
            // rhs exceeds 2^128 while lhs fits: strictly larger.
            out.ok = true;
            out.exact = true;
        }
    } else {
        std::vector<std::int32_t> idx(p);
        for (std::uint64_t x = 0; x < p; ++x)
            idx[x] = static_cast<std::int32_t>(x == 0 ? -1 : chi.index(x));
        std::vector<long double> partial(p);
        parallel_for(p, workers, [&](std::size_t u1) {
            partial[u1] = moment_slice_complex(idx, p, d, i_lo, i_len, r, u1);
        });
        long double lhs = 0;
        for (long double v : partial) lhs += v;  // fixed fold order
        out.lhs = lhs;
        out.ok = lhs < out.rhs;
        out.exact = false;
    }
    return out;
}

TranslateAverage translate_average(const Character& chi, const FpSet& a, const FpSet& b,
                                   const FpSet& a0, const FpSet& interval) {
    require_field(chi, a, "translate_average");
    require_field(chi, b, "translate_average");
    require_field(chi, a0, "translate_average");
    require_field(chi, interval, "translate_average");
    if (a.empty() || b.empty() || a0.empty() || interval.empty())
        throw std::invalid_argument("translate_average: empty operand");

    const PrimeField& f = chi.field();
    const std::uint64_t d = chi.order();
    const FpSet hull = difference(a, product_set(a0, interval));
    const std::size_t n_rows = a0.size() * interval.size();

    TranslateAverage out;
    out.row_sums.reserve(n_rows);
    const CharSum s = char_sum(chi, a, b);
    out.char_sum_abs = s.abs();

    if (d <= 2) {
        std::vector<std::uint64_t> rows;
        rows.reserve(n_rows);
        u128 total = 0;
        for (std::uint64_t x : a0.elements()) {
            for (std::uint64_t y : interval.elements()) {
                const std::uint64_t shift = f.mul(x, y);
                std::uint64_t row = 0;
                for (std::uint64_t h : hull.elements()) {
                    const std::uint64_t base = f.add(h, shift);
                    std::int64_t inner = 0;
                    for (std::uint64_t bb : b.elements()) inner += chi.sign(f.add(base, bb));
                    row += static_cast<std::uint64_t>(inner < 0 ? -inner : inner);
                }
                rows.push_back(row);
                total += row;
            }
        }
        std::uint64_t mn = rows.front();
        for (std::uint64_t v : rows) mn = std::min(mn, v);
        for (std::uint64_t v : rows) out.row_sums.push_back(static_cast<double>(v));
        out.mean = static_cast<double>(to_ld(total)) / static_cast<double>(n_rows);
        out.min = static_cast<double>(mn);
        // exact comparisons: X <= mean  <=>  X * n_rows <= total
        const u128 n = n_rows;
        const std::int64_t sv = s.signed_value();
        const u128 s_abs = static_cast<u128>(sv < 0 ? -sv : sv);
        out.min_le_mean = static_cast<u128>(mn) * n <= total;
        out.sum_le_mean = s_abs * n <= total;
    } else {
        std::vector<std::uint64_t> cnt(d);
        double total = 0;
        double mn = 0;
        bool first = true;
        for (std::uint64_t x : a0.elements()) {
            for (std::uint64_t y : interval.elements()) {
                const std::uint64_t shift = f.mul(x, y);
                double row = 0;
                for (std::uint64_t h : hull.elements()) {
                    const std::uint64_t base = f.add(h, shift);
                    std::fill(cnt.begin(), cnt.end(), 0);
                    for (std::uint64_t bb : b.elements()) {
                        std::int64_t k = chi.index(f.add(base, bb));
                        if (k != Character::zero_mark) ++cnt[static_cast<std::size_t>(k)];
                    }
                    std::complex<double> inner{0.0, 0.0};
                    for (std::uint64_t k = 0; k < d; ++k)
                        if (cnt[k]) inner += static_cast<double>(cnt[k]) * chi.unit_root(k);
                    row += std::abs(inner);
                }
                out.row_sums.push_back(row);
                total += row;
                mn = first ? row : std::min(mn, row);
                first = false;
            }
        }
        out.mean = total / static_cast<double>(n_rows);
        out.min = mn;
        const double tol = sum_tolerance(hull.size() * b.size());
        out.min_le_mean = out.min <= out.mean + tol;
        out.sum_le_mean = out.char_sum_abs <= out.mean + tol;
    }
    return out;
}

}  // namespace csl
