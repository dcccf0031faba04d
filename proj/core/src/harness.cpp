#include "charsumlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "charsumlab/charsum.hpp"
#include "charsumlab/energy.hpp"
#include "charsumlab/format.hpp"
#include "charsumlab/parallel.hpp"
#include "charsumlab/rng.hpp"

namespace csl {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 floor_power(u64 p, double e) {
    double v = std::floor(std::pow(static_cast<double>(p), e) + 1e-12);
    return v < 1.0 ? 1 : static_cast<u64>(v);
}

u64 mix_seed(u64 seed, u64 p, u64 pair_index) {
    u64 s = splitmix64(seed + 0x9e3779b97f4a7c15ULL);
    s = splitmix64(s ^ p);
    return splitmix64(s ^ pair_index);
}

FpSet build_family(const SetFamilySpec& spec, const FieldPtr& f, Rng& rng,
                   std::vector<std::string>& flags) {
    switch (spec.kind) {
        case SetFamilySpec::Kind::interval: {
            u64 n = spec.length;
            if (n == 0) {
                if (spec.exponent < 0)
                    throw std::invalid_argument("interval family needs a length or an exponent");
                n = floor_power(f->p(), spec.exponent);
            }
            return FpSet::interval(f, 1, static_cast<std::int64_t>(std::min(n, f->p())));
        }
        case SetFamilySpec::Kind::gap:
        case SetFamilySpec::Kind::random_subset_of_gap: {
            std::vector<u64> gens;
            gens.reserve(spec.gens.size());
            for (u64 g : spec.gens) gens.push_back(g % f->p());
            Gap g{f, spec.base % f->p(), std::move(gens), spec.bounds};
            g.validate();
            GapEnumeration e = gap_enumerate(g);
            if (!e.proper) flags.push_back("improper-gap");
            if (spec.kind == SetFamilySpec::Kind::gap) return e.set;
            if (!(spec.density > 0.0) || spec.density > 1.0)
                throw std::invalid_argument("random-subset-of-gap density must be in (0, 1]");
            u64 total = e.set.size();
            u64 keep = static_cast<u64>(std::llround(spec.density * static_cast<double>(total)));
            keep = std::max<u64>(1, std::min(keep, total));
            std::vector<u64> picked;
            picked.reserve(keep);
            for (u64 idx : rng.sample_indices(total, keep))
                picked.push_back(e.set.elements()[idx]);
            return FpSet(f, std::move(picked));
        }
        case SetFamilySpec::Kind::subgroup:
            return FpSet::subgroup(f, spec.order);
    }
    throw std::logic_error("build_family: unknown family kind");
}

void fill_row(ReportRow& row, const ExperimentConfig& cfg, u64 p, const SetFamilySpec& fa,
              const SetFamilySpec& fb, u64 row_seed) {
    row.p = p;
    FieldPtr f = PrimeField::make(p);
    if ((p - 1) % cfg.d != 0) {
        row.flags.push_back("skipped-d-not-dividing-p-1");
        return;
    }
    Rng rng(row_seed);
    FpSet a = build_family(fa, f, rng, row.flags);
    FpSet b = build_family(fb, f, rng, row.flags);
    row.size_a = a.size();
    row.size_b = b.size();
    row.doubling_a = doubling_constant(a).value();
    row.doubling_b = doubling_constant(b).value();

    double lp = std::log(static_cast<double>(p));
    row.log_p = lp;
    double delta = std::log(static_cast<double>(a.size())) / lp - 1.0 / 3.0;
    row.delta = delta;
    if (delta <= 0) row.flags.push_back("delta-nonpositive");

    Character chi(f, cfg.d);
    row.abs_s = char_sum(chi, a, b).abs();
    row.ratio = row.abs_s / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
    row.tau_emp = row.ratio > 0 ? -std::log(row.ratio) / lp : INFINITY;
    row.tau_formula = delta * delta / (100.0 * cfg.c_of_k);

    double c = cfg.c_of_k;
    row.c2_over_delta2 = c * c / (delta * delta);
    row.c_loginvdelta_over_delta2 = c / (delta * delta) * std::log(1.0 / delta);
    row.c_logl_over_delta = c * std::log(row.doubling_b) / delta;
}

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg, unsigned workers) {
    if (cfg.d < 1) throw std::invalid_argument("run_experiment: character order must be >= 1");
    if (!(cfg.c_of_k > 0)) throw std::invalid_argument("run_experiment: C_of_K must be positive");
    for (u64 p : cfg.primes) {
        if (!PrimeField::is_prime(p))
            throw std::invalid_argument("run_experiment: " + std::to_string(p) + " is not prime");
    }
    if (cfg.family_a.empty() || cfg.family_b.empty())
        throw std::invalid_argument("run_experiment: family-A and family-B each need a spec");
    std::size_t na = cfg.family_a.size();
    std::size_t nb = cfg.family_b.size();
    if (na != nb && na != 1 && nb != 1)
        throw std::invalid_argument(
            "run_experiment: family lists must have equal lengths or be singletons");
    std::size_t pairs = std::max(na, nb);

    std::vector<ReportRow> rows(cfg.primes.size() * pairs);
    parallel_for(rows.size(), resolve_workers(workers), [&](std::size_t i) {
        u64 p = cfg.primes[i / pairs];
        std::size_t k = i % pairs;
        const SetFamilySpec& fa = cfg.family_a[na == 1 ? 0 : k];
        const SetFamilySpec& fb = cfg.family_b[nb == 1 ? 0 : k];
        // Row seeds mix only (seed, p, pair index), so output never depends
        // on the worker count.
        try {
            fill_row(rows[i], cfg, p, fa, fb, mix_seed(cfg.seed, p, k));
        } catch (const std::exception& e) {
            rows[i].p = p;
            rows[i].flags.push_back(std::string("error:") + e.what());
        }
    });
    return rows;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
    std::string out =
        "p,size_A,size_B,K,L,delta,abs_S,ratio,tau_emp,tau_formula,log_p,"
        "c2_over_delta2,c_loginvdelta_over_delta2,c_logL_over_delta,flags\n";
    for (const auto& r : rows) {
        out += std::to_string(r.p);
        out += ',';
        out += std::to_string(r.size_a);
        out += ',';
        out += std::to_string(r.size_b);
        for (double v : {r.doubling_a, r.doubling_b, r.delta, r.abs_s, r.ratio, r.tau_emp,
                         r.tau_formula, r.log_p, r.c2_over_delta2, r.c_loginvdelta_over_delta2,
                         r.c_logl_over_delta}) {
            out += ',';
            out += g12(v);
        }
        out += ',';
        for (std::size_t i = 0; i < r.flags.size(); ++i) {
            if (i) out += ';';
            out += r.flags[i];
        }
        out += '\n';
    }
    return out;
}

void sweep_and_emit(const ExperimentConfig& cfg, const std::string& out_path, unsigned workers) {
    std::string csv = render_csv(run_experiment(cfg, workers));
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("sweep_and_emit: cannot open " + out_path);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    out.flush();
    if (!out) throw std::runtime_error("sweep_and_emit: write failed for " + out_path);
}

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::flagged: return "flagged";
        case CheckStatus::skipped: return "skipped";
    }
    return "unknown";
}

const TraceCheck& ProofTraceResult::check(int index) const {
    for (const auto& c : checks) {
        if (c.index == index) return c;
    }
    throw std::invalid_argument("proof trace has no check with index " + std::to_string(index));
}

bool ProofTraceResult::core_checks_pass() const {
    for (const auto& c : checks) {
        if (c.index >= 8) continue;
        if (c.status != CheckStatus::pass && c.status != CheckStatus::flagged) return false;
    }
    return checks.size() == 8;
}

namespace {

// Relative slack for comparisons whose right side involves real powers.
constexpr double rel_slack = 1e-9;

TraceCheck make_check(int index, const char* name) {
    TraceCheck c;
    c.index = index;
    c.name = name;
    return c;
}

}  // namespace

ProofTraceResult proof_trace(const ProofTraceInput& in) {
    if (!in.field) throw std::invalid_argument("proof_trace: null field");
    const PrimeField& f = *in.field;
    const u64 p = f.p();
    in.p_gap.validate();
    if (!in.p_gap.field || in.p_gap.field->p() != p)
        throw std::invalid_argument("proof_trace: progression is over a different field");
    if (in.a.field().p() != p || in.b.field().p() != p)
        throw std::invalid_argument("proof_trace: sets are over a different field");
    if (in.a.empty() || in.b.empty())
        throw std::invalid_argument("proof_trace: A and B must be nonempty");
    if (in.char_order < 1 || (p - 1) % in.char_order != 0)
        throw std::invalid_argument("proof_trace: character order must divide p-1");
    if (!(in.c_of_k > 0)) throw std::invalid_argument("proof_trace: C_of_K must be positive");

    GapEnumeration p_enum = gap_enumerate(in.p_gap);
    if (!in.a.is_subset_of(p_enum.set))
        throw std::invalid_argument("proof_trace: A must lie inside the containing progression");

    const u64 na = in.a.size();
    const u64 nb = in.b.size();
    if (na * na >= p || nb * nb >= p)
        throw std::invalid_argument("proof_trace: |A| and |B| must be below sqrt(p)");
    if (na * na * na <= p)
        throw std::invalid_argument("proof_trace: need |A| > p^(1/3), i.e. delta > 0");

    const auto dg = static_cast<double>(in.p_gap.dimension());
    const double lp = std::log(static_cast<double>(p));
    const double delta = std::log(static_cast<double>(na)) / lp - 1.0 / 3.0;
    const double alpha = 3.0 * delta / (4.0 * dg);
    const auto r = static_cast<u64>(std::ceil(1.0 / alpha));
    const u64 interval_len = floor_power(p, alpha);

    FpSet interval = FpSet::interval(in.field, 1, static_cast<std::int64_t>(interval_len));
    Gap a0_gap = gap_shrink(in.p_gap, alpha);
    GapEnumeration a0_enum = gap_enumerate(a0_gap);
    const FpSet& a0 = a0_enum.set;
    FpSet a0_star = a0.without_zero();
    FpSet hull = difference(in.a, product_set(a0, interval));
    Character chi(in.field, in.char_order);

    ProofTraceResult res;
    res.p = p;
    res.size_a = na;
    res.size_b = nb;
    res.size_p_enum = p_enum.set.size();
    res.size_a0 = a0.size();
    res.a0_proper = a0_enum.proper;
    res.size_hull = hull.size();
    res.interval_len = interval_len;
    res.delta = delta;
    res.alpha = alpha;
    res.moment_order = r;
    res.fixed_a = hull.min_element();
    res.p_size_over_a_size =
        static_cast<double>(p_enum.set.size()) / static_cast<double>(na);

    // 1: |A0| >= p^(-2 d alpha) |A|, asserted only for a proper shrink.
    {
        TraceCheck c = make_check(1, "shrink-size");
        c.lhs = static_cast<double>(a0.size());
        c.rhs = std::pow(static_cast<double>(p), -2.0 * dg * alpha) * static_cast<double>(na);
        if (!a0_enum.proper) {
            c.status = CheckStatus::flagged;
            c.note = "improper-shrink";
        } else {
            c.status = c.lhs >= c.rhs * (1.0 - rel_slack) ? CheckStatus::pass : CheckStatus::fail;
        }
        res.checks.push_back(std::move(c));
    }

    // 2: |A0+A0| <= 2^d |A0|, exact integers.
    {
        TraceCheck c = make_check(2, "shrink-doubling");
        FpSet twice = sumset(a0, a0);
        c.lhs = static_cast<double>(twice.size());
        if (in.p_gap.dimension() <= 63) {
            u128 rhs = static_cast<u128>(a0.size()) << in.p_gap.dimension();
            c.rhs = static_cast<double>(static_cast<long double>(rhs));
            c.status = static_cast<u128>(twice.size()) <= rhs ? CheckStatus::pass
                                                              : CheckStatus::fail;
        } else {
            c.rhs = std::pow(2.0, dg) * static_cast<double>(a0.size());
            c.status = c.lhs <= c.rhs ? CheckStatus::pass : CheckStatus::fail;
        }
        res.checks.push_back(std::move(c));
    }

    // 3: hull containment in the widened coefficient box, plus the size
    //    bound |A - A0*I| <= (1 + p^-alpha)^d |P|.
    {
        TraceCheck c = make_check(3, "hull-containment");
        BoxContainment bc = box_containment(in.a, a0_gap, interval, in.p_gap);
        c.lhs = static_cast<double>(hull.size());
        c.rhs = std::pow(1.0 + std::pow(static_cast<double>(p), -alpha), dg) *
                static_cast<double>(p_enum.set.size());
        bool size_ok = c.lhs <= c.rhs * (1.0 + rel_slack);
        if (!bc.contained) {
            c.status = CheckStatus::fail;
            c.note = "not-contained";
        } else if (!size_ok) {
            c.status = CheckStatus::fail;
            c.note = "size-bound-failed";
        } else {
            c.status = CheckStatus::pass;
        }
        res.checks.push_back(std::move(c));
    }

    // 4: |S(A,B)| bounded by the mean of T(x,y) over A0 x I.
    TranslateAverage ta = translate_average(chi, in.a, in.b, a0, interval);
    {
        TraceCheck c = make_check(4, "mean-bound");
        c.lhs = ta.char_sum_abs;
        c.rhs = ta.mean;
        c.status = ta.sum_le_mean ? CheckStatus::pass : CheckStatus::fail;
        if (!ta.min_le_mean) c.note = "min-above-mean";
        res.checks.push_back(std::move(c));
    }

    // 5: Cauchy-Schwarz at the fixed hull element with the smallest residue.
    FpSet b_a = in.b.translate(res.fixed_a);
    long double tsum_abs = 0;  // sum over (x, y) of |inner|, reused by the reports
    {
        TraceCheck c = make_check(5, "cauchy-schwarz");
        if (in.char_order <= 2) {
            u64 sum_abs = 0;
            u128 sum_sq = 0;
            for (u64 x : a0.elements()) {
                for (u64 y : interval.elements()) {
                    u64 t = f.mul(x, y);
                    std::int64_t s = 0;
                    for (u64 bb : b_a.elements()) s += chi.sign(f.add(bb, t));
                    u64 m = static_cast<u64>(s < 0 ? -s : s);
                    sum_abs += m;
                    sum_sq += static_cast<u128>(m) * m;
                }
            }
            u128 lhs = static_cast<u128>(sum_abs) * sum_abs;
            u128 rhs = static_cast<u128>(a0.size()) * interval.size() * sum_sq;
            c.lhs = static_cast<double>(static_cast<long double>(lhs));
            c.rhs = static_cast<double>(static_cast<long double>(rhs));
            c.status = lhs <= rhs ? CheckStatus::pass : CheckStatus::fail;
            tsum_abs = static_cast<long double>(sum_abs);
        } else {
            long double sum_abs = 0, sum_sq = 0;
            for (u64 x : a0.elements()) {
                for (u64 y : interval.elements()) {
                    u64 t = f.mul(x, y);
                    std::complex<double> acc{0.0, 0.0};
                    for (u64 bb : b_a.elements()) acc += chi.value(f.add(bb, t));
                    long double m = std::abs(acc);
                    sum_abs += m;
                    sum_sq += m * m;
                }
            }
            long double lhs = sum_abs * sum_abs;
            long double rhs = static_cast<long double>(a0.size()) * interval.size() * sum_sq;
            c.lhs = static_cast<double>(lhs);
            c.rhs = static_cast<double>(rhs);
            c.status = lhs <= rhs * (1.0L + rel_slack) ? CheckStatus::pass : CheckStatus::fail;
            tsum_abs = sum_abs;
        }
        res.checks.push_back(std::move(c));
    }

    // 6: first and second moments of nu, both exact counts. The first must
    //    equal |B|^2 |A0*|; the second must match the solution count of the
    //    two-ratio system on (A0*, a + B).
    {
        TraceCheck c = make_check(6, "nu-moments");
        NuProfile nu = NuProfile::of(a0, in.b, res.fixed_a, a0.contains_zero());
        res.excluded_zero_rows = nu.excluded_rows();
        bool first = nu.total() == nb * nb * static_cast<u64>(a0_star.size());
        SystemCount sc = system_count(a0_star, b_a, true);
        bool second = nu.second_moment() == sc.total;
        c.lhs = static_cast<double>(nu.second_moment());
        c.rhs = static_cast<double>(sc.total);
        c.status = first && second ? CheckStatus::pass : CheckStatus::fail;
        if (!first) c.note = "first-moment-mismatch";
        if (a0.contains_zero() && c.note.empty()) c.note = "zero-excluded-from-A0";
        res.checks.push_back(std::move(c));

        // Report ratio against the counting bound, constants at face value.
        double el = doubling_constant(in.b).value();
        long double bound = std::pow(2.0L, 1.25L * static_cast<long double>(dg)) *
                                std::pow(static_cast<long double>(el), 2.5L) *
                                static_cast<long double>(a0_star.size()) * nb * nb * lp +
                            static_cast<long double>(a0_star.size()) * a0_star.size() * nb;
        res.nu_second_moment_ratio =
            bound > 0 ? static_cast<double>(nu.second_moment() / bound) : 0.0;

        long double tb = static_cast<long double>(a0.size()) * interval.size() * nb;
        long double tbound = tb * tb * (dg / delta) *
                             std::pow(static_cast<long double>(el), 15.0L * delta / (16.0L * dg)) *
                             std::pow(static_cast<long double>(p), -3.0L * delta / (4.0L * r)) *
                             std::pow(static_cast<long double>(lp), 1.0L / (2.0L * r));
        res.translate_sum_ratio =
            tbound > 0 ? static_cast<double>(tsum_abs * tsum_abs / tbound) : 0.0;

        long double fbound = std::sqrt(static_cast<long double>(dg) / delta) *
                             std::pow(static_cast<long double>(el), 15.0L * delta / (32.0L * dg)) *
                             std::pow(2.0L, static_cast<long double>(dg)) * std::exp(static_cast<long double>(in.c_of_k)) *
                             std::pow(static_cast<long double>(p), -9.0L * delta * delta / (40.0L * dg)) *
                             static_cast<long double>(na) * nb *
                             std::pow(static_cast<long double>(lp), 1.0L / (4.0L * r));
        res.final_ratio = fbound > 0 ? static_cast<double>(ta.char_sum_abs / fbound) : 0.0;
    }

    // 7: the interval must be long enough for the closing moment step.
    {
        TraceCheck c = make_check(7, "interval-exponent");
        c.lhs = static_cast<double>(interval_len);
        c.rhs = std::pow(static_cast<double>(p), 1.0 / static_cast<double>(r));
        if (r < 2) {
            c.status = CheckStatus::fail;
            c.note = "moment-order-below-2";
        } else if (c.lhs >= c.rhs * (1.0 - rel_slack)) {
            c.status = CheckStatus::pass;
        } else if (interval_len == 1) {
            // p^(1/r) > 1 for every finite r, so a one-element interval can
            // never satisfy this; it is an edge case of the parameters, not
            // a falsified inequality.
            c.status = CheckStatus::flagged;
            c.note = "interval-too-small";
        } else {
            c.status = CheckStatus::fail;
        }
        res.checks.push_back(std::move(c));
    }

    // 8: the 2r-th moment inequality on I, when affordable.
    {
        TraceCheck c = make_check(8, "moment-inequality");
        if (interval_len < 2) {
            c.status = CheckStatus::skipped;
            c.note = "interval-too-small";
        } else if (p > moment_check_max_p) {
            c.status = CheckStatus::skipped;
            c.note = "p-exceeds-moment-guard";
        } else if (r < 2) {
            c.status = CheckStatus::skipped;
            c.note = "moment-order-below-2";
        } else {
            try {
                MomentCheck mc = davenport_check(chi, interval, static_cast<unsigned>(r),
                                                 in.workers);
                c.lhs = static_cast<double>(mc.lhs);
                c.rhs = static_cast<double>(mc.rhs);
                c.status = mc.ok ? CheckStatus::pass : CheckStatus::fail;
                c.note = mc.exact ? "exact" : "float";
            } catch (const std::overflow_error&) {
                c.status = CheckStatus::skipped;
                c.note = "moment-overflow";
            }
        }
        res.checks.push_back(std::move(c));
    }

    double ratio = ta.char_sum_abs / (static_cast<double>(na) * static_cast<double>(nb));
    res.tau_emp = ratio > 0 ? -std::log(ratio) / lp : INFINITY;
    res.tau_formula = delta * delta / (100.0 * in.c_of_k);
    return res;
}

}  // namespace csl
