#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charsumlab/energy.hpp>
#include <charsumlab/field.hpp>
#include <charsumlab/rng.hpp>
#include <charsumlab/sets.hpp>
#include <cmath>
#include <stdexcept>

#include "oracles.hpp"

using csl::FpSet;
using csl::NuProfile;
using csl::PrimeField;
using csl::RatioProfile;

namespace {

FpSet random_nonzero_subset(csl::FieldPtr f, csl::Rng& rng, std::uint64_t size) {
    std::vector<std::uint64_t> v;
    while (v.size() < size) {
        std::uint64_t x = rng.below(f->p());
        if (x != 0) v.push_back(x);
    }
    return FpSet(f, v);
}

}  // namespace

TEST_CASE("ratio profile fixed examples") {
    auto f5 = PrimeField::make(5);
    RatioProfile single = RatioProfile::of(FpSet(f5, {1}));
    CHECK(single.at(1) == 1);
    CHECK(single.counts().size() == 1);

    RatioProfile two = RatioProfile::of(FpSet(f5, {1, 2}));
    CHECK(two.at(1) == 2);
    CHECK(two.at(2) == 1);
    CHECK(two.at(3) == 1);  // 1/2 = 3 mod 5
    CHECK(two.at(4) == 0);
    CHECK(two.pair_total() == 4);

    auto f7 = PrimeField::make(7);
    RatioProfile qr = RatioProfile::of(FpSet(f7, {1, 2, 4}));  // a subgroup: flat profile
    for (std::uint64_t lam : {1ull, 2ull, 4ull}) CHECK(qr.at(lam) == 3);
    CHECK(qr.at(3) == 0);
}

TEST_CASE("ratio profile invariants on random sets") {
    auto f = PrimeField::make(101);
    csl::Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        FpSet a = random_nonzero_subset(f, rng, rng.in(1, 15));
        RatioProfile prof = RatioProfile::of(a);
        std::uint64_t sum = 0;
        for (const auto& [lam, c] : prof.counts()) {
            sum += c;
            CHECK(c == prof.at(f->inv(lam)));  // lambda vs 1/lambda symmetry
        }
        CHECK(sum == a.size() * a.size());
        CHECK(prof.at(1) >= a.size());
    }
}

TEST_CASE("ratio profile rejects zero and is worker-independent") {
    auto f = PrimeField::make(1009);
    CHECK_THROWS_AS(RatioProfile::of(FpSet(f, {0, 1})), std::domain_error);

    csl::Rng rng(12);
    FpSet big = random_nonzero_subset(f, rng, 80);
    RatioProfile seq = RatioProfile::of(big, 1);
    RatioProfile par = RatioProfile::of(big, 4);
    CHECK(seq.counts() == par.counts());
}

TEST_CASE("third moment fixed values") {
    auto f5 = PrimeField::make(5);
    auto f7 = PrimeField::make(7);
    CHECK(csl::e3_mult(FpSet(f5, {1})) == 1);
    CHECK(csl::e3_mult(FpSet(f5, {1, 2})) == 10);
    CHECK(csl::e3_mult(FpSet(f7, {1, 2, 4})) == 81);
}

TEST_CASE("subgroups have third moment k^4") {
    auto f11 = PrimeField::make(11);
    CHECK(csl::e3_mult(FpSet::subgroup(f11, 5)) == 625);
    auto f13 = PrimeField::make(13);
    CHECK(csl::e3_mult(FpSet::subgroup(f13, 4)) == 256);
}

TEST_CASE("third moment stays between |A|^3 and |A|^4") {
    auto f = PrimeField::make(1009);
    csl::Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        FpSet a = random_nonzero_subset(f, rng, rng.in(1, 12));
        std::uint64_t e3 = csl::e3_mult(a);
        std::uint64_t n = a.size();
        CHECK(e3 >= n * n * n);
        CHECK(e3 <= n * n * n * n);
    }
}

TEST_CASE("third moment matches the sextuple oracle") {
    auto f = PrimeField::make(101);
    csl::Rng rng(44);
    for (int i = 0; i < 8; ++i) {
        FpSet a = random_nonzero_subset(f, rng, rng.in(1, 8));
        CHECK(csl::e3_mult(a) == oracle::e3_sextuple(a.elements(), 101));
    }
}

TEST_CASE("system count fixed values") {
    auto f5 = PrimeField::make(5);
    auto one = system_count(FpSet(f5, {1}), FpSet(f5, {1}));
    CHECK(one.total == 1);
    CHECK(one.nonzero == 1);

    auto two = system_count(FpSet(f5, {1, 2}), FpSet(f5, {1, 2}));
    CHECK(two.total == 10);
    CHECK_FALSE(two.zeros_in_b);
    CHECK(two.one_pair_zero == 0);
    CHECK(two.all_zero == 0);
}

TEST_CASE("system count matches both oracles") {
    csl::Rng rng(55);
    for (std::uint64_t p : {101ull, 1009ull}) {
        auto f = PrimeField::make(p);
        for (int i = 0; i < 6; ++i) {
            FpSet a = random_nonzero_subset(f, rng, rng.in(1, 7));
            FpSet b = random_nonzero_subset(f, rng, rng.in(1, 7));
            auto sc = system_count(a, b);
            CHECK(sc.total == oracle::system_sextuple(a.elements(), b.elements(), p));
            CHECK(sc.total == oracle::system_pairs(a.elements(), b.elements(), p));
        }
    }
}

TEST_CASE("system count decomposes zero solutions exactly") {
    auto f = PrimeField::make(101);
    csl::Rng rng(66);
    for (int i = 0; i < 6; ++i) {
        FpSet a = random_nonzero_subset(f, rng, rng.in(1, 6));
        std::vector<std::uint64_t> vb = {0};
        for (std::uint64_t j = rng.in(1, 5); j > 0; --j) vb.push_back(rng.in(1, 100));
        FpSet b(f, vb);
        auto sc = system_count(a, b, true);
        CHECK(sc.zeros_in_b);
        CHECK(sc.total == oracle::system_sextuple(a.elements(), b.elements(), 101));
        CHECK(sc.total == sc.nonzero + sc.one_pair_zero + sc.all_zero);
        CHECK(sc.all_zero == a.size() * a.size());
        CHECK(sc.one_pair_zero <= 2 * a.size() * a.size() * (b.size() - 1));
    }
}

TEST_CASE("system count zero guards") {
    auto f = PrimeField::make(7);
    CHECK_THROWS_AS(system_count(FpSet(f, {0, 1}), FpSet(f, {1})), std::domain_error);
    CHECK_THROWS_AS(system_count(FpSet(f, {1}), FpSet(f, {0, 1})), std::domain_error);
    CHECK_NOTHROW(system_count(FpSet(f, {1}), FpSet(f, {0, 1}), true));
    // The diagonal (a = a', b1 = b1', b2 = b2') is always a solution.
    auto sc = system_count(FpSet(f, {1, 2, 3}), FpSet(f, {1, 4}));
    CHECK(sc.total >= 3 * 2);
}

TEST_CASE("holder chain fixed and random checks") {
    auto f7 = PrimeField::make(7);
    auto eq = holder_chain_check(FpSet(f7, {1, 2}), FpSet(f7, {1, 2}));
    CHECK(eq.ok);
    CHECK(eq.lhs == eq.e3_a);  // equality case in exact integers
    CHECK(eq.e3_a == eq.e3_b);

    auto mixed = holder_chain_check(FpSet(f7, {1, 2}), FpSet(f7, {1, 3}));
    CHECK(mixed.ok);
    CHECK(static_cast<double>(mixed.lhs) <= mixed.rhs * (1.0 + 1e-9));

    auto f = PrimeField::make(101);
    csl::Rng rng(77);
    for (int i = 0; i < 30; ++i) {
        FpSet a = random_nonzero_subset(f, rng, rng.in(1, 10));
        FpSet b = random_nonzero_subset(f, rng, rng.in(1, 10));
        CHECK(holder_chain_check(a, b).ok);
        auto same = holder_chain_check(a, a);
        CHECK(same.lhs == same.e3_a);
    }
    CHECK_THROWS_AS(holder_chain_check(FpSet(f, {0, 1}), FpSet(f, {1})), std::domain_error);
}

TEST_CASE("third moment bound report") {
    auto f = PrimeField::make(10007);
    for (std::int64_t n : {8ll, 16ll, 32ll}) {
        auto rep = e3_bound_report(FpSet::interval(f, 1, n));
        CHECK(rep.precondition_ok);
        CHECK(rep.e3 > 0);
        CHECK(rep.bound_body > 0);
        CHECK(rep.ratio == doctest::Approx(static_cast<double>(rep.e3) / rep.bound_body));
    }

    // |A|^11 |A+A| blows past p^8 for a 32-point interval mod 101.
    auto small = PrimeField::make(101);
    auto rep = e3_bound_report(FpSet::interval(small, 1, 32));
    CHECK_FALSE(rep.precondition_ok);

    CHECK_THROWS_AS(e3_bound_report(FpSet(small, {5})), std::invalid_argument);
    CHECK_THROWS_AS(e3_bound_report(FpSet(small, {0, 1, 2})), std::domain_error);
}

TEST_CASE("nu profile single point") {
    auto f = PrimeField::make(13);
    NuProfile nu = NuProfile::of(FpSet(f, {1}), FpSet(f, {1}), 0);
    CHECK(nu.total() == 1);
    CHECK(nu.second_moment() == 1);
    CHECK(nu.counts().size() == 1);
    CHECK(nu.counts().at(1 * 13 + 1) == 1);
    CHECK(nu.excluded_rows() == 0);
    CHECK(nu.used_a0_size() == 1);
}

TEST_CASE("nu profile moment identities on random instances") {
    csl::Rng rng(88);
    for (std::uint64_t p : {101ull, 1009ull}) {
        auto f = PrimeField::make(p);
        for (int i = 0; i < 10; ++i) {
            FpSet a0 = random_nonzero_subset(f, rng, rng.in(1, 10));
            std::vector<std::uint64_t> vb;
            for (std::uint64_t j = rng.in(1, 10); j > 0; --j) vb.push_back(rng.below(p));
            FpSet b(f, vb);
            std::uint64_t shift = rng.below(p);
            NuProfile nu = NuProfile::of(a0, b, shift);
            CHECK(nu.total() == b.size() * b.size() * a0.size());
            auto sc = system_count(a0, b.translate(shift), true);
            CHECK(nu.second_moment() == sc.total);
        }
    }
}

TEST_CASE("nu profile zero handling") {
    auto f = PrimeField::make(11);
    FpSet with_zero(f, {0, 2, 5});
    FpSet b(f, {1, 3});
    CHECK_THROWS_AS(NuProfile::of(with_zero, b, 0), std::domain_error);
    NuProfile nu = NuProfile::of(with_zero, b, 0, true);
    CHECK(nu.used_a0_size() == 2);
    CHECK(nu.excluded_rows() == 4);  // |B|^2 triples lost with the x = 0 row
    CHECK(nu.total() == 4 * 2);
    CHECK_THROWS_AS(NuProfile::of(b, b, 11), std::invalid_argument);
}
