#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace csl {

// Fixed-size bit vector with the word-level operations the set and graph
// code needs: cyclic OR-shift for sumset convolution, intersection and
// population count for clique search.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }

    bool intersects(const Bitset& o) const {
        std::size_t n = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) {
        a &= b;
        return a;
    }

    // this |= (o rotated left by k positions, cyclically over size() bits).
    // Used as the inner step of bitset sumset convolution.
    void or_rotated(const Bitset& o, std::size_t k) {
        k %= nbits_;
        if (k == 0) {
            *this |= o;
            return;
        }
        or_shifted(o, 0, nbits_ - k, k);
        or_shifted(o, nbits_ - k, nbits_, 0);
    }

    std::size_t find_first() const { return find_from(0); }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                f((wi << 6) + b);
                w &= w - 1;
            }
        }
    }

private:
    std::size_t find_from(std::size_t start) const {
        for (std::size_t wi = start >> 6; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            if (wi == (start >> 6)) w &= ~std::uint64_t{0} << (start & 63);
            if (w) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
        }
        return npos;
    }

    // OR the src bit range [src_lo, src_hi) into this starting at dst_lo.
    void or_shifted(const Bitset& src, std::size_t src_lo, std::size_t src_hi, std::size_t dst_lo) {
        std::size_t len = src_hi - src_lo;
        std::size_t si = src_lo, di = dst_lo;
        while (len) {
            unsigned so = si & 63, dof = di & 63;
            std::size_t take = std::min({static_cast<std::size_t>(64 - so),
                                         static_cast<std::size_t>(64 - dof), len});
            std::uint64_t mask = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
            std::uint64_t chunk = (src.words_[si >> 6] >> so) & mask;
            words_[di >> 6] |= chunk << dof;
            si += take;
            di += take;
            len -= take;
        }
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace csl
