#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace colex::succinct {

inline unsigned bits_for(std::uint64_t values) {
    // Width needed to store any value in [0, values).
    return values <= 1 ? 0u : static_cast<unsigned>(std::bit_width(values - 1));
}

// Bit vector with rank and select. Rank uses one 32-bit cumulative count per
// 512-bit block; select binary-searches the blocks, then scans one block.
class BitVector {
public:
    static constexpr std::size_t kBlockBits = 512;
    static constexpr std::size_t kBlockWords = kBlockBits / 64;

    BitVector() = default;
    explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    void set(std::size_t i, bool v = true) {
        if (v)
            words_[i / 64] |= std::uint64_t{1} << (i % 64);
        else
            words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }
    void push_back(bool v) {
        if (size_ % 64 == 0) words_.push_back(0);
        ++size_;
        set(size_ - 1, v);
    }

    // Must be called after the last mutation and before any query.
    void build() {
        const std::size_t nb = (words_.size() + kBlockWords - 1) / kBlockWords;
        blocks_.assign(nb + 1, 0);
        std::uint32_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (w % kBlockWords == 0) blocks_[w / kBlockWords] = acc;
            acc += static_cast<std::uint32_t>(std::popcount(words_[w]));
        }
        blocks_[nb] = acc;
        ones_ = acc;
    }

    std::size_t size() const { return size_; }
    std::size_t ones() const { return ones_; }
    bool operator[](std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    // Ones in [0, i).
    std::size_t rank1(std::size_t i) const {
        const std::size_t w = i / 64;
        std::size_t r = blocks_[w / kBlockWords];
        for (std::size_t x = (w / kBlockWords) * kBlockWords; x < w; ++x)
            r += static_cast<std::size_t>(std::popcount(words_[x]));
        if (i % 64) r += static_cast<std::size_t>(std::popcount(words_[w] & ((std::uint64_t{1} << (i % 64)) - 1)));
        return r;
    }
    std::size_t rank0(std::size_t i) const { return i - rank1(i); }

    // Position of the k-th one (0-based).
    std::size_t select1(std::size_t k) const { return select_impl<true>(k); }
    std::size_t select0(std::size_t k) const { return select_impl<false>(k); }

    // Payload plus rank directory, in bits.
    std::size_t size_in_bits() const { return size_ + (blocks_.size()) * 32; }

    std::span<const std::uint64_t> words() const { return words_; }

private:
    template <bool One>
    std::size_t select_impl(std::size_t k) const {
        const std::size_t total = One ? ones_ : size_ - ones_;
        if (k >= total) throw std::out_of_range("select beyond population");
        auto count_before = [&](std::size_t b) -> std::size_t {
            const std::size_t ones = blocks_[b];
            return One ? ones : b * kBlockBits - ones;
        };
        std::size_t lo = 0, hi = blocks_.size() - 1;  // answer block in [lo, hi)
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (count_before(mid) <= k)
                lo = mid;
            else
                hi = mid;
        }
        std::size_t remaining = k - count_before(lo);
        for (std::size_t w = lo * kBlockWords; w < words_.size(); ++w) {
            std::uint64_t bits = One ? words_[w] : ~words_[w];
            const auto pc = static_cast<std::size_t>(std::popcount(bits));
            if (remaining < pc) {
                for (std::size_t j = 0; j < remaining; ++j) bits &= bits - 1;
                return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            }
            remaining -= pc;
        }
        throw std::logic_error("select directory inconsistent");
    }

    std::size_t size_ = 0;
    std::size_t ones_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint32_t> blocks_;
};

// Fixed-width packed integer array.
class IntVector {
public:
    IntVector() = default;
    IntVector(std::size_t n, unsigned width) : size_(n), width_(width), words_((n * width + 63) / 64 + 1, 0) {
        if (width > 64) throw std::invalid_argument("width > 64");
    }

    std::size_t size() const { return size_; }
    unsigned width() const { return width_; }

    std::uint64_t get(std::size_t i) const {
        if (width_ == 0) return 0;
        const std::size_t bit = i * width_;
        const std::size_t w = bit / 64, off = bit % 64;
        std::uint64_t v = words_[w] >> off;
        if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
        return width_ == 64 ? v : v & ((std::uint64_t{1} << width_) - 1);
    }

    void set(std::size_t i, std::uint64_t v) {
        if (width_ == 0) return;
        const std::uint64_t mask = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
        v &= mask;
        const std::size_t bit = i * width_;
        const std::size_t w = bit / 64, off = bit % 64;
        words_[w] = (words_[w] & ~(mask << off)) | (v << off);
        if (off + width_ > 64) {
            const unsigned spill = static_cast<unsigned>(off + width_ - 64);
            const std::uint64_t hmask = (std::uint64_t{1} << spill) - 1;
            words_[w + 1] = (words_[w + 1] & ~hmask) | (v >> (64 - off));
        }
    }

    std::size_t size_in_bits() const { return size_ * width_; }
    std::span<const std::uint64_t> words() const { return words_; }

private:
    std::size_t size_ = 0;
    unsigned width_ = 0;
    std::vector<std::uint64_t> words_;
};

// Wavelet matrix over integers in [0, sigma): access, rank and select per
// symbol in O(log sigma) bit-vector operations.
class WaveletMatrix {
public:
    WaveletMatrix() = default;

    WaveletMatrix(std::span<const std::uint64_t> values, std::uint64_t sigma)
        : size_(values.size()), sigma_(sigma), levels_(bits_for(sigma)) {
        std::vector<std::uint64_t> cur(values.begin(), values.end()), next(values.size());
        for (auto v : cur)
            if (v >= sigma) throw std::invalid_argument("value outside alphabet");
        bv_.resize(levels_);
        zeros_.resize(levels_);
        for (unsigned l = 0; l < levels_; ++l) {
            const unsigned shift = levels_ - 1 - l;
            BitVector b(size_);
            std::size_t z = 0;
            for (std::size_t i = 0; i < size_; ++i) {
                const bool bit = (cur[i] >> shift) & 1u;
                b.set(i, bit);
                if (!bit) ++z;
            }
            b.build();
            std::size_t zi = 0, oi = z;
            for (std::size_t i = 0; i < size_; ++i) {
                if ((cur[i] >> shift) & 1u)
                    next[oi++] = cur[i];
                else
                    next[zi++] = cur[i];
            }
            cur.swap(next);
            bv_[l] = std::move(b);
            zeros_[l] = z;
        }
    }

    std::size_t size() const { return size_; }
    std::uint64_t sigma() const { return sigma_; }

    std::uint64_t access(std::size_t i) const {
        std::uint64_t v = 0;
        for (unsigned l = 0; l < levels_; ++l) {
            const bool bit = bv_[l][i];
            v = (v << 1) | bit;
            i = bit ? zeros_[l] + bv_[l].rank1(i) : bv_[l].rank0(i);
        }
        return v;
    }

    // Occurrences of c in [0, i).
    std::size_t rank(std::uint64_t c, std::size_t i) const {
        if (c >= sigma_) return 0;
        std::size_t lo = 0, hi = i;
        for (unsigned l = 0; l < levels_; ++l) {
            const bool bit = (c >> (levels_ - 1 - l)) & 1u;
            if (bit) {
                lo = zeros_[l] + bv_[l].rank1(lo);
                hi = zeros_[l] + bv_[l].rank1(hi);
            } else {
                lo = bv_[l].rank0(lo);
                hi = bv_[l].rank0(hi);
            }
        }
        return hi - lo;
    }

    // Position of the k-th occurrence (0-based) of c.
    std::size_t select(std::uint64_t c, std::size_t k) const {
        if (levels_ == 0) {
            if (k >= size_) throw std::out_of_range("select beyond population");
            return k;
        }
        // Start of c's run in the last level's order.
        std::size_t start = 0;
        for (unsigned l = 0; l < levels_; ++l) {
            const bool bit = (c >> (levels_ - 1 - l)) & 1u;
            start = bit ? zeros_[l] + bv_[l].rank1(start) : bv_[l].rank0(start);
        }
        std::size_t pos = start + k;
        for (unsigned l = levels_; l-- > 0;) {
            const bool bit = (c >> (levels_ - 1 - l)) & 1u;
            pos = bit ? bv_[l].select1(pos - zeros_[l]) : bv_[l].select0(pos);
        }
        return pos;
    }

    // Calls f(c) once for every distinct c in [vlo, vhi) occurring in
    // positions [l, r), in increasing order of c.
    template <class F>
    void distinct_in(std::size_t l, std::size_t r, std::uint64_t vlo, std::uint64_t vhi, F&& f) const {
        if (levels_ == 0) {
            if (l < r && vlo == 0 && vhi > 0) f(std::uint64_t{0});
            return;
        }
        distinct_rec(0, l, r, 0, vlo, vhi, f);
    }

    std::size_t size_in_bits() const {
        std::size_t b = 0;
        for (const auto& v : bv_) b += v.size_in_bits() + 64;  // + zero count
        return b;
    }

private:
    template <class F>
    void distinct_rec(unsigned l, std::size_t b, std::size_t e, std::uint64_t prefix, std::uint64_t vlo,
                      std::uint64_t vhi, F& f) const {
        if (b == e) return;
        const unsigned rest = levels_ - l;
        if ((prefix << rest) >= vhi || ((prefix + 1) << rest) <= vlo) return;
        if (l == levels_) {
            f(prefix);
            return;
        }
        const auto& bv = bv_[l];
        distinct_rec(l + 1, bv.rank0(b), bv.rank0(e), prefix << 1, vlo, vhi, f);
        distinct_rec(l + 1, zeros_[l] + bv.rank1(b), zeros_[l] + bv.rank1(e), (prefix << 1) | 1u, vlo, vhi, f);
    }

    std::size_t size_ = 0;
    std::uint64_t sigma_ = 0;
    unsigned levels_ = 0;
    std::vector<BitVector> bv_;
    std::vector<std::size_t> zeros_;
};

}  // namespace colex::succinct
