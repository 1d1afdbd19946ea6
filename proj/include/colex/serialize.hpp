#pragma once

#include <istream>
#include <iterator>
#include <ostream>
#include <string>

#include "colex/index.hpp"

// CLXI container, version 1. All integers little-endian.
//
//   header   "CLXI" u32 version u32 flags(bit 0 = automaton)
//            u64 original_nodes u64 original_edges u64 q u64 sigma u64 classes
//            u64 edges u64 groups
//   alphabet sigma x (u32 length, bytes)
//   chains   q x (u64 length, length x u32 class id)
//   groups   groups x (u32 j, u32 a, u32 i, u64 count)
//   arrays   per group: targets then sources, each bit-packed at
//            bits_for(chain length) bits per entry into u64 words
//   automaton (flag set only) u32 initial, u64 count, count x u32 final class
//   classes  original_nodes x u32 class id
namespace colex {

class FormatError : public Error {
public:
    using Error::Error;
};

inline constexpr std::uint32_t kClxiVersion = 1;

namespace detail {

class Writer {
public:
    explicit Writer(std::ostream& os) : os_(os) {}
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void bytes(std::string_view s) { os_.write(s.data(), static_cast<std::streamsize>(s.size())); }

    void packed(std::span<const std::uint32_t> vals, unsigned width) {
        std::uint64_t word = 0;
        unsigned used = 0;
        for (auto v : vals) {
            for (unsigned b = 0; b < width; ++b) {
                word |= std::uint64_t{(v >> b) & 1u} << used;
                if (++used == 64) u64(word), word = 0, used = 0;
            }
        }
        if (used) u64(word);
    }

private:
    void put(std::uint64_t v, int n) {
        char buf[8];
        for (int i = 0; i < n; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        os_.write(buf, n);
    }
    std::ostream& os_;
};

class Reader {
public:
    explicit Reader(std::string_view buf) : buf_(buf) {}
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s(buf_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    // Counts are checked against the remaining input before allocating.
    std::uint64_t count(std::uint64_t min_bytes_each) {
        auto c = u64();
        if (min_bytes_each && c > (buf_.size() - pos_) / min_bytes_each) throw FormatError("count exceeds file size");
        return c;
    }
    std::vector<std::uint32_t> packed(std::size_t n, unsigned width) {
        const std::size_t words = (n * width + 63) / 64;
        need(words * 8);
        std::vector<std::uint32_t> out(n, 0);
        std::uint64_t word = 0;
        unsigned left = 0;
        std::size_t bit = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (unsigned b = 0; b < width; ++b, ++bit) {
                if (left == 0) word = u64(), left = 64;
                out[i] |= static_cast<std::uint32_t>(word & 1u) << b;
                word >>= 1;
                --left;
            }
        return out;
    }
    bool at_end() const { return pos_ == buf_.size(); }

private:
    void need(std::size_t n) const {
        if (buf_.size() - pos_ < n) throw FormatError("truncated index file");
    }
    std::uint64_t get(int n) {
        need(static_cast<std::size_t>(n));
        std::uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= std::uint64_t{static_cast<unsigned char>(buf_[pos_ + i])} << (8 * i);
        pos_ += static_cast<std::size_t>(n);
        return v;
    }
    std::string_view buf_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline void write_index(std::ostream& os, const Index& ix) {
    const IndexData& d = ix.data();
    detail::Writer w(os);
    w.bytes("CLXI");
    w.u32(kClxiVersion);
    w.u32(d.automaton ? 1u : 0u);
    w.u64(d.class_of.size());
    w.u64(d.original_edges);
    w.u64(d.chains.size());
    w.u64(d.alphabet.size());
    w.u64(ix.class_count());
    w.u64(ix.edge_count());
    w.u64(d.groups.size());
    for (const auto& s : d.alphabet.symbols()) {
        w.u32(static_cast<std::uint32_t>(s.size()));
        w.bytes(s);
    }
    for (const auto& ch : d.chains) {
        w.u64(ch.size());
        for (auto c : ch) w.u32(c);
    }
    for (const auto& g : d.groups) {
        w.u32(g.j);
        w.u32(g.a);
        w.u32(g.i);
        w.u64(g.tgt.size());
    }
    for (const auto& g : d.groups) {
        w.packed(g.tgt, succinct::bits_for(d.chains[g.j].size()));
        w.packed(g.src, succinct::bits_for(d.chains[g.i].size()));
    }
    if (d.automaton) {
        w.u32(d.initial);
        w.u64(d.finals.size());
        for (auto f : d.finals) w.u32(f);
    }
    for (auto c : d.class_of) w.u32(c);
    if (!os) throw Error("failed writing index");
}

inline Index read_index(std::string_view buf) {
    detail::Reader r(buf);
    if (r.bytes(4) != "CLXI") throw FormatError("not a CLXI index file");
    const auto version = r.u32();
    if (version != kClxiVersion) throw FormatError("unsupported index version " + std::to_string(version));
    const auto flags = r.u32();
    if (flags & ~1u) throw FormatError("unknown flags");
    IndexData d;
    d.automaton = flags & 1u;
    const auto n = r.count(4);
    d.original_edges = r.u64();
    const auto q = r.count(8);
    const auto sigma = r.count(4);
    const auto k = r.u64();
    const auto edges = r.u64();
    const auto ngroups = r.count(20);
    try {
        for (std::uint64_t s = 0; s < sigma; ++s) {
            const auto len = r.u32();
            d.alphabet.add(r.bytes(len));
        }
        std::uint64_t total = 0;
        for (std::uint64_t j = 0; j < q; ++j) {
            const auto len = r.count(4);
            auto& ch = d.chains.emplace_back();
            for (std::uint64_t p = 0; p < len; ++p) ch.push_back(r.u32());
            total += len;
        }
        if (total != k) throw FormatError("chain table does not cover the classes");
        std::vector<std::uint64_t> counts;
        for (std::uint64_t x = 0; x < ngroups; ++x) {
            EdgeGroup g;
            g.j = r.u32();
            g.a = r.u32();
            g.i = r.u32();
            if (g.j >= q || g.i >= q) throw FormatError("group chain out of range");
            counts.push_back(r.u64());
            d.groups.push_back(std::move(g));
        }
        std::uint64_t sum = 0;
        for (std::size_t x = 0; x < d.groups.size(); ++x) {
            auto& g = d.groups[x];
            if (counts[x] > edges || counts[x] > std::uint64_t{d.chains[g.j].size()} * d.chains[g.i].size())
                throw FormatError("group larger than possible");
            g.tgt = r.packed(counts[x], succinct::bits_for(d.chains[g.j].size()));
            g.src = r.packed(counts[x], succinct::bits_for(d.chains[g.i].size()));
            sum += counts[x];
        }
        if (sum != edges) throw FormatError("edge count mismatch");
        if (d.automaton) {
            d.initial = r.u32();
            const auto nf = r.count(4);
            for (std::uint64_t x = 0; x < nf; ++x) d.finals.push_back(r.u32());
        }
        for (std::uint64_t v = 0; v < n; ++v) d.class_of.push_back(r.u32());
        if (!r.at_end()) throw FormatError("trailing bytes after index");
        return Index(std::move(d));
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(std::string("corrupt index: ") + e.what());
    }
}

inline Index read_index(std::istream& is) {
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return read_index(std::string_view(buf));
}

}  // namespace colex
