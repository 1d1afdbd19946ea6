#pragma once

#include <bit>
#include <ostream>
#include <utility>

#include "colex/graph.hpp"
#include "colex/text_format.hpp"

namespace colex {

// Dense n x n bit matrix; entry (u, v) set means (u, v) is in the relation.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

    static Relation identity(std::size_t n) {
        Relation r(n);
        for (Node v = 0; v < n; ++v) r.insert(v, v);
        return r;
    }

    std::size_t size() const { return n_; }

    bool contains(Node u, Node v) const {
        return (bits_[u * words_ + v / 64] >> (v % 64)) & 1u;
    }
    void insert(Node u, Node v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }
    void erase(Node u, Node v) { bits_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64)); }

    std::span<const std::uint64_t> row(Node u) const {
        return std::span<const std::uint64_t>(bits_).subspan(u * words_, words_);
    }
    std::span<std::uint64_t> row(Node u) {
        return std::span<std::uint64_t>(bits_).subspan(u * words_, words_);
    }

    std::size_t pair_count() const {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // Pairs (u, v) with u != v, sorted.
    std::vector<std::pair<Node, Node>> strict_pairs() const {
        std::vector<std::pair<Node, Node>> out;
        for (Node u = 0; u < n_; ++u)
            for_each_in_row(u, [&](Node v) {
                if (u != v) out.emplace_back(u, v);
            });
        return out;
    }

    template <class F>
    void for_each_in_row(Node u, F&& f) const {
        auto r = row(u);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                int b = std::countr_zero(bits);
                f(static_cast<Node>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    bool is_reflexive() const {
        for (Node v = 0; v < n_; ++v)
            if (!contains(v, v)) return false;
        return true;
    }

    bool is_antisymmetric() const {
        for (Node u = 0; u < n_; ++u) {
            bool ok = true;
            for_each_in_row(u, [&](Node v) {
                if (u != v && contains(v, u)) ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }

    // Row-subset test: (u, k) in R implies row(k) is a subset of row(u).
    bool is_transitive() const {
        for (Node u = 0; u < n_; ++u) {
            auto ru = row(u);
            bool ok = true;
            for_each_in_row(u, [&](Node k) {
                if (!ok || k == u) return;
                auto rk = row(k);
                for (std::size_t w = 0; w < words_; ++w)
                    if (rk[w] & ~ru[w]) {
                        ok = false;
                        return;
                    }
            });
            if (!ok) return false;
        }
        return true;
    }

    Relation& operator|=(const Relation& o) {
        if (o.n_ != n_) throw ContractError("relation size mismatch");
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Warshall over bit rows.
inline Relation transitive_closure(Relation r) {
    const std::size_t n = r.size();
    for (Node k = 0; k < n; ++k) {
        std::vector<std::uint64_t> rk(r.row(k).begin(), r.row(k).end());
        for (Node i = 0; i < n; ++i) {
            if (i == k || !r.contains(i, k)) continue;
            auto ri = r.row(i);
            for (std::size_t w = 0; w < rk.size(); ++w) ri[w] |= rk[w];
        }
    }
    return r;
}

inline Relation relation_union(std::span<const Relation> rs) {
    if (rs.empty()) return Relation();
    Relation out = rs.front();
    for (std::size_t i = 1; i < rs.size(); ++i) out |= rs[i];
    return out;
}

// r1 refines r2 when r2 is a subset of r1.
inline bool refines(const Relation& r1, const Relation& r2) {
    if (r1.size() != r2.size()) throw ContractError("relation size mismatch");
    for (Node u = 0; u < r1.size(); ++u) {
        auto a = r1.row(u);
        auto b = r2.row(u);
        for (std::size_t w = 0; w < a.size(); ++w)
            if (b[w] & ~a[w]) return false;
    }
    return true;
}

// Reflexive and transitive relation.
class Preorder {
public:
    Preorder() = default;
    explicit Preorder(Relation r) : rel_(std::move(r)) {
        if (!rel_.is_reflexive()) throw ContractError("preorder must be reflexive");
        if (!rel_.is_transitive()) throw ContractError("preorder must be transitive");
    }

    // For relations that are preorders by construction.
    static Preorder trusted(Relation r) {
        Preorder p;
        p.rel_ = std::move(r);
        return p;
    }

    const Relation& relation() const { return rel_; }
    std::size_t size() const { return rel_.size(); }
    bool contains(Node u, Node v) const { return rel_.contains(u, v); }
    bool is_partial_order() const { return rel_.is_antisymmetric(); }

    friend bool operator==(const Preorder&, const Preorder&) = default;

private:
    Relation rel_;
};

// One strict pair per line, "u v", sorted; the diagonal is implied.
inline void write_relation(std::ostream& os, const Relation& r) {
    for (auto [u, v] : r.strict_pairs()) os << u << ' ' << v << '\n';
}

inline Relation parse_relation(std::string_view text, std::size_t n) {
    Relation r = Relation::identity(n);
    std::size_t lineno = 0;
    while (!text.empty()) {
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        auto toks = detail::split_ws(line);
        if (toks.empty() || toks[0].front() == '#') continue;
        if (toks.size() != 2) throw ParseError(lineno, "expected 'u v'");
        auto u = detail::parse_uint(toks[0], lineno);
        auto v = detail::parse_uint(toks[1], lineno);
        if (u >= n || v >= n) throw ParseError(lineno, "node out of range");
        r.insert(static_cast<Node>(u), static_cast<Node>(v));
    }
    return r;
}

}  // namespace colex
