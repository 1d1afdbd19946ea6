#pragma once

#include <algorithm>
#include <limits>
#include <optional>

#include "colex/chain_partition.hpp"
#include "colex/quotient.hpp"
#include "colex/succinct.hpp"

namespace colex {

// Half-open range of positions within one chain.
struct Interval {
    std::uint32_t lo = 0, hi = 0;
    bool empty() const { return lo >= hi; }
    std::uint32_t size() const { return empty() ? 0 : hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// A set of quotient nodes given as one interval per chain.
struct ConvexSet {
    std::vector<Interval> intervals;

    bool empty() const {
        return std::all_of(intervals.begin(), intervals.end(), [](const Interval& iv) { return iv.empty(); });
    }
    std::size_t class_count() const {
        std::size_t c = 0;
        for (const auto& iv : intervals) c += iv.size();
        return c;
    }
    friend bool operator==(const ConvexSet&, const ConvexSet&) = default;
};

// class_of entry for an original node that has no class (removed by trimming).
inline constexpr ClassId kNoClass = static_cast<ClassId>(-1);

enum class Backend { plain, compact };

// Caller-owned instrumentation for follow.
struct QueryStats {
    std::size_t follow_calls = 0;
    std::size_t group_probes = 0;          // total over all calls
    std::size_t max_probes_per_follow = 0;
};

// Edges labeled a entering chain j from chain i, sorted by (target, source).
struct EdgeGroup {
    std::uint32_t j = 0;
    Symbol a = 0;
    std::uint32_t i = 0;
    std::vector<std::uint32_t> tgt, src;  // positions within chains j and i

    friend bool operator==(const EdgeGroup&, const EdgeGroup&) = default;
};

// Everything an index is rebuilt from; this is what gets serialized.
struct IndexData {
    Alphabet alphabet;
    std::uint64_t original_edges = 0;
    std::vector<std::vector<ClassId>> chains;  // chain -> classes in increasing order
    std::vector<ClassId> class_of;             // original node -> class or kNoClass
    std::vector<EdgeGroup> groups;             // sorted by (j, a, i)
    bool automaton = false;
    ClassId initial = 0;
    std::vector<ClassId> finals;  // sorted

    std::size_t class_count() const {
        std::size_t k = 0;
        for (const auto& c : chains) k += c.size();
        return k;
    }
    friend bool operator==(const IndexData&, const IndexData&) = default;
};

struct SpaceReport {
    std::uint64_t measured_bits = 0;
    std::uint64_t formula_bits = 0;
    double ratio() const { return formula_bits == 0 ? 0.0 : double(measured_bits) / double(formula_bits); }
};

class Index {
public:
    Index() = default;

    explicit Index(IndexData d, std::optional<Preorder> order = std::nullopt)
        : d_(std::move(d)), order_(std::move(order)) {
        validate_and_derive();
        build_plain();
        build_compact();
    }

    const IndexData& data() const { return d_; }
    const Alphabet& alphabet() const { return d_.alphabet; }
    std::size_t chain_count() const { return d_.chains.size(); }
    std::size_t class_count() const { return chain_of_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t original_node_count() const { return d_.class_of.size(); }
    std::size_t original_edge_count() const { return d_.original_edges; }
    bool has_automaton() const { return d_.automaton; }
    ClassId initial_class() const {
        if (!d_.automaton) throw ContractError("index has no automaton data");
        return d_.initial;
    }
    std::uint32_t chain_of(ClassId c) const { return chain_of_[c]; }
    std::uint32_t pos_of(ClassId c) const { return pos_of_[c]; }
    const std::vector<Node>& members(ClassId c) const { return members_[c]; }
    bool is_final_class(ClassId c) const { return final_[c]; }
    const std::optional<Preorder>& order() const { return order_; }

    ConvexSet full_set() const {
        ConvexSet s;
        for (const auto& ch : d_.chains) s.intervals.push_back({0, static_cast<std::uint32_t>(ch.size())});
        return s;
    }
    ConvexSet empty_set() const { return ConvexSet{std::vector<Interval>(chain_count())}; }

    // Throws unless the classes occupy one contiguous run per chain.
    ConvexSet from_classes(std::span<const ClassId> cs) const {
        const std::size_t q = chain_count();
        std::vector<std::vector<std::uint32_t>> pos(q);
        for (ClassId c : cs) {
            if (c >= class_count()) throw ContractError("class id out of range");
            pos[chain_of_[c]].push_back(pos_of_[c]);
        }
        ConvexSet s = empty_set();
        for (std::size_t j = 0; j < q; ++j) {
            auto& p = pos[j];
            if (p.empty()) continue;
            std::sort(p.begin(), p.end());
            p.erase(std::unique(p.begin(), p.end()), p.end());
            if (p.back() - p.front() + 1 != p.size()) throw ContractError("class set is not an interval on every chain");
            s.intervals[j] = {p.front(), p.back() + 1};
        }
        return s;
    }

    std::vector<ClassId> classes_in(const ConvexSet& s) const {
        check_set(s);
        std::vector<ClassId> out;
        for (std::size_t j = 0; j < s.intervals.size(); ++j)
            for (auto p = s.intervals[j].lo; p < s.intervals[j].hi; ++p) out.push_back(d_.chains[j][p]);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Classes reachable from s by one a-edge. s must be convex in the
    // quotient order; the per-chain fill-in is only exact then.
    ConvexSet follow(const ConvexSet& s, Symbol a, Backend b = Backend::compact, QueryStats* stats = nullptr) const {
        check_set(s);
        if (a >= d_.alphabet.size()) throw ContractError("symbol outside the alphabet");
#ifndef NDEBUG
        if (order_ && order_->size() <= 512 && !is_convex_set(s)) throw ContractError("follow input is not convex");
#endif
        const std::size_t q = chain_count();
        std::vector<std::uint32_t> lo(q, std::numeric_limits<std::uint32_t>::max()), hi(q, 0);
        std::size_t probes = 0;
        auto hit = [&](std::uint32_t j, std::uint32_t mn, std::uint32_t mx) {
            lo[j] = std::min(lo[j], mn);
            hi[j] = std::max(hi[j], mx + 1);
        };
        if (b == Backend::plain)
            follow_plain(s, a, probes, hit);
        else
            follow_compact(s, a, probes, hit);
        if (stats) {
            ++stats->follow_calls;
            stats->group_probes += probes;
            stats->max_probes_per_follow = std::max(stats->max_probes_per_follow, probes);
        }
        ConvexSet out = empty_set();
        for (std::size_t j = 0; j < q; ++j)
            if (lo[j] < hi[j]) out.intervals[j] = {lo[j], hi[j]};
        return out;
    }

    bool contains_final(const ConvexSet& s, Backend b = Backend::compact) const {
        if (!d_.automaton) throw ContractError("index has no automaton data");
        check_set(s);
        for (std::size_t j = 0; j < s.intervals.size(); ++j) {
            const auto& iv = s.intervals[j];
            if (iv.empty()) continue;
            if (b == Backend::compact) {
                const std::size_t g = c_.chain_start.get(j);
                if (c_.fin.rank1(g + iv.hi) != c_.fin.rank1(g + iv.lo)) return true;
            } else {
                for (auto p = iv.lo; p < iv.hi; ++p)
                    if (final_[d_.chains[j][p]]) return true;
            }
        }
        return false;
    }

    // Within every group, sources never decrease as targets increase.
    bool monotone_groups() const {
        for (const auto& g : d_.groups)
            for (std::size_t k = 1; k < g.tgt.size(); ++k) {
                if (g.src[k] < g.src[k - 1]) return false;
                if (g.tgt[k] == g.tgt[k - 1] && g.src[k] == g.src[k - 1]) return false;
            }
        return true;
    }

    // Needs the quotient order, so only for indexes built in memory.
    bool is_convex_set(const ConvexSet& s) const {
        if (!order_) throw ContractError("index was loaded without its order");
        const auto cs = classes_in(s);
        std::vector<char> in(class_count(), 0);
        for (auto c : cs) in[c] = 1;
        const Relation& r = order_->relation();
        // y is between members iff some member lies below it and some above.
        for (ClassId y = 0; y < class_count(); ++y) {
            if (in[y]) continue;
            bool below = false, above = false;
            for (auto x : cs) {
                below = below || r.contains(x, y);
                above = above || r.contains(y, x);
            }
            if (below && above) return false;
        }
        return true;
    }

    SpaceReport space_report() const {
        SpaceReport r;
        r.measured_bits = c_.size_in_bits(d_.automaton);
        const std::uint64_t per_edge = succinct::bits_for(d_.alphabet.size()) + succinct::bits_for(chain_count()) + 2;
        r.formula_bits = edge_count_ * per_edge + class_count() + (d_.automaton ? class_count() : 0);
        return r;
    }

private:
    void check_set(const ConvexSet& s) const {
        if (s.intervals.size() != chain_count()) throw ContractError("convex set has the wrong number of chains");
        for (std::size_t j = 0; j < s.intervals.size(); ++j) {
            const auto& iv = s.intervals[j];
            if (iv.lo > iv.hi || iv.hi > d_.chains[j].size()) throw ContractError("interval outside its chain");
        }
    }

    void validate_and_derive() {
        const std::size_t k = d_.class_count();
        const std::size_t q = d_.chains.size();
        const std::size_t sigma = d_.alphabet.size();
        chain_of_.assign(k, std::numeric_limits<std::uint32_t>::max());
        pos_of_.assign(k, 0);
        for (std::uint32_t j = 0; j < q; ++j) {
            if (d_.chains[j].empty()) throw ContractError("empty chain");
            for (std::uint32_t p = 0; p < d_.chains[j].size(); ++p) {
                const ClassId c = d_.chains[j][p];
                if (c >= k || chain_of_[c] != std::numeric_limits<std::uint32_t>::max())
                    throw ContractError("chains do not partition the classes");
                chain_of_[c] = j;
                pos_of_[c] = p;
            }
        }
        if (order_) {
            if (order_->size() != k) throw ContractError("order size does not match the classes");
            for (const auto& ch : d_.chains)
                for (std::size_t p = 1; p < ch.size(); ++p)
                    if (!order_->contains(ch[p - 1], ch[p])) throw ContractError("chain is not increasing in the order");
        }
        members_.assign(k, {});
        for (Node v = 0; v < d_.class_of.size(); ++v) {
            if (d_.class_of[v] == kNoClass) continue;
            if (d_.class_of[v] >= k) throw ContractError("class map out of range");
            members_[d_.class_of[v]].push_back(v);
        }
        for (ClassId c = 0; c < k; ++c)
            if (members_[c].empty()) throw ContractError("class without members");

        edge_count_ = 0;
        for (std::size_t x = 0; x < d_.groups.size(); ++x) {
            const auto& g = d_.groups[x];
            if (g.j >= q || g.i >= q || g.a >= sigma) throw ContractError("group key out of range");
            if (x > 0) {
                const auto& p = d_.groups[x - 1];
                if (std::tie(p.j, p.a, p.i) >= std::tie(g.j, g.a, g.i)) throw ContractError("groups not sorted");
            }
            if (g.tgt.size() != g.src.size() || g.tgt.empty()) throw ContractError("malformed group");
            for (std::size_t e = 0; e < g.tgt.size(); ++e) {
                if (g.tgt[e] >= d_.chains[g.j].size() || g.src[e] >= d_.chains[g.i].size())
                    throw ContractError("group position out of range");
                if (e > 0 && g.tgt[e] < g.tgt[e - 1]) throw ContractError("group targets not sorted");
            }
            edge_count_ += g.tgt.size();
        }
        if (!monotone_groups()) throw ContractError("edge group violates monotonicity; order is not co-lex");

        // In-labels must not decrease along a chain.
        std::vector<Symbol> lo(k, std::numeric_limits<Symbol>::max()), hi(k, 0);
        for (const auto& g : d_.groups)
            for (auto t : g.tgt) {
                const ClassId c = d_.chains[g.j][t];
                lo[c] = std::min(lo[c], g.a);
                hi[c] = std::max(hi[c], g.a);
            }
        for (const auto& ch : d_.chains) {
            Symbol last = 0;
            for (ClassId c : ch) {
                if (lo[c] > hi[c]) continue;
                if (lo[c] < last) throw ContractError("in-labels decrease along a chain");
                last = hi[c];
            }
        }

        final_.assign(k, 0);
        if (d_.automaton) {
            if (d_.initial >= k) throw ContractError("initial class out of range");
            for (ClassId f : d_.finals) {
                if (f >= k) throw ContractError("final class out of range");
                final_[f] = 1;
            }
        }
    }

    void build_plain() {
        const std::size_t q = chain_count();
        by_ai_.assign(q * d_.alphabet.size(), {});
        for (std::uint32_t x = 0; x < d_.groups.size(); ++x) {
            const auto& g = d_.groups[x];
            by_ai_[g.a * q + g.i].push_back(x);
        }
    }

    template <class Hit>
    void follow_plain(const ConvexSet& s, Symbol a, std::size_t& probes, Hit&& hit) const {
        const std::size_t q = chain_count();
        for (std::uint32_t i = 0; i < q; ++i) {
            const auto iv = s.intervals[i];
            if (iv.empty()) continue;
            for (auto x : by_ai_[a * q + i]) {
                const auto& g = d_.groups[x];
                ++probes;
                auto b = std::lower_bound(g.src.begin(), g.src.end(), iv.lo);
                auto e = std::lower_bound(b, g.src.end(), iv.hi);
                if (b == e) continue;
                hit(g.j, g.tgt[b - g.src.begin()], g.tgt[e - g.src.begin() - 1]);
            }
        }
    }

    // Compact layout over a global node order g = chain_start[j] + pos.
    //   out_sym: for every node in order, its out-edges as a*q + j, sorted
    //            by (a, j, target position).
    //   out_bound: per node a 1 followed by one 0 per out-edge, then a 1.
    //   in_src: for every node in order, the source chain of each in-edge,
    //           sorted by (a, source chain, source position).
    //   in_bound: same shape as out_bound for in-edges.
    //   runs: per (j, a) a 1 followed by one 0 per a-edge entering chain j.
    //   fin: final flag per node (automaton mode).
    struct Compact {
        succinct::IntVector chain_start;
        succinct::WaveletMatrix out_sym, in_src;
        succinct::BitVector out_bound, in_bound, runs, fin;

        std::size_t out_offset(std::size_t g) const { return out_bound.select1(g) - g; }
        std::size_t in_node(std::size_t p) const { return in_bound.rank1(in_bound.select0(p)) - 1; }

        std::uint64_t size_in_bits(bool automaton) const {
            return chain_start.size_in_bits() + out_sym.size_in_bits() + in_src.size_in_bits() +
                   out_bound.size_in_bits() + in_bound.size_in_bits() + runs.size_in_bits() +
                   (automaton ? fin.size_in_bits() : 0);
        }
    };

    void build_compact() {
        const std::size_t q = chain_count(), k = class_count(), sigma = d_.alphabet.size();
        c_.chain_start = succinct::IntVector(q + 1, succinct::bits_for(k + 1));
        std::vector<std::size_t> start(q + 1, 0);
        for (std::size_t j = 0; j < q; ++j) start[j + 1] = start[j] + d_.chains[j].size();
        for (std::size_t j = 0; j <= q; ++j) c_.chain_start.set(j, start[j]);

        struct E {
            std::uint32_t gs, gt;  // global source / target
            Symbol a;
            std::uint32_t i, j;
        };
        std::vector<E> es;
        es.reserve(edge_count_);
        for (const auto& g : d_.groups)
            for (std::size_t e = 0; e < g.tgt.size(); ++e)
                es.push_back({static_cast<std::uint32_t>(start[g.i] + g.src[e]),
                              static_cast<std::uint32_t>(start[g.j] + g.tgt[e]), g.a, g.i, g.j});

        std::sort(es.begin(), es.end(), [](const E& x, const E& y) {
            return std::tie(x.gs, x.a, x.j, x.gt) < std::tie(y.gs, y.a, y.j, y.gt);
        });
        std::vector<std::uint64_t> sym;
        sym.reserve(es.size());
        c_.out_bound = succinct::BitVector();
        std::size_t e = 0;
        for (std::size_t g = 0; g < k; ++g) {
            c_.out_bound.push_back(true);
            for (; e < es.size() && es[e].gs == g; ++e) {
                c_.out_bound.push_back(false);
                sym.push_back(std::uint64_t{es[e].a} * q + es[e].j);
            }
        }
        c_.out_bound.push_back(true);
        c_.out_bound.build();
        c_.out_sym = succinct::WaveletMatrix(sym, std::uint64_t{q} * sigma);

        std::sort(es.begin(), es.end(), [](const E& x, const E& y) {
            return std::tie(x.gt, x.a, x.i, x.gs) < std::tie(y.gt, y.a, y.i, y.gs);
        });
        std::vector<std::uint64_t> src;
        src.reserve(es.size());
        std::vector<std::size_t> run_len(q * sigma, 0);
        c_.in_bound = succinct::BitVector();
        e = 0;
        for (std::size_t g = 0; g < k; ++g) {
            c_.in_bound.push_back(true);
            for (; e < es.size() && es[e].gt == g; ++e) {
                c_.in_bound.push_back(false);
                src.push_back(es[e].i);
                ++run_len[es[e].j * sigma + es[e].a];
            }
        }
        c_.in_bound.push_back(true);
        c_.in_bound.build();
        c_.in_src = succinct::WaveletMatrix(src, q);

        c_.runs = succinct::BitVector();
        for (auto len : run_len) {
            c_.runs.push_back(true);
            for (std::size_t x = 0; x < len; ++x) c_.runs.push_back(false);
        }
        c_.runs.build();

        c_.fin = succinct::BitVector(k);
        for (std::size_t j = 0; j < q; ++j)
            for (std::size_t p = 0; p < d_.chains[j].size(); ++p)
                if (final_[d_.chains[j][p]]) c_.fin.set(start[j] + p);
        c_.fin.build();
    }

    template <class Hit>
    void follow_compact(const ConvexSet& s, Symbol a, std::size_t& probes, Hit&& hit) const {
        const std::size_t q = chain_count(), sigma = d_.alphabet.size();
        for (std::uint32_t i = 0; i < q; ++i) {
            const auto iv = s.intervals[i];
            if (iv.empty()) continue;
            const std::size_t gi = c_.chain_start.get(i);
            const std::size_t base = c_.out_offset(gi);
            const std::size_t lo = c_.out_offset(gi + iv.lo), hi = c_.out_offset(gi + iv.hi);
            if (lo == hi) continue;
            // Only target chains that actually receive a-edges from [lo, hi).
            c_.out_sym.distinct_in(lo, hi, std::uint64_t{a} * q, std::uint64_t{a + 1} * q, [&](std::uint64_t c) {
                const auto j = static_cast<std::uint32_t>(c - std::uint64_t{a} * q);
                ++probes;
                const std::size_t rb = c_.out_sym.rank(c, base);
                const std::size_t c1 = c_.out_sym.rank(c, lo) - rb;
                const std::size_t c2 = c_.out_sym.rank(c, hi) - rb;
                const std::size_t key = j * sigma + a;
                const std::size_t run = c_.runs.select1(key) - key;
                const std::size_t rs = c_.in_src.rank(i, run);
                const std::size_t gj = c_.chain_start.get(j);
                const auto first = c_.in_node(c_.in_src.select(i, rs + c1)) - gj;
                const auto last = c_.in_node(c_.in_src.select(i, rs + c2 - 1)) - gj;
                hit(j, static_cast<std::uint32_t>(first), static_cast<std::uint32_t>(last));
            });
        }
    }

    IndexData d_;
    std::optional<Preorder> order_;
    std::vector<std::uint32_t> chain_of_, pos_of_;
    std::vector<std::vector<Node>> members_;
    std::vector<char> final_;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<std::uint32_t>> by_ai_;  // (a, i) -> group indices
    Compact c_;
};

struct AutomatonInfo {
    ClassId initial = 0;
    std::vector<ClassId> finals;
};

// cp must be a chain partition of qg.order.
inline Index build_index(const QuotientGraph& qg, const ChainPartition& cp,
                         std::optional<AutomatonInfo> automaton = std::nullopt) {
    const std::size_t k = qg.class_count();
    if (cp.chain_of.size() != k || cp.pos_in_chain.size() != k) throw ContractError("partition size does not match quotient");
    for (std::uint32_t j = 0; j < cp.chains.size(); ++j)
        for (std::uint32_t p = 0; p < cp.chains[j].size(); ++p) {
            const auto c = cp.chains[j][p];
            if (c >= k || cp.chain_of[c] != j || cp.pos_in_chain[c] != p)
                throw ContractError("chain partition tables disagree");
        }

    IndexData d;
    d.alphabet = qg.graph.alphabet();
    d.original_edges = qg.original_edges;
    d.chains = cp.chains;
    d.class_of = qg.partition.class_of;
    std::vector<std::tuple<std::uint32_t, Symbol, std::uint32_t, std::uint32_t, std::uint32_t>> rows;
    rows.reserve(qg.graph.edge_count());
    for (const Edge& e : qg.graph.edges())
        rows.emplace_back(cp.chain_of[e.dst], e.label, cp.chain_of[e.src], cp.pos_in_chain[e.dst], cp.pos_in_chain[e.src]);
    std::sort(rows.begin(), rows.end());
    for (const auto& [j, a, i, t, s] : rows) {
        if (d.groups.empty() || d.groups.back().j != j || d.groups.back().a != a || d.groups.back().i != i)
            d.groups.push_back({j, a, i, {}, {}});
        d.groups.back().tgt.push_back(t);
        d.groups.back().src.push_back(s);
    }
    if (automaton) {
        d.automaton = true;
        d.initial = automaton->initial;
        d.finals = automaton->finals;
        std::sort(d.finals.begin(), d.finals.end());
        d.finals.erase(std::unique(d.finals.begin(), d.finals.end()), d.finals.end());
    }
    return Index(std::move(d), qg.order);
}

inline Index build_index(const QuotientNfa& qa, const ChainPartition& cp) {
    return build_index(qa.quotient, cp, AutomatonInfo{qa.initial, qa.finals});
}

struct MatchResult {
    bool found = false;
    ConvexSet set;
};

// Empty start set: (false, {}) even for the empty pattern. Otherwise the empty
// pattern returns (true, u).
inline MatchResult match_from(const Index& ix, ConvexSet u, std::span<const Symbol> p,
                              Backend b = Backend::compact, QueryStats* stats = nullptr) {
    for (Symbol a : p) {
        if (u.empty()) break;
        u = ix.follow(u, a, b, stats);
    }
    const bool found = !u.empty();
    return {found, std::move(u)};
}

inline MatchResult match_pattern(const Index& ix, std::span<const Symbol> p, Backend b = Backend::compact,
                                 QueryStats* stats = nullptr) {
    for (Symbol a : p)
        if (a >= ix.alphabet().size()) throw ContractError("symbol outside the alphabet");
    return match_from(ix, ix.full_set(), p, b, stats);
}

inline bool accept(const Index& ix, std::span<const Symbol> alpha, Backend b = Backend::compact,
                   QueryStats* stats = nullptr) {
    if (!ix.has_automaton()) throw ContractError("index has no automaton data");
    const ClassId s[] = {ix.initial_class()};
    auto r = match_from(ix, ix.from_classes(s), alpha, b, stats);
    return r.found && ix.contains_final(r.set, b);
}

// Original nodes of every class in s, sorted.
inline std::vector<Node> map_back(const Index& ix, const ConvexSet& s) {
    std::vector<Node> out;
    for (ClassId c : ix.classes_in(s)) {
        const auto& m = ix.members(c);
        out.insert(out.end(), m.begin(), m.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline SpaceReport space_report(const Index& ix) { return ix.space_report(); }

}  // namespace colex
