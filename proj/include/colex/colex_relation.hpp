#pragma once

#include <optional>

#include "colex/graph.hpp"
#include "colex/relation.hpp"

namespace colex {

// Implicit graph over ordered pairs of distinct nodes. There is an arc
// (u', v') -> (u, v) iff (u', u, a) and (v', v, a) are edges for some a.
class PairGraph {
public:
    explicit PairGraph(const LabeledGraph& g) : g_(&g) {}

    std::size_t node_count() const {
        const std::size_t n = g_->node_count();
        return n * (n == 0 ? 0 : n - 1);
    }

    // Visits every (u, v) with an arc from (up, vp).
    template <class F>
    void for_each_successor(Node up, Node vp, F&& f) const {
        intersect_buckets(g_->out_edges(up), g_->out_edges(vp), [&](const Edge& x, const Edge& y) {
            if (x.dst != y.dst) f(x.dst, y.dst);
        });
    }

    // Visits every (u', v') with an arc into (u, v).
    template <class F>
    void for_each_predecessor(Node u, Node v, F&& f) const {
        intersect_buckets(g_->in_edges(u), g_->in_edges(v), [&](const Edge& x, const Edge& y) {
            if (x.src != y.src) f(x.src, y.src);
        });
    }

    std::size_t arc_count() const {
        std::size_t c = 0;
        const std::size_t n = g_->node_count();
        for (Node u = 0; u < n; ++u)
            for (Node v = 0; v < n; ++v)
                if (u != v) for_each_successor(u, v, [&](Node, Node) { ++c; });
        return c;
    }

private:
    // Both spans are sorted by label; calls f on every same-label pair.
    template <class F>
    static void intersect_buckets(std::span<const Edge> a, std::span<const Edge> b, F&& f) {
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].label < b[j].label) {
                ++i;
            } else if (b[j].label < a[i].label) {
                ++j;
            } else {
                const Symbol s = a[i].label;
                std::size_t ie = i, je = j;
                while (ie < a.size() && a[ie].label == s) ++ie;
                while (je < b.size() && b[je].label == s) ++je;
                for (std::size_t x = i; x < ie; ++x)
                    for (std::size_t y = j; y < je; ++y) f(a[x], b[y]);
                i = ie;
                j = je;
            }
        }
    }

    const LabeledGraph* g_;
};

// Maximum co-lex relation: a pair of distinct nodes survives iff no pair
// preceding it violates the angle condition. Violating pairs seed a forward
// traversal of the pair graph; everything reached is excluded.
inline Preorder max_colex_relation(const LabeledGraph& g, std::span<const Node> u_marked = {}) {
    const std::size_t n = g.node_count();
    if (n > (std::size_t{1} << 16)) throw ContractError("dense relation limited to 65536 nodes");
    const auto lambda = lambda_sets(g, u_marked);
    std::vector<Label> lo(n), hi(n);
    for (Node v = 0; v < n; ++v) lo[v] = lambda[v].min(), hi[v] = lambda[v].max();

    PairGraph pg(g);
    Relation marked(n);
    std::vector<std::uint32_t> stack;
    auto push = [&](Node u, Node v) {
        marked.insert(u, v);
        stack.push_back(static_cast<std::uint32_t>(u) * static_cast<std::uint32_t>(n) + v);
    };
    for (Node u = 0; u < n; ++u) {
        for (Node v = 0; v < n; ++v) {
            if (u == v || hi[u] <= lo[v] || marked.contains(u, v)) continue;
            push(u, v);
            while (!stack.empty()) {
                const std::uint32_t p = stack.back();
                stack.pop_back();
                pg.for_each_successor(static_cast<Node>(p / n), static_cast<Node>(p % n), [&](Node x, Node y) {
                    if (!marked.contains(x, y)) push(x, y);
                });
            }
        }
    }

    Relation r(n);
    for (Node u = 0; u < n; ++u) {
        auto out = r.row(u);
        auto m = marked.row(u);
        for (std::size_t w = 0; w < out.size(); ++w) out[w] = ~m[w];
        if (n % 64) out[out.size() - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
        r.insert(u, u);
    }
    return Preorder::trusted(std::move(r));
}

// Minimum co-lex relation containing (u, v): the reflexive closure of every
// pair reached backwards from (u, v) in the pair graph, or nullopt when one
// of those pairs violates the angle condition.
inline std::optional<Relation> min_colex_containing(const LabeledGraph& g, Node u, Node v,
                                                   std::span<const Node> u_marked = {}) {
    const std::size_t n = g.node_count();
    if (u >= n || v >= n) throw ContractError("node out of range");
    if (u == v) throw ContractError("min_colex_containing expects distinct nodes");
    const auto lambda = lambda_sets(g, u_marked);
    PairGraph pg(g);
    Relation seen(n);
    std::vector<std::pair<Node, Node>> stack{{u, v}};
    seen.insert(u, v);
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        if (!angle(lambda[x], lambda[y])) return std::nullopt;
        pg.for_each_predecessor(x, y, [&](Node xp, Node yp) {
            if (!seen.contains(xp, yp)) seen.insert(xp, yp), stack.emplace_back(xp, yp);
        });
    }
    for (Node w = 0; w < n; ++w) seen.insert(w, w);
    return seen;
}

struct AxiomViolation {
    int axiom = 0;  // 1 or 2
    Node u = 0, v = 0;
    // Axiom 2 only: the predecessor pair missing from the relation.
    Node pred_u = 0, pred_v = 0;
};

struct ColexCheck {
    std::optional<AxiomViolation> violation;
    bool ok() const { return !violation.has_value(); }
    explicit operator bool() const { return ok(); }
};

inline ColexCheck is_colex_relation(const LabeledGraph& g, const Relation& r,
                                    std::span<const Node> u_marked = {}) {
    if (r.size() != g.node_count()) throw ContractError("relation size does not match graph");
    const auto lambda = lambda_sets(g, u_marked);
    PairGraph pg(g);
    for (Node u = 0; u < r.size(); ++u) {
        if (!r.contains(u, u)) throw ContractError("relation must be reflexive");
        std::optional<AxiomViolation> bad;
        r.for_each_in_row(u, [&](Node v) {
            if (bad || u == v) return;
            if (!angle(lambda[u], lambda[v])) {
                bad = AxiomViolation{1, u, v, 0, 0};
                return;
            }
            pg.for_each_predecessor(u, v, [&](Node up, Node vp) {
                if (!bad && !r.contains(up, vp)) bad = AxiomViolation{2, u, v, up, vp};
            });
        });
        if (bad) return {bad};
    }
    return {};
}

}  // namespace colex
