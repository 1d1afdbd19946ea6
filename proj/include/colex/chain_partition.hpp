#pragma once

#include <deque>
#include <limits>

#include "colex/quotient.hpp"
#include "colex/relation.hpp"

namespace colex {

// Hopcroft-Karp on a bipartite graph with equal sides, left x adjacent to
// right y. Left vertices are scanned in ascending order so the resulting
// matching is deterministic.
class BipartiteMatching {
public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    explicit BipartiteMatching(std::vector<std::vector<std::uint32_t>> adj, std::size_t right_size)
        : adj_(std::move(adj)), match_left_(adj_.size(), kNone), match_right_(right_size, kNone),
          dist_(adj_.size()) {
        while (bfs()) {
            it_.assign(adj_.size(), 0);
            for (std::uint32_t x = 0; x < adj_.size(); ++x)
                if (match_left_[x] == kNone && dfs(x)) ++size_;
        }
    }

    std::size_t size() const { return size_; }
    std::uint32_t mate_of_left(std::uint32_t x) const { return match_left_[x]; }
    std::uint32_t mate_of_right(std::uint32_t y) const { return match_right_[y]; }
    const std::vector<std::vector<std::uint32_t>>& adjacency() const { return adj_; }

private:
    bool bfs() {
        std::deque<std::uint32_t> q;
        bool found = false;
        for (std::uint32_t x = 0; x < adj_.size(); ++x) {
            if (match_left_[x] == kNone) {
                dist_[x] = 0;
                q.push_back(x);
            } else {
                dist_[x] = kNone;
            }
        }
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            for (auto y : adj_[x]) {
                auto m = match_right_[y];
                if (m == kNone) {
                    found = true;
                } else if (dist_[m] == kNone) {
                    dist_[m] = dist_[x] + 1;
                    q.push_back(m);
                }
            }
        }
        return found;
    }

    // Iterative layered DFS from free left vertex root.
    bool dfs(std::uint32_t root) {
        std::vector<std::uint32_t> path{root};
        while (!path.empty()) {
            const auto x = path.back();
            if (it_[x] == adj_[x].size()) {
                dist_[x] = kNone;
                path.pop_back();
                if (!path.empty()) ++it_[path.back()];
                continue;
            }
            const auto y = adj_[x][it_[x]];
            const auto m = match_right_[y];
            if (m == kNone) {
                for (auto px : path) {
                    const auto py = adj_[px][it_[px]];
                    match_left_[px] = py;
                    match_right_[py] = px;
                }
                return true;
            }
            if (dist_[m] == dist_[x] + 1)
                path.push_back(m);
            else
                ++it_[x];
        }
        return false;
    }

    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint32_t> match_left_, match_right_, dist_;
    std::vector<std::size_t> it_;
    std::size_t size_ = 0;
};

struct ChainPartition {
    std::size_t width = 0;                       // number of chains
    std::vector<std::uint32_t> chain_of;         // element -> chain id
    std::vector<std::uint32_t> pos_in_chain;     // element -> rank within chain
    std::vector<std::vector<std::uint32_t>> chains;  // chain -> elements, increasing

    friend bool operator==(const ChainPartition&, const ChainPartition&) = default;
};

namespace detail {

inline std::vector<std::vector<std::uint32_t>> strict_successors(const Preorder& order) {
    const std::size_t k = order.size();
    std::vector<std::vector<std::uint32_t>> adj(k);
    for (Node x = 0; x < k; ++x)
        order.relation().for_each_in_row(x, [&](Node y) {
            if (x != y) adj[x].push_back(y);
        });
    return adj;
}

inline void require_partial_order(const Preorder& order) {
    if (!order.is_partial_order()) throw ContractError("expected an antisymmetric order");
}

}  // namespace detail

// Minimum chain partition by minimum path cover of the (transitive) strict
// order: width = k - |maximum matching|.
inline ChainPartition min_chain_partition(const Preorder& order) {
    detail::require_partial_order(order);
    const std::size_t k = order.size();
    BipartiteMatching m(detail::strict_successors(order), k);

    ChainPartition cp;
    cp.chain_of.assign(k, 0);
    cp.pos_in_chain.assign(k, 0);
    for (std::uint32_t x = 0; x < k; ++x) {
        if (m.mate_of_right(x) != BipartiteMatching::kNone) continue;
        const auto id = static_cast<std::uint32_t>(cp.chains.size());
        cp.chains.emplace_back();
        for (std::uint32_t y = x; y != BipartiteMatching::kNone; y = m.mate_of_left(y)) {
            cp.chain_of[y] = id;
            cp.pos_in_chain[y] = static_cast<std::uint32_t>(cp.chains.back().size());
            cp.chains.back().push_back(y);
        }
    }
    cp.width = cp.chains.size();
    return cp;
}

// Maximum antichain from a minimum vertex cover of the same bipartite graph:
// elements whose left and right copies are both outside the cover.
inline std::vector<std::uint32_t> max_antichain(const Preorder& order) {
    detail::require_partial_order(order);
    const std::size_t k = order.size();
    BipartiteMatching m(detail::strict_successors(order), k);
    const auto& adj = m.adjacency();
    // Alternating reachability from free left vertices.
    std::vector<char> left_seen(k, 0), right_seen(k, 0);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t x = 0; x < k; ++x)
        if (m.mate_of_left(x) == BipartiteMatching::kNone) left_seen[x] = 1, stack.push_back(x);
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto y : adj[x]) {
            if (right_seen[y]) continue;
            right_seen[y] = 1;
            auto mx = m.mate_of_right(y);
            if (mx != BipartiteMatching::kNone && !left_seen[mx]) left_seen[mx] = 1, stack.push_back(mx);
        }
    }
    // Cover = (left not seen) + (right seen).
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < k; ++x)
        if (left_seen[x] && !right_seen[x]) out.push_back(x);
    return out;
}

inline std::size_t preorder_width(const Preorder& pre) {
    auto part = classes(pre);
    return min_chain_partition(induced_order(pre, part)).width;
}

}  // namespace colex
