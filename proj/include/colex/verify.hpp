#pragma once

#include <ostream>
#include <sstream>

#include "colex/oracle.hpp"
#include "colex/pipeline.hpp"
#include "colex/random.hpp"
#include "colex/serialize.hpp"

namespace colex::verify {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Options {
    std::size_t max_len = 4;         // patterns checked against the brute matcher
    std::size_t max_patterns = 20000;
};

inline void write_report(std::ostream& os, const std::vector<Check>& checks) {
    for (const auto& c : checks) os << "CHECK " << c.name << ' ' << (c.pass ? "PASS" : "FAIL") << ' ' << c.detail << '\n';
}

inline bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace detail {

inline std::string pair_str(Node u, Node v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

inline std::vector<oracle::Word> patterns(std::size_t sigma, const Options& o) {
    std::size_t len = 0, count = 1, layer = 1;
    while (len < o.max_len && count + layer * sigma <= o.max_patterns && sigma > 0) {
        layer *= sigma;
        count += layer;
        ++len;
    }
    return oracle::all_words(sigma, len);
}

// Index answers on every pattern, compared with the brute matcher pulled
// through the class map. starts: original nodes the search begins from.
inline Check match_check(const std::string& name, const LabeledGraph& g, const Index& ix,
                         std::span<const Node> starts, const ConvexSet& u, const Options& o) {
    const auto pats = patterns(g.alphabet().size(), o);
    const std::size_t q = ix.chain_count();
    QueryStats st;
    bool check_convex = ix.order() && ix.class_count() <= 256;
    for (const auto& p : pats) {
        auto truth = oracle::brute_theta(g, starts, p);
        for (Backend b : {Backend::plain, Backend::compact}) {
            ConvexSet s = u;
            for (Symbol a : p) {
                if (s.empty()) break;
                s = ix.follow(s, a, b, &st);
                if (check_convex && !ix.is_convex_set(s))
                    return {name, false, "non-convex step on '" + format_pattern(g.alphabet(), p) + "'"};
            }
            auto r = match_from(ix, u, p, b);
            if (r.set != s || map_back(ix, r.set) != truth || r.found != !truth.empty())
                return {name, false,
                        std::string(b == Backend::plain ? "plain" : "compact") + " mismatch on '" +
                            format_pattern(g.alphabet(), p) + "'"};
        }
    }
    if (st.max_probes_per_follow > q * q)
        return {name, false, "probes " + std::to_string(st.max_probes_per_follow) + " > q^2"};
    std::ostringstream d;
    d << pats.size() << " patterns, max probes " << st.max_probes_per_follow << " <= q^2=" << q * q;
    return {name, true, d.str()};
}

inline Check roundtrip_check(const LabeledGraph& g, const Index& ix, const Options& o) {
    std::stringstream ss;
    write_index(ss, ix);
    Index back = read_index(ss);
    if (!(back.data() == ix.data())) return {"serialize_roundtrip", false, "decoded data differs"};
    for (const auto& p : patterns(g.alphabet().size(), o)) {
        auto a = match_pattern(ix, p), b = match_pattern(back, p);
        if (a.found != b.found || a.set != b.set) return {"serialize_roundtrip", false, "answers differ"};
        if (ix.has_automaton() && accept(ix, p) != accept(back, p))
            return {"serialize_roundtrip", false, "acceptance differs"};
    }
    std::ostringstream d;
    d << ss.str().size() << " bytes";
    return {"serialize_roundtrip", true, d.str()};
}

}  // namespace detail

// Cross-checks on one graph with an optional marked node set.
inline std::vector<Check> verify_graph(const LabeledGraph& g, std::span<const Node> u_marked = {},
                                       const Options& o = {}) {
    std::vector<Check> out;
    const std::size_t n = g.node_count();
    const Preorder rel = max_colex_relation(g, u_marked);

    {
        const Relation& r = rel.relation();
        bool ok = r.is_reflexive() && r.is_transitive();
        out.push_back({"relation_preorder", ok, std::to_string(r.pair_count()) + " pairs"});
        auto chk = is_colex_relation(g, r, u_marked);
        std::string d = "both axioms";
        if (!chk) d = "axiom " + std::to_string(chk.violation->axiom) + " at " + detail::pair_str(chk.violation->u, chk.violation->v);
        out.push_back({"relation_colex", chk.ok(), d});
    }
    if (n <= 64) {
        bool same = oracle::gfp_max_relation(g, u_marked) == rel;
        out.push_back({"relation_gfp", same, same ? "fixpoint agrees" : "fixpoint differs"});
    }
    if (n <= 32) {
        std::string bad;
        for (Node u = 0; u < n && bad.empty(); ++u)
            for (Node v = 0; v < n && bad.empty(); ++v) {
                if (u == v) continue;
                auto m = min_colex_containing(g, u, v, u_marked);
                if (rel.contains(u, v) != m.has_value() || (m && !refines(rel.relation(), *m)))
                    bad = detail::pair_str(u, v);
            }
        out.push_back({"relation_maximal", bad.empty(), bad.empty() ? "every closure agrees" : "closure disagrees at " + bad});
    }

    QuotientGraph qg;
    try {
        qg = quotient_graph(g, rel, u_marked);
    } catch (const ContractError& e) {
        out.push_back({"quotient", false, e.what()});
        return out;
    }
    {
        auto chk = is_colex_relation(qg.graph, qg.order.relation(), qg.marked);
        bool ok = qg.order.is_partial_order() && chk.ok();
        out.push_back({"quotient_order", ok,
                       std::to_string(qg.class_count()) + " classes, " + std::to_string(qg.graph.edge_count()) + " edges"});
    }

    const auto cp = min_chain_partition(qg.order);
    {
        bool ok = true;
        for (const auto& ch : cp.chains)
            for (std::size_t x = 1; x < ch.size(); ++x) ok = ok && qg.order.contains(ch[x - 1], ch[x]);
        const auto anti = max_antichain(qg.order);
        for (auto x : anti)
            for (auto y : anti) ok = ok && (x == y || !qg.order.contains(x, y));
        ok = ok && anti.size() == cp.width;
        out.push_back({"chain_partition", ok, "width " + std::to_string(cp.width) + ", antichain " + std::to_string(anti.size())});
    }

    const Index ix = build_index(qg, cp);
    out.push_back({"index_monotone", ix.monotone_groups(), std::to_string(ix.data().groups.size()) + " groups"});
    std::vector<Node> all(n);
    for (Node v = 0; v < n; ++v) all[v] = v;
    out.push_back(detail::match_check("match_oracle", g, ix, all, ix.full_set(), o));
    out.push_back(detail::roundtrip_check(g, ix, o));
    const auto sr = ix.space_report();
    out.push_back({"space_report", true,
                   "measured " + std::to_string(sr.measured_bits) + " formula " + std::to_string(sr.formula_bits)});
    return out;
}

// Graph checks with the initial state marked, then automaton checks.
inline std::vector<Check> verify_nfa(const Nfa& a, const Options& o = {}) {
    const Node s[] = {a.initial};
    auto out = verify_graph(a.graph, s, o);
    for (auto& c : out) c.name = "nfa_" + c.name;

    Pipeline p;
    try {
        p = build_nfa_pipeline(a);
    } catch (const EmptyLanguageError&) {
        out.push_back({"nfa_trim", true, "empty language, nothing to index"});
        return out;
    }
    const Index& ix = p.index;
    const Nfa trimmed = trim_nfa(a).nfa;
    {
        // Over the trimmed automaton, so node ids line up with the brute matcher.
        const Node from[] = {trimmed.initial};
        const auto tp = build_pipeline(trimmed.graph, from, trimmed.initial, trimmed.finals);
        const ClassId c[] = {tp.index.initial_class()};
        out.push_back(detail::match_check("nfa_match_from_initial", trimmed.graph, tp.index, from,
                                          tp.index.from_classes(c), o));
    }
    {
        Options lo = o;
        lo.max_len = o.max_len + 2;
        const auto words = detail::patterns(a.graph.alphabet().size(), lo);
        std::string bad;
        for (const auto& w : words) {
            const bool truth = oracle::nfa_accepts(a, w);
            if (accept(ix, w, Backend::plain) != truth || accept(ix, w, Backend::compact) != truth) {
                bad = format_pattern(a.graph.alphabet(), w);
                break;
            }
        }
        out.push_back({"nfa_accept", bad.empty(),
                       bad.empty() ? std::to_string(words.size()) + " words" : "mismatch on '" + bad + "'"});
    }
    if (trimmed.state_count() <= 16) {
        QuotientNfa qa{p.quotient, ix.initial_class(), ix.data().finals};
        bool eq = oracle::language_equiv(trimmed, qa.as_nfa());
        out.push_back({"nfa_quotient_language", eq, eq ? "languages equal" : "languages differ"});
        auto pa = oracle::powerset(trimmed), pq = oracle::powerset(qa.as_nfa());
        bool iso = pa.states.size() == pq.states.size();
        for (std::size_t x = 0; iso && x < pa.states.size(); ++x) {
            std::vector<ClassId> cs;
            for (Node v : pa.states[x]) cs.push_back(p.quotient.partition.class_of[v]);
            std::sort(cs.begin(), cs.end());
            cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
            iso = cs == pq.states[x];
        }
        iso = iso && pa.dfa.graph.edges().size() == pq.dfa.graph.edges().size() &&
              std::equal(pa.dfa.graph.edges().begin(), pa.dfa.graph.edges().end(), pq.dfa.graph.edges().begin()) &&
              pa.dfa.finals == pq.dfa.finals;
        out.push_back({"nfa_powerset_isomorphic", iso, std::to_string(pa.states.size()) + " subsets"});
    }
    if (trimmed.state_count() <= 12) {
        auto b = oracle::check_powerset_bounds(trimmed);
        std::ostringstream d;
        d << "r=" << b.r << " n_prec=" << b.n_prec << " r*=" << b.r_star << " n*=" << b.n_star
          << (b.exact ? "" : " (one-sided: cyclic)");
        out.push_back({"nfa_powerset_bounds", b.bounds_hold, d.str()});
    }
    if (oracle::is_acyclic(trimmed.graph) && trimmed.state_count() <= 12) {
        const Node t0[] = {trimmed.initial};
        const auto rel = max_colex_relation(trimmed.graph, t0);
        const auto prec = oracle::prec_A_acyclic(trimmed);
        bool ok = oracle::check_monotonic(trimmed, rel.relation()) && refines(prec.relation(), rel.relation());
        out.push_back({"nfa_monotonic", ok, ok ? "relation inside the word-set order" : "monotonicity fails"});
    }
    return out;
}

// Aggregated checks over count random graphs and automata drawn from seed.
inline std::vector<Check> verify_random(std::uint64_t seed, std::size_t count, const Options& o = {}) {
    gen::Rng rng(seed);
    std::uniform_int_distribution<std::size_t> nd(1, 8), sd(1, 3);
    std::vector<Check> agg;
    auto merge = [&](const std::vector<Check>& cs, std::size_t trial) {
        for (const auto& c : cs) {
            auto it = std::find_if(agg.begin(), agg.end(), [&](const Check& x) { return x.name == "random_" + c.name; });
            if (it == agg.end()) {
                agg.push_back({"random_" + c.name, true, ""});
                it = agg.end() - 1;
            }
            if (!c.pass && it->pass) {
                it->pass = false;
                it->detail = "case " + std::to_string(trial) + ": " + c.detail;
            }
        }
    };
    Options small = o;
    small.max_len = std::min<std::size_t>(o.max_len, 4);
    for (std::size_t t = 0; t < count; ++t) {
        const auto n = nd(rng), sigma = sd(rng);
        const double dens = t % 2 ? 0.3 : 0.1;
        merge(verify_graph(gen::random_graph(rng, n, sigma, dens), {}, small), t);
        merge(verify_nfa(gen::random_trim_nfa(rng, std::min<std::size_t>(n, 7), sigma, dens, t % 3 == 0), small), t);
    }
    for (auto& c : agg)
        if (c.pass) c.detail = std::to_string(count) + " cases, seed " + std::to_string(seed);
    return agg;
}

}  // namespace colex::verify
