#pragma once
// Finite oriented multigraphs with loops. A loop contributes 2 to the valence
// of its vertex.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "errors.hpp"

namespace endsbench {

struct Edge {
    int d0;
    int d1;

    bool is_loop() const { return d0 == d1; }
    bool operator==(const Edge&) const = default;
};

struct Graph {
    int vertex_count = 0;
    std::vector<Edge> edges;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool operator==(const Graph&) const = default;

    void check() const
    {
        for (const auto& e : edges)
            if (e.d0 < 0 || e.d0 >= vertex_count || e.d1 < 0 || e.d1 >= vertex_count)
                throw InputError("", "edge endpoint references a missing vertex");
    }
};

struct GraphStats {
    std::vector<int> valences;
    int leaves;
    int euler_char;
    bool connected;
};

inline GraphStats graph_stats(const Graph& x)
{
    x.check();
    GraphStats s{std::vector<int>(static_cast<std::size_t>(x.vertex_count), 0), 0,
                 x.vertex_count - x.edge_count(), true};
    std::vector<int> parent(static_cast<std::size_t>(x.vertex_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v)
            v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    };
    for (const auto& e : x.edges) {
        ++s.valences[static_cast<std::size_t>(e.d0)];
        ++s.valences[static_cast<std::size_t>(e.d1)];
        parent[static_cast<std::size_t>(find(e.d0))] = find(e.d1);
    }
    for (int v = 0; v < x.vertex_count; ++v)
        if (find(v) != find(0)) s.connected = false;
    s.leaves = static_cast<int>(std::count(s.valences.begin(), s.valences.end(), 1));
    return s;
}

inline bool is_matching(const Graph& x, const std::vector<int>& edge_ids)
{
    std::vector<bool> used(static_cast<std::size_t>(x.vertex_count), false);
    for (int id : edge_ids) {
        const auto& e = x.edges[static_cast<std::size_t>(id)];
        if (used[static_cast<std::size_t>(e.d0)] || used[static_cast<std::size_t>(e.d1)]) return false;
        used[static_cast<std::size_t>(e.d0)] = used[static_cast<std::size_t>(e.d1)] = true;
    }
    return true;
}

namespace detail {

// Edmonds' blossom algorithm on a simple undirected graph.
class Blossom {
public:
    explicit Blossom(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

    void add_edge(int u, int v)
    {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }

    std::vector<int> solve()
    {
        match_.assign(static_cast<std::size_t>(n_), -1);
        for (int i = 0; i < n_; ++i) {
            if (match_[static_cast<std::size_t>(i)] != -1) continue;
            int v = find_path(i);
            while (v != -1) {
                const int pv = at(parent_, v), ppv = at(match_, pv);
                at(match_, v) = pv;
                at(match_, pv) = v;
                v = ppv;
            }
        }
        return match_;
    }

private:
    static int& at(std::vector<int>& a, int i) { return a[static_cast<std::size_t>(i)]; }

    int lca(int a, int b)
    {
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        for (;;) {
            a = at(base_, a);
            seen[static_cast<std::size_t>(a)] = true;
            if (at(match_, a) == -1) break;
            a = at(parent_, at(match_, a));
        }
        for (;;) {
            b = at(base_, b);
            if (seen[static_cast<std::size_t>(b)]) return b;
            b = at(parent_, at(match_, b));
        }
    }

    void mark_path(int v, int b, int child)
    {
        while (at(base_, v) != b) {
            in_blossom_[static_cast<std::size_t>(at(base_, v))] = true;
            in_blossom_[static_cast<std::size_t>(at(base_, at(match_, v)))] = true;
            at(parent_, v) = child;
            child = at(match_, v);
            v = at(parent_, at(match_, v));
        }
    }

    int find_path(int root)
    {
        used_.assign(static_cast<std::size_t>(n_), false);
        parent_.assign(static_cast<std::size_t>(n_), -1);
        base_.resize(static_cast<std::size_t>(n_));
        std::iota(base_.begin(), base_.end(), 0);
        used_[static_cast<std::size_t>(root)] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int to : adj_[static_cast<std::size_t>(v)]) {
                if (at(base_, v) == at(base_, to) || at(match_, v) == to) continue;
                if (to == root || (at(match_, to) != -1 && at(parent_, at(match_, to)) != -1)) {
                    const int cur = lca(v, to);
                    in_blossom_.assign(static_cast<std::size_t>(n_), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i)
                        if (in_blossom_[static_cast<std::size_t>(at(base_, i))]) {
                            at(base_, i) = cur;
                            if (!used_[static_cast<std::size_t>(i)]) {
                                used_[static_cast<std::size_t>(i)] = true;
                                q.push(i);
                            }
                        }
                } else if (at(parent_, to) == -1) {
                    at(parent_, to) = v;
                    if (at(match_, to) == -1) return to;
                    used_[static_cast<std::size_t>(at(match_, to))] = true;
                    q.push(at(match_, to));
                }
            }
        }
        return -1;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<bool> used_, in_blossom_;
};

} // namespace detail

/// Maximum-cardinality set of edges, pairwise without a common endpoint. A
/// loop is admissible and is rewritten as a pendant edge to a fresh vertex
/// before running the blossom algorithm, which preserves conflicts exactly.
inline std::vector<int> maximum_matching(const Graph& x)
{
    x.check();
    const int n = x.vertex_count;
    // vertex-pair (or fresh pendant vertex) -> representative edge id
    std::map<std::pair<int, int>, int> rep;
    int fresh = n;
    std::vector<std::pair<int, int>> simple_edges;
    for (int id = 0; id < x.edge_count(); ++id) {
        const auto& e = x.edges[static_cast<std::size_t>(id)];
        std::pair<int, int> key;
        if (e.is_loop()) {
            key = {e.d0, fresh++};
        } else {
            key = {std::min(e.d0, e.d1), std::max(e.d0, e.d1)};
            if (rep.count(key)) continue;
        }
        rep[key] = id;
        simple_edges.push_back(key);
    }
    detail::Blossom b(fresh);
    for (auto [u, v] : simple_edges) b.add_edge(u, v);
    const auto match = b.solve();
    std::vector<int> out;
    for (int u = 0; u < fresh; ++u) {
        const int v = match[static_cast<std::size_t>(u)];
        if (v > u) out.push_back(rep.at({u, v}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline constexpr int kBruteForceMatchingLimit = 20;

/// Exhaustive maximum matching; the oracle for maximum_matching.
inline std::vector<int> matching_bruteforce(const Graph& x)
{
    x.check();
    if (x.edge_count() > kBruteForceMatchingLimit) throw TooLarge("matching_bruteforce: more than 20 edges");
    std::vector<int> best, cur;
    std::vector<bool> used(static_cast<std::size_t>(x.vertex_count), false);
    auto rec = [&](auto&& self, int i) -> void {
        if (cur.size() + static_cast<std::size_t>(x.edge_count() - i) <= best.size()) return;
        if (i == x.edge_count()) {
            best = cur;
            return;
        }
        const auto& e = x.edges[static_cast<std::size_t>(i)];
        if (!used[static_cast<std::size_t>(e.d0)] && !used[static_cast<std::size_t>(e.d1)]) {
            used[static_cast<std::size_t>(e.d0)] = used[static_cast<std::size_t>(e.d1)] = true;
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
            used[static_cast<std::size_t>(e.d0)] = used[static_cast<std::size_t>(e.d1)] = false;
        }
        self(self, i + 1);
    };
    rec(rec, 0);
    return best;
}

// ---------------------------------------------------------------------------
// Counting lemma: |EX| <= 2 M(X) + 9 T(X), T = leaves - chi.

struct CountingReport {
    int edge_count;
    int matching_size;
    int leaves;
    int euler_char;
    int t_value;
    int bound;
    bool holds;
    bool exceptional;
};

/// True for the families outside the lemma's proof: disconnected, edgeless, or
/// every vertex of valence exactly 2.
inline bool is_counting_exceptional(const Graph& x, const GraphStats& s)
{
    if (!s.connected || x.edge_count() == 0) return true;
    return std::all_of(s.valences.begin(), s.valences.end(), [](int v) { return v == 2; });
}

inline CountingReport counting_report(const Graph& x)
{
    const auto s = graph_stats(x);
    CountingReport r{};
    r.edge_count = x.edge_count();
    r.matching_size = static_cast<int>(maximum_matching(x).size());
    r.leaves = s.leaves;
    r.euler_char = s.euler_char;
    r.t_value = s.leaves - s.euler_char;
    r.bound = 2 * r.matching_size + 9 * r.t_value;
    r.holds = r.edge_count <= r.bound;
    r.exceptional = is_counting_exceptional(x, s);
    return r;
}

/// Sum over components S_i of the full subgraph on valence-2 vertices of
/// floor(|E S_i| / 2): a matching built only from segment edges.
inline int segment_matching_lower_bound(const Graph& x)
{
    const auto s = graph_stats(x);
    auto val2 = [&](int v) { return s.valences[static_cast<std::size_t>(v)] == 2; };
    std::vector<int> parent(static_cast<std::size_t>(x.vertex_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    for (const auto& e : x.edges)
        if (val2(e.d0) && val2(e.d1)) parent[static_cast<std::size_t>(find(e.d0))] = find(e.d1);
    std::map<int, int> edges_per_component;
    for (const auto& e : x.edges)
        if (val2(e.d0) && val2(e.d1)) ++edges_per_component[find(e.d0)];
    int total = 0;
    for (auto [c, n] : edges_per_component) total += n / 2;
    return total;
}

/// Y: X with every maximal path through valence-2 vertices replaced by a single
/// edge. Requires X connected with some vertex of valence != 2.
inline Graph smooth_valence_two(const Graph& x)
{
    const auto s = graph_stats(x);
    auto val2 = [&](int v) { return s.valences[static_cast<std::size_t>(v)] == 2; };
    std::vector<int> new_index(static_cast<std::size_t>(x.vertex_count), -1);
    Graph y;
    for (int v = 0; v < x.vertex_count; ++v)
        if (!val2(v)) new_index[static_cast<std::size_t>(v)] = y.vertex_count++;
    if (y.vertex_count == 0) throw PreconditionFailed("smooth_valence_two: every vertex has valence 2");

    // incidence lists of (edge, far endpoint)
    std::vector<std::vector<std::pair<int, int>>> inc(static_cast<std::size_t>(x.vertex_count));
    for (int id = 0; id < x.edge_count(); ++id) {
        const auto& e = x.edges[static_cast<std::size_t>(id)];
        inc[static_cast<std::size_t>(e.d0)].push_back({id, e.d1});
        inc[static_cast<std::size_t>(e.d1)].push_back({id, e.d0});
    }
    std::vector<bool> done(x.edges.size(), false);
    for (int start = 0; start < x.vertex_count; ++start) {
        if (val2(start)) continue;
        for (auto [id, far] : inc[static_cast<std::size_t>(start)]) {
            if (done[static_cast<std::size_t>(id)]) continue;
            done[static_cast<std::size_t>(id)] = true;
            int prev = id, cur = far;
            while (val2(cur)) {
                const auto& slots = inc[static_cast<std::size_t>(cur)];
                const auto& next = slots[0].first == prev ? slots[1] : slots[0];
                done[static_cast<std::size_t>(next.first)] = true;
                prev = next.first;
                cur = next.second;
            }
            y.edges.push_back({new_index[static_cast<std::size_t>(start)], new_index[static_cast<std::size_t>(cur)]});
        }
    }
    return y;
}

struct ProofIntermediates {
    int segment_lower_bound; // sum floor(|ES_i|/2)
    int smoothed_edges;      // |EY|
    int smoothed_t;          // T(Y)
    bool matching_step_holds; // M(X) >= segment_lower_bound
    bool smoothing_step_holds; // |EY| <= 3 T(Y)
};

inline ProofIntermediates proof_intermediates(const Graph& x, const CountingReport& r)
{
    ProofIntermediates pi{};
    pi.segment_lower_bound = segment_matching_lower_bound(x);
    const Graph y = smooth_valence_two(x);
    const auto ys = graph_stats(y);
    pi.smoothed_edges = y.edge_count();
    pi.smoothed_t = ys.leaves - ys.euler_char;
    pi.matching_step_holds = r.matching_size >= pi.segment_lower_bound;
    pi.smoothing_step_holds = pi.smoothed_edges <= 3 * pi.smoothed_t;
    return pi;
}

// ---------------------------------------------------------------------------
// Enumeration up to isomorphism.

using GraphCode = std::vector<std::uint8_t>;

namespace detail {

inline std::vector<std::vector<int>> multiplicities(const Graph& x)
{
    std::vector<std::vector<int>> m(static_cast<std::size_t>(x.vertex_count),
                                    std::vector<int>(static_cast<std::size_t>(x.vertex_count), 0));
    for (const auto& e : x.edges) {
        ++m[static_cast<std::size_t>(e.d0)][static_cast<std::size_t>(e.d1)];
        if (!e.is_loop()) ++m[static_cast<std::size_t>(e.d1)][static_cast<std::size_t>(e.d0)];
    }
    return m;
}

inline GraphCode code_for(const std::vector<std::vector<int>>& m, const std::vector<int>& order)
{
    const std::size_t n = order.size();
    GraphCode c{static_cast<std::uint8_t>(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            c.push_back(static_cast<std::uint8_t>(m[static_cast<std::size_t>(order[i])][static_cast<std::size_t>(order[j])]));
    return c;
}

/// Colour refinement; colours are ranks of canonical signatures, so the
/// resulting ordered partition is isomorphism-invariant.
inline std::vector<int> refined_colours(const std::vector<std::vector<int>>& m)
{
    const std::size_t n = m.size();
    std::vector<int> colour(n, 0);
    std::size_t classes = 0;
    for (int round = 0;; ++round) {
        std::vector<std::vector<int>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (round == 0) {
                int valence = 0;
                for (std::size_t u = 0; u < n; ++u) valence += m[v][u] * (u == v ? 2 : 1);
                sig[v] = {valence, m[v][v]};
            } else {
                sig[v] = {colour[v]};
                std::vector<std::pair<int, int>> nb;
                for (std::size_t u = 0; u < n; ++u)
                    if (u != v && m[v][u] > 0) nb.push_back({colour[u], m[v][u]});
                std::sort(nb.begin(), nb.end());
                for (auto [c, k] : nb) {
                    sig[v].push_back(c);
                    sig[v].push_back(k);
                }
            }
        }
        std::vector<std::vector<int>> uniq(sig);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (std::size_t v = 0; v < n; ++v)
            colour[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        if (round > 0 && uniq.size() == classes) break;
        classes = uniq.size();
    }
    return colour;
}

} // namespace detail

/// Canonical code: lexicographically smallest upper-triangular multiplicity
/// matrix over all vertex orders compatible with the refined colouring.
inline GraphCode canonical_code(const Graph& x)
{
    const auto m = detail::multiplicities(x);
    const auto colour = detail::refined_colours(m);
    std::vector<int> order(static_cast<std::size_t>(x.vertex_count));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return colour[static_cast<std::size_t>(a)] < colour[static_cast<std::size_t>(b)]; });
    // cell boundaries
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && colour[static_cast<std::size_t>(order[j])] == colour[static_cast<std::size_t>(order[i])]) ++j;
        cells.push_back({i, j});
        i = j;
    }
    GraphCode best = detail::code_for(m, order);
    auto rec = [&](auto&& self, std::size_t cell) -> void {
        if (cell == cells.size()) {
            auto c = detail::code_for(m, order);
            if (c < best) best = std::move(c);
            return;
        }
        auto [b, e] = cells[cell];
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(b), order.begin() + static_cast<std::ptrdiff_t>(e));
        do {
            self(self, cell + 1);
        } while (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(b),
                                       order.begin() + static_cast<std::ptrdiff_t>(e)));
    };
    rec(rec, 0);
    return best;
}

inline Graph graph_from_code(const GraphCode& c)
{
    Graph g;
    g.vertex_count = c.at(0);
    std::size_t k = 1;
    for (int i = 0; i < g.vertex_count; ++i)
        for (int j = i; j < g.vertex_count; ++j, ++k)
            for (int r = 0; r < c[k]; ++r) g.edges.push_back({i, j});
    return g;
}

inline constexpr int kExhaustiveEdgeLimit = 8;

/// All connected multigraphs with loops having at most max_edges edges and at
/// most max_vertices vertices, one per isomorphism class, ordered by edge
/// count then canonical code. Each class is returned in canonical labelling.
inline std::vector<Graph> enumerate_connected_multigraphs(int max_edges, int max_vertices)
{
    if (max_edges > kExhaustiveEdgeLimit) throw TooLarge("enumerate: exhaustive mode is limited to 8 edges");
    if (max_edges < 0 || max_vertices < 1) throw PreconditionFailed("enumerate: bounds must be positive");
    std::vector<Graph> out;
    std::set<GraphCode> level{canonical_code(Graph{1, {}})};
    for (int e = 0;; ++e) {
        for (const auto& c : level) out.push_back(graph_from_code(c));
        if (e == max_edges) break;
        std::set<GraphCode> next;
        for (const auto& c : level) {
            const Graph g = graph_from_code(c);
            for (int u = 0; u < g.vertex_count; ++u) {
                for (int v = u; v < g.vertex_count; ++v) {
                    Graph h = g;
                    h.edges.push_back({u, v});
                    next.insert(canonical_code(h));
                }
                if (g.vertex_count < max_vertices) {
                    Graph h = g;
                    h.edges.push_back({u, h.vertex_count++});
                    next.insert(canonical_code(h));
                }
            }
        }
        level = std::move(next);
    }
    return out;
}

/// Random connected multigraph: random spanning tree plus uniformly random
/// extra edges (loops allowed).
template <class Rng>
Graph random_connected_multigraph(Rng& rng, int vertices, int edges)
{
    if (vertices < 1 || edges < vertices - 1) throw PreconditionFailed("random graph: too few edges to connect");
    Graph g{vertices, {}};
    for (int v = 1; v < vertices; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        g.edges.push_back({pick(rng), v});
    }
    std::uniform_int_distribution<int> any(0, vertices - 1);
    while (g.edge_count() < edges) g.edges.push_back({any(rng), any(rng)});
    return g;
}

struct CountingFinding {
    Graph graph;
    CountingReport report;
};

struct CountingVerification {
    std::vector<CountingFinding> all;
    std::vector<CountingFinding> violations;  // non-exceptional graphs breaking the bound
    std::vector<CountingFinding> exceptional; // exceptional-family graphs breaking the bound
    std::vector<CountingFinding> intermediate_failures;
    std::size_t family_size = 0;
};

/// Exhaustive through min(max_edges, 8) edges; beyond that, `samples` random
/// connected graphs per edge count drawn from a seeded generator.
inline CountingVerification verify_counting_lemma(int max_edges, std::uint64_t seed = 0, int samples = 200)
{
    CountingVerification out;
    auto visit = [&](const Graph& g) {
        CountingFinding f{g, counting_report(g)};
        if (!f.report.exceptional) {
            ++out.family_size;
            const auto pi = proof_intermediates(g, f.report);
            if (!pi.matching_step_holds || !pi.smoothing_step_holds) out.intermediate_failures.push_back(f);
            if (!f.report.holds) out.violations.push_back(f);
        } else if (!f.report.holds) {
            out.exceptional.push_back(f);
        }
        out.all.push_back(std::move(f));
    };
    const int exhaustive = std::min(max_edges, kExhaustiveEdgeLimit);
    for (const auto& g : enumerate_connected_multigraphs(exhaustive, exhaustive + 1)) visit(g);
    std::mt19937_64 rng(seed);
    for (int e = exhaustive + 1; e <= max_edges; ++e)
        for (int s = 0; s < samples; ++s) {
            std::uniform_int_distribution<int> nv(1, e + 1);
            visit(random_connected_multigraph(rng, nv(rng), e));
        }
    return out;
}

} // namespace endsbench
