#pragma once
// Graphs of finite p-groups: validation, collapsing, presentations of the
// fundamental group, mod-p Betti number, and finite quotients in which every
// vertex group injects.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpcore.hpp"
#include "fplinalg.hpp"
#include "graphs.hpp"

namespace endsbench {

struct GraphOfGroups {
    Graph graph;
    int prime = 2;
    std::vector<std::string> vertex_ids;
    std::vector<std::string> edge_ids;
    std::vector<GroupRef> vertex_groups;
    std::vector<GroupRef> edge_groups;
    std::vector<GroupHom> inj0; // edge group -> d0 vertex group
    std::vector<GroupHom> inj1; // edge group -> d1 vertex group

    int vertex_count() const { return graph.vertex_count; }
    int edge_count() const { return graph.edge_count(); }
};

namespace detail {

inline bool same_group(const GroupRef& a, const GroupRef& b)
{
    return a == b || (a->order() == b->order() && a->table() == b->table() && a->generators() == b->generators());
}

inline bool is_homomorphism(const GroupHom& h)
{
    const auto& s = *h.source;
    const auto& t = *h.target;
    if (h.image.size() != static_cast<std::size_t>(s.order())) return false;
    for (int a = 0; a < s.order(); ++a)
        for (int b = 0; b < s.order(); ++b)
            if (h(s.mult(a, b)) != t.mult(h(a), h(b))) return false;
    return true;
}

} // namespace detail

/// Structural invariants; throws InputError naming the offending vertex or edge.
inline void check_structure(const GraphOfGroups& g)
{
    const auto nv = static_cast<std::size_t>(g.vertex_count());
    const auto ne = static_cast<std::size_t>(g.edge_count());
    if (g.vertex_ids.size() != nv || g.vertex_groups.size() != nv)
        throw InputError("/vertices", "vertex data does not match the vertex count");
    if (g.edge_ids.size() != ne || g.edge_groups.size() != ne || g.inj0.size() != ne || g.inj1.size() != ne)
        throw InputError("/edges", "edge data does not match the edge count");
    if (nv == 0) throw InputError("/vertices", "graph of groups needs at least one vertex");
    g.graph.check();
    for (std::size_t v = 0; v < nv; ++v)
        if (g.vertex_groups[v]->prime() != g.prime)
            throw InputError("/vertices/" + std::to_string(v), "vertex " + g.vertex_ids[v] + " has a group for a different prime");
    for (std::size_t e = 0; e < ne; ++e) {
        const std::string where = "/edges/" + std::to_string(e);
        const std::string name = "edge " + g.edge_ids[e];
        const auto& ed = g.graph.edges[e];
        if (g.edge_groups[e]->prime() != g.prime) throw InputError(where, name + " has a group for a different prime");
        const GroupHom* maps[2] = {&g.inj0[e], &g.inj1[e]};
        const int ends[2] = {ed.d0, ed.d1};
        for (int k = 0; k < 2; ++k) {
            const auto& h = *maps[k];
            const std::string which = where + "/inj" + std::to_string(k);
            if (!detail::same_group(h.source, g.edge_groups[e]))
                throw InputError(which, name + ": inj" + std::to_string(k) + " source is not the edge group");
            if (!detail::same_group(h.target, g.vertex_groups[static_cast<std::size_t>(ends[k])]))
                throw InputError(which, name + ": inj" + std::to_string(k) + " target is not the endpoint group");
            if (!detail::is_homomorphism(h))
                throw InputError(which, name + ": inj" + std::to_string(k) + " is not a homomorphism");
            if (!is_injective(h))
                throw InputError(which, name + ": inj" + std::to_string(k) + " is not injective");
        }
    }
}

struct ValidationReport {
    bool reduced;
    bool connected;
};

/// Reduced: no edge map of a non-loop edge is an isomorphism.
inline ValidationReport validate(const GraphOfGroups& g)
{
    check_structure(g);
    ValidationReport r{true, graph_stats(g.graph).connected};
    for (std::size_t e = 0; e < g.graph.edges.size(); ++e) {
        if (g.graph.edges[e].is_loop()) continue;
        if (is_bijective(g.inj0[e]) || is_bijective(g.inj1[e])) r.reduced = false;
    }
    return r;
}

inline std::optional<int> first_iso_edge(const GraphOfGroups& g)
{
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.graph.edges[static_cast<std::size_t>(e)].is_loop()) continue;
        if (is_bijective(g.inj0[static_cast<std::size_t>(e)]) || is_bijective(g.inj1[static_cast<std::size_t>(e)])) return e;
    }
    return std::nullopt;
}

/// Which endpoint disappears when collapsing e, and the isomorphism carrying
/// the dropped vertex group onto the kept one.
struct CollapsePlan {
    int keep;
    int drop;
    bool drop_is_d1;
    GroupHom psi; // G_drop -> G_keep
};

inline CollapsePlan collapse_plan(const GraphOfGroups& g, int e)
{
    if (e < 0 || e >= g.edge_count()) throw PreconditionFailed("collapse_iso_edge: no such edge");
    const auto& ed = g.graph.edges[static_cast<std::size_t>(e)];
    if (ed.is_loop()) throw PreconditionFailed("collapse_iso_edge: edge is a loop");
    const auto& i0 = g.inj0[static_cast<std::size_t>(e)];
    const auto& i1 = g.inj1[static_cast<std::size_t>(e)];
    if (is_bijective(i1)) return {ed.d0, ed.d1, true, compose(i0, inverse_iso(i1))};
    if (is_bijective(i0)) return {ed.d1, ed.d0, false, compose(i1, inverse_iso(i0))};
    throw PreconditionFailed("collapse_iso_edge: neither edge map is an isomorphism");
}

/// Removes e and merges its endpoints, routing every edge map into the dropped
/// vertex group through the isomorphism onto the kept one.
inline GraphOfGroups collapse_iso_edge(const GraphOfGroups& g, int e)
{
    const auto plan = collapse_plan(g, e);
    GraphOfGroups out;
    out.prime = g.prime;
    std::vector<int> new_index(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v == plan.drop) continue;
        new_index[static_cast<std::size_t>(v)] = out.graph.vertex_count++;
        out.vertex_ids.push_back(g.vertex_ids[static_cast<std::size_t>(v)]);
        out.vertex_groups.push_back(g.vertex_groups[static_cast<std::size_t>(v)]);
    }
    new_index[static_cast<std::size_t>(plan.drop)] = new_index[static_cast<std::size_t>(plan.keep)];
    for (int f = 0; f < g.edge_count(); ++f) {
        if (f == e) continue;
        const auto& ed = g.graph.edges[static_cast<std::size_t>(f)];
        auto i0 = g.inj0[static_cast<std::size_t>(f)];
        auto i1 = g.inj1[static_cast<std::size_t>(f)];
        if (ed.d0 == plan.drop) i0 = compose(plan.psi, i0);
        if (ed.d1 == plan.drop) i1 = compose(plan.psi, i1);
        out.graph.edges.push_back({new_index[static_cast<std::size_t>(ed.d0)], new_index[static_cast<std::size_t>(ed.d1)]});
        out.edge_ids.push_back(g.edge_ids[static_cast<std::size_t>(f)]);
        out.edge_groups.push_back(g.edge_groups[static_cast<std::size_t>(f)]);
        out.inj0.push_back(std::move(i0));
        out.inj1.push_back(std::move(i1));
    }
    return out;
}

/// Collapses isomorphism edges until the graph of groups is reduced.
inline GraphOfGroups reduce_fully(GraphOfGroups g)
{
    while (auto e = first_iso_edge(g)) g = collapse_iso_edge(g, *e);
    return g;
}

// ---------------------------------------------------------------------------

/// Breadth-first maximal subtree from vertex 0, scanning edges in index order.
struct SpanningTree {
    std::vector<bool> in_tree;     // per edge
    std::vector<int> order;        // vertices in discovery order
    std::vector<int> parent_edge;  // per vertex, -1 at the root
};

inline SpanningTree spanning_tree(const Graph& x)
{
    SpanningTree t{std::vector<bool>(x.edges.size(), false), {0},
                   std::vector<int>(static_cast<std::size_t>(x.vertex_count), -1)};
    std::vector<bool> seen(static_cast<std::size_t>(x.vertex_count), false);
    seen[0] = true;
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        const int v = t.order[head];
        for (int id = 0; id < x.edge_count(); ++id) {
            const auto& e = x.edges[static_cast<std::size_t>(id)];
            int far = -1;
            if (e.d0 == v) far = e.d1;
            else if (e.d1 == v) far = e.d0;
            if (far < 0 || seen[static_cast<std::size_t>(far)]) continue;
            seen[static_cast<std::size_t>(far)] = true;
            t.in_tree[static_cast<std::size_t>(id)] = true;
            t.parent_edge[static_cast<std::size_t>(far)] = id;
            t.order.push_back(far);
        }
    }
    if (t.order.size() != static_cast<std::size_t>(x.vertex_count))
        throw PreconditionFailed("graph is disconnected");
    return t;
}

struct Letter {
    int gen;
    int exp; // +1 or -1

    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

inline Word inverse_word(const Word& w)
{
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
    return r;
}

inline Word free_reduce(const Word& w)
{
    Word r;
    for (const auto& l : w) {
        if (!r.empty() && r.back().gen == l.gen && r.back().exp == -l.exp) r.pop_back();
        else r.push_back(l);
    }
    return r;
}

/// Presentation of the fundamental group: vertex-group generators tagged by
/// vertex, one stable letter per edge, vertex-table relators, edge relators
/// d0(g) t d1(g)^-1 t^-1 per edge-group generator, and t for tree edges.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<int> generator_vertex;    // owning vertex, -1 for stable letters
    std::vector<int> generator_local;     // generator index in the vertex group, or edge id
    std::vector<int> vertex_offset;       // first generator of each vertex
    std::vector<int> stable_letter;       // generator of each edge's t_e
    std::vector<Word> relators;
    std::vector<bool> subtree;            // per edge
};

inline Presentation presentation(const GraphOfGroups& g)
{
    check_structure(g);
    const auto tree = spanning_tree(g.graph);
    Presentation pr;
    pr.subtree = tree.in_tree;
    for (int v = 0; v < g.vertex_count(); ++v) {
        pr.vertex_offset.push_back(static_cast<int>(pr.generators.size()));
        const auto& grp = *g.vertex_groups[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < grp.generators().size(); ++i) {
            pr.generators.push_back(g.vertex_ids[static_cast<std::size_t>(v)] + "." + std::to_string(i));
            pr.generator_vertex.push_back(v);
            pr.generator_local.push_back(static_cast<int>(i));
        }
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        pr.stable_letter.push_back(static_cast<int>(pr.generators.size()));
        pr.generators.push_back("t_" + g.edge_ids[static_cast<std::size_t>(e)]);
        pr.generator_vertex.push_back(-1);
        pr.generator_local.push_back(e);
    }

    auto vertex_word = [&](int v, int element) {
        Word w;
        for (int i : g.vertex_groups[static_cast<std::size_t>(v)]->word(element))
            w.push_back({pr.vertex_offset[static_cast<std::size_t>(v)] + i, 1});
        return w;
    };
    auto add = [&](Word w) {
        w = free_reduce(w);
        if (!w.empty()) pr.relators.push_back(std::move(w));
    };

    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& grp = *g.vertex_groups[static_cast<std::size_t>(v)];
        for (int a : grp.bfs_order())
            for (std::size_t i = 0; i < grp.generators().size(); ++i) {
                const int b = grp.mult(a, grp.generators()[i]);
                if (grp.parent(b) == a && grp.via(b) == static_cast<int>(i)) continue;
                Word w = vertex_word(v, a);
                w.push_back({pr.vertex_offset[static_cast<std::size_t>(v)] + static_cast<int>(i), 1});
                const Word tail = inverse_word(vertex_word(v, b));
                w.insert(w.end(), tail.begin(), tail.end());
                add(std::move(w));
            }
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.graph.edges[static_cast<std::size_t>(e)];
        const int t = pr.stable_letter[static_cast<std::size_t>(e)];
        for (int s : g.edge_groups[static_cast<std::size_t>(e)]->generators()) {
            Word w = vertex_word(ed.d0, g.inj0[static_cast<std::size_t>(e)](s));
            w.push_back({t, 1});
            const Word back = inverse_word(vertex_word(ed.d1, g.inj1[static_cast<std::size_t>(e)](s)));
            w.insert(w.end(), back.begin(), back.end());
            w.push_back({t, -1});
            add(std::move(w));
        }
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (pr.subtree[static_cast<std::size_t>(e)]) pr.relators.push_back({{pr.stable_letter[static_cast<std::size_t>(e)], 1}});
    return pr;
}

/// dim_{F_p} H^1(G, F_p) = #generators - rank of the exponent-sum matrix mod p.
inline int b1(const Presentation& pr, int prime)
{
    FpMatrix m(pr.relators.size(), pr.generators.size(), prime);
    for (std::size_t r = 0; r < pr.relators.size(); ++r)
        for (const auto& l : pr.relators[r]) m.add(r, static_cast<std::size_t>(l.gen), l.exp);
    return static_cast<int>(pr.generators.size() - rank(std::move(m)));
}

inline int b1(const GraphOfGroups& g) { return b1(presentation(g), g.prime); }

/// #leaves + 1 - chi(X): the lower bound for b1 from the leaf quotient.
inline int leaf_bound(const GraphOfGroups& g)
{
    const auto s = graph_stats(g.graph);
    if (!s.connected) throw PreconditionFailed("leaf_bound: graph is disconnected");
    return s.leaves + 1 - s.euler_char;
}

// ---------------------------------------------------------------------------

/// A finite quotient P of the fundamental group in which every vertex group
/// injects: vertex maps plus images of the stable letters.
struct ProperWitness {
    GroupRef quotient;
    std::vector<GroupHom> vertex_maps;
    std::vector<int> stable_images;
};

/// Re-verifies a witness from scratch. Returns a reason on failure.
inline std::optional<std::string> witness_problem(const GraphOfGroups& g, const ProperWitness& w)
{
    if (!w.quotient) return "missing quotient group";
    const auto& p = *w.quotient;
    if (p.prime() != g.prime) return "quotient has a different prime";
    if (w.vertex_maps.size() != static_cast<std::size_t>(g.vertex_count())) return "wrong number of vertex maps";
    if (w.stable_images.size() != static_cast<std::size_t>(g.edge_count())) return "wrong number of stable images";
    for (std::size_t v = 0; v < w.vertex_maps.size(); ++v) {
        const auto& h = w.vertex_maps[v];
        if (!detail::same_group(h.source, g.vertex_groups[v]) || !detail::same_group(h.target, w.quotient))
            return "vertex map " + g.vertex_ids[v] + " has the wrong source or target";
        if (!detail::is_homomorphism(h)) return "vertex map " + g.vertex_ids[v] + " is not a homomorphism";
        if (!is_injective(h)) return "vertex map " + g.vertex_ids[v] + " is not injective";
    }
    const auto tree = spanning_tree(g.graph);
    for (std::size_t e = 0; e < w.stable_images.size(); ++e) {
        const int t = w.stable_images[e];
        if (t < 0 || t >= p.order()) return "stable image out of range";
        if (tree.in_tree[e] && t != 0) return "tree edge " + g.edge_ids[e] + " has a nontrivial stable image";
        const auto& ed = g.graph.edges[e];
        const auto& q0 = w.vertex_maps[static_cast<std::size_t>(ed.d0)];
        const auto& q1 = w.vertex_maps[static_cast<std::size_t>(ed.d1)];
        for (int x = 0; x < g.edge_groups[e]->order(); ++x)
            if (q0(g.inj0[e](x)) != p.conjugate(t, q1(g.inj1[e](x))))
                return "edge relation fails on edge " + g.edge_ids[e];
    }
    return std::nullopt;
}

inline Subgroup witness_image(const ProperWitness& w)
{
    std::vector<int> seeds(w.stable_images);
    for (const auto& h : w.vertex_maps)
        for (int s : h.source->generators()) seeds.push_back(h(s));
    return subgroup_generated(w.quotient, seeds);
}

inline bool witness_is_surjective(const ProperWitness& w)
{
    return witness_image(w).order() == w.quotient->order();
}

namespace detail {

// All injective homomorphisms src -> dst, as full image tables.
inline std::vector<std::vector<int>> injective_homs(const FiniteGroup& src, const FiniteGroup& dst)
{
    std::vector<std::vector<int>> out;
    if (dst.order() % src.order() != 0) return out;
    const auto& gens = src.generators();
    std::vector<std::vector<int>> options(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (int x = 0; x < dst.order(); ++x)
            if (dst.element_order(x) == src.element_order(gens[i])) options[i].push_back(x);
    std::vector<int> images(gens.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == gens.size()) {
            auto img = try_extend_hom(src, dst, images);
            if (!img) return;
            std::vector<bool> hit(static_cast<std::size_t>(dst.order()), false);
            for (int x : *img) {
                if (hit[static_cast<std::size_t>(x)]) return;
                hit[static_cast<std::size_t>(x)] = true;
            }
            out.push_back(std::move(*img));
            return;
        }
        for (int x : options[i]) {
            images[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// Coordinates of every element in the Frattini quotient P/Phi(P) = F_p^d.
struct FrattiniCoordinates {
    std::size_t rank;
    std::vector<FpVector> coords;
};

inline FrattiniCoordinates frattini_coordinates(const GroupRef& p)
{
    const auto phi = frattini_subgroup(p);
    std::vector<int> basis;
    Subgroup cur = phi;
    for (int x = 0; x < p->order(); ++x) {
        if (cur.contains(x)) continue;
        basis.push_back(x);
        auto seeds = phi.elements;
        seeds.insert(seeds.end(), basis.begin(), basis.end());
        cur = subgroup_generated(p, seeds);
    }
    const int prime = p->prime();
    FrattiniCoordinates out{basis.size(), std::vector<FpVector>(static_cast<std::size_t>(p->order()))};
    FpVector a(basis.size(), 0);
    for (;;) {
        int x = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) x = p->mult(x, p->power(basis[i], a[i]));
        for (int f : phi.elements) out.coords[static_cast<std::size_t>(p->mult(f, x))] = a;
        std::size_t i = 0;
        while (i < a.size() && ++a[i] == prime) a[i++] = 0;
        if (i == a.size()) break;
    }
    return out;
}

inline std::size_t frattini_rank(const GroupRef& p) { return frattini_coordinates(p).rank; }

// Backtracking over one candidate quotient P. Vertices are assigned in
// spanning-tree order so every tree edge constrains its child immediately;
// non-tree stable letters are chosen last while tracking the subgroup they
// generate together with the Frattini subgroup (Burnside basis theorem).
class QuotientSearch {
public:
    QuotientSearch(const GraphOfGroups& g, GroupRef p, bool require_surjective)
        : g_(g), p_(std::move(p)), tree_(spanning_tree(g.graph)), surjective_(require_surjective), frattini_{0, {}}
    {
    }

    std::optional<ProperWitness> run()
    {
        const auto nv = static_cast<std::size_t>(g_.vertex_count());
        homs_.resize(nv);
        std::map<const FiniteGroup*, std::size_t> cache;
        for (std::size_t v = 0; v < nv; ++v) {
            const auto* key = g_.vertex_groups[v].get();
            if (auto it = cache.find(key); it != cache.end()) {
                homs_[v] = homs_[it->second];
            } else {
                homs_[v] = injective_homs(*g_.vertex_groups[v], *p_);
                cache[key] = v;
            }
            if (homs_[v].empty()) return std::nullopt;
        }
        chosen_.assign(nv, nullptr);
        if (surjective_) {
            frattini_ = frattini_coordinates(p_);
        }
        if (!assign(0)) return std::nullopt;
        return witness_;
    }

private:
    bool edge_ok(int e, int t) const
    {
        const auto& ed = g_.graph.edges[static_cast<std::size_t>(e)];
        const auto& a = *chosen_[static_cast<std::size_t>(ed.d0)];
        const auto& b = *chosen_[static_cast<std::size_t>(ed.d1)];
        for (int s : g_.edge_groups[static_cast<std::size_t>(e)]->generators()) {
            const int x = a[static_cast<std::size_t>(g_.inj0[static_cast<std::size_t>(e)](s))];
            const int y = b[static_cast<std::size_t>(g_.inj1[static_cast<std::size_t>(e)](s))];
            if (x != p_->conjugate(t, y)) return false;
        }
        return true;
    }

    bool assign(std::size_t i)
    {
        if (i == tree_.order.size()) return choose_letters();
        const int v = tree_.order[i];
        const int pe = tree_.parent_edge[static_cast<std::size_t>(v)];
        for (const auto& h : homs_[static_cast<std::size_t>(v)]) {
            chosen_[static_cast<std::size_t>(v)] = &h;
            if (pe >= 0 && !edge_ok(pe, 0)) continue;
            if (assign(i + 1)) return true;
        }
        chosen_[static_cast<std::size_t>(v)] = nullptr;
        return false;
    }

    bool choose_letters()
    {
        open_edges_.clear();
        options_.clear();
        for (int e = 0; e < g_.edge_count(); ++e) {
            if (tree_.in_tree[static_cast<std::size_t>(e)]) continue;
            std::vector<int> ok;
            for (int t = 0; t < p_->order(); ++t)
                if (edge_ok(e, t)) ok.push_back(t);
            if (ok.empty()) return false;
            open_edges_.push_back(e);
            options_.push_back(std::move(ok));
        }
        letters_.assign(open_edges_.size(), 0);
        Subspace span(frattini_.rank, p_->prime());
        if (surjective_)
            for (std::size_t v = 0; v < chosen_.size(); ++v)
                for (int s : g_.vertex_groups[v]->generators())
                    span.insert(frattini_.coords[static_cast<std::size_t>((*chosen_[v])[static_cast<std::size_t>(s)])]);
        return extend(0, span);
    }

    bool extend(std::size_t k, const Subspace& span)
    {
        if (surjective_ && frattini_.rank - span.dim() > open_edges_.size() - k) return false;
        if (k == open_edges_.size()) {
            finish();
            return true;
        }
        std::vector<FpVector> tried;
        for (int t : options_[k]) {
            Subspace next = span;
            if (surjective_) {
                // stable letters with the same residue modulo the span are interchangeable
                const auto& c = frattini_.coords[static_cast<std::size_t>(t)];
                FpVector r = span.reduce(c);
                if (std::find(tried.begin(), tried.end(), r) != tried.end()) continue;
                tried.push_back(std::move(r));
                next.insert(c);
            }
            letters_[k] = t;
            if (extend(k + 1, next)) return true;
        }
        return false;
    }

    void finish()
    {
        ProperWitness w{p_, {}, std::vector<int>(static_cast<std::size_t>(g_.edge_count()), 0)};
        for (std::size_t v = 0; v < chosen_.size(); ++v) w.vertex_maps.push_back({g_.vertex_groups[v], p_, *chosen_[v]});
        for (std::size_t k = 0; k < open_edges_.size(); ++k) w.stable_images[static_cast<std::size_t>(open_edges_[k])] = letters_[k];
        witness_ = std::move(w);
    }

    const GraphOfGroups& g_;
    GroupRef p_;
    SpanningTree tree_;
    bool surjective_;
    std::vector<std::vector<std::vector<int>>> homs_;
    std::vector<const std::vector<int>*> chosen_;
    FrattiniCoordinates frattini_;
    std::vector<int> open_edges_;
    std::vector<std::vector<int>> options_;
    std::vector<int> letters_;
    ProperWitness witness_;
};

} // namespace detail

/// First witness over catalog groups with min_order <= |P| <= max_order, in
/// catalog order. With `require_surjective` the vertex images and stable
/// letters must generate P. Every returned witness is re-verified.
inline std::optional<ProperWitness> find_proper_quotient(const GraphOfGroups& g, int min_order, int max_order,
                                                         bool require_surjective = true)
{
    check_structure(g);
    if (!graph_stats(g.graph).connected) throw PreconditionFailed("quotient search: graph is disconnected");
    // a surjection G -> P needs d(P) <= dim H^1(G, F_p)
    const auto betti = static_cast<std::size_t>(b1(g));
    for (const auto& p : catalog_groups(g.prime, max_order)) {
        if (p->order() < min_order) continue;
        if (require_surjective && detail::frattini_rank(p) > betti) continue;
        bool divisible = true;
        for (const auto& gv : g.vertex_groups)
            if (p->order() % gv->order() != 0 || p->exponent() < gv->exponent()) divisible = false;
        if (!divisible) continue;
        auto w = detail::QuotientSearch(g, p, require_surjective).run();
        if (!w) continue;
        if (auto bad = witness_problem(g, *w)) throw WellDefinednessViolation("quotient search produced an invalid witness: " + *bad);
        return w;
    }
    return std::nullopt;
}

/// Smallest nontrivial witness with p <= |P| <= order_bound, or NotFoundWithinBound.
inline ProperWitness proper_quotient_search(const GraphOfGroups& g, int order_bound)
{
    if (auto w = find_proper_quotient(g, g.prime, order_bound)) return *w;
    throw NotFoundWithinBound("no proper finite quotient of order <= " + std::to_string(order_bound));
}

/// Rank of the free kernel of a surjective witness:
/// 1 - |P| (sum_v 1/|G_v| - sum_e 1/|G_e|).
inline long long free_kernel_rank(const GraphOfGroups& g, const ProperWitness& w)
{
    if (auto bad = witness_problem(g, w)) throw PreconditionFailed("free_kernel_rank: " + *bad);
    if (!witness_is_surjective(w)) throw PreconditionFailed("free_kernel_rank: witness is not surjective");
    const long long n = w.quotient->order();
    long long r = 1;
    auto index = [n](const GroupRef& h) {
        if (n % h->order() != 0) throw NonIntegral("free_kernel_rank: group order does not divide |P|");
        return n / h->order();
    };
    for (const auto& gv : g.vertex_groups) r -= index(gv);
    for (const auto& ge : g.edge_groups) r += index(ge);
    if (r < 0) throw NonIntegral("free_kernel_rank: negative rank");
    return r;
}

/// Conjugates vertex maps so that every spanning-tree edge has trivial stable
/// image: q_v -> c_v q_v c_v^-1, t_e -> c_d0 t_e c_d1^-1.
inline ProperWitness normalize_witness(const GraphOfGroups& g, ProperWitness w)
{
    const auto& p = *w.quotient;
    const auto tree = spanning_tree(g.graph);
    std::vector<int> c(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : tree.order) {
        const int e = tree.parent_edge[static_cast<std::size_t>(v)];
        if (e < 0) continue;
        const auto& ed = g.graph.edges[static_cast<std::size_t>(e)];
        const int t = w.stable_images[static_cast<std::size_t>(e)];
        if (ed.d1 == v) c[static_cast<std::size_t>(v)] = p.mult(c[static_cast<std::size_t>(ed.d0)], t);
        else c[static_cast<std::size_t>(v)] = p.mult(c[static_cast<std::size_t>(ed.d1)], p.inverse(t));
    }
    for (std::size_t v = 0; v < w.vertex_maps.size(); ++v)
        for (auto& x : w.vertex_maps[v].image) x = p.conjugate(c[v], x);
    for (std::size_t e = 0; e < w.stable_images.size(); ++e) {
        const auto& ed = g.graph.edges[e];
        w.stable_images[e] = p.mult(p.mult(c[static_cast<std::size_t>(ed.d0)], w.stable_images[e]),
                                    p.inverse(c[static_cast<std::size_t>(ed.d1)]));
    }
    return w;
}

/// Carries a witness for g to a witness for collapse_iso_edge(g, e) over the
/// same quotient.
inline ProperWitness transport_witness(const GraphOfGroups& g, int e, const ProperWitness& w)
{
    const auto plan = collapse_plan(g, e);
    const auto& p = *w.quotient;
    const int te = w.stable_images[static_cast<std::size_t>(e)];
    // q_drop(x) = s q_keep(psi x) s^-1
    const int s = plan.drop_is_d1 ? p.inverse(te) : te;
    ProperWitness out{w.quotient, {}, {}};
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != plan.drop) out.vertex_maps.push_back(w.vertex_maps[static_cast<std::size_t>(v)]);
    for (int f = 0; f < g.edge_count(); ++f) {
        if (f == e) continue;
        const auto& ed = g.graph.edges[static_cast<std::size_t>(f)];
        int t = w.stable_images[static_cast<std::size_t>(f)];
        if (ed.d0 == plan.drop) t = p.mult(p.inverse(s), t);
        if (ed.d1 == plan.drop) t = p.mult(t, s);
        out.stable_images.push_back(t);
    }
    return normalize_witness(collapse_iso_edge(g, e), std::move(out));
}

} // namespace endsbench
