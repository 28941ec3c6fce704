#pragma once
// H^1(G, F_p[P]) for the fundamental group G of a graph of finite p-groups,
// at the finite level P given by a proper quotient witness. Computed as the
// cokernel of the Mayer-Vietoris map
//   (+)_v F_p[P]^{q(G_v)} -> (+)_e F_p[P]^{q(G_e)},  (x_v) -> (x_d0 - t_e x_d1)_e
// and cross-checked against Fox calculus on the presentation.

#include <optional>
#include <string>
#include <vector>

#include "fpcore.hpp"
#include "fplinalg.hpp"
#include "gmodules.hpp"
#include "gog.hpp"
#include "graphs.hpp"

namespace endsbench {

struct MvLevelData {
    ProperWitness witness;
    std::size_t source_dim;
    std::size_t target_dim;
    FpMatrix map; // target_dim x source_dim
    std::size_t kernel_dim;
    GModule target; // right F_p[P]-module
    GModule coker;  // right F_p[P]-module
};

namespace detail {

// Basis of F_p[P]^K: N_K x over right cosets K x.
struct InvariantBasis {
    Subgroup k;
    CosetTable cosets;

    std::size_t dim() const { return cosets.representative.size(); }

    FpVector vector(std::size_t c, int p) const
    {
        FpVector v(cosets.coset_of.size(), 0);
        const int x = cosets.representative[c];
        for (int kk : k.elements) v[static_cast<std::size_t>(k.parent->mult(kk, x))] = 1;
        (void)p;
        return v;
    }

    // Coordinates of a left-K-invariant vector; nullopt if not invariant.
    std::optional<FpVector> coordinates(const FpVector& v) const
    {
        FpVector out(dim(), 0);
        for (std::size_t x = 0; x < v.size(); ++x) {
            const auto c = static_cast<std::size_t>(cosets.coset_of[x]);
            if (static_cast<int>(x) == cosets.representative[c]) out[c] = v[x];
        }
        for (std::size_t x = 0; x < v.size(); ++x)
            if (v[x] != out[static_cast<std::size_t>(cosets.coset_of[x])]) return std::nullopt;
        return out;
    }
};

inline InvariantBasis invariant_basis(Subgroup k)
{
    auto c = right_cosets(k);
    return {std::move(k), std::move(c)};
}

inline Subgroup image_of(const GroupHom& h, const std::vector<int>& elements)
{
    std::vector<int> seeds;
    for (int x : elements) seeds.push_back(h(x));
    return subgroup_generated(h.target, seeds);
}

} // namespace detail

inline MvLevelData mv_h0_map(const GraphOfGroups& g, const ProperWitness& w)
{
    if (auto bad = witness_problem(g, w)) throw PreconditionFailed("mv_h0_map: " + *bad);
    const auto& pg = w.quotient;
    const int p = g.prime;
    const auto n = static_cast<std::size_t>(pg->order());

    std::vector<detail::InvariantBasis> src, dst;
    std::vector<std::size_t> src_off, dst_off;
    std::size_t sdim = 0, tdim = 0;
    for (const auto& q : w.vertex_maps) {
        src.push_back(detail::invariant_basis(image_subgroup(q)));
        src_off.push_back(sdim);
        sdim += src.back().dim();
    }
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.graph.edges[static_cast<std::size_t>(e)];
        const auto& i0 = g.inj0[static_cast<std::size_t>(e)];
        dst.push_back(detail::invariant_basis(
            detail::image_of(compose(w.vertex_maps[static_cast<std::size_t>(ed.d0)], i0), g.edge_groups[static_cast<std::size_t>(e)]->generators())));
        dst_off.push_back(tdim);
        tdim += dst.back().dim();
    }

    FpMatrix map(tdim, sdim, p);
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.graph.edges[static_cast<std::size_t>(e)];
        const int t = w.stable_images[static_cast<std::size_t>(e)];
        const auto& tb = dst[static_cast<std::size_t>(e)];
        auto put = [&](int v, bool twisted) {
            const auto& sb = src[static_cast<std::size_t>(v)];
            for (std::size_t c = 0; c < sb.dim(); ++c) {
                FpVector x = sb.vector(c, p);
                if (twisted) {
                    FpVector y(n, 0);
                    for (std::size_t a = 0; a < n; ++a)
                        if (x[a]) y[static_cast<std::size_t>(pg->mult(t, static_cast<int>(a)))] = static_cast<std::uint8_t>(mod_reduce(-x[a], p));
                    x = std::move(y);
                }
                const auto coords = tb.coordinates(x);
                if (!coords)
                    throw WellDefinednessViolation("mv_h0_map: image on edge " + g.edge_ids[static_cast<std::size_t>(e)] +
                                                   " is not invariant under the edge group");
                for (std::size_t r = 0; r < coords->size(); ++r)
                    map.add(dst_off[static_cast<std::size_t>(e)] + r, src_off[static_cast<std::size_t>(v)] + c, (*coords)[r]);
            }
        };
        put(ed.d0, false);
        put(ed.d1, true);
    }

    // Target as a right module: P permutes the cosets K_e y.
    std::vector<FpMatrix> right;
    for (int s : pg->generators()) {
        FpMatrix m(tdim, tdim, p);
        for (std::size_t e = 0; e < dst.size(); ++e)
            for (std::size_t c = 0; c < dst[e].dim(); ++c) {
                const int y = pg->mult(dst[e].cosets.representative[c], s);
                m.set(dst_off[e] + static_cast<std::size_t>(dst[e].cosets.coset_of[static_cast<std::size_t>(y)]), dst_off[e] + c, 1);
            }
        right.push_back(std::move(m));
    }
    GModule target(pg, tdim, std::nullopt, std::move(right), false);
    const Subspace image = Subspace::span(map.transpose());
    GModule coker = quotient_module(target, Side::right, image);
    const std::size_t kernel = sdim - image.dim();
    return {w, sdim, tdim, std::move(map), kernel, std::move(target), std::move(coker)};
}

/// dim H^1(G, F_p[P]) from the presentation: cocycles are the joint kernel of
/// the Fox-derivative matrix, coboundaries are m -> ((x_j - 1) m)_j, with G
/// acting on F_p[P] by left multiplication through the witness.
inline std::size_t h1_via_fox(const Presentation& pr, const ProperWitness& w)
{
    const auto& pg = *w.quotient;
    const int p = pg.prime();
    const auto n = static_cast<std::size_t>(pg.order());
    const std::size_t ng = pr.generators.size();
    std::vector<int> img(ng);
    for (std::size_t j = 0; j < ng; ++j) {
        const int v = pr.generator_vertex[j];
        if (v >= 0) {
            if (static_cast<std::size_t>(v) >= w.vertex_maps.size()) throw PreconditionFailed("h1_via_fox: missing vertex map");
            const auto& h = w.vertex_maps[static_cast<std::size_t>(v)];
            img[j] = h(h.source->generators()[static_cast<std::size_t>(pr.generator_local[j])]);
        } else {
            if (static_cast<std::size_t>(pr.generator_local[j]) >= w.stable_images.size())
                throw PreconditionFailed("h1_via_fox: missing stable image");
            img[j] = w.stable_images[static_cast<std::size_t>(pr.generator_local[j])];
        }
    }

    // Row block per relator: d r / d x_j evaluated as a sum of left
    // multiplications by group elements.
    FpMatrix fox(pr.relators.size() * n, ng * n, p);
    for (std::size_t r = 0; r < pr.relators.size(); ++r) {
        int prefix = 0;
        auto add_left = [&](std::size_t j, int element, int sign) {
            for (std::size_t a = 0; a < n; ++a)
                fox.add(r * n + static_cast<std::size_t>(pg.mult(element, static_cast<int>(a))), j * n + a, sign);
        };
        for (const auto& l : pr.relators[r]) {
            const auto j = static_cast<std::size_t>(l.gen);
            if (l.exp > 0) {
                add_left(j, prefix, 1);
                prefix = pg.mult(prefix, img[j]);
            } else {
                prefix = pg.mult(prefix, pg.inverse(img[j]));
                add_left(j, prefix, -1);
            }
        }
    }
    FpMatrix cob(ng * n, n, p);
    for (std::size_t j = 0; j < ng; ++j)
        for (std::size_t a = 0; a < n; ++a) {
            cob.add(j * n + static_cast<std::size_t>(pg.mult(img[j], static_cast<int>(a))), a, 1);
            cob.add(j * n + a, a, -1);
        }
    const std::size_t cocycles = ng * n - rank(std::move(fox));
    return cocycles - rank(std::move(cob));
}

struct EndsSignature {
    std::size_t h0_dim;
    std::size_t h1_dim;
};

struct EndsLevelReport {
    int level;
    std::size_t h1_dim;
    std::size_t gen_count;
    std::optional<std::size_t> fox_h1_dim;
    int b1;
    int edge_count;
    long long bound_rhs;
    bool bound_holds;
    EndsSignature ends_signature;
};

inline EndsLevelReport ends_level(const GraphOfGroups& g, const ProperWitness& w, bool with_fox = true)
{
    const auto mv = mv_h0_map(g, w);
    const auto pres = presentation(g);
    EndsLevelReport r{};
    r.level = w.quotient->order();
    r.h1_dim = mv.coker.dim();
    r.gen_count = min_generators(mv.coker, Side::right);
    if (with_fox) r.fox_h1_dim = h1_via_fox(pres, w);
    r.b1 = b1(pres, g.prime);
    r.edge_count = g.edge_count();
    r.bound_rhs = 2LL * static_cast<long long>(r.gen_count) + 9LL * (r.b1 - 1);
    r.bound_holds = r.edge_count <= r.bound_rhs;
    r.ends_signature = {mv.kernel_dim, r.h1_dim};
    return r;
}

struct PropMoreReport {
    bool holds;
    std::size_t h1_dim;
};

/// A reduced decomposition with at least one edge has nonzero H^1 at the
/// witness level.
inline PropMoreReport prop_more_check(const GraphOfGroups& g, const ProperWitness& w)
{
    const auto v = validate(g);
    if (!v.reduced) throw PreconditionFailed("prop_more_check: graph of groups is not reduced");
    if (g.edge_count() == 0) throw PreconditionFailed("prop_more_check: graph of groups has no edges");
    const auto mv = mv_h0_map(g, w);
    return {mv.coker.dim() > 0, mv.coker.dim()};
}

struct MatchingCheck {
    int level;
    int matching_size;
    std::size_t gen_count;
    bool holds;
};

struct TheoremBoundReport {
    std::vector<EndsLevelReport> levels;
    std::vector<MatchingCheck> matching;
    std::vector<int> not_found; // levels with no surjective witness of that order
    bool gen_count_monotone;
};

/// Runs the quotient search at each exact order in `levels` and assembles the
/// bound |EX| <= 2 gen_count + 9 (b1 - 1) together with M(X) <= gen_count.
inline TheoremBoundReport theorem_bound_report(const GraphOfGroups& g, const std::vector<int>& levels, bool with_fox = true)
{
    const auto v = validate(g);
    if (!v.connected) throw PreconditionFailed("theorem_bound_report: graph is disconnected");
    if (!v.reduced) throw PreconditionFailed("theorem_bound_report: graph of groups is not reduced");
    TheoremBoundReport out{{}, {}, {}, true};
    const int m = static_cast<int>(maximum_matching(g.graph).size());
    for (int level : levels) {
        const auto w = find_proper_quotient(g, level, level);
        if (!w) {
            out.not_found.push_back(level);
            continue;
        }
        out.levels.push_back(ends_level(g, *w, with_fox));
        const auto gc = out.levels.back().gen_count;
        out.matching.push_back({level, m, gc, static_cast<std::size_t>(m) <= gc});
    }
    for (std::size_t i = 1; i < out.levels.size(); ++i)
        if (out.levels[i].gen_count < out.levels[i - 1].gen_count) out.gen_count_monotone = false;
    return out;
}

} // namespace endsbench
