#pragma once
// H^0 and H^1 of a finite group with coefficients in a finite module, from
// explicit inhomogeneous cochains:
//   d0(m)(g)      = g.m - m
//   d1(f)(g, h)   = g.f(h) - f(gh) + f(g)
// The group K acts through a homomorphism K -> P into the module's group,
// using the module's left action.

#include <vector>

#include "fpcore.hpp"
#include "fplinalg.hpp"
#include "gmodules.hpp"

namespace endsbench {

struct CochainComplexSlice {
    GroupRef group;
    std::size_t module_dim;
    FpMatrix d0; // M -> C^1, |K| dim x dim
    FpMatrix d1; // C^1 -> C^2 restricted to pairs (g, s) with s a generator of K
};

struct CohomologyResult {
    int degree;
    std::size_t dimension;
    std::vector<FpVector> representatives;
};

namespace detail {

inline std::vector<FpMatrix> pulled_back_actions(const GroupHom& act, const GModule& m)
{
    if (act.target->table() != m.group()->table())
        throw DimensionMismatch("acting homomorphism must land in the module's group");
    const auto all = m.element_actions(Side::left);
    std::vector<FpMatrix> out;
    out.reserve(act.image.size());
    for (int x : act.image) out.push_back(all[static_cast<std::size_t>(x)]);
    return out;
}

} // namespace detail

/// Cocycle condition rows are only materialised for second arguments that are
/// generators or the identity; f(gs) = g.f(s) + f(g) for all g and those s
/// already forces the condition on all pairs.
inline CochainComplexSlice cochain_slice(const GroupHom& act, const GModule& m)
{
    const auto& k = *act.source;
    const std::size_t d = m.dim(), n = static_cast<std::size_t>(k.order());
    const int p = m.prime();
    const auto acts = detail::pulled_back_actions(act, m);

    FpMatrix d0(n * d, d, p);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                d0.set(g * d + r, c, static_cast<long long>(acts[g](r, c)) - (r == c ? 1 : 0));

    std::vector<int> gens{0};
    gens.insert(gens.end(), k.generators().begin(), k.generators().end());
    FpMatrix d1(n * gens.size() * d, n * d, p);
    std::size_t row = 0;
    for (std::size_t g = 0; g < n; ++g)
        for (int s : gens) {
            const auto gs = static_cast<std::size_t>(k.mult(static_cast<int>(g), s));
            for (std::size_t r = 0; r < d; ++r, ++row) {
                // g.f(s) - f(gs) + f(g)
                for (std::size_t c = 0; c < d; ++c) d1.add(row, static_cast<std::size_t>(s) * d + c, acts[g](r, c));
                d1.add(row, gs * d + r, -1);
                d1.add(row, g * d + r, 1);
            }
        }
    return {act.source, d, std::move(d0), std::move(d1)};
}

inline CohomologyResult h0(const GroupHom& act, const GModule& m)
{
    const auto& k = *act.source;
    const std::size_t d = m.dim();
    const auto acts = detail::pulled_back_actions(act, m);
    FpMatrix stacked(0, d, m.prime());
    for (int s : k.generators()) {
        const FpMatrix diff = acts[static_cast<std::size_t>(s)] - FpMatrix::identity(d, m.prime());
        for (std::size_t r = 0; r < d; ++r) stacked.append_row(diff.row(r));
    }
    const auto prof = rank_profile(stacked);
    CohomologyResult res{0, prof.nullspace.dim(), {}};
    for (std::size_t i = 0; i < prof.nullspace.dim(); ++i) {
        auto row = prof.nullspace.basis().row(i);
        res.representatives.emplace_back(row.begin(), row.end());
    }
    return res;
}

inline CohomologyResult h1(const GroupHom& act, const GModule& m)
{
    const auto slice = cochain_slice(act, m);
    const auto cocycles = rank_profile(slice.d1).nullspace;
    Subspace boundaries = Subspace::span(slice.d0.transpose());
    CohomologyResult res{1, cocycles.dim() - boundaries.dim(), {}};
    for (std::size_t i = 0; i < cocycles.dim(); ++i) {
        auto z = cocycles.basis().row(i);
        if (boundaries.insert(z)) res.representatives.emplace_back(z.begin(), z.end());
    }
    return res;
}

inline CohomologyResult h0(const Subgroup& k, const GModule& m)
{
    return h0(subgroup_as_group(k).inclusion, m);
}

inline CohomologyResult h1(const Subgroup& k, const GModule& m)
{
    return h1(subgroup_as_group(k).inclusion, m);
}

/// Outcome of a lemma check: both sides of the compared quantity.
struct LemmaCheck {
    bool holds;
    std::size_t lhs;
    std::size_t rhs;
};

/// H^1(G, F_p[G]) = 0 for finite G.
inline LemmaCheck check_h1_regular_vanishes(const GroupRef& g)
{
    const auto dim = h1(identity_hom(g), regular_bimodule(g)).dimension;
    return {dim == 0, dim, 0};
}

/// The K-fixed vectors of F_p[G] are exactly N_K.F_p[G], of dimension |K\G|.
inline LemmaCheck check_h0_norm_formula(const Subgroup& k)
{
    const auto& g = k.parent;
    const auto reg = regular_bimodule(g);
    const auto fixed = h0(k, reg);
    FpMatrix rows(0, reg.dim(), g->prime());
    for (const auto& v : fixed.representatives) rows.append_row(v);
    const Subspace fixed_space = Subspace::span(std::move(rows));
    const Subspace norm_span = submodule_generated(reg, Side::right, {norm_element(k).vector});
    const auto index = static_cast<std::size_t>(g->order() / k.order());
    return {fixed_space == norm_span && fixed_space.dim() == index, fixed_space.dim(), index};
}

/// dim H^k(K, F_p[G]) = dim H^k(K, F_p[K]) . |K\G| for k in {0, 1}.
inline LemmaCheck check_shapiro_dims(const Subgroup& k, int degree)
{
    if (degree != 0 && degree != 1) throw PreconditionFailed("check_shapiro_dims: degree must be 0 or 1");
    const auto& g = k.parent;
    const auto sub = subgroup_as_group(k);
    auto hk = [degree](const GroupHom& act, const GModule& m) {
        return degree == 0 ? h0(act, m).dimension : h1(act, m).dimension;
    };
    const std::size_t lhs = hk(sub.inclusion, regular_bimodule(g));
    const std::size_t local = hk(identity_hom(sub.group), regular_bimodule(sub.group));
    const std::size_t rhs = local * static_cast<std::size_t>(g->order() / k.order());
    return {lhs == rhs, lhs, rhs};
}

} // namespace endsbench
