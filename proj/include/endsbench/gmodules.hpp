#pragma once
// Finite-dimensional modules over F_p[P] for a finite p-group P.
//
// Action matrices act on column coordinate vectors. A left action satisfies
// A(gh) = A(g) A(h); a right action (v -> v.g) satisfies A(gh) = A(h) A(g).

#include <optional>
#include <vector>

#include "fpcore.hpp"
#include "fplinalg.hpp"

namespace endsbench {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

class GModule {
public:
    GModule(GroupRef group, std::size_t dim, std::optional<std::vector<FpMatrix>> left,
            std::optional<std::vector<FpMatrix>> right, bool check_invertible = true)
        : group_(std::move(group)), dim_(dim), left_(std::move(left)), right_(std::move(right))
    {
        check_side(left_, check_invertible);
        check_side(right_, check_invertible);
    }

    const GroupRef& group() const { return group_; }
    std::size_t dim() const { return dim_; }
    int prime() const { return group_->prime(); }
    bool has_action(Side s) const { return s == Side::left ? left_.has_value() : right_.has_value(); }

    /// Generator action matrices, one per group generator.
    const std::vector<FpMatrix>& action(Side s) const
    {
        const auto& a = s == Side::left ? left_ : right_;
        if (!a) throw PreconditionFailed(std::string("module has no ") + to_string(s) + " action");
        return *a;
    }

    /// Action matrices for every element, derived from normal-form words.
    std::vector<FpMatrix> element_actions(Side s) const
    {
        const auto& gens = action(s);
        std::vector<FpMatrix> all(static_cast<std::size_t>(group_->order()));
        all[0] = FpMatrix::identity(dim_, prime());
        for (int e : group_->bfs_order()) {
            if (e == 0) continue;
            const auto& par = all[static_cast<std::size_t>(group_->parent(e))];
            const auto& g = gens[static_cast<std::size_t>(group_->via(e))];
            all[static_cast<std::size_t>(e)] = s == Side::left ? par * g : g * par;
        }
        return all;
    }

    FpMatrix element_action(Side s, int e) const
    {
        const auto& gens = action(s);
        FpMatrix a = FpMatrix::identity(dim_, prime());
        for (int i : group_->word(e)) a = s == Side::left ? a * gens[static_cast<std::size_t>(i)] : gens[static_cast<std::size_t>(i)] * a;
        return a;
    }

private:
    void check_side(const std::optional<std::vector<FpMatrix>>& a, bool check_invertible) const
    {
        if (!a) return;
        if (a->size() != group_->generators().size())
            throw DimensionMismatch("GModule: need one action matrix per group generator");
        for (const auto& m : *a) {
            if (m.rows() != dim_ || m.cols() != dim_ || m.prime() != prime())
                throw DimensionMismatch("GModule: action matrix has the wrong shape");
            if (check_invertible && rank(m) != dim_) throw PreconditionFailed("GModule: action matrix is not invertible");
        }
    }

    GroupRef group_;
    std::size_t dim_;
    std::optional<std::vector<FpMatrix>> left_, right_;
};

/// Exhaustive check that the generator actions define a representation of the
/// whole group (every table entry), and that present left/right actions commute.
inline bool respects_relations(const GModule& m)
{
    const auto& g = *m.group();
    for (Side s : {Side::left, Side::right}) {
        if (!m.has_action(s)) continue;
        const auto all = m.element_actions(s);
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b) {
                const auto& ab = all[static_cast<std::size_t>(g.mult(a, b))];
                const auto& A = all[static_cast<std::size_t>(a)];
                const auto& B = all[static_cast<std::size_t>(b)];
                if (ab != (s == Side::left ? A * B : B * A)) return false;
            }
    }
    if (m.has_action(Side::left) && m.has_action(Side::right))
        for (const auto& l : m.action(Side::left))
            for (const auto& r : m.action(Side::right))
                if (l * r != r * l) return false;
    return true;
}

namespace detail {

inline FpMatrix permutation_matrix(const std::vector<int>& image, int p)
{
    FpMatrix m(image.size(), image.size(), p);
    for (std::size_t x = 0; x < image.size(); ++x) m.set(static_cast<std::size_t>(image[x]), x, 1);
    return m;
}

} // namespace detail

/// F_p[P] with left and right multiplication on the basis of group elements.
inline GModule regular_bimodule(const GroupRef& p)
{
    std::vector<FpMatrix> left, right;
    const int n = p->order();
    for (int g : p->generators()) {
        std::vector<int> l(static_cast<std::size_t>(n)), r(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            l[static_cast<std::size_t>(x)] = p->mult(g, x);
            r[static_cast<std::size_t>(x)] = p->mult(x, g);
        }
        left.push_back(detail::permutation_matrix(l, p->prime()));
        right.push_back(detail::permutation_matrix(r, p->prime()));
    }
    return GModule(p, static_cast<std::size_t>(n), std::move(left), std::move(right), false);
}

inline GModule trivial_module(const GroupRef& p, std::size_t dim)
{
    std::vector<FpMatrix> id(p->generators().size(), FpMatrix::identity(dim, p->prime()));
    return GModule(p, dim, id, id);
}

/// F_p[K\P]: right action of P permuting right cosets K x.
inline GModule permutation_module(const Subgroup& k)
{
    const auto& p = k.parent;
    const auto cosets = right_cosets(k);
    const std::size_t n = cosets.representative.size();
    std::vector<FpMatrix> right;
    for (int g : p->generators()) {
        std::vector<int> img(n);
        for (std::size_t c = 0; c < n; ++c)
            img[c] = cosets.coset_of[static_cast<std::size_t>(p->mult(cosets.representative[c], g))];
        right.push_back(detail::permutation_matrix(img, p->prime()));
    }
    return GModule(p, n, std::nullopt, std::move(right), false);
}

inline GModule direct_sum(const GModule& a, const GModule& b)
{
    if (a.group() != b.group()) throw DimensionMismatch("direct_sum: modules over different groups");
    const std::size_t n = a.dim() + b.dim();
    auto block = [&](Side s) -> std::optional<std::vector<FpMatrix>> {
        if (!a.has_action(s) || !b.has_action(s)) return std::nullopt;
        std::vector<FpMatrix> out;
        for (std::size_t i = 0; i < a.action(s).size(); ++i) {
            FpMatrix m(n, n, a.prime());
            const auto& x = a.action(s)[i];
            const auto& y = b.action(s)[i];
            for (std::size_t r = 0; r < a.dim(); ++r)
                for (std::size_t c = 0; c < a.dim(); ++c) m.set(r, c, x(r, c));
            for (std::size_t r = 0; r < b.dim(); ++r)
                for (std::size_t c = 0; c < b.dim(); ++c) m.set(a.dim() + r, a.dim() + c, y(r, c));
            out.push_back(std::move(m));
        }
        return out;
    };
    return GModule(a.group(), n, block(Side::left), block(Side::right));
}

/// Smallest subspace containing the seeds and closed under the chosen action.
inline Subspace submodule_generated(const GModule& m, Side side, const std::vector<FpVector>& seeds)
{
    Subspace s(m.dim(), m.prime());
    std::vector<FpVector> queue;
    for (const auto& v : seeds) {
        if (v.size() != m.dim()) throw DimensionMismatch("submodule_generated: seed length");
        if (s.insert(v)) queue.push_back(v);
    }
    const auto& gens = m.action(side);
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (const auto& a : gens) {
            FpVector w = a.apply(queue[head]);
            if (s.insert(w)) queue.push_back(std::move(w));
        }
    return s;
}

/// M / sub, with the quotient basis given by the non-pivot coordinates of
/// sub's echelon basis. Only the chosen side is carried over.
inline GModule quotient_module(const GModule& m, Side side, const Subspace& sub)
{
    if (sub.ambient_dim() != m.dim()) throw DimensionMismatch("quotient_module: ambient mismatch");
    std::vector<bool> is_pivot(m.dim(), false);
    for (auto c : sub.pivots()) is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.dim(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    for (const auto& a : m.action(side))
        for (std::size_t i = 0; i < sub.dim(); ++i)
            if (!sub.contains(a.apply(sub.basis().row(i))))
                throw PreconditionFailed("quotient_module: subspace is not action-stable");
    std::vector<FpMatrix> acts;
    for (const auto& a : m.action(side)) {
        FpMatrix q(free.size(), free.size(), m.prime());
        for (std::size_t c = 0; c < free.size(); ++c) {
            FpVector e(m.dim(), 0);
            e[free[c]] = 1;
            const FpVector img = a.apply(e);
            const FpVector r = sub.reduce(img);
            for (std::size_t k = 0; k < free.size(); ++k) q.set(k, c, r[free[k]]);
        }
        acts.push_back(std::move(q));
    }
    if (side == Side::left) return GModule(m.group(), free.size(), std::move(acts), std::nullopt);
    return GModule(m.group(), free.size(), std::nullopt, std::move(acts));
}

struct NormVector {
    Subgroup subgroup;
    FpVector vector;
};

/// N_K = sum of the elements of K, as a coordinate vector in F_p[P].
inline NormVector norm_element(const Subgroup& k)
{
    FpVector v(static_cast<std::size_t>(k.parent->order()), 0);
    for (int x : k.elements) v[static_cast<std::size_t>(x)] = 1;
    return {k, std::move(v)};
}

/// Span of { m.(g - 1) : m in M, g a generator }, i.e. M times the augmentation ideal.
inline Subspace augmentation_image(const GModule& m, Side side)
{
    FpMatrix rows(0, m.dim(), m.prime());
    for (const auto& a : m.action(side)) {
        const FpMatrix d = a - FpMatrix::identity(m.dim(), m.prime());
        const FpMatrix dt = d.transpose(); // columns of d are images of basis vectors
        for (std::size_t i = 0; i < dt.rows(); ++i) rows.append_row(dt.row(i));
    }
    return Subspace::span(std::move(rows));
}

/// Minimal number of generators: F_p[P] is local with maximal ideal the
/// augmentation ideal, so this is dim M / M.I_P.
inline std::size_t min_generators(const GModule& m, Side side = Side::right)
{
    return m.dim() - augmentation_image(m, side).dim();
}

} // namespace endsbench
