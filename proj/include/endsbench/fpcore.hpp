#pragma once
// Finite p-groups as multiplication tables over dense element indices.
//
// Element 0 is always the identity. Every element carries a normal-form word
// in the distinguished generators, found by breadth-first closure from the
// identity (element = parent * generator).

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace endsbench {

/// Catalog descriptor: type name plus integer parameters, or factor specs for
/// direct products. Table groups carry type "table".
struct GroupSpec {
    std::string type;
    std::vector<int> params;
    std::vector<GroupSpec> factors;

    bool operator==(const GroupSpec&) const = default;
};

inline constexpr int kMaxGroupOrder = 256;

inline bool is_prime(int n)
{
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_power_of(int n, int p)
{
    if (n < 1) return false;
    while (n % p == 0) n /= p;
    return n == 1;
}

class FiniteGroup {
public:
    /// Builds and validates a group from a row-major table. Associativity is
    /// checked exhaustively when `check_associativity` is set.
    FiniteGroup(int prime, int order, std::vector<int> table, std::vector<int> generators,
                GroupSpec spec, bool check_associativity = true)
        : prime_(prime), order_(order), table_(std::move(table)), generators_(std::move(generators)),
          spec_(std::move(spec))
    {
        validate(check_associativity);
        build_words();
        build_orders();
    }

    int prime() const { return prime_; }
    int order() const { return order_; }
    static constexpr int identity() { return 0; }
    int mult(int a, int b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
    int inverse(int a) const { return inverses_[static_cast<std::size_t>(a)]; }
    int conjugate(int t, int x) const { return mult(mult(t, x), inverse(t)); }
    const std::vector<int>& generators() const { return generators_; }
    const std::vector<int>& table() const { return table_; }
    const GroupSpec& spec() const { return spec_; }

    /// Normal-form word: indices into generators(), read left to right.
    const std::vector<int>& word(int e) const { return words_[static_cast<std::size_t>(e)]; }
    /// Breadth-first parent and the generator index that reaches e from it.
    int parent(int e) const { return parent_[static_cast<std::size_t>(e)]; }
    int via(int e) const { return via_[static_cast<std::size_t>(e)]; }
    /// Elements in breadth-first discovery order (identity first).
    const std::vector<int>& bfs_order() const { return bfs_order_; }

    int element_order(int e) const { return element_orders_[static_cast<std::size_t>(e)]; }
    int exponent() const { return *std::max_element(element_orders_.begin(), element_orders_.end()); }

    int power(int e, int k) const
    {
        int r = identity();
        for (int i = 0; i < k; ++i) r = mult(r, e);
        return r;
    }

    bool is_abelian() const
    {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                if (mult(a, b) != mult(b, a)) return false;
        return true;
    }

    bool is_associative() const
    {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b) {
                const int ab = mult(a, b);
                for (int c = 0; c < order_; ++c)
                    if (mult(ab, c) != mult(a, mult(b, c))) return false;
            }
        return true;
    }

private:
    void validate(bool check_associativity)
    {
        if (!is_prime(prime_)) throw SpecError("group prime must be prime");
        if (order_ < 1 || order_ > kMaxGroupOrder) throw SpecError("group order out of range");
        if (!is_power_of(order_, prime_)) throw SpecError("group order is not a power of its prime");
        if (table_.size() != static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_))
            throw SpecError("multiplication table has the wrong size");
        for (int x : table_)
            if (x < 0 || x >= order_) throw SpecError("multiplication table entry out of range");
        for (int a = 0; a < order_; ++a)
            if (mult(0, a) != a || mult(a, 0) != a) throw SpecError("element 0 is not the identity");
        // Latin square rows give inverses; columns checked via left inverse.
        inverses_.assign(static_cast<std::size_t>(order_), -1);
        for (int a = 0; a < order_; ++a) {
            for (int b = 0; b < order_; ++b)
                if (mult(a, b) == 0) {
                    inverses_[static_cast<std::size_t>(a)] = b;
                    break;
                }
            const int b = inverses_[static_cast<std::size_t>(a)];
            if (b < 0 || mult(b, a) != 0) throw SpecError("element has no two-sided inverse");
        }
        for (int g : generators_)
            if (g < 0 || g >= order_) throw SpecError("generator index out of range");
        if (check_associativity && !is_associative()) throw SpecError("multiplication is not associative");
    }

    void build_words()
    {
        const auto n = static_cast<std::size_t>(order_);
        parent_.assign(n, -1);
        via_.assign(n, -1);
        words_.assign(n, {});
        std::vector<bool> seen(n, false);
        seen[0] = true;
        bfs_order_ = {0};
        for (std::size_t head = 0; head < bfs_order_.size(); ++head) {
            const int a = bfs_order_[head];
            for (std::size_t i = 0; i < generators_.size(); ++i) {
                const int b = mult(a, generators_[i]);
                if (seen[static_cast<std::size_t>(b)]) continue;
                seen[static_cast<std::size_t>(b)] = true;
                parent_[static_cast<std::size_t>(b)] = a;
                via_[static_cast<std::size_t>(b)] = static_cast<int>(i);
                words_[static_cast<std::size_t>(b)] = words_[static_cast<std::size_t>(a)];
                words_[static_cast<std::size_t>(b)].push_back(static_cast<int>(i));
                bfs_order_.push_back(b);
            }
        }
        if (bfs_order_.size() != n) throw SpecError("generators do not generate the group");
    }

    void build_orders()
    {
        element_orders_.assign(static_cast<std::size_t>(order_), 1);
        for (int a = 0; a < order_; ++a) {
            int x = a, k = 1;
            while (x != 0) {
                x = mult(x, a);
                ++k;
            }
            element_orders_[static_cast<std::size_t>(a)] = k;
        }
    }

    int prime_;
    int order_;
    std::vector<int> table_;
    std::vector<int> generators_;
    GroupSpec spec_;
    std::vector<int> inverses_;
    std::vector<int> parent_, via_;
    std::vector<std::vector<int>> words_;
    std::vector<int> bfs_order_;
    std::vector<int> element_orders_;
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

// ---------------------------------------------------------------------------
// Catalog. Element encodings (documented in the README, relied on by input
// files):
//   cyclic(p,k)              g^i                 -> i
//   elementary_abelian(p,k)  (a_0..a_{k-1})      -> sum a_i p^i
//   dihedral8                r^a s^b             -> a + 4b
//   quaternion8              i^a j^b             -> a + 4b
//   heisenberg(p)            [[1,a,c],[0,1,b]]   -> a + p b + p^2 c
//   direct_product(A,B)      (x,y)               -> x + |A| y

namespace detail {

template <class Mul>
std::vector<int> tabulate(int n, Mul&& mul)
{
    std::vector<int> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a * n + b)] = mul(a, b);
    return t;
}

inline int ipow(int b, int e)
{
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline void require_prime(int p)
{
    if (!is_prime(p)) throw SpecError("catalog parameter p must be prime");
}

inline void require_order(long long n)
{
    if (n > kMaxGroupOrder) throw SpecError("catalog group exceeds the order cap of 256");
}

inline long long capped_pow(int b, int e)
{
    long long r = 1;
    for (int i = 0; i < e && r <= kMaxGroupOrder; ++i) r *= b;
    return r;
}

} // namespace detail

inline GroupRef cyclic(int p, int k)
{
    detail::require_prime(p);
    if (k < 0) throw SpecError("cyclic: negative exponent");
    detail::require_order(detail::capped_pow(p, k));
    const int n = detail::ipow(p, k);
    auto t = detail::tabulate(n, [n](int a, int b) { return (a + b) % n; });
    std::vector<int> gens;
    if (n > 1) gens.push_back(1);
    return std::make_shared<const FiniteGroup>(p, n, std::move(t), gens, GroupSpec{"cyclic", {p, k}, {}},
                                               false);
}

inline GroupRef elementary_abelian(int p, int k)
{
    detail::require_prime(p);
    if (k < 0) throw SpecError("elementary_abelian: negative rank");
    detail::require_order(detail::capped_pow(p, k));
    const int n = detail::ipow(p, k);
    auto t = detail::tabulate(n, [p, k](int a, int b) {
        int r = 0, place = 1;
        for (int i = 0; i < k; ++i) {
            r += ((a / place % p + b / place % p) % p) * place;
            place *= p;
        }
        return r;
    });
    std::vector<int> gens;
    for (int i = 0, place = 1; i < k; ++i, place *= p) gens.push_back(place);
    return std::make_shared<const FiniteGroup>(p, n, std::move(t), gens,
                                               GroupSpec{"elementary_abelian", {p, k}, {}}, false);
}

inline GroupRef dihedral8()
{
    // r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b+d)
    auto t = detail::tabulate(8, [](int x, int y) {
        const int a = x % 4, b = x / 4, c = y % 4, d = y / 4;
        const int e = ((a + (b ? -c : c)) % 4 + 4) % 4;
        return e + 4 * ((b + d) % 2);
    });
    return std::make_shared<const FiniteGroup>(2, 8, std::move(t), std::vector<int>{1, 4},
                                               GroupSpec{"dihedral8", {}, {}}, false);
}

inline GroupRef quaternion8()
{
    // j i j^-1 = i^-1, j^2 = i^2
    auto t = detail::tabulate(8, [](int x, int y) {
        const int a = x % 4, b = x / 4, c = y % 4, d = y / 4;
        int e = a + (b ? -c : c);
        int f = b + d;
        if (f == 2) {
            f = 0;
            e += 2;
        }
        return ((e % 4) + 4) % 4 + 4 * f;
    });
    return std::make_shared<const FiniteGroup>(2, 8, std::move(t), std::vector<int>{1, 4},
                                               GroupSpec{"quaternion8", {}, {}}, false);
}

inline GroupRef heisenberg(int p)
{
    detail::require_prime(p);
    detail::require_order(static_cast<long long>(p) * p * p);
    const int n = p * p * p;
    auto t = detail::tabulate(n, [p](int x, int y) {
        const int a = x % p, b = x / p % p, c = x / (p * p);
        const int a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
        return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
    });
    return std::make_shared<const FiniteGroup>(p, n, std::move(t), std::vector<int>{1, p},
                                               GroupSpec{"heisenberg", {p}, {}}, false);
}

inline GroupRef direct_product(const GroupRef& a, const GroupRef& b)
{
    if (a->prime() != b->prime()) throw SpecError("direct_product: factors have different primes");
    detail::require_order(static_cast<long long>(a->order()) * b->order());
    const int na = a->order();
    const int n = na * b->order();
    auto t = detail::tabulate(n, [&](int x, int y) {
        return a->mult(x % na, y % na) + na * b->mult(x / na, y / na);
    });
    std::vector<int> gens;
    for (int g : a->generators()) gens.push_back(g);
    for (int h : b->generators()) gens.push_back(na * h);
    return std::make_shared<const FiniteGroup>(a->prime(), n, std::move(t), gens,
                                               GroupSpec{"direct_product", {}, {a->spec(), b->spec()}}, false);
}

/// Builds a catalog group from its descriptor.
inline GroupRef make_group(const GroupSpec& spec)
{
    auto nparams = [&](std::size_t n) {
        if (spec.params.size() != n) throw SpecError(spec.type + ": expected " + std::to_string(n) + " parameters");
    };
    if (spec.type == "cyclic") {
        nparams(2);
        return cyclic(spec.params[0], spec.params[1]);
    }
    if (spec.type == "elementary_abelian") {
        nparams(2);
        return elementary_abelian(spec.params[0], spec.params[1]);
    }
    if (spec.type == "dihedral8") {
        nparams(0);
        return dihedral8();
    }
    if (spec.type == "quaternion8") {
        nparams(0);
        return quaternion8();
    }
    if (spec.type == "heisenberg") {
        nparams(1);
        return heisenberg(spec.params[0]);
    }
    if (spec.type == "direct_product") {
        if (spec.factors.size() != 2) throw SpecError("direct_product: expected two factors");
        return direct_product(make_group(spec.factors[0]), make_group(spec.factors[1]));
    }
    throw SpecError("unknown group type '" + spec.type + "'");
}

inline GroupRef table_group(int prime, std::vector<std::vector<int>> rows, std::vector<int> generators)
{
    const int n = static_cast<int>(rows.size());
    std::vector<int> t;
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != n) throw SpecError("table rows must be square");
        t.insert(t.end(), r.begin(), r.end());
    }
    return std::make_shared<const FiniteGroup>(prime, n, std::move(t), std::move(generators),
                                               GroupSpec{"table", {}, {}}, true);
}

/// Catalog groups of p-power order at most `max_order`, ordered by order and
/// then by construction. Includes the trivial group and direct products of two
/// basic catalog groups.
inline std::vector<GroupRef> catalog_groups(int p, int max_order, bool include_trivial = true)
{
    std::vector<GroupRef> basic;
    for (int k = 1, n = p; n <= max_order; ++k, n *= p) basic.push_back(cyclic(p, k));
    for (int k = 2, n = p * p; n <= max_order; ++k, n *= p) basic.push_back(elementary_abelian(p, k));
    if (p == 2 && max_order >= 8) {
        basic.push_back(dihedral8());
        basic.push_back(quaternion8());
    }
    if (p * p * p <= max_order) basic.push_back(heisenberg(p));

    std::vector<GroupRef> all;
    if (include_trivial) all.push_back(cyclic(p, 0));
    all.insert(all.end(), basic.begin(), basic.end());
    for (std::size_t i = 0; i < basic.size(); ++i)
        for (std::size_t j = i; j < basic.size(); ++j)
            if (basic[i]->order() * basic[j]->order() <= max_order)
                all.push_back(direct_product(basic[i], basic[j]));
    std::stable_sort(all.begin(), all.end(),
                     [](const GroupRef& a, const GroupRef& b) { return a->order() < b->order(); });
    return all;
}

// ---------------------------------------------------------------------------

struct GroupHom {
    GroupRef source;
    GroupRef target;
    std::vector<int> image;

    int operator()(int e) const { return image[static_cast<std::size_t>(e)]; }
};

/// Extends generator images along normal-form words, then checks the
/// homomorphism identity on every pair of source elements.
inline GroupHom hom_from_images(const GroupRef& src, const GroupRef& dst, const std::vector<int>& gen_images)
{
    if (gen_images.size() != src->generators().size())
        throw ImagesInconsistent("hom_from_images: need exactly one image per source generator");
    for (int x : gen_images)
        if (x < 0 || x >= dst->order()) throw ImagesInconsistent("hom_from_images: image index out of range");
    std::vector<int> image(static_cast<std::size_t>(src->order()), 0);
    for (int e : src->bfs_order()) {
        if (e == 0) continue;
        image[static_cast<std::size_t>(e)] =
            dst->mult(image[static_cast<std::size_t>(src->parent(e))], gen_images[static_cast<std::size_t>(src->via(e))]);
    }
    for (int a = 0; a < src->order(); ++a)
        for (int b = 0; b < src->order(); ++b)
            if (image[static_cast<std::size_t>(src->mult(a, b))] !=
                dst->mult(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)]))
                throw ImagesInconsistent("hom_from_images: generator images do not extend to a homomorphism");
    return {src, dst, std::move(image)};
}

/// Cheaper extension used inside searches: checking f(a s) = f(a) f(s) for
/// every element a and generator s is equivalent to the full pairwise check.
inline std::optional<std::vector<int>> try_extend_hom(const FiniteGroup& src, const FiniteGroup& dst,
                                                      const std::vector<int>& gen_images)
{
    std::vector<int> image(static_cast<std::size_t>(src.order()), 0);
    for (int e : src.bfs_order()) {
        if (e == 0) continue;
        image[static_cast<std::size_t>(e)] =
            dst.mult(image[static_cast<std::size_t>(src.parent(e))], gen_images[static_cast<std::size_t>(src.via(e))]);
    }
    const auto& gens = src.generators();
    for (int a = 0; a < src.order(); ++a)
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (image[static_cast<std::size_t>(src.mult(a, gens[i]))] !=
                dst.mult(image[static_cast<std::size_t>(a)], gen_images[i]))
                return std::nullopt;
    return image;
}

inline bool is_injective(const GroupHom& h)
{
    std::vector<bool> hit(static_cast<std::size_t>(h.target->order()), false);
    for (int x : h.image) {
        if (hit[static_cast<std::size_t>(x)]) return false;
        hit[static_cast<std::size_t>(x)] = true;
    }
    return true;
}

inline bool is_bijective(const GroupHom& h)
{
    return h.source->order() == h.target->order() && is_injective(h);
}

inline std::vector<int> kernel(const GroupHom& h)
{
    std::vector<int> k;
    for (int a = 0; a < h.source->order(); ++a)
        if (h(a) == 0) k.push_back(a);
    return k;
}

inline GroupHom compose(const GroupHom& outer, const GroupHom& inner)
{
    if (inner.target.get() != outer.source.get() && inner.target->table() != outer.source->table())
        throw DimensionMismatch("compose: inner target differs from outer source");
    std::vector<int> img(inner.image.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = outer(inner.image[i]);
    return {inner.source, outer.target, std::move(img)};
}

inline GroupHom inverse_iso(const GroupHom& h)
{
    if (!is_bijective(h)) throw PreconditionFailed("inverse_iso: map is not bijective");
    std::vector<int> img(h.image.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[static_cast<std::size_t>(h.image[i])] = static_cast<int>(i);
    return {h.target, h.source, std::move(img)};
}

inline GroupHom identity_hom(const GroupRef& g)
{
    std::vector<int> img(static_cast<std::size_t>(g->order()));
    for (int i = 0; i < g->order(); ++i) img[static_cast<std::size_t>(i)] = i;
    return {g, g, std::move(img)};
}

// ---------------------------------------------------------------------------

struct Subgroup {
    GroupRef parent;
    std::vector<int> elements; // sorted

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int e) const { return std::binary_search(elements.begin(), elements.end(), e); }
    bool operator==(const Subgroup& o) const { return elements == o.elements && parent == o.parent; }
};

inline Subgroup subgroup_generated(const GroupRef& g, const std::vector<int>& seeds)
{
    for (int s : seeds)
        if (s < 0 || s >= g->order()) throw SpecError("subgroup_generated: seed index out of range");
    std::vector<bool> in(static_cast<std::size_t>(g->order()), false);
    std::vector<int> queue{0};
    in[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (int s : seeds) {
            const int x = g->mult(queue[head], s);
            if (!in[static_cast<std::size_t>(x)]) {
                in[static_cast<std::size_t>(x)] = true;
                queue.push_back(x);
            }
        }
    std::sort(queue.begin(), queue.end());
    return {g, std::move(queue)};
}

inline Subgroup image_subgroup(const GroupHom& h)
{
    std::vector<int> e(h.image);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return {h.target, std::move(e)};
}

/// All subgroups, by repeatedly adjoining one element to known subgroups.
inline std::vector<Subgroup> all_subgroups(const GroupRef& g)
{
    std::vector<Subgroup> subs{subgroup_generated(g, {})};
    for (std::size_t i = 0; i < subs.size(); ++i) {
        for (int x = 0; x < g->order(); ++x) {
            if (subs[i].contains(x)) continue;
            auto seeds = subs[i].elements;
            seeds.push_back(x);
            Subgroup s = subgroup_generated(g, seeds);
            if (std::none_of(subs.begin(), subs.end(), [&](const Subgroup& t) { return t.elements == s.elements; }))
                subs.push_back(std::move(s));
        }
    }
    std::stable_sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
    return subs;
}

/// A subgroup as a standalone group together with its inclusion map.
struct EmbeddedGroup {
    GroupRef group;
    GroupHom inclusion;
};

inline EmbeddedGroup subgroup_as_group(const Subgroup& h)
{
    const auto& parent = *h.parent;
    const int n = h.order();
    std::vector<int> local(static_cast<std::size_t>(parent.order()), -1);
    for (int i = 0; i < n; ++i) local[static_cast<std::size_t>(h.elements[static_cast<std::size_t>(i)])] = i;
    std::vector<int> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[static_cast<std::size_t>(a * n + b)] =
                local[static_cast<std::size_t>(parent.mult(h.elements[static_cast<std::size_t>(a)], h.elements[static_cast<std::size_t>(b)]))];
    // greedy generating set in element order
    std::vector<int> gens_parent, gens_local;
    Subgroup cur = subgroup_generated(h.parent, {});
    for (int x : h.elements) {
        if (cur.contains(x)) continue;
        gens_parent.push_back(x);
        gens_local.push_back(local[static_cast<std::size_t>(x)]);
        cur = subgroup_generated(h.parent, gens_parent);
    }
    auto g = std::make_shared<const FiniteGroup>(parent.prime(), n, std::move(t), gens_local,
                                                 GroupSpec{"table", {}, {}}, false);
    return {g, GroupHom{g, h.parent, h.elements}};
}

/// Right cosets K x of a subgroup: coset id per element and a representative
/// (smallest element) per coset.
struct CosetTable {
    std::vector<int> coset_of;
    std::vector<int> representative;
};

inline CosetTable right_cosets(const Subgroup& k)
{
    const auto& g = *k.parent;
    CosetTable t;
    t.coset_of.assign(static_cast<std::size_t>(g.order()), -1);
    for (int x = 0; x < g.order(); ++x) {
        if (t.coset_of[static_cast<std::size_t>(x)] >= 0) continue;
        const int id = static_cast<int>(t.representative.size());
        t.representative.push_back(x);
        for (int kk : k.elements) t.coset_of[static_cast<std::size_t>(g.mult(kk, x))] = id;
    }
    return t;
}

/// Frattini subgroup of a p-group: generated by p-th powers and commutators.
inline Subgroup frattini_subgroup(const GroupRef& g)
{
    std::vector<int> seeds;
    for (int x = 0; x < g->order(); ++x) seeds.push_back(g->power(x, g->prime()));
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            seeds.push_back(g->mult(g->mult(a, b), g->mult(g->inverse(a), g->inverse(b))));
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return subgroup_generated(g, seeds);
}

} // namespace endsbench
