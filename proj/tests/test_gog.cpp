#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace endsbench;

namespace {

struct EdgeSpec {
    int d0, d1;
    GroupRef group;
    std::vector<int> img0, img1;
};

GraphOfGroups build(int prime, std::vector<GroupRef> vertices, std::vector<EdgeSpec> edges)
{
    GraphOfGroups g;
    g.prime = prime;
    g.graph.vertex_count = static_cast<int>(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) g.vertex_ids.push_back("v" + std::to_string(v));
    g.vertex_groups = vertices;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& s = edges[e];
        g.graph.edges.push_back({s.d0, s.d1});
        g.edge_ids.push_back("e" + std::to_string(e));
        g.edge_groups.push_back(s.group);
        g.inj0.push_back(hom_from_images(s.group, vertices[static_cast<std::size_t>(s.d0)], s.img0));
        g.inj1.push_back(hom_from_images(s.group, vertices[static_cast<std::size_t>(s.d1)], s.img1));
    }
    return g;
}

GraphOfGroups bouquet(int r, int p = 2)
{
    std::vector<EdgeSpec> es(static_cast<std::size_t>(r), EdgeSpec{0, 0, cyclic(p, 0), {}, {}});
    return build(p, {cyclic(p, 0)}, es);
}

} // namespace

TEST_CASE("reducedness")
{
    CHECK(validate(bouquet(1)).reduced);
    const auto c2 = cyclic(2, 1), c4 = cyclic(2, 2);
    const auto iso = build(2, {c2, c2}, {{0, 1, c2, {1}, {1}}});
    CHECK_FALSE(validate(iso).reduced);
    const auto amalg = build(2, {c4, c4}, {{0, 1, c2, {2}, {2}}});
    CHECK(validate(amalg).reduced);
    CHECK(validate(amalg).connected);
    CHECK_FALSE(validate(build(2, {c2, c2}, {})).connected);
}

TEST_CASE("structural errors name the edge")
{
    auto g = oracle::fixture("c4_amalg_c4_over_c2");
    g.inj1[0].image = {0, 0};
    try {
        check_structure(g);
        FAIL("expected an InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("edge e") != std::string::npos);
        CHECK(e.pointer == "/edges/0/inj1");
    }
    auto h = oracle::fixture("c4_amalg_c4_over_c2");
    h.vertex_groups[1] = cyclic(2, 1);
    CHECK_THROWS_AS(check_structure(h), InputError);
}

TEST_CASE("collapsing an isomorphism edge")
{
    const auto c2 = cyclic(2, 1), c4 = cyclic(2, 2);
    const auto g = build(2, {c2, c2, c4}, {{0, 1, c2, {1}, {1}}, {1, 2, c2, {1}, {2}}, {0, 0, cyclic(2, 0), {}, {}}});
    const auto h = collapse_iso_edge(g, 0);
    CHECK(h.vertex_count() == 2);
    CHECK(h.edge_count() == 2);
    CHECK(b1(h) == b1(g));
    // the C2 -> C2 side of the remaining tree edge is still an isomorphism
    CHECK_FALSE(validate(h).reduced);
    const auto r = collapse_iso_edge(h, *first_iso_edge(h));
    CHECK(r.vertex_count() == 1);
    CHECK(validate(r).reduced);
    CHECK(b1(r) == b1(g));
    CHECK_THROWS_AS(collapse_iso_edge(g, 2), PreconditionFailed);
    CHECK_THROWS_AS(collapse_iso_edge(g, 7), PreconditionFailed);
}

TEST_CASE("reduction reaches a fixpoint and preserves b1")
{
    for (const auto& name : oracle::nonreduced_fixtures()) {
        INFO(name);
        const auto g = oracle::fixture(name);
        REQUIRE_FALSE(validate(g).reduced);
        const auto r = reduce_fully(g);
        CHECK(validate(r).reduced);
        CHECK(b1(r) == b1(g));
        CHECK(r.edge_count() < g.edge_count());
        CHECK(g.vertex_count() - r.vertex_count() == g.edge_count() - r.edge_count());
    }
}

TEST_CASE("presentations")
{
    const auto b = presentation(bouquet(3));
    CHECK(b.generators.size() == 3);
    CHECK(b.relators.empty());

    const auto c2 = cyclic(2, 1);
    const auto free_prod = presentation(build(2, {c2, c2}, {{0, 1, cyclic(2, 0), {}, {}}}));
    // a, b, t_e with relators a^2, b^2, t_e
    CHECK(free_prod.generators == std::vector<std::string>{"v0.0", "v1.0", "t_e0"});
    REQUIRE(free_prod.relators.size() == 3);
    CHECK(free_prod.relators[0] == Word{{0, 1}, {0, 1}});
    CHECK(free_prod.relators[1] == Word{{1, 1}, {1, 1}});
    CHECK(free_prod.relators[2] == Word{{2, 1}});

    const auto loop = presentation(build(2, {c2}, {{0, 0, cyclic(2, 0), {}, {}}}));
    CHECK(loop.generators.size() == 2);
    REQUIRE(loop.relators.size() == 1);
    CHECK(loop.relators[0] == Word{{0, 1}, {0, 1}});
}

TEST_CASE("presentation counts on the corpus")
{
    for (const auto& name : oracle::reduced_fixtures()) {
        INFO(name);
        const auto g = oracle::fixture(name);
        const auto pr = presentation(g);
        std::size_t gens = static_cast<std::size_t>(g.edge_count());
        for (const auto& v : g.vertex_groups) gens += v->generators().size();
        CHECK(pr.generators.size() == gens);
        std::size_t tree = 0, killed = 0;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (!pr.subtree[static_cast<std::size_t>(e)]) continue;
            ++tree;
            const Word t{{pr.stable_letter[static_cast<std::size_t>(e)], 1}};
            killed += std::count(pr.relators.begin(), pr.relators.end(), t) > 0;
        }
        CHECK(tree == static_cast<std::size_t>(g.vertex_count() - 1));
        CHECK(killed == tree);
        for (const auto& r : pr.relators)
            for (const auto& l : r) CHECK(static_cast<std::size_t>(l.gen) < pr.generators.size());
    }
}

TEST_CASE("mod-p Betti numbers")
{
    for (int r = 1; r <= 4; ++r) CHECK(b1(bouquet(r)) == r);
    const auto c2 = cyclic(2, 1);
    CHECK(b1(build(2, {c2, c2}, {{0, 1, cyclic(2, 0), {}, {}}})) == 2);
    CHECK(b1(build(2, {cyclic(2, 2)}, {})) == 1);
    CHECK(b1(build(2, {elementary_abelian(2, 3)}, {})) == 3);
    CHECK(b1(build(3, {cyclic(3, 2)}, {})) == 1);
    CHECK(b1(build(2, {dihedral8()}, {})) == 2);
    // Q8 HNN with i -> i^3 and a free stable letter: abelianisation mod 2 has rank 3
    CHECK(b1(oracle::fixture("q8_hnn_c4")) == 3);
}

TEST_CASE("b1 via cohomology of a finite vertex group")
{
    // single vertex: b1 = dim H^1(G, F_p) with trivial coefficients
    for (const auto& g : catalog_groups(2, 16, false)) {
        const auto gog = build(2, {g}, {});
        CHECK(static_cast<std::size_t>(b1(gog)) == h1(identity_hom(g), trivial_module(g, 1)).dimension);
    }
}

TEST_CASE("leaf bound")
{
    CHECK(leaf_bound(build(2, {cyclic(2, 0)}, {})) == 0);
    const auto t = cyclic(2, 0);
    CHECK(leaf_bound(build(2, {t, t, t}, {{0, 1, t, {}, {}}, {1, 2, t, {}, {}}})) == 2);
    CHECK(leaf_bound(bouquet(2)) == 2);
    for (const auto& name : oracle::reduced_fixtures()) {
        INFO(name);
        const auto g = oracle::fixture(name);
        CHECK(b1(g) >= leaf_bound(g));
    }
}

TEST_CASE("proper quotient search")
{
    const auto c2 = cyclic(2, 1), c4 = cyclic(2, 2);
    const auto loop = proper_quotient_search(bouquet(1), 16);
    CHECK(loop.quotient->order() == 2);
    CHECK(loop.stable_images[0] == 1);
    const auto trivial = find_proper_quotient(bouquet(1), 1, 16);
    REQUIRE(trivial);
    CHECK(trivial->quotient->order() == 1);
    CHECK_THROWS_AS(proper_quotient_search(build(2, {cyclic(2, 0)}, {}), 256), NotFoundWithinBound);

    const auto free_prod = build(2, {c2, c2}, {{0, 1, cyclic(2, 0), {}, {}}});
    const auto w4 = find_proper_quotient(free_prod, 4, 4);
    REQUIRE(w4);
    CHECK(w4->quotient->spec().type == "elementary_abelian");
    CHECK(w4->vertex_maps[0](1) != w4->vertex_maps[1](1));

    const auto amalg = oracle::fixture("c4_amalg_c4_over_c2");
    const auto w8 = find_proper_quotient(amalg, 8, 8);
    REQUIRE(w8);
    CHECK(w8->quotient->order() == 8);
    CHECK_FALSE(witness_problem(amalg, *w8));
    CHECK(witness_is_surjective(*w8));
    CHECK(proper_quotient_search(amalg, 64).quotient->order() == 4);
    CHECK(proper_quotient_search(free_prod, 64).quotient->order() == 2);

    // D8 and Q8 only embed jointly in catalog groups of order 64
    CHECK_THROWS_AS(proper_quotient_search(oracle::fixture("d8_free_q8"), 32), NotFoundWithinBound);
}

TEST_CASE("witness verification catches tampering")
{
    const auto g = oracle::fixture("hnn_c4_over_c2");
    auto w = proper_quotient_search(g, 16);
    REQUIRE_FALSE(witness_problem(g, w));
    auto bad = w;
    bad.vertex_maps[0].image.assign(4, 0);
    CHECK(witness_problem(g, bad));
    auto bad_t = w;
    bad_t.stable_images.clear();
    CHECK(witness_problem(g, bad_t));

    const auto tree = oracle::fixture("c2_free_c2");
    auto wt = proper_quotient_search(tree, 16);
    wt.stable_images[0] = 1;
    CHECK(witness_problem(tree, wt));
}

TEST_CASE("every corpus witness re-verifies and has a free kernel")
{
    for (const auto& name : oracle::reduced_fixtures()) {
        INFO(name);
        const auto g = oracle::fixture(name);
        const auto w = proper_quotient_search(g, 64);
        CHECK_FALSE(witness_problem(g, w));
        const auto r = free_kernel_rank(g, w);
        CHECK(r >= 0);
    }
}

TEST_CASE("free kernel ranks")
{
    for (int r = 1; r <= 3; ++r) {
        const auto w = find_proper_quotient(bouquet(r), 1, 1);
        REQUIRE(w);
        CHECK(free_kernel_rank(bouquet(r), *w) == r);
    }
    const auto c2 = cyclic(2, 1);
    const auto free_prod = build(2, {c2, c2}, {{0, 1, cyclic(2, 0), {}, {}}});
    CHECK(free_kernel_rank(free_prod, *find_proper_quotient(free_prod, 4, 4)) == 1);
    const auto amalg = oracle::fixture("c4_amalg_c4_over_c2");
    CHECK(free_kernel_rank(amalg, *find_proper_quotient(amalg, 8, 8)) == 1);

    // a non-surjective witness is rejected
    const auto big = find_proper_quotient(free_prod, 8, 8, false);
    REQUIRE(big);
    if (!witness_is_surjective(*big)) CHECK_THROWS_AS(free_kernel_rank(free_prod, *big), PreconditionFailed);
}

TEST_CASE("normalising a witness trivialises tree edges")
{
    const auto g = oracle::fixture("path_c4_c4_c4");
    auto w = proper_quotient_search(g, 16);
    const auto& p = *w.quotient;
    // conjugate the middle vertex and shift both tree letters to match
    const int c = p.generators().back();
    for (auto& x : w.vertex_maps[1].image) x = p.conjugate(c, x);
    w.stable_images[0] = p.inverse(c);
    w.stable_images[1] = c;
    REQUIRE(witness_problem(g, w)); // tree letters no longer trivial
    const auto n = normalize_witness(g, w);
    CHECK_FALSE(witness_problem(g, n));
}

TEST_CASE("witnesses transport through collapses")
{
    for (const auto& name : oracle::nonreduced_fixtures()) {
        INFO(name);
        auto g = oracle::fixture(name);
        auto w = proper_quotient_search(g, 64);
        while (auto e = first_iso_edge(g)) {
            w = transport_witness(g, *e, w);
            g = collapse_iso_edge(g, *e);
            CHECK_FALSE(witness_problem(g, w));
            CHECK(witness_is_surjective(w));
        }
    }
}
