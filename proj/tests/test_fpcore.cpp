#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace endsbench;

TEST_CASE("catalog orders, exponents and commutativity")
{
    CHECK(cyclic(2, 1)->order() == 2);
    CHECK(cyclic(2, 1)->generators().size() == 1);
    CHECK(cyclic(2, 2)->order() == 4);
    CHECK(cyclic(2, 2)->element_order(cyclic(2, 2)->generators()[0]) == 4);
    CHECK(cyclic(3, 0)->order() == 1);

    const auto h = heisenberg(3);
    CHECK(h->order() == 27);
    CHECK(h->exponent() == 3);
    CHECK_FALSE(h->is_abelian());
    for (int x = 0; x < 27; ++x) CHECK(h->power(x, 3) == 0);
    const auto& g = h->generators();
    CHECK(h->mult(g[0], g[1]) != h->mult(g[1], g[0]));

    CHECK(dihedral8()->exponent() == 4);
    CHECK_FALSE(dihedral8()->is_abelian());
    CHECK(quaternion8()->exponent() == 4);
    // Q8 has a single involution
    int involutions = 0;
    for (int x = 0; x < 8; ++x) involutions += quaternion8()->element_order(x) == 2;
    CHECK(involutions == 1);
    CHECK(elementary_abelian(3, 2)->exponent() == 3);
    CHECK(direct_product(cyclic(2, 1), dihedral8())->order() == 16);
}

TEST_CASE("every catalog table is a group")
{
    for (int p : {2, 3})
        for (const auto& g : catalog_groups(p, p == 2 ? 32 : 27)) {
            INFO(g->spec().type << " of order " << g->order());
            CHECK(g->is_associative());
            CHECK(is_power_of(g->order(), p));
            CHECK(subgroup_generated(g, g->generators()).order() == g->order());
        }
}

TEST_CASE("make_group rejects bad descriptors")
{
    CHECK_THROWS_AS(make_group({"cyclic", {4, 1}, {}}), SpecError);
    CHECK_THROWS_AS(make_group({"dodecahedral", {}, {}}), SpecError);
    CHECK_THROWS_AS(make_group({"cyclic", {2, 9}, {}}), SpecError); // order 512 exceeds the limit
    CHECK(make_group({"direct_product", {}, {{"cyclic", {3, 1}, {}}, {"cyclic", {3, 1}, {}}}})->order() == 9);
}

TEST_CASE("table groups are validated")
{
    const auto c2 = table_group(2, {{0, 1}, {1, 0}}, {1});
    CHECK(c2->order() == 2);
    CHECK_THROWS_AS(table_group(2, {{0, 1}, {1, 1}}, {1}), SpecError);
    CHECK_THROWS_AS(table_group(2, {{0, 1}, {1, 0}}, {}), SpecError);
    // identity must be element 0
    CHECK_THROWS_AS(table_group(2, {{1, 0}, {0, 1}}, {1}), SpecError);
}

TEST_CASE("normal-form words multiply back to their element")
{
    for (const auto& g : catalog_groups(2, 16)) {
        for (int x = 0; x < g->order(); ++x) {
            int y = 0;
            for (int i : g->word(x)) y = g->mult(y, g->generators()[static_cast<std::size_t>(i)]);
            CHECK(y == x);
        }
    }
}

TEST_CASE("subgroup closure")
{
    const auto c4 = cyclic(2, 2);
    CHECK(subgroup_generated(c4, {0}).order() == 1);
    CHECK(subgroup_generated(c4, {2}).elements == std::vector<int>{0, 2});
    const auto q8 = quaternion8();
    const auto si = subgroup_generated(q8, {1});
    CHECK(si.order() == 4);
    CHECK(subgroup_as_group(si).group->is_abelian());
    CHECK(subgroup_as_group(si).group->exponent() == 4);
}

TEST_CASE("subgroup lattices of small groups")
{
    CHECK(all_subgroups(cyclic(2, 3)).size() == 4);
    CHECK(all_subgroups(elementary_abelian(2, 2)).size() == 5);
    CHECK(all_subgroups(dihedral8()).size() == 10);
    CHECK(all_subgroups(quaternion8()).size() == 6);
    CHECK(all_subgroups(elementary_abelian(3, 2)).size() == 6);
    CHECK(all_subgroups(heisenberg(3)).size() == 19);
}

TEST_CASE("homomorphisms from generator images")
{
    const auto c2 = cyclic(2, 1), c4 = cyclic(2, 2);
    const auto id = hom_from_images(c4, c4, {1});
    CHECK(id.image == std::vector<int>{0, 1, 2, 3});
    const auto up = hom_from_images(c2, c4, {2});
    CHECK(is_injective(up));
    CHECK(image_subgroup(up).elements == std::vector<int>{0, 2});
    const auto down = hom_from_images(c4, c2, {1});
    CHECK_FALSE(is_injective(down));
    CHECK(kernel(down) == std::vector<int>{0, 2});
    CHECK_THROWS_AS(hom_from_images(c2, c4, {1}), ImagesInconsistent);
    CHECK_THROWS_AS(hom_from_images(c2, c4, {}), ImagesInconsistent);
    CHECK_FALSE(try_extend_hom(*c2, *c4, {1}));

    const auto d8 = dihedral8();
    // centre of D8 is {1, r^2}
    const auto centre = hom_from_images(c2, d8, {2});
    CHECK(is_injective(centre));
    for (int x = 0; x < 8; ++x) CHECK(d8->mult(x, 2) == d8->mult(2, x));
}

TEST_CASE("composition and inverse isomorphisms")
{
    const auto q8 = quaternion8();
    const auto swap = hom_from_images(q8, q8, {4, 1});
    CHECK(is_bijective(swap));
    const auto back = inverse_iso(swap);
    CHECK(compose(back, swap).image == identity_hom(q8).image);
    CHECK_THROWS_AS(inverse_iso(hom_from_images(cyclic(2, 1), q8, {2})), PreconditionFailed);
}

TEST_CASE("right cosets partition the group")
{
    const auto d8 = dihedral8();
    for (const auto& k : all_subgroups(d8)) {
        const auto t = right_cosets(k);
        CHECK(t.representative.size() * static_cast<std::size_t>(k.order()) == 8);
        for (int x = 0; x < 8; ++x)
            for (int kk : k.elements) CHECK(t.coset_of[static_cast<std::size_t>(d8->mult(kk, x))] == t.coset_of[static_cast<std::size_t>(x)]);
    }
}

TEST_CASE("Frattini subgroups")
{
    CHECK(frattini_subgroup(cyclic(2, 3)).order() == 4);
    CHECK(frattini_subgroup(elementary_abelian(2, 3)).order() == 1);
    CHECK(frattini_subgroup(dihedral8()).order() == 2);
    CHECK(frattini_subgroup(quaternion8()).order() == 2);
    CHECK(frattini_subgroup(heisenberg(3)).order() == 3);
}
