#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "gqlab/catalog.hpp"
#include "gqlab/constructions.hpp"
#include "gqlab/errors.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/search.hpp"
#include "gqlab/symmetry.hpp"

using namespace gqlab;

namespace {

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return errc(-1);
}

} // namespace

TEST_CASE("subgroup enumeration agrees with the exhaustive library walk") {
    std::vector<group_table> zoo;
    zoo.push_back(dihedral_group(4));
    zoo.push_back(cyclic_group(12));
    zoo.push_back(direct_product(cyclic_group(2), cyclic_group(8)));
    zoo.push_back(heisenberg(1, 3));
    for (const auto& g : zoo) {
        auto mine = enumerate_subgroups(g);
        auto reference = all_subgroups(g);
        std::set<subgroup_set> a(mine.begin(), mine.end());
        std::set<subgroup_set> b(reference.begin(), reference.end());
        CHECK(a == b);
        CHECK(mine.size() == reference.size());
        // Sorted by (size, members) and free of duplicates.
        CHECK(std::is_sorted(mine.begin(), mine.end(),
                             [](const subgroup_set& x, const subgroup_set& y) {
                                 return x.size() != y.size() ? x.size() < y.size() : x < y;
                             }));
        CHECK(a.size() == mine.size());
    }
}

TEST_CASE("subgroup census of the rank-one triple group over F_3") {
    group_table g = heisenberg(1, 3);
    auto subs = enumerate_subgroups(g);
    CHECK(subs.size() == 19);
    CHECK(std::count_if(subs.begin(), subs.end(),
                        [](const subgroup_set& s) { return s.size() == 3; }) == 13);
    CHECK(std::count_if(subs.begin(), subs.end(),
                        [](const subgroup_set& s) { return s.size() == 9; }) == 4);
    CHECK(enumerate_subgroups(g, 3).size() == 13);
    CHECK(enumerate_subgroups(g, -1, true).size() == 11);
    CHECK(enumerate_subgroups(g, 5).empty()); // no subgroup of non-dividing order
}

TEST_CASE("type (3,3) families in the rank-one triple group") {
    group_table g = heisenberg(1, 3);
    kantor_search_result res = search_kantor_families(g, 3, 3);
    CHECK(res.complete);
    CHECK(res.families.size() == 9);
    for (const auto& fam : res.families) {
        CHECK(fam.s == 3);
        CHECK(fam.t == 3);
        CHECK(validate_kantor_family(fam.group, fam.members).ok);
    }
    // Families are sorted and pairwise distinct.
    for (std::size_t i = 1; i < res.families.size(); ++i)
        CHECK(res.families[i - 1].members < res.families[i].members);
}

TEST_CASE("parallel search returns exactly the serial answer") {
    group_table g = heisenberg(1, 3);
    search_budget two_jobs;
    two_jobs.jobs = 2;
    kantor_search_result serial = search_kantor_families_serial(g, 3, 3, {});
    kantor_search_result parallel = search_kantor_families_parallel(g, 3, 3, two_jobs);
    CHECK(parallel.complete);
    REQUIRE(parallel.families.size() == serial.families.size());
    for (std::size_t i = 0; i < serial.families.size(); ++i)
        CHECK(parallel.families[i].members == serial.families[i].members);
}

TEST_CASE("one family class modulo automorphisms") {
    group_table g = heisenberg(1, 3);
    kantor_search_result res = search_kantor_families(g, 3, 3, true);
    CHECK(res.families.size() == 1);
    CHECK(validate_kantor_family(res.families[0].group, res.families[0].members).ok);
}

TEST_CASE("a result limit stops the search early and marks it incomplete") {
    group_table g = heisenberg(1, 3);
    search_budget limited;
    limited.limit = 1;
    kantor_search_result res = search_kantor_families(g, 3, 3, false, limited);
    CHECK(res.families.size() == 1);
    CHECK(!res.complete);
}

TEST_CASE("a node budget marks the result incomplete instead of lying") {
    group_table g = heisenberg(1, 3);
    search_budget tiny;
    tiny.max_nodes = 3;
    kantor_search_result res = search_kantor_families(g, 3, 3, false, tiny);
    CHECK(!res.complete);
    for (const auto& fam : res.families)
        CHECK(validate_kantor_family(fam.group, fam.members).ok);
}

TEST_CASE("mismatched parameters yield an empty complete result or a loud error") {
    group_table g = heisenberg(1, 3);
    kantor_search_result res = search_kantor_families(g, 2, 2); // 8 != 27
    CHECK(res.complete);
    CHECK(res.families.empty());
    CHECK(thrown_code([&] { search_kantor_families(g, 0, 3); }) == errc::invalid_argument);
}

TEST_CASE("exactly two order-27 groups carry type (3,3) families") {
    catalog_list catalog = catalog_groups(27);
    REQUIRE(catalog.complete);
    REQUIRE(catalog.entries.size() == 5);
    group_table reference = heisenberg(1, 3);
    int carriers = 0;
    for (const auto& entry : catalog.entries) {
        kantor_search_result res = search_kantor_families(entry.group, 3, 3);
        REQUIRE(res.complete);
        if (res.families.empty())
            continue;
        ++carriers;
        if (groups_isomorphic(entry.group, reference).has_value()) {
            CHECK(res.families.size() == 9);
        } else {
            // The elementary abelian group: one family per 4-arc of the
            // projective plane of order three, 234 in all.
            CHECK(is_abelian(entry.group));
            CHECK(group_exponent(entry.group) == 3);
            CHECK(res.families.size() == 234);
            coset_geometry_result cg = coset_geometry(res.families.front());
            auto iso = geometry_isomorphic(cg.geometry, dual(symplectic_quadrangle(3)));
            CHECK(iso.has_value());
        }
        // The cyclic group never carries a family.
        CHECK(group_exponent(entry.group) != 27);
    }
    CHECK(carriers == 2);
}

TEST_CASE("elation search on the order-two coset model finds the translation group") {
    coset_geometry_result cg = coset_geometry(w3_kantor_family(2));
    elation_search_result res = search_elation_groups(cg.geometry, cg.infinity);
    CHECK(res.complete);
    CHECK(res.stabilizer_order == 48);
    REQUIRE(res.classes.size() == 1);
    const elation_class& cls = res.classes[0];
    CHECK(cls.group.n == 8);
    CHECK(cls.count == 1);
    CHECK(is_abelian(cls.group));
    CHECK(group_exponent(cls.group) == 2);
    REQUIRE(cls.elements.size() == 8);

    // Re-verify the class action externally against the geometry.
    geometry_action a;
    a.group = cls.group;
    for (const auto& e : cls.elements) {
        a.point_perm.push_back(e.pts);
        a.line_perm.push_back(e.lns);
    }
    validate_action(cg.geometry, a);
    elation_report rep = is_elation_action(cg.geometry, cg.infinity, a);
    CHECK(rep.elation);
    CHECK(rep.sharply_transitive);
}

TEST_CASE("elation search on the hermitian surface quadrangle finds two classes") {
    incidence_geometry geo = hermitian_quadrangle(2);
    elation_search_result res = search_elation_groups(geo, 0);
    CHECK(res.complete);
    CHECK(res.stabilizer_order == 1152);
    REQUIRE(res.classes.size() == 2);
    CHECK(res.classes[0].group.n == 32);
    CHECK(res.classes[1].group.n == 32);
    CHECK(res.classes[0].count + res.classes[1].count == 10);
    CHECK(!groups_isomorphic(res.classes[0].group, res.classes[1].group).has_value());
    for (const auto& cls : res.classes) {
        geometry_action a;
        a.group = cls.group;
        for (const auto& e : cls.elements) {
            a.point_perm.push_back(e.pts);
            a.line_perm.push_back(e.lns);
        }
        validate_action(geo, a);
        CHECK(is_elation_action(geo, 0, a).elation);
    }
}

TEST_CASE("elation search rejects bad inputs loudly") {
    incidence_geometry geo = symplectic_quadrangle(2);
    CHECK(thrown_code([&] { search_elation_groups(geo, -1); }) == errc::invalid_point);
    CHECK(thrown_code([&] { search_elation_groups(geo, 99); }) == errc::invalid_point);

    incidence_geometry broken = geo;
    broken.lines.pop_back(); // no longer a quadrangle
    incidence_geometry rebuilt = make_geometry(broken.points, broken.lines);
    CHECK(thrown_code([&] { search_elation_groups(rebuilt, 0); }) != errc(-1));
}
