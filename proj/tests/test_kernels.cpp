#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "gqlab/constructions.hpp"
#include "gqlab/errors.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/search.hpp"

using namespace gqlab;

namespace {

// Smallest loop with a two-sided identity that is not a group: Latin and
// unital, so table validation reaches the associativity scan.
const std::vector<std::vector<int>> loop5 = {
    {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0},
};

std::vector<uint16_t> flat(const std::vector<std::vector<int>>& rows) {
    std::vector<uint16_t> tab;
    for (const auto& r : rows)
        for (int v : r) tab.push_back(uint16_t(v));
    return tab;
}

struct thrown {
    errc code;
    std::string what;
    bool operator==(const thrown&) const = default;
};

template <class F> thrown capture(F&& f) {
    try {
        f();
    } catch (const error& e) {
        return {e.code(), e.what()};
    }
    return {errc::io_error, "no error raised"};
}

} // namespace

TEST_CASE("associativity scan: serial and parallel find the same witness") {
    group_table h = heisenberg(1, 3);
    CHECK(!associativity_witness_serial(h.mul_tab, h.n));
    for (int jobs : {1, 2, 4}) CHECK(!associativity_witness_parallel(h.mul_tab, h.n, jobs));

    auto tab = flat(loop5);
    auto want = associativity_witness_serial(tab, 5);
    REQUIRE(want.has_value());
    for (int jobs : {1, 2, 4}) {
        auto got = associativity_witness_parallel(tab, 5, jobs);
        REQUIRE(got.has_value());
        CHECK(*got == *want);
    }

    // Corrupt single cells of a real table; every corruption must yield the
    // same answer from both scans (possibly none if the cell is unused by a
    // failing triple).
    group_table g = heisenberg(2, 2);
    int agree = 0, found = 0;
    for (int cell = 0; cell < g.n * g.n; cell += 97) {
        auto bad = g.mul_tab;
        bad[cell] = uint16_t((bad[cell] + 1) % g.n);
        auto s = associativity_witness_serial(bad, g.n);
        for (int jobs : {2, 3}) {
            auto p = associativity_witness_parallel(bad, g.n, jobs);
            CHECK(s.has_value() == p.has_value());
            if (s && p) CHECK(*s == *p);
        }
        agree++;
        if (s) found++;
    }
    CHECK(agree > 5);
    CHECK(found > 0);
}

TEST_CASE("table validation across worker counts raises identical errors") {
    thrown first = capture([&] { group_from_table(loop5, 1); });
    CHECK(first.code == errc::not_associative);
    CHECK(first.what.find("failing triple") != std::string::npos);
    for (int jobs : {2, 3}) CHECK(capture([&] { group_from_table(loop5, jobs); }) == first);
}

TEST_CASE("projection scan: serial and parallel find the same witness") {
    incidence_geometry w3 = symplectic_quadrangle(3);
    auto coll = collinearity_map(w3);
    CHECK(!projection_scan_serial(w3, coll));
    for (int jobs : {1, 2, 4}) CHECK(!projection_scan_parallel(w3, coll, jobs));

    // Removing one line leaves many non-incident pairs that no longer
    // project; the least one must be reported by every scan.
    incidence_geometry w2 = symplectic_quadrangle(2);
    auto lines = w2.lines;
    lines.pop_back();
    incidence_geometry broken = make_geometry(w2.points, lines);
    auto bcoll = collinearity_map(broken);
    auto want = projection_scan_serial(broken, bcoll);
    REQUIRE(want.has_value());
    CHECK((*want)[2] != 1);
    for (int round = 0; round < 5; ++round)
        for (int jobs : {2, 3, 4}) {
            auto got = projection_scan_parallel(broken, bcoll, jobs);
            REQUIRE(got.has_value());
            CHECK(*got == *want);
        }
}

TEST_CASE("quadrangle verification agrees across worker counts") {
    incidence_geometry w3 = symplectic_quadrangle(3);
    gq_order a = verify_gq(w3, 1);
    gq_order b = verify_gq(w3, 3);
    CHECK(a == b);
    CHECK(a == gq_order{3, 3});

    // Swap a point between two disjoint lines: degrees stay uniform, some
    // axiom now fails, and the failure must read the same for every worker
    // count.
    incidence_geometry w2 = symplectic_quadrangle(2);
    auto lines = w2.lines;
    std::size_t other = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        bool disjoint = true;
        for (int p : lines[li])
            for (int q : lines[0])
                if (p == q) disjoint = false;
        if (disjoint) {
            other = li;
            break;
        }
    }
    REQUIRE(other != 0);
    std::swap(lines[0][0], lines[other][0]);
    incidence_geometry broken = make_geometry(w2.points, lines);
    thrown first = capture([&] { verify_gq(broken, 1); });
    CHECK(first.code == errc::axiom_violation);
    for (int jobs : {2, 4}) CHECK(capture([&] { verify_gq(broken, jobs); }) == first);
}

TEST_CASE("family search: serial and parallel return identical catalogues") {
    group_table h13 = heisenberg(1, 3);
    search_budget serial_budget;
    serial_budget.jobs = 1;
    search_budget wide_budget;
    wide_budget.jobs = 3;
    kantor_search_result s = search_kantor_families_serial(h13, 3, 3, serial_budget);
    kantor_search_result p = search_kantor_families_parallel(h13, 3, 3, wide_budget);
    CHECK(s.complete);
    CHECK(p.complete);
    REQUIRE(s.families.size() == 9);
    REQUIRE(p.families.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(s.families[i].members == p.families[i].members);
        CHECK(validate_kantor_family(p.families[i].group, p.families[i].members).ok);
    }

    // A group carrying no family gives the same empty, complete answer.
    group_table d4 = heisenberg(1, 2);
    kantor_search_result es = search_kantor_families_serial(d4, 4, 2, serial_budget);
    kantor_search_result ep = search_kantor_families_parallel(d4, 4, 2, wide_budget);
    CHECK(es.families.empty());
    CHECK(ep.families.empty());
    CHECK(es.complete);
    CHECK(ep.complete);

    // A result limit cuts both cores short the same way.
    search_budget capped = wide_budget;
    capped.limit = 2;
    kantor_search_result ls = search_kantor_families_serial(h13, 3, 3, capped);
    kantor_search_result lp = search_kantor_families_parallel(h13, 3, 3, capped);
    CHECK(ls.families.size() == 2);
    CHECK(lp.families.size() == 2);
    CHECK(!ls.complete);
    CHECK(!lp.complete);
    for (const auto& fam : lp.families)
        CHECK(validate_kantor_family(fam.group, fam.members).ok);

    // The public entry point is deterministic regardless of the job count.
    search_budget one = serial_budget, four = wide_budget;
    four.jobs = 4;
    kantor_search_result w1 = search_kantor_families(h13, 3, 3, true, one);
    kantor_search_result w4 = search_kantor_families(h13, 3, 3, true, four);
    CHECK(w1.families.size() == 1);
    CHECK(w4.families.size() == 1);
    CHECK(w1.families[0].members == w4.families[0].members);
}
