#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "gqlab/constructions.hpp"
#include "gqlab/errors.hpp"
#include "gqlab/field.hpp"
#include "gqlab/forms.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/symmetry.hpp"

using namespace gqlab;

namespace {

// Independent oracle: a quadrangle of order (s,t) is exactly a biregular
// bipartite graph of girth 8 and diameter 4 (diameter 2 from a vertex when
// the other side is a single vertex never occurs here). Checked from
// scratch with plain breadth-first search, no library geometry code.
void graph_oracle(const incidence_geometry& geo, int s, int t) {
    int P = geo.points, L = geo.num_lines(), V = P + L;
    std::vector<std::vector<int>> adj(V);
    for (int j = 0; j < L; ++j) {
        CHECK(int(geo.lines[j].size()) == s + 1);
        for (int p : geo.lines[j]) {
            adj[p].push_back(P + j);
            adj[P + j].push_back(p);
        }
    }
    for (int p = 0; p < P; ++p)
        CHECK(int(adj[p].size()) == t + 1);

    int girth = INT_MAX, diameter = 0;
    std::vector<int> dist(V), parent(V);
    for (int src = 0; src < V; ++src) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<int> queue{src};
        dist[src] = 0;
        parent[src] = -1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            diameter = std::max(diameter, dist[u]);
            for (int w : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u] && dist[w] >= dist[u]) {
                    girth = std::min(girth, dist[u] + dist[w] + 1);
                }
            }
        }
    }
    CHECK(girth == 8);
    CHECK(diameter == 4);
}

// Classical point and line counts of a quadrangle of order (s,t).
void count_oracle(const incidence_geometry& geo, int s, int t) {
    CHECK(geo.points == (s + 1) * (s * t + 1));
    CHECK(geo.num_lines() == (t + 1) * (s * t + 1));
}

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return errc(-1);
}

// Parse a coordinate label "(a1,..,an|c|b1,..,bn)" into field indices.
struct triple_coords {
    std::vector<int> alpha;
    int c = 0;
    std::vector<int> beta;
};

std::vector<int> parse_indices(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos)
            comma = s.size();
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

triple_coords parse_label(const std::string& label) {
    REQUIRE(label.front() == '(');
    REQUIRE(label.back() == ')');
    std::string body = label.substr(1, label.size() - 2);
    auto bar1 = body.find('|');
    auto bar2 = body.find('|', bar1 + 1);
    REQUIRE(bar1 != std::string::npos);
    REQUIRE(bar2 != std::string::npos);
    triple_coords tc;
    tc.alpha = parse_indices(body.substr(0, bar1));
    tc.c = std::stoi(body.substr(bar1 + 1, bar2 - bar1 - 1));
    tc.beta = parse_indices(body.substr(bar2 + 1));
    return tc;
}

} // namespace

TEST_CASE("triple group multiplication matches the defining rule on coordinates") {
    // The oracle recomputes every product from the printed coordinates
    // with field arithmetic alone, independent of the index packing.
    for (auto [n, q] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}}) {
        group_table g = heisenberg(n, q);
        finite_field f = finite_field::create(q);
        REQUIRE(g.n == int(std::pow(q, 2 * n + 1)));
        std::vector<triple_coords> coords;
        for (int x = 0; x < g.n; ++x)
            coords.push_back(parse_label(g.label(x)));
        // Coordinates are a bijection onto F_q^n x F_q x F_q^n.
        std::set<std::string> seen;
        for (int x = 0; x < g.n; ++x)
            seen.insert(g.label(x));
        CHECK(int(seen.size()) == g.n);
        int step = g.n > 256 ? 7 : 1; // sample larger tables on a stride
        for (int x = 0; x < g.n; ++x)
            for (int y = x % step; y < g.n; y += step) {
                const auto& u = coords[x];
                const auto& v = coords[y];
                const auto& w = coords[g.mul(x, y)];
                int c = f.add(u.c, v.c);
                for (int i = 0; i < n; ++i) {
                    CHECK(w.alpha[i] == f.add(u.alpha[i], v.alpha[i]));
                    CHECK(w.beta[i] == f.add(u.beta[i], v.beta[i]));
                    c = f.add(c, f.mul(u.alpha[i], v.beta[i]));
                }
                CHECK(w.c == c);
            }
    }
}

TEST_CASE("triple group tables pass full table validation") {
    for (auto [n, q] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}}) {
        group_table g = heisenberg(n, q);
        std::vector<std::vector<int>> rows(g.n, std::vector<int>(g.n));
        for (int x = 0; x < g.n; ++x)
            for (int y = 0; y < g.n; ++y)
                rows[x][y] = g.mul(x, y);
        group_table checked = group_from_table(rows); // throws on any defect
        CHECK(checked.mul_tab == g.mul_tab);
        CHECK(checked.inv_tab == g.inv_tab);
    }
}

TEST_CASE("triple groups are special with center of order q") {
    for (auto [n, q] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}}) {
        group_table g = heisenberg(n, q);
        INFO("n=" << n << " q=" << q);
        auto z = center(g);
        CHECK(int(z.size()) == q);
        CHECK(derived_subgroup(g) == z);
        CHECK(frattini(g) == z);
        CHECK(nilpotency_class(g) == 2);
        int p = 0;
        CHECK(is_pgroup(g, &p));
        CHECK(p == (q % 2 == 0 ? 2 : q % 3 == 0 ? 3 : q));
        CHECK(group_exponent(g) == (p == 2 ? 4 : p));
        // Center = all (0|c|0): exactly the elements whose label has zero
        // alpha and beta parts.
        for (int x : z) {
            auto tc = parse_label(g.label(x));
            for (int i = 0; i < n; ++i) {
                CHECK(tc.alpha[i] == 0);
                CHECK(tc.beta[i] == 0);
            }
        }
    }
}

TEST_CASE("commutators land in the center and induce the standard alternating form") {
    group_table g = heisenberg(1, 3);
    finite_field f = finite_field::create(3);
    for (int x = 0; x < g.n; ++x)
        for (int y = 0; y < g.n; ++y) {
            int comm = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
            auto tc = parse_label(g.label(comm));
            CHECK(tc.alpha[0] == 0);
            CHECK(tc.beta[0] == 0);
            auto u = parse_label(g.label(x));
            auto v = parse_label(g.label(y));
            // [(a,c,b), (a',c',b')] = (0, a b' - a' b, 0)
            CHECK(tc.c == f.sub(f.mul(u.alpha[0], v.beta[0]), f.mul(v.alpha[0], u.beta[0])));
        }
}

TEST_CASE("commutator form of the rank-two triple group is alternating and non-singular") {
    for (int q : {2, 3}) {
        bilinear_form form = commutator_form(heisenberg(2, q));
        CHECK(form.dim == 4);
        CHECK(form.alternating);
        CHECK(form.nonsingular);
        CHECK(form.field.q() == q);
    }
}

TEST_CASE("triple group guards") {
    CHECK(thrown_code([] { heisenberg(0, 3); }) == errc::invalid_argument);
    CHECK(thrown_code([] { heisenberg(3, 4); }) == errc::size_budget_exceeded);
    CHECK(thrown_code([] { heisenberg(1, 6); }) == errc::not_prime_power);
}

TEST_CASE("symplectic quadrangle has classical parameters") {
    for (int q : {2, 3, 4}) {
        incidence_geometry geo = symplectic_quadrangle(q);
        gq_order ord = verify_gq(geo);
        CHECK(ord.s == q);
        CHECK(ord.t == q);
        count_oracle(geo, q, q);
        graph_oracle(geo, q, q);
    }
    CHECK(thrown_code([] { symplectic_quadrangle(7); }) == errc::size_budget_exceeded);
}

TEST_CASE("all points of the symplectic quadrangle are regular") {
    for (int q : {2, 3}) {
        incidence_geometry geo = symplectic_quadrangle(q);
        for (int x = 0; x < geo.points; ++x)
            CHECK(is_regular_point(geo, x).regular);
    }
}

TEST_CASE("hermitian surface quadrangle has classical parameters") {
    incidence_geometry h4 = hermitian_quadrangle(2);
    gq_order o4 = verify_gq(h4);
    CHECK(o4.s == 4);
    CHECK(o4.t == 2);
    count_oracle(h4, 4, 2);
    graph_oracle(h4, 4, 2);
    for (int x = 0; x < h4.points; ++x)
        CHECK(is_regular_point(h4, x).regular);

    incidence_geometry h9 = hermitian_quadrangle(3);
    gq_order o9 = verify_gq(h9);
    CHECK(o9.s == 9);
    CHECK(o9.t == 3);
    count_oracle(h9, 9, 3);
    graph_oracle(h9, 9, 3);
    for (int x = 0; x < h9.points; x += 37)
        CHECK(is_regular_point(h9, x).regular);

    CHECK(thrown_code([] { hermitian_quadrangle(4); }) == errc::size_budget_exceeded);
}

TEST_CASE("linear clans are anisotropic and tampering is caught") {
    for (int q : {2, 3, 4, 5}) {
        qclan c = linear_qclan(q);
        REQUIRE(int(c.a.size()) == q);
        CHECK(!qclan_violation(c).has_value());
        // K_u = A_u + A_u^T by direct recomputation.
        finite_field f = c.field;
        for (int u = 0; u < q; ++u) {
            auto k = c.k(u);
            CHECK(k[0] == f.add(c.a[u][0], c.a[u][0]));
            CHECK(k[1] == f.add(c.a[u][1], c.a[u][2]));
            CHECK(k[2] == f.add(c.a[u][2], c.a[u][1]));
            CHECK(k[3] == f.add(c.a[u][3], c.a[u][3]));
        }
        qclan broken = c;
        broken.a[1] = broken.a[0]; // zero difference is isotropic everywhere
        auto witness = qclan_violation(broken);
        REQUIRE(witness.has_value());
        CHECK(!witness->empty());
    }
}

TEST_CASE("clan families produce quadrangles of order (q^2, q)") {
    for (int q : {2, 3}) {
        kantor_family fam = qclan_kantor_family(linear_qclan(q));
        CHECK(fam.s == q * q);
        CHECK(fam.t == q);
        CHECK(fam.group.n == q * q * q * q * q);
        auto check = validate_kantor_family(fam.group, fam.members);
        CHECK(check.ok);
        coset_geometry_result cg = coset_geometry(fam);
        gq_order ord = verify_gq(cg.geometry);
        CHECK(ord.s == q * q);
        CHECK(ord.t == q);
        count_oracle(cg.geometry, q * q, q);
        graph_oracle(cg.geometry, q * q, q);
    }
    // Larger cases: the family still validates even when the geometry is
    // not built here.
    for (int q : {4, 5}) {
        kantor_family fam = qclan_kantor_family(linear_qclan(q));
        CHECK(fam.s == q * q);
        CHECK(fam.t == q);
    }
}

TEST_CASE("the clan quadrangle at q=2 is the hermitian surface quadrangle") {
    coset_geometry_result cg = coset_geometry(qclan_kantor_family(linear_qclan(2)));
    auto iso = geometry_isomorphic(cg.geometry, hermitian_quadrangle(2));
    REQUIRE(iso.has_value());
    CHECK(is_geometry_automorphism(cg.geometry, identity_perm(cg.geometry)));
}

TEST_CASE("family validation flags each axiom separately") {
    kantor_family fam = w3_kantor_family(2);
    REQUIRE(validate_kantor_family(fam.group, fam.members).ok);
    auto clause_hit = [&](const std::vector<std::pair<subgroup_set, subgroup_set>>& members,
                          const std::string& clause) {
        auto check = validate_kantor_family(fam.group, members);
        CHECK(!check.ok);
        for (const auto& v : check.violations)
            if (v.clause == clause)
                return true;
        return false;
    };

    auto members = fam.members;
    members.pop_back(); // member count no longer matches t+1
    CHECK(clause_hit(members, "cardinality"));

    members = fam.members;
    members[0].first = {1, 2}; // missing the identity: not a subgroup
    CHECK(clause_hit(members, "subgroup"));

    members = fam.members;
    members[0].second = members[1].second; // star no longer contains member
    CHECK(clause_hit(members, "containment"));

    members = fam.members;
    members[1] = members[0]; // duplicated member meets the twin star
    CHECK(clause_hit(members, "star-intersection"));

    members = fam.members;
    std::swap(members[0].first, members[0].second); // member/star sizes swapped
    CHECK(clause_hit(members, "cardinality"));
}

TEST_CASE("members multiply almost freely: the product axiom catches overlap") {
    // In C2 x C2 x C2 take E_0, E_1 with E_0 E_1 meeting E_2: the family
    // {E_0, E_1, E_2} with full stars has s = 2, t = 2 but violates the
    // product axiom because the group is elementary abelian of order 8
    // and e.g. (a)(b) = ab lands in E_2 = {1, ab}.
    group_table g = direct_product(cyclic_group(2), direct_product(cyclic_group(2), cyclic_group(2)));
    REQUIRE(g.n == 8);
    // Elements: identify a, b as two commuting involutions, ab their product.
    int a = -1, b = -1;
    for (int x = 1; x < g.n && (a < 0 || b < 0); ++x)
        if (g.mul(x, x) == 0) {
            if (a < 0)
                a = x;
            else if (x != a)
                b = x;
        }
    REQUIRE(a > 0);
    REQUIRE(b > 0);
    int ab = g.mul(a, b);
    std::vector<std::pair<subgroup_set, subgroup_set>> members;
    auto star_of = [&](int x) {
        subgroup_set star = {0, x};
        for (int y = 1; y < g.n; ++y)
            if (y != x && int(star.size()) < 4 && g.mul(y, y) == 0 && y != ab)
                star.push_back(y);
        std::sort(star.begin(), star.end());
        return star;
    };
    members.push_back({{0, a}, star_of(a)});
    members.push_back({{0, b}, star_of(b)});
    members.push_back({{0, ab}, star_of(ab)});
    auto check = validate_kantor_family(g, members);
    CHECK(!check.ok);
    bool product_flagged = false;
    for (const auto& v : check.violations)
        product_flagged |= v.clause == "product-intersection";
    CHECK(product_flagged);
}

TEST_CASE("type (q,q) families give the symplectic quadrangle for odd q") {
    for (int q : {3, 5}) {
        kantor_family fam = w3_kantor_family(q);
        CHECK(fam.s == q);
        CHECK(fam.t == q);
        CHECK(fam.group.n == q * q * q);
        coset_geometry_result cg = coset_geometry(fam);
        gq_order ord = verify_gq(cg.geometry);
        CHECK(ord.s == q);
        CHECK(ord.t == q);
        count_oracle(cg.geometry, q, q);
    }
    auto iso3 = geometry_isomorphic(coset_geometry(w3_kantor_family(3)).geometry,
                                    symplectic_quadrangle(3));
    CHECK(iso3.has_value());
}

TEST_CASE("the q=2 family gives the unique quadrangle of order two") {
    kantor_family fam = w3_kantor_family(2);
    CHECK(fam.s == 2);
    CHECK(fam.t == 2);
    CHECK(fam.group.n == 8);
    coset_geometry_result cg = coset_geometry(fam);
    graph_oracle(cg.geometry, 2, 2);
    auto iso = geometry_isomorphic(cg.geometry, symplectic_quadrangle(2));
    CHECK(iso.has_value());
}

TEST_CASE("coset model layout: tags, counts, infinity") {
    kantor_family fam = w3_kantor_family(3);
    coset_geometry_result cg = coset_geometry(fam);
    int n = fam.group.n, s = fam.s, t = fam.t;
    CHECK(cg.geometry.points == n + (t + 1) * s + 1);
    CHECK(cg.geometry.num_lines() == (t + 1) * n / s + (t + 1));
    CHECK(cg.infinity == cg.geometry.points - 1);
    CHECK(cg.geometry.point_tags[cg.infinity] == "(infinity)");
    CHECK(cg.geometry.point_tags[0] == "g0");
    CHECK(cg.geometry.point_tags[5] == "g5");
    // Pencil lines are the last t+1 and carry bracket tags.
    for (int i = 0; i <= t; ++i) {
        const std::string& tag = cg.geometry.line_tags[(t + 1) * n / s + i];
        CHECK(tag == "[E" + std::to_string(i) + "]");
    }
    // Every pencil line contains the point at infinity.
    for (int i = 0; i <= t; ++i) {
        const auto& line = cg.geometry.lines[(t + 1) * n / s + i];
        CHECK(std::find(line.begin(), line.end(), cg.infinity) != line.end());
    }
}

TEST_CASE("the coset action is a sharply transitive elation action about infinity") {
    for (int q : {2, 3}) {
        kantor_family fam = w3_kantor_family(q);
        coset_geometry_result cg = coset_geometry(fam);
        validate_action(cg.geometry, cg.action);
        elation_report rep = is_elation_action(cg.geometry, cg.infinity, cg.action);
        CHECK(rep.elation);
        CHECK(rep.fixes_lines);
        CHECK(rep.sharply_transitive);
        CHECK(rep.failure.empty());
    }
}

TEST_CASE("the action is reconstructible from the element point tags") {
    kantor_family fam = w3_kantor_family(3);
    coset_geometry_result cg = coset_geometry(fam);
    geometry_action rebuilt = action_from_element_tags(cg.geometry, fam.group);
    CHECK(rebuilt.point_perm == cg.action.point_perm);
    CHECK(rebuilt.line_perm == cg.action.line_perm);
}

TEST_CASE("left and right coset models are isomorphic quadrangles") {
    kantor_family fam = w3_kantor_family(3);
    coset_geometry_result right = coset_geometry(fam, false);
    coset_geometry_result left = coset_geometry(fam, true);
    validate_action(left.geometry, left.action);
    elation_report rep = is_elation_action(left.geometry, left.infinity, left.action);
    CHECK(rep.elation);
    CHECK(rep.sharply_transitive);
    auto iso = geometry_isomorphic(left.geometry, right.geometry);
    CHECK(iso.has_value());
}

TEST_CASE("coset model rejects invalid families") {
    kantor_family fam = w3_kantor_family(2);
    fam.members[0].first = {0, fam.members[1].first[1]};
    CHECK(thrown_code([&] { coset_geometry(fam); }) == errc::construction_invalid);
}
