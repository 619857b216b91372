#include "gqlab/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gqlab/bitset.hpp"
#include "gqlab/catalog.hpp"
#include "gqlab/search.hpp"

namespace gqlab {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

// Digit view of an index in base q, most significant digit first.
std::vector<int> digits_of(long long idx, int q, int len) {
    std::vector<int> d(len);
    for (int i = len - 1; i >= 0; --i) {
        d[i] = int(idx % q);
        idx /= q;
    }
    return d;
}

long long index_of(const std::vector<int>& d, int q) {
    long long idx = 0;
    for (int v : d)
        idx = idx * q + v;
    return idx;
}

std::string join_indices(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace

group_table heisenberg(int n, int q) {
    if (n < 1)
        throw error(errc::invalid_argument, "n must be positive");
    finite_field f = finite_field::create(q);
    long long order = ipow(q, 2 * n + 1);
    if (order > kMaxGroupOrder)
        throw error(errc::size_budget_exceeded,
                    "group order " + std::to_string(order) + " exceeds " +
                        std::to_string(kMaxGroupOrder));
    int N = int(order);
    long long qn = ipow(q, n);

    auto alpha_of = [&](int g) { return digits_of(g / (qn * q), q, n); };
    auto c_of = [&](int g) { return int((g / qn) % q); };
    auto beta_of = [&](int g) { return digits_of(g % qn, q, n); };
    auto pack = [&](const std::vector<int>& a, int c, const std::vector<int>& b) {
        return int(index_of(a, q) * (qn * q) + c * qn + index_of(b, q));
    };

    group_table g;
    g.n = N;
    g.mul_tab.resize(size_t(N) * N);
    g.inv_tab.resize(N);
    g.labels.resize(N);
    for (int x = 0; x < N; ++x) {
        auto ax = alpha_of(x);
        int cx = c_of(x);
        auto bx = beta_of(x);
        g.labels[x] = "(" + join_indices(ax) + "|" + std::to_string(cx) + "|" + join_indices(bx) + ")";
        // (a,c,b)^-1 = (-a, -c + a.b, -b)
        std::vector<int> ai(n), bi(n);
        int dot = 0;
        for (int i = 0; i < n; ++i) {
            ai[i] = f.neg(ax[i]);
            bi[i] = f.neg(bx[i]);
            dot = f.add(dot, f.mul(ax[i], bx[i]));
        }
        g.inv_tab[x] = uint16_t(pack(ai, f.add(f.neg(cx), dot), bi));
        for (int y = 0; y < N; ++y) {
            auto ay = alpha_of(y);
            int cy = c_of(y);
            auto by = beta_of(y);
            std::vector<int> a(n), b(n);
            int c = f.add(cx, cy);
            for (int i = 0; i < n; ++i) {
                a[i] = f.add(ax[i], ay[i]);
                b[i] = f.add(bx[i], by[i]);
                c = f.add(c, f.mul(ax[i], by[i])); // cross term alpha . beta'
            }
            g.mul_tab[size_t(x) * N + y] = uint16_t(pack(a, c, b));
        }
    }
    return g;
}

namespace {

// Normalized homogeneous coordinates: first nonzero entry equals 1.
std::vector<std::vector<int>> projective_points(const finite_field& f, int dim) {
    std::vector<std::vector<int>> pts;
    long long total = ipow(f.q(), dim);
    for (long long v = 1; v < total; ++v) {
        auto x = digits_of(v, f.q(), dim);
        int lead = 0;
        while (x[lead] == 0)
            ++lead;
        if (x[lead] != 1)
            continue;
        pts.push_back(x);
    }
    return pts;
}

std::vector<int> normalize(const finite_field& f, std::vector<int> x) {
    int lead = 0;
    while (lead < int(x.size()) && x[lead] == 0)
        ++lead;
    int s = f.inv(x[lead]);
    for (int& v : x)
        v = f.mul(v, s);
    return x;
}

// All projective points of the span of two independent vectors.
std::vector<std::vector<int>> span_points(const finite_field& f, const std::vector<int>& u,
                                          const std::vector<int>& v) {
    std::vector<std::vector<int>> out{normalize(f, u)};
    for (int lam = 0; lam < f.q(); ++lam) {
        std::vector<int> w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            w[i] = f.add(f.mul(lam, u[i]), v[i]);
        out.push_back(normalize(f, w));
    }
    return out;
}

incidence_geometry lines_from_pairs(const finite_field& f,
                                    const std::vector<std::vector<int>>& pts,
                                    auto&& pair_ok) {
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < int(pts.size()); ++i)
        index[pts[i]] = i;
    std::set<std::vector<int>> lines;
    for (int i = 0; i < int(pts.size()); ++i)
        for (int j = i + 1; j < int(pts.size()); ++j) {
            if (!pair_ok(pts[i], pts[j]))
                continue;
            std::vector<int> line;
            for (const auto& w : span_points(f, pts[i], pts[j]))
                line.push_back(index.at(w));
            std::sort(line.begin(), line.end());
            lines.insert(line);
        }
    return make_geometry(int(pts.size()),
                         std::vector<std::vector<int>>(lines.begin(), lines.end()));
}

} // namespace

incidence_geometry symplectic_quadrangle(int q) {
    if (q > 5)
        throw error(errc::size_budget_exceeded, "q = " + std::to_string(q) + " exceeds the budget");
    finite_field f = finite_field::create(q);
    auto pts = projective_points(f, 4);
    auto b = [&](const std::vector<int>& x, const std::vector<int>& y) {
        int v = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
        return f.add(v, f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2])));
    };
    // The form is alternating, so a line through two orthogonal points is
    // totally isotropic.
    return lines_from_pairs(f, pts, [&](const auto& x, const auto& y) { return b(x, y) == 0; });
}

incidence_geometry hermitian_quadrangle(int q) {
    if (q != 2 && q != 3)
        throw error(errc::size_budget_exceeded, "q = " + std::to_string(q) + " exceeds the budget");
    finite_field f = finite_field::create(q * q);
    auto conj = [&](int x) { return f.pow(x, q); };
    auto herm = [&](const std::vector<int>& x, const std::vector<int>& y) {
        int v = 0;
        for (int i = 0; i < 4; ++i)
            v = f.add(v, f.mul(x[i], conj(y[i])));
        return v;
    };
    std::vector<std::vector<int>> pts;
    for (const auto& x : projective_points(f, 4))
        if (herm(x, x) == 0)
            pts.push_back(x);
    // Lines joining two orthogonal singular points lie on the surface.
    return lines_from_pairs(f, pts, [&](const auto& x, const auto& y) { return herm(x, y) == 0; });
}

std::array<int, 4> qclan::k(int u) const {
    const finite_field& f = field;
    const auto& m = a[u];
    return {f.add(m[0], m[0]), f.add(m[1], m[2]), f.add(m[2], m[1]), f.add(m[3], m[3])};
}

qclan linear_qclan(int q) {
    finite_field f = finite_field::create(q);
    int bb = -1, cc = -1;
    for (int b = 0; b < q && bb < 0; ++b)
        for (int c = 0; c < q && bb < 0; ++c) {
            bool irreducible = true;
            for (int x = 0; x < q && irreducible; ++x)
                if (f.add(f.add(f.mul(x, x), f.mul(b, x)), c) == 0)
                    irreducible = false;
            if (irreducible) {
                bb = b;
                cc = c;
            }
        }
    if (bb < 0)
        throw error(errc::construction_invalid, "no irreducible quadratic found");
    qclan clan{f, {}};
    for (int u = 0; u < q; ++u)
        clan.a.push_back({u, f.mul(u, bb), 0, f.mul(u, cc)});
    if (auto bad = qclan_violation(clan))
        throw error(errc::construction_invalid, *bad);
    return clan;
}

std::optional<std::string> qclan_violation(const qclan& c) {
    const finite_field& f = c.field;
    int q = f.q();
    if (int(c.a.size()) != q)
        return "clan has " + std::to_string(c.a.size()) + " matrices, expected " + std::to_string(q);
    for (int u = 0; u < q; ++u)
        for (int v = 0; v < q; ++v) {
            if (u == v)
                continue;
            std::array<int, 4> d;
            for (int i = 0; i < 4; ++i)
                d[i] = f.sub(c.a[u][i], c.a[v][i]);
            for (int x = 0; x < q; ++x)
                for (int y = 0; y < q; ++y) {
                    if (x == 0 && y == 0)
                        continue;
                    int val = f.add(f.add(f.mul(f.mul(x, x), d[0]), f.mul(f.mul(x, y), f.add(d[1], d[2]))),
                                    f.mul(f.mul(y, y), d[3]));
                    if (val == 0)
                        return "difference A_" + std::to_string(u) + " - A_" + std::to_string(v) +
                               " vanishes on alpha = (" + std::to_string(x) + "," + std::to_string(y) +
                               ")";
                }
        }
    return std::nullopt;
}

kantor_validation validate_kantor_family(
    const group_table& g, const std::vector<std::pair<subgroup_set, subgroup_set>>& members) {
    kantor_validation r;
    auto flag = [&](std::string clause, std::string witness) {
        r.violations.push_back({std::move(clause), std::move(witness)});
    };

    if (members.empty()) {
        flag("cardinality", "family has no members");
        return r;
    }
    std::size_t s = members[0].first.size();
    std::size_t st = members[0].second.size();
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i].first.size() != s)
            flag("cardinality", "member " + std::to_string(i) + " has size " +
                                    std::to_string(members[i].first.size()) + ", member 0 has " +
                                    std::to_string(s));
        if (members[i].second.size() != st)
            flag("cardinality", "star " + std::to_string(i) + " has size " +
                                    std::to_string(members[i].second.size()) + ", star 0 has " +
                                    std::to_string(st));
    }
    if (s == 0 || st % s != 0) {
        flag("cardinality", "star size " + std::to_string(st) + " is not a multiple of " +
                                std::to_string(s));
        return r;
    }
    r.s = int(s);
    r.t = int(st / s);
    if (members.size() != std::size_t(r.t) + 1)
        flag("cardinality", "family has " + std::to_string(members.size()) + " members, expected t+1 = " +
                                std::to_string(r.t + 1));
    if ((long long)g.n != (long long)s * s * r.t)
        flag("group-order", "group order " + std::to_string(g.n) + " differs from s^2 t = " +
                                std::to_string((long long)s * s * r.t));

    for (std::size_t i = 0; i < members.size(); ++i) {
        if (!is_subgroup(g, members[i].first))
            flag("subgroup", "member " + std::to_string(i) + " is not a subgroup");
        if (!is_subgroup(g, members[i].second))
            flag("subgroup", "star " + std::to_string(i) + " is not a subgroup");
        for (int x : members[i].first)
            if (!std::binary_search(members[i].second.begin(), members[i].second.end(), x)) {
                flag("containment", "element " + std::to_string(x) + " of member " +
                                        std::to_string(i) + " is outside its star");
                break;
            }
    }

    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i == j)
                continue;
            for (int x : members[j].first) {
                if (x == 0)
                    continue;
                if (std::binary_search(members[i].second.begin(), members[i].second.end(), x)) {
                    flag("star-intersection", "element " + std::to_string(x) + " lies in star " +
                                                  std::to_string(i) + " and member " +
                                                  std::to_string(j));
                    break;
                }
            }
        }

    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i == j)
                continue;
            bitset prod(g.n);
            for (int a : members[i].first)
                for (int b : members[j].first)
                    prod.set(g.mul(a, b));
            for (std::size_t k = 0; k < members.size(); ++k) {
                if (k == i || k == j)
                    continue;
                for (int x : members[k].first)
                    if (x != 0 && prod.test(x)) {
                        flag("product-intersection",
                             "element " + std::to_string(x) + " of member " + std::to_string(k) +
                                 " lies in the product of members " + std::to_string(i) + " and " +
                                 std::to_string(j));
                        break;
                    }
            }
        }

    r.ok = r.violations.empty();
    return r;
}

namespace {

kantor_family checked_family(group_table g, std::vector<std::pair<subgroup_set, subgroup_set>> members,
                             const std::string& what) {
    auto v = validate_kantor_family(g, members);
    if (!v.ok) {
        std::string msg = what + " family fails validation:";
        for (const auto& viol : v.violations)
            msg += " [" + viol.clause + "] " + viol.witness + ";";
        throw error(errc::construction_invalid, msg);
    }
    kantor_family fam;
    fam.group = std::move(g);
    fam.members = std::move(members);
    fam.s = v.s;
    fam.t = v.t;
    return fam;
}

} // namespace

kantor_family qclan_kantor_family(const qclan& clan) {
    if (auto bad = qclan_violation(clan))
        throw error(errc::construction_invalid, *bad);
    const finite_field& f = clan.field;
    int q = f.q();
    group_table g = heisenberg(2, q);
    long long q2 = (long long)q * q, q3 = q2 * q;
    auto pack = [&](int a0, int a1, int c, int b0, int b1) {
        return int(((long long)a0 * q + a1) * q3 + (long long)c * q2 + (long long)b0 * q + b1);
    };

    std::vector<std::pair<subgroup_set, subgroup_set>> members;
    for (int u = 0; u < q; ++u) {
        const auto& m = clan.a[u];
        auto k = clan.k(u);
        subgroup_set e, estar;
        for (int a0 = 0; a0 < q; ++a0)
            for (int a1 = 0; a1 < q; ++a1) {
                // c = alpha A alpha^T, beta = alpha K
                int c = f.add(f.add(f.mul(f.mul(a0, a0), m[0]), f.mul(f.mul(a0, a1), f.add(m[1], m[2]))),
                              f.mul(f.mul(a1, a1), m[3]));
                int b0 = f.add(f.mul(a0, k[0]), f.mul(a1, k[2]));
                int b1 = f.add(f.mul(a0, k[1]), f.mul(a1, k[3]));
                e.push_back(pack(a0, a1, c, b0, b1));
                for (int z = 0; z < q; ++z)
                    estar.push_back(pack(a0, a1, f.add(c, z), b0, b1));
            }
        std::sort(e.begin(), e.end());
        std::sort(estar.begin(), estar.end());
        members.push_back({std::move(e), std::move(estar)});
    }
    subgroup_set einf, einfstar;
    for (int b0 = 0; b0 < q; ++b0)
        for (int b1 = 0; b1 < q; ++b1) {
            einf.push_back(pack(0, 0, 0, b0, b1));
            for (int c = 0; c < q; ++c)
                einfstar.push_back(pack(0, 0, c, b0, b1));
        }
    std::sort(einf.begin(), einf.end());
    std::sort(einfstar.begin(), einfstar.end());
    members.push_back({std::move(einf), std::move(einfstar)});
    return checked_family(std::move(g), std::move(members), "q-clan");
}

kantor_family w3_kantor_family(int q) {
    if (q > 5)
        throw error(errc::size_budget_exceeded, "q = " + std::to_string(q) + " exceeds the budget");
    finite_field f = finite_field::create(q);
    if (q % 2 == 1) {
        group_table g = heisenberg(1, q);
        auto pack = [&](int a, int c, int b) { return a * q * q + c * q + b; };
        std::vector<std::pair<subgroup_set, subgroup_set>> members;
        for (int u = 0; u < q; ++u) {
            subgroup_set e, estar;
            for (int a = 0; a < q; ++a) {
                // The beta slot carries 2ua: the doubled coefficient makes
                // the cross term of the product close within the set.
                int c = f.mul(u, f.mul(a, a));
                int b = f.mul(f.add(u, u), a);
                e.push_back(pack(a, c, b));
                for (int z = 0; z < q; ++z)
                    estar.push_back(pack(a, f.add(c, z), b));
            }
            std::sort(e.begin(), e.end());
            std::sort(estar.begin(), estar.end());
            members.push_back({std::move(e), std::move(estar)});
        }
        subgroup_set einf, einfstar;
        for (int b = 0; b < q; ++b) {
            einf.push_back(pack(0, 0, b));
            for (int c = 0; c < q; ++c)
                einfstar.push_back(pack(0, c, b));
        }
        std::sort(einf.begin(), einf.end());
        std::sort(einfstar.begin(), einfstar.end());
        members.push_back({std::move(einf), std::move(einfstar)});
        return checked_family(std::move(g), std::move(members), "symplectic");
    }

    // Even q: exhaustive search over the bundled order-q^3 catalog.
    auto catalog = catalog_groups(q * q * q);
    search_budget budget;
    budget.limit = 1;
    for (const auto& entry : catalog.entries) {
        auto found = search_kantor_families(entry.group, q, q, false, budget);
        if (!found.families.empty()) {
            kantor_family fam = found.families.front();
            return checked_family(std::move(fam.group), std::move(fam.members), "searched");
        }
    }
    throw error(errc::construction_invalid, "no type-(" + std::to_string(q) + "," + std::to_string(q) +
                                                ") family exists in the bundled catalog");
}

coset_geometry_result coset_geometry(const kantor_family& fam, bool left_cosets) {
    auto check = validate_kantor_family(fam.group, fam.members);
    if (!check.ok)
        throw error(errc::construction_invalid,
                    "coset geometry needs a valid family: [" + check.violations[0].clause + "] " +
                        check.violations[0].witness);
    const group_table& g = fam.group;
    int s = check.s, t = check.t, n = g.n;

    auto coset_of = [&](const subgroup_set& sub, int rep) {
        subgroup_set c;
        c.reserve(sub.size());
        for (int e : sub)
            c.push_back(left_cosets ? g.mul(rep, e) : g.mul(e, rep));
        std::sort(c.begin(), c.end());
        return c;
    };

    // Star cosets become points, small cosets become lines; both are
    // enumerated by ascending least member within each family index.
    std::vector<std::vector<int>> star_owner(t + 1, std::vector<int>(n, -1));
    std::vector<std::vector<int>> star_reps(t + 1);
    std::vector<std::vector<int>> small_owner(t + 1, std::vector<int>(n, -1));
    std::vector<std::vector<subgroup_set>> small_cosets(t + 1);
    for (int i = 0; i <= t; ++i) {
        for (int rep = 0; rep < n; ++rep) {
            if (star_owner[i][rep] >= 0)
                continue;
            int id = int(star_reps[i].size());
            star_reps[i].push_back(rep);
            for (int e : coset_of(fam.members[i].second, rep))
                star_owner[i][e] = id;
        }
        for (int rep = 0; rep < n; ++rep) {
            if (small_owner[i][rep] >= 0)
                continue;
            int id = int(small_cosets[i].size());
            auto c = coset_of(fam.members[i].first, rep);
            for (int e : c)
                small_owner[i][e] = id;
            small_cosets[i].push_back(std::move(c));
        }
    }

    int star_base = n;                    // then s cosets per family
    int infinity = n + (t + 1) * s;
    int total_points = infinity + 1;
    auto star_point = [&](int i, int id) { return star_base + i * s + id; };

    std::vector<std::vector<int>> lines;
    std::vector<std::string> line_tags;
    for (int i = 0; i <= t; ++i)
        for (int id = 0; id < int(small_cosets[i].size()); ++id) {
            std::vector<int> line = small_cosets[i][id];
            int rep = line[0];
            line.push_back(star_point(i, star_owner[i][rep]));
            lines.push_back(std::move(line));
            line_tags.push_back("E" + std::to_string(i) + "g" + std::to_string(rep));
        }
    for (int i = 0; i <= t; ++i) {
        std::vector<int> pencil;
        for (int id = 0; id < s; ++id)
            pencil.push_back(star_point(i, id));
        pencil.push_back(infinity);
        lines.push_back(std::move(pencil));
        line_tags.push_back("[E" + std::to_string(i) + "]");
    }

    coset_geometry_result out;
    out.geometry = make_geometry(total_points, lines);
    out.geometry.line_tags = std::move(line_tags);
    out.geometry.point_tags.resize(total_points);
    for (int e = 0; e < n; ++e)
        out.geometry.point_tags[e] = "g" + std::to_string(e);
    for (int i = 0; i <= t; ++i)
        for (int id = 0; id < s; ++id)
            out.geometry.point_tags[star_point(i, id)] =
                "E" + std::to_string(i) + "*g" + std::to_string(star_reps[i][id]);
    out.geometry.point_tags[infinity] = "(infinity)";
    out.infinity = infinity;

    // Right multiplication permutes right cosets; for the left build the
    // acting map is x -> h^-1 x so that composition stays a homomorphism.
    geometry_action act;
    act.group = g;
    act.point_perm.assign(n, std::vector<int>(total_points));
    act.line_perm.assign(n, std::vector<int>(lines.size()));
    int pencil_base = int(lines.size()) - (t + 1);
    std::vector<int> line_base(t + 2, 0);
    for (int i = 0; i < t + 1; ++i)
        line_base[i + 1] = line_base[i] + int(small_cosets[i].size());
    for (int h = 0; h < n; ++h) {
        auto move_elt = [&](int x) { return left_cosets ? g.mul(g.inv(h), x) : g.mul(x, h); };
        for (int e = 0; e < n; ++e)
            act.point_perm[h][e] = move_elt(e);
        for (int i = 0; i <= t; ++i)
            for (int id = 0; id < s; ++id)
                act.point_perm[h][star_point(i, id)] =
                    star_point(i, star_owner[i][move_elt(star_reps[i][id])]);
        act.point_perm[h][infinity] = infinity;
        for (int i = 0; i <= t; ++i)
            for (int id = 0; id < int(small_cosets[i].size()); ++id)
                act.line_perm[h][line_base[i] + id] =
                    line_base[i] + small_owner[i][move_elt(small_cosets[i][id][0])];
        for (int i = 0; i <= t; ++i)
            act.line_perm[h][pencil_base + i] = pencil_base + i;
    }
    out.action = std::move(act);
    return out;
}

} // namespace gqlab
