#include "gqlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gqlab/bitset.hpp"
#include "gqlab/geometry.hpp"

namespace gqlab {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_seconds(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

bool is_prime(int p) {
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// order = p^k for prime p, k >= 1?
bool prime_power_base(int order, int* p_out) {
    for (int p = 2; p <= order; ++p) {
        if (!is_prime(p) || order % p != 0)
            continue;
        int m = order;
        while (m % p == 0)
            m /= p;
        if (m == 1) {
            if (p_out)
                *p_out = p;
            return true;
        }
        return false;
    }
    return false;
}

// Sorted conjugate x s x^-1 of a sorted member list.
subgroup_set conjugate_set(const group_table& g, const subgroup_set& s, int x) {
    subgroup_set out;
    out.reserve(s.size());
    int xi = g.inv(x);
    for (int m : s)
        out.push_back(g.mul(g.mul(x, m), xi));
    std::sort(out.begin(), out.end());
    return out;
}

// All subgroups of order exactly p^k found level by level; each step
// extends a subgroup by a normalizing p-element, which reaches every
// p-subgroup because maximal subgroups of p-groups are normal.
std::vector<subgroup_set> p_subgroups_of_order(const group_table& g, int p, int order,
                                               const search_budget& budget,
                                               clock_type::time_point start) {
    std::set<subgroup_set> level{{0}};
    long long nodes = 0;
    std::vector<int> p_elements;
    for (int x = 1; x < g.n; ++x) {
        int o = element_order(g, x);
        while (o % p == 0)
            o /= p;
        if (o == 1)
            p_elements.push_back(x);
    }
    for (int size = 1; size < order; size *= p) {
        std::set<subgroup_set> next;
        for (const auto& q : level) {
            // Normalizer of q in g.
            std::vector<int> normalizer;
            for (int x = 0; x < g.n; ++x)
                if (conjugate_set(g, q, x) == q)
                    normalizer.push_back(x);
            std::vector<int> gens(q.begin(), q.end());
            gens.push_back(0);
            for (int x : normalizer) {
                if (std::binary_search(q.begin(), q.end(), x))
                    continue;
                if (!std::binary_search(p_elements.begin(), p_elements.end(), x))
                    continue;
                if (++nodes > budget.max_nodes)
                    throw error(errc::budget_exceeded, "subgroup enumeration exceeded " +
                                                           std::to_string(budget.max_nodes) +
                                                           " nodes");
                if (budget.seconds > 0 && (nodes & 1023) == 0 &&
                    elapsed_seconds(start) > budget.seconds)
                    throw error(errc::budget_exceeded, "subgroup enumeration ran out of time");
                gens.back() = x;
                auto k = subgroup_generated(g, gens);
                if (int(k.size()) == size * p) {
                    next.insert(std::move(k));
                    if ((long long)next.size() > budget.max_subgroups)
                        throw error(errc::budget_exceeded,
                                    "more than " + std::to_string(budget.max_subgroups) +
                                        " subgroups");
                }
            }
        }
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

} // namespace

std::vector<subgroup_set> enumerate_subgroups(const group_table& g, int order,
                                              bool up_to_conjugacy, const search_budget& budget) {
    auto start = clock_type::now();
    if (order == 0 || order < -1 || (order > 0 && g.n % order != 0))
        return {};
    std::vector<subgroup_set> found;
    int p = 0;
    if (order > 1 && prime_power_base(order, &p) && g.n > 256) {
        found = p_subgroups_of_order(g, p, order, budget, start);
    } else {
        std::set<subgroup_set> seen{{0}};
        std::vector<subgroup_set> frontier{{0}};
        long long nodes = 0;
        while (!frontier.empty()) {
            subgroup_set h = std::move(frontier.back());
            frontier.pop_back();
            std::vector<int> gens(h.begin(), h.end());
            gens.push_back(0);
            for (int x = 1; x < g.n; ++x) {
                if (std::binary_search(h.begin(), h.end(), x))
                    continue;
                if (++nodes > budget.max_nodes)
                    throw error(errc::budget_exceeded, "subgroup enumeration exceeded " +
                                                           std::to_string(budget.max_nodes) +
                                                           " nodes");
                if (budget.seconds > 0 && (nodes & 1023) == 0 &&
                    elapsed_seconds(start) > budget.seconds)
                    throw error(errc::budget_exceeded, "subgroup enumeration ran out of time");
                gens.back() = x;
                auto k = subgroup_generated(g, gens);
                if (order != -1 && int(k.size()) > order)
                    continue;
                if (seen.insert(k).second) {
                    if ((long long)seen.size() > budget.max_subgroups)
                        throw error(errc::budget_exceeded,
                                    "more than " + std::to_string(budget.max_subgroups) +
                                        " subgroups");
                    frontier.push_back(std::move(k));
                }
            }
        }
        for (const auto& s : seen)
            if (order == -1 || int(s.size()) == order)
                found.push_back(s);
    }
    if (up_to_conjugacy) {
        std::set<subgroup_set> reps;
        for (const auto& s : found) {
            subgroup_set least = s;
            for (int x = 1; x < g.n; ++x)
                least = std::min(least, conjugate_set(g, s, x));
            reps.insert(std::move(least));
        }
        found.assign(reps.begin(), reps.end());
    }
    std::sort(found.begin(), found.end(), [](const subgroup_set& a, const subgroup_set& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return found;
}

namespace {

// Shared machinery of the family search. Members are chosen as an
// ascending index sequence into the candidate list, so each unordered
// family is visited exactly once.
struct kantor_space {
    const group_table& g;
    int s, t;
    std::vector<subgroup_set> cands;
    std::vector<bitset> cbits;

    kantor_space(const group_table& g_, int s_, int t_, const search_budget& budget)
        : g(g_), s(s_), t(t_) {
        cands = enumerate_subgroups(g, s, false, budget);
        for (const auto& c : cands)
            cbits.push_back(bitset::of(g.n, c));
    }

    bitset product_bits(int a, int b) const {
        bitset out(g.n);
        for (int x : cands[a])
            for (int y : cands[b])
                out.set(g.mul(x, y));
        return out;
    }

    // The star of a member is forced once all members are fixed: any
    // non-member element of E_i* would factor as e_j e_i with e_j a
    // non-identity element of E_i* cap E_j, so E_i* is exactly
    // E_i together with everything outside every product E_j E_i.
    std::optional<kantor_family> finish(const std::vector<int>& chosen) const {
        std::vector<std::pair<subgroup_set, subgroup_set>> members;
        for (int idx : chosen)
            members.push_back({cands[idx], {}});
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            bitset u(g.n);
            for (std::size_t j = 0; j < chosen.size(); ++j) {
                if (j == i)
                    continue;
                for (int a : cands[chosen[j]])
                    for (int b : cands[chosen[i]])
                        u.set(g.mul(a, b));
            }
            subgroup_set star;
            for (int x = 0; x < g.n; ++x)
                if (!u.test(x) || std::binary_search(members[i].first.begin(),
                                                     members[i].first.end(), x))
                    star.push_back(x);
            if (int(star.size()) != s * t)
                return std::nullopt;
            members[i].second = std::move(star);
        }
        auto v = validate_kantor_family(g, members);
        if (!v.ok)
            return std::nullopt;
        kantor_family fam;
        fam.group = g;
        fam.members = std::move(members);
        fam.s = v.s;
        fam.t = v.t;
        return fam;
    }

    // Can candidate c join the chosen prefix? forbidden holds every
    // pairwise product (and every member) of the prefix; the loop adds
    // the product checks that involve c itself.
    bool compatible(const std::vector<int>& chosen, const bitset& forbidden, int c,
                    std::vector<bitset>* new_products) const {
        if (cbits[c].count_and(forbidden) != 1)
            return false;
        for (int a : chosen) {
            bitset p1 = product_bits(a, c);
            bitset p2 = product_bits(c, a);
            for (int b : chosen)
                if (b != a &&
                    (cbits[b].count_and(p1) != 1 || cbits[b].count_and(p2) != 1))
                    return false;
            if (new_products) {
                new_products->push_back(std::move(p1));
                new_products->push_back(std::move(p2));
            }
        }
        return true;
    }
};

struct search_counters {
    std::atomic<long long> nodes{0};
    std::atomic<long long> found{0};
    std::atomic<bool> stop{false};
    bool budget_hit = false;
    std::atomic<bool> budget_flag{false};
};

void kantor_dfs(const kantor_space& sp, const search_budget& budget,
                clock_type::time_point start, std::vector<int>& chosen, const bitset& forbidden,
                int next, search_counters& ctr, std::vector<kantor_family>& out) {
    if (int(chosen.size()) == sp.t + 1) {
        if (auto fam = sp.finish(chosen)) {
            out.push_back(std::move(*fam));
            long long total = ++ctr.found;
            if (budget.limit > 0 && total >= budget.limit)
                ctr.stop = true;
        }
        return;
    }
    int room = sp.t + 1 - int(chosen.size());
    for (int c = next; c + room <= int(sp.cands.size()); ++c) {
        if (ctr.stop)
            return;
        long long n = ++ctr.nodes;
        if (n > budget.max_nodes ||
            (budget.seconds > 0 && (n & 1023) == 0 && elapsed_seconds(start) > budget.seconds)) {
            ctr.budget_flag = true;
            ctr.stop = true;
            return;
        }
        std::vector<bitset> products;
        if (!sp.compatible(chosen, forbidden, c, &products))
            continue;
        bitset next_forbidden = forbidden;
        next_forbidden |= sp.cbits[c];
        for (const auto& p : products)
            next_forbidden |= p;
        chosen.push_back(c);
        kantor_dfs(sp, budget, start, chosen, next_forbidden, c + 1, ctr, out);
        chosen.pop_back();
    }
}

void sort_families(std::vector<kantor_family>& fams) {
    std::sort(fams.begin(), fams.end(), [](const kantor_family& a, const kantor_family& b) {
        return a.members < b.members;
    });
}

} // namespace

kantor_search_result search_kantor_families_serial(const group_table& g, int s, int t,
                                                   const search_budget& budget) {
    if (s < 1 || t < 1)
        throw error(errc::invalid_argument, "family type must be positive");
    kantor_search_result result;
    if ((long long)g.n != (long long)s * s * t)
        return result;
    auto start = clock_type::now();
    // A budget hit during candidate enumeration makes the whole search
    // incomplete rather than an exception.
    std::optional<kantor_space> sp;
    try {
        sp.emplace(g, s, t, budget);
    } catch (const error& e) {
        if (e.code() != errc::budget_exceeded)
            throw;
        result.complete = false;
        return result;
    }
    search_counters ctr;
    std::vector<int> chosen;
    bitset forbidden(g.n);
    forbidden.set(0);
    kantor_dfs(*sp, budget, start, chosen, forbidden, 0, ctr, result.families);
    result.nodes = ctr.nodes;
    result.complete = !ctr.stop;
    sort_families(result.families);
    return result;
}

kantor_search_result search_kantor_families_parallel(const group_table& g, int s, int t,
                                                     const search_budget& budget) {
    if (s < 1 || t < 1)
        throw error(errc::invalid_argument, "family type must be positive");
    kantor_search_result result;
    if ((long long)g.n != (long long)s * s * t)
        return result;
    auto start = clock_type::now();
    std::optional<kantor_space> sp_holder;
    try {
        sp_holder.emplace(g, s, t, budget);
    } catch (const error& e) {
        if (e.code() != errc::budget_exceeded)
            throw;
        result.complete = false;
        return result;
    }
    kantor_space& sp = *sp_holder;
    search_counters ctr;
    int first_count = int(sp.cands.size());
    std::vector<std::vector<kantor_family>> sinks(std::max(first_count, 1));

#ifdef _OPENMP
    int jobs = budget.jobs > 0 ? budget.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
    for (int c = 0; c < first_count; ++c) {
        if (ctr.stop)
            continue;
        long long n = ++ctr.nodes;
        if (n > budget.max_nodes ||
            (budget.seconds > 0 && elapsed_seconds(start) > budget.seconds)) {
            ctr.budget_flag = true;
            ctr.stop = true;
            continue;
        }
        if (c + sp.t + 1 > first_count)
            continue;
        std::vector<int> chosen{c};
        bitset forbidden(g.n);
        forbidden.set(0);
        forbidden |= sp.cbits[c];
        kantor_dfs(sp, budget, start, chosen, forbidden, c + 1, ctr, sinks[c]);
    }
    for (auto& sink : sinks)
        for (auto& fam : sink)
            result.families.push_back(std::move(fam));
    result.nodes = ctr.nodes;
    result.complete = !ctr.stop;
    sort_families(result.families);
    return result;
}

namespace {

// Orbit representatives of the automorphism action on families. A family
// is keyed by its sorted member list; the orbit key is the least image
// under any group automorphism; within an orbit the least family is kept.
std::vector<kantor_family> reduce_modulo_aut(const group_table& g,
                                             std::vector<kantor_family> fams) {
    auto auts = automorphism_maps(g);
    auto member_key = [](const kantor_family& f) {
        std::vector<subgroup_set> key;
        for (const auto& m : f.members)
            key.push_back(m.first);
        std::sort(key.begin(), key.end());
        return key;
    };
    std::map<std::vector<subgroup_set>, kantor_family> reps;
    for (auto& f : fams) {
        std::vector<subgroup_set> least = member_key(f);
        for (const auto& phi : auts) {
            std::vector<subgroup_set> image;
            for (const auto& m : f.members) {
                subgroup_set e;
                for (int x : m.first)
                    e.push_back(phi[x]);
                std::sort(e.begin(), e.end());
                image.push_back(std::move(e));
            }
            std::sort(image.begin(), image.end());
            least = std::min(least, image);
        }
        auto it = reps.find(least);
        if (it == reps.end() || member_key(f) < member_key(it->second))
            reps.insert_or_assign(least, std::move(f));
    }
    std::vector<kantor_family> out;
    for (auto& [key, fam] : reps)
        out.push_back(std::move(fam));
    sort_families(out);
    return out;
}

} // namespace

kantor_search_result search_kantor_families(const group_table& g, int s, int t, bool modulo_aut,
                                            const search_budget& budget) {
    // A result limit makes the answer depend on visit order, so it runs on
    // the serial core where that order is the lexicographic one.
    kantor_search_result result = (budget.jobs == 1 || budget.limit > 0)
                                      ? search_kantor_families_serial(g, s, t, budget)
                                      : search_kantor_families_parallel(g, s, t, budget);
    if (modulo_aut)
        result.families = reduce_modulo_aut(g, result.families);
    return result;
}

namespace {

std::vector<int> compose_pts(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = g[f[i]];
    return out;
}

struct pts_hash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= std::size_t(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Line permutation induced by a point permutation: each line maps to the
// line whose point set is the image of its own.
std::vector<int> lines_from_pts(const incidence_geometry& geo, const std::vector<int>& pts,
                                const std::map<std::vector<int>, int>& line_index) {
    std::vector<int> out(geo.num_lines());
    for (int j = 0; j < geo.num_lines(); ++j) {
        std::vector<int> image;
        for (int p : geo.lines[j])
            image.push_back(pts[p]);
        std::sort(image.begin(), image.end());
        auto it = line_index.find(image);
        if (it == line_index.end())
            throw error(errc::invalid_action, "point map does not preserve lines");
        out[j] = it->second;
    }
    return out;
}

} // namespace

elation_search_result search_elation_groups(const incidence_geometry& geo, int x,
                                            const search_budget& budget) {
    if (x < 0 || x >= geo.points)
        throw error(errc::invalid_point, "point " + std::to_string(x) + " out of range");
    gq_order order = verify_gq(geo);
    int target = order.s * order.s * order.t;

    auto ag = automorphism_group(geo);

    // Stabilizer of x from the point orbit of x: transversal words u with
    // x^u = y give Schreier generators u g (transversal(x^{ug}))^{-1}.
    std::vector<std::vector<int>> gen_pts;
    for (const auto& g : ag.generators)
        gen_pts.push_back(g.pts);
    std::vector<int> id_pts(geo.points);
    for (int i = 0; i < geo.points; ++i)
        id_pts[i] = i;
    std::map<int, std::vector<int>> transversal{{x, id_pts}};
    std::vector<int> orbit{x};
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& g : gen_pts) {
            int y = g[orbit[i]];
            if (!transversal.count(y)) {
                transversal[y] = compose_pts(transversal[orbit[i]], g);
                orbit.push_back(y);
            }
        }
    std::set<std::vector<int>> stab_set;
    std::vector<std::vector<int>> stab_frontier;
    auto add_stab = [&](const std::vector<int>& u) {
        if (u[x] != x)
            throw error(errc::invalid_action, "stabilizer closure escaped the stabilizer");
        if (stab_set.insert(u).second)
            stab_frontier.push_back(u);
    };
    add_stab(id_pts);
    std::vector<std::vector<int>> schreier;
    for (int y : orbit)
        for (const auto& g : gen_pts) {
            const auto& u = transversal[y];
            auto ug = compose_pts(u, g);
            const auto& v = transversal[ug[x]];
            std::vector<int> vinv(geo.points);
            for (int i = 0; i < geo.points; ++i)
                vinv[v[i]] = i;
            schreier.push_back(compose_pts(ug, vinv));
        }
    for (const auto& s : schreier)
        add_stab(s);
    for (std::size_t i = 0; i < stab_frontier.size(); ++i) {
        auto u = stab_frontier[i];
        for (const auto& s : schreier)
            add_stab(compose_pts(u, s));
    }
    std::vector<std::vector<int>> stab(stab_set.begin(), stab_set.end());
    long long stab_order = (long long)stab.size();
    if (stab_order * (long long)orbit.size() != ag.order)
        throw error(errc::invalid_action, "orbit-stabilizer count does not match the group order");

    elation_search_result result;
    result.stabilizer_order = stab_order;
    if (stab_order % target != 0 || stab_order > kMaxGroupOrder)
        return result;

    // Abstract table of the stabilizer, identity first. Composition of
    // permutations is associative by nature, so the table is built
    // directly instead of going through full table validation.
    std::rotate(stab.begin(),
                std::find(stab.begin(), stab.end(), id_pts), stab.end());
    std::sort(stab.begin() + 1, stab.end());
    std::unordered_map<std::vector<int>, int, pts_hash> index;
    for (int i = 0; i < int(stab.size()); ++i)
        index[stab[i]] = i;
    int m = int(stab.size());
    group_table stab_table;
    stab_table.n = m;
    stab_table.mul_tab.resize(std::size_t(m) * m);
    stab_table.inv_tab.assign(m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int c = index.at(compose_pts(stab[a], stab[b]));
            stab_table.mul_tab[std::size_t(a) * m + b] = uint16_t(c);
            if (c == 0)
                stab_table.inv_tab[a] = uint16_t(b);
        }

    std::map<std::vector<int>, int> line_index;
    for (int j = 0; j < geo.num_lines(); ++j)
        line_index[geo.lines[j]] = j;

    std::vector<subgroup_set> candidates;
    bool complete = true;
    try {
        candidates = enumerate_subgroups(stab_table, target, false, budget);
    } catch (const error& e) {
        if (e.code() != errc::budget_exceeded)
            throw;
        complete = false;
    }

    std::vector<subgroup_set> elation_subgroups;
    for (const auto& sub : candidates) {
        geometry_action act;
        auto st = sub_table(stab_table, sub);
        act.group = st.group;
        for (int k = 0; k < st.group.n; ++k) {
            const auto& pts = stab[st.parent_of[k]];
            act.point_perm.push_back(pts);
            act.line_perm.push_back(lines_from_pts(geo, pts, line_index));
        }
        auto report = is_elation_action(geo, x, act);
        if (report.elation)
            elation_subgroups.push_back(sub);
    }

    // Group the hits by abstract isomorphism.
    std::vector<group_table> rep_tables;
    std::vector<subgroup_set> rep_sets;
    std::vector<int> counts;
    for (const auto& sub : elation_subgroups) {
        auto st = sub_table(stab_table, sub);
        bool matched = false;
        for (std::size_t i = 0; i < rep_tables.size() && !matched; ++i)
            if (groups_isomorphic(rep_tables[i], st.group)) {
                ++counts[i];
                matched = true;
            }
        if (!matched) {
            rep_tables.push_back(st.group);
            rep_sets.push_back(sub);
            counts.push_back(1);
        }
    }
    for (std::size_t i = 0; i < rep_tables.size(); ++i) {
        elation_class cls;
        cls.group = rep_tables[i];
        cls.count = counts[i];
        auto st = sub_table(stab_table, rep_sets[i]);
        for (int k = 0; k < st.group.n; ++k) {
            perm_pair pp;
            pp.pts = stab[st.parent_of[k]];
            pp.lns = lines_from_pts(geo, pp.pts, line_index);
            cls.elements.push_back(std::move(pp));
        }
        result.classes.push_back(std::move(cls));
    }
    result.complete = complete;
    return result;
}

} // namespace gqlab
