#include "gqlab/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gqlab/bitset.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gqlab {

namespace {

int resolve_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs <= 0) return omp_get_max_threads();
    return jobs;
#else
    (void)jobs;
    return 1;
#endif
}

std::string triple_str(int a, int b, int c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

} // namespace

std::optional<std::array<int, 3>> associativity_witness_serial(const std::vector<uint16_t>& tab, int n) {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = tab[size_t(a) * n + b];
            for (int c = 0; c < n; ++c) {
                int bc = tab[size_t(b) * n + c];
                if (tab[size_t(ab) * n + c] != tab[size_t(a) * n + bc])
                    return std::array<int, 3>{a, b, c};
            }
        }
    return std::nullopt;
}

std::optional<std::array<int, 3>> associativity_witness_parallel(const std::vector<uint16_t>& tab, int n,
                                                                 int jobs) {
    // The least witness is wanted. Rows are scanned in parallel; once some
    // row holds a witness, higher rows are skipped and the minimum row wins.
    int best_a = n;
    std::array<int, 3> best{n, n, n};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(jobs))
#endif
    for (int a = 0; a < n; ++a) {
        int cur;
#ifdef _OPENMP
#pragma omp atomic read
        cur = best_a;
#else
        cur = best_a;
#endif
        if (cur < a) continue;
        for (int b = 0; b < n; ++b) {
            int ab = tab[size_t(a) * n + b];
            for (int c = 0; c < n; ++c) {
                int bc = tab[size_t(b) * n + c];
                if (tab[size_t(ab) * n + c] != tab[size_t(a) * n + bc]) {
#ifdef _OPENMP
#pragma omp critical(gqlab_assoc)
#endif
                    {
                        if (a < best[0]) {
                            best = {a, b, c};
                            best_a = a;
                        }
                    }
                    b = n; // leave row; (b,c) is least within this row already
                    break;
                }
            }
        }
    }
    (void)jobs;
    if (best[0] == n) return std::nullopt;
    return best;
}

group_table group_from_table(const std::vector<std::vector<int>>& table, int jobs) {
    int n = int(table.size());
    if (n == 0) throw error(errc::invalid_argument, "empty multiplication table");
    if (n > kMaxGroupOrder)
        throw error(errc::size_budget_exceeded,
                    "order " + std::to_string(n) + " exceeds table budget " + std::to_string(kMaxGroupOrder));
    std::vector<uint16_t> flat(size_t(n) * n);
    for (int a = 0; a < n; ++a) {
        if (int(table[a].size()) != n) throw error(errc::invalid_argument, "table is not square");
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n)
                throw error(errc::invalid_argument, "entry out of range at (" + std::to_string(a) + "," +
                                                        std::to_string(b) + ")");
            flat[size_t(a) * n + b] = uint16_t(v);
        }
    }

    int e = -1;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = flat[size_t(cand) * n + x] == x && flat[size_t(x) * n + cand] == x;
        if (ok) {
            e = cand;
            break;
        }
    }
    if (e < 0) throw error(errc::no_identity, "no two-sided identity element");

    for (int a = 0; a < n; ++a) {
        bool ok = false;
        for (int b = 0; b < n && !ok; ++b)
            ok = flat[size_t(a) * n + b] == e && flat[size_t(b) * n + a] == e;
        if (!ok) throw error(errc::no_inverse, "element " + std::to_string(a) + " has no two-sided inverse");
    }

    auto witness = associativity_witness_parallel(flat, n, jobs);
    if (witness) {
        auto [a, b, c] = *witness;
        throw error(errc::not_associative, "failing triple " + triple_str(a, b, c));
    }

    group_table g;
    g.n = n;
    if (e == 0) {
        g.mul_tab = std::move(flat);
    } else {
        // Conjugate the table by the transposition (0 e).
        auto s = [e](int x) { return x == 0 ? e : (x == e ? 0 : x); };
        g.mul_tab.assign(size_t(n) * n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                g.mul_tab[size_t(a) * n + b] = uint16_t(s(flat[size_t(s(a)) * n + s(b)]));
    }
    g.inv_tab.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == 0) {
                g.inv_tab[a] = uint16_t(b);
                break;
            }
    return g;
}

subgroup_set subgroup_generated(const group_table& g, const std::vector<int>& gens) {
    bitset in(g.n);
    std::vector<int> members{0};
    in.set(0);
    for (int x : gens) {
        if (x < 0 || x >= g.n) throw error(errc::invalid_argument, "generator index out of range");
        if (!in.test(x)) {
            in.set(x);
            members.push_back(x);
        }
    }
    for (size_t i = 0; i < members.size(); ++i) {
        for (size_t j = 0; j < members.size(); ++j) {
            int p = g.mul(members[i], members[j]);
            if (!in.test(p)) {
                in.set(p);
                members.push_back(p);
            }
            p = g.mul(members[j], members[i]);
            if (!in.test(p)) {
                in.set(p);
                members.push_back(p);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_subgroup(const group_table& g, const subgroup_set& s) {
    if (s.empty() || s[0] != 0) return false;
    bitset in = bitset::of(g.n, s);
    for (int a : s)
        for (int b : s)
            if (!in.test(g.mul(a, b))) return false;
    return true;
}

bool is_normal(const group_table& g, const subgroup_set& s, std::pair<int, int>* witness) {
    bitset in = bitset::of(g.n, s);
    for (int x = 0; x < g.n; ++x) {
        int xi = g.inv(x);
        for (int h : s) {
            if (!in.test(g.mul(g.mul(x, h), xi))) {
                if (witness) *witness = {h, x};
                return false;
            }
        }
    }
    return true;
}

const subgroup_set& center(const group_table& g) {
    if (!g.center_cache) {
        subgroup_set z;
        for (int x = 0; x < g.n; ++x) {
            bool c = true;
            for (int y = 0; y < g.n && c; ++y) c = g.mul(x, y) == g.mul(y, x);
            if (c) z.push_back(x);
        }
        g.center_cache = std::move(z);
    }
    return *g.center_cache;
}

const subgroup_set& derived_subgroup(const group_table& g) {
    if (!g.derived_cache) {
        std::vector<int> comms;
        for (int x = 0; x < g.n; ++x)
            for (int y = 0; y < g.n; ++y)
                comms.push_back(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        g.derived_cache = subgroup_generated(g, comms);
    }
    return *g.derived_cache;
}

int element_order(const group_table& g, int x) {
    int o = 1, y = x;
    while (y != 0) {
        y = g.mul(y, x);
        ++o;
    }
    return o;
}

int group_exponent(const group_table& g) {
    long long l = 1;
    for (int x = 0; x < g.n; ++x) {
        long long o = element_order(g, x);
        l = std::lcm(l, o);
    }
    return int(l);
}

bool is_abelian(const group_table& g) {
    for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y)
            if (g.mul(x, y) != g.mul(y, x)) return false;
    return true;
}

bool is_pgroup(const group_table& g, int* p_out) {
    int n = g.n;
    if (n == 1) return false;
    int p = 2;
    while (n % p != 0) ++p;
    while (n % p == 0) n /= p;
    if (n != 1) return false;
    if (p_out) *p_out = p;
    return true;
}

int nilpotency_class(const group_table& g) {
    if (g.n == 1) return 0;
    subgroup_set layer(g.n);
    std::iota(layer.begin(), layer.end(), 0);
    int cls = 0;
    while (layer.size() > 1) {
        std::vector<int> comms;
        for (int x = 0; x < g.n; ++x)
            for (int y : layer)
                comms.push_back(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
        std::sort(comms.begin(), comms.end());
        comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
        subgroup_set next = subgroup_generated(g, comms);
        if (next == layer) throw error(errc::invalid_argument, "group is not nilpotent");
        layer = std::move(next);
        ++cls;
    }
    return cls;
}

std::vector<subgroup_set> conjugacy_classes(const group_table& g) {
    std::vector<subgroup_set> classes;
    std::vector<char> seen(g.n, 0);
    for (int x = 0; x < g.n; ++x) {
        if (seen[x]) continue;
        std::set<int> cls;
        for (int y = 0; y < g.n; ++y) cls.insert(g.mul(g.mul(y, x), g.inv(y)));
        subgroup_set v(cls.begin(), cls.end());
        for (int m : v) seen[m] = 1;
        classes.push_back(std::move(v));
    }
    return classes;
}

const subgroup_set& frattini(const group_table& g) {
    if (!g.frattini_cache) {
        int p = 0;
        if (is_pgroup(g, &p)) {
            std::vector<int> gens;
            for (int x = 0; x < g.n; ++x) {
                for (int y = 0; y < g.n; ++y)
                    gens.push_back(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
                int xp = 0;
                for (int k = 0; k < p; ++k) xp = g.mul(xp, x);
                gens.push_back(xp);
            }
            std::sort(gens.begin(), gens.end());
            gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
            g.frattini_cache = subgroup_generated(g, gens);
        } else {
            auto maxes = maximal_subgroups(g);
            bitset acc(g.n);
            for (int x = 0; x < g.n; ++x) acc.set(x);
            for (const auto& m : maxes) {
                bitset bm = bitset::of(g.n, m);
                acc &= bm;
            }
            g.frattini_cache = acc.to_vector();
        }
    }
    return *g.frattini_cache;
}

quotient_result quotient_group(const group_table& g, const subgroup_set& n) {
    if (!is_subgroup(g, n)) throw error(errc::invalid_argument, "quotient by a non-subgroup");
    std::pair<int, int> w;
    if (!is_normal(g, n, &w))
        throw error(errc::not_normal, "conjugate of element " + std::to_string(w.first) + " by " +
                                          std::to_string(w.second) + " escapes the subgroup");
    std::vector<int> coset_of(g.n, -1);
    std::vector<int> reps;
    for (int x = 0; x < g.n; ++x) {
        if (coset_of[x] != -1) continue;
        int rep = x; // ascending scan makes x the least member of its coset
        int id = int(reps.size());
        reps.push_back(rep);
        for (int h : n) coset_of[g.mul(h, x)] = id;
    }
    int m = int(reps.size());
    quotient_result out;
    out.projection = coset_of;
    out.coset_rep = reps;
    out.group.n = m;
    out.group.mul_tab.assign(size_t(m) * m, 0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            out.group.mul_tab[size_t(a) * m + b] = uint16_t(coset_of[g.mul(reps[a], reps[b])]);
    out.group.inv_tab.assign(m, 0);
    for (int a = 0; a < m; ++a) out.group.inv_tab[a] = uint16_t(coset_of[g.inv(reps[a])]);
    if (!g.labels.empty()) {
        out.group.labels.resize(m);
        for (int a = 0; a < m; ++a) out.group.labels[a] = g.labels[reps[a]] + "N";
    }
    return out;
}

std::vector<subgroup_set> all_subgroups(const group_table& g) {
    std::set<subgroup_set> known;
    std::vector<subgroup_set> queue;
    subgroup_set triv{0};
    known.insert(triv);
    queue.push_back(triv);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        subgroup_set s = queue[qi];
        bitset in = bitset::of(g.n, s);
        for (int x = 1; x < g.n; ++x) {
            if (in.test(x)) continue;
            std::vector<int> gens = s;
            gens.push_back(x);
            subgroup_set t = subgroup_generated(g, gens);
            if (known.insert(t).second) queue.push_back(t);
        }
    }
    std::vector<subgroup_set> out(known.begin(), known.end());
    std::sort(out.begin(), out.end(), [](const subgroup_set& a, const subgroup_set& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::vector<subgroup_set> maximal_subgroups(const group_table& g) {
    int p = 0;
    if (g.n > 1 && is_pgroup(g, &p)) {
        // Index-p subgroups are the preimages of hyperplanes of G/Phi(G).
        const subgroup_set& phi = frattini(g);
        auto q = quotient_group(g, phi);
        const group_table& quo = q.group;
        // Greedy basis of the elementary abelian quotient.
        std::vector<int> basis;
        subgroup_set spanned{0};
        bitset in_span = bitset::of(quo.n, spanned);
        for (int x = 1; x < quo.n; ++x) {
            if (in_span.test(x)) continue;
            basis.push_back(x);
            std::vector<int> gens = basis;
            spanned = subgroup_generated(quo, gens);
            in_span = bitset::of(quo.n, spanned);
        }
        int r = int(basis.size());
        // Coordinates of every quotient element relative to the basis.
        std::vector<std::vector<int>> coord(quo.n);
        std::vector<int> tuple(r, 0);
        while (true) {
            int el = 0;
            for (int i = 0; i < r; ++i) {
                for (int k = 0; k < tuple[i]; ++k) el = quo.mul(el, basis[i]);
            }
            coord[el] = tuple;
            int i = 0;
            while (i < r && ++tuple[i] == p) tuple[i++] = 0;
            if (i == r) break;
        }
        std::vector<subgroup_set> out;
        // Normalized functionals: first nonzero coefficient equals 1.
        std::vector<int> f(r, 0);
        while (true) {
            int i = 0;
            while (i < r && ++f[i] == p) f[i++] = 0;
            if (i == r) break;
            int lead = r - 1;
            while (f[lead] == 0) --lead;
            if (f[lead] != 1) continue;
            subgroup_set m;
            for (int x = 0; x < g.n; ++x) {
                int dot = 0;
                for (int k = 0; k < r; ++k) dot += f[k] * coord[q.projection[x]][k];
                if (dot % p == 0) m.push_back(x);
            }
            out.push_back(std::move(m));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    auto subs = all_subgroups(g);
    subs.pop_back(); // the whole group sorts last
    std::vector<subgroup_set> out;
    for (size_t i = 0; i < subs.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < subs.size() && maximal; ++j) {
            if (i == j || subs[j].size() <= subs[i].size()) continue;
            maximal = !std::includes(subs[j].begin(), subs[j].end(), subs[i].begin(), subs[i].end());
        }
        if (maximal) out.push_back(subs[i]);
    }
    return out;
}

namespace {

struct group_profile {
    std::vector<int> ord;        // element -> order
    std::vector<int> class_size; // element -> conjugacy class size
    std::vector<std::pair<int, int>> census;
};

group_profile profile_of(const group_table& g) {
    group_profile pr;
    pr.ord.resize(g.n);
    for (int x = 0; x < g.n; ++x) pr.ord[x] = element_order(g, x);
    pr.class_size.assign(g.n, 0);
    for (const auto& cls : conjugacy_classes(g))
        for (int m : cls) pr.class_size[m] = int(cls.size());
    for (int x = 0; x < g.n; ++x) pr.census.push_back({pr.ord[x], pr.class_size[x]});
    std::sort(pr.census.begin(), pr.census.end());
    return pr;
}

struct iso_search {
    const group_table& a;
    const group_table& b;
    group_profile pa, pb;
    std::vector<int> gens;
    std::vector<int> map, rmap, defined;
    bool collect_all = false;
    size_t cap = SIZE_MAX;
    bool stop = false;
    std::vector<std::vector<int>> found;

    iso_search(const group_table& a_, const group_table& b_) : a(a_), b(b_) {}

    bool close_from(size_t start) {
        for (size_t pi = start; pi < defined.size(); ++pi) {
            int x = defined[pi];
            for (size_t j = 0; j < defined.size(); ++j) {
                int y = defined[j];
                int xy = a.mul(x, y), yx = a.mul(y, x);
                int hxy = b.mul(map[x], map[y]), hyx = b.mul(map[y], map[x]);
                if (map[xy] == -1) {
                    if (rmap[hxy] != -1) return false;
                    map[xy] = hxy;
                    rmap[hxy] = xy;
                    defined.push_back(xy);
                } else if (map[xy] != hxy) {
                    return false;
                }
                if (map[yx] == -1) {
                    if (rmap[hyx] != -1) return false;
                    map[yx] = hyx;
                    rmap[hyx] = yx;
                    defined.push_back(yx);
                } else if (map[yx] != hyx) {
                    return false;
                }
            }
        }
        return true;
    }

    void undo_to(size_t mark) {
        while (defined.size() > mark) {
            int x = defined.back();
            defined.pop_back();
            rmap[map[x]] = -1;
            map[x] = -1;
        }
    }

    void recurse(size_t level) {
        if (stop) return;
        if (level == gens.size()) {
            found.push_back(map);
            if (!collect_all || found.size() >= cap) stop = true;
            return;
        }
        int gx = gens[level];
        for (int cand = 0; cand < b.n && !stop; ++cand) {
            if (rmap[cand] != -1) continue;
            if (pb.ord[cand] != pa.ord[gx] || pb.class_size[cand] != pa.class_size[gx]) continue;
            size_t mark = defined.size();
            map[gx] = cand;
            rmap[cand] = gx;
            defined.push_back(gx);
            if (close_from(mark)) recurse(level + 1);
            undo_to(mark);
        }
    }

    void run() {
        pa = profile_of(a);
        pb = profile_of(b);
        if (pa.census != pb.census) return;
        // Greedy generating sequence, preferring rare high-order elements.
        std::vector<int> order_of_choice(a.n);
        std::iota(order_of_choice.begin(), order_of_choice.end(), 0);
        std::sort(order_of_choice.begin(), order_of_choice.end(), [&](int x, int y) {
            if (pa.ord[x] != pa.ord[y]) return pa.ord[x] > pa.ord[y];
            if (pa.class_size[x] != pa.class_size[y]) return pa.class_size[x] < pa.class_size[y];
            return x < y;
        });
        subgroup_set gen_span{0};
        bitset in_span = bitset::of(a.n, gen_span);
        for (int x : order_of_choice) {
            if (in_span.test(x)) continue;
            gens.push_back(x);
            gen_span = subgroup_generated(a, gens);
            in_span = bitset::of(a.n, gen_span);
            if (int(gen_span.size()) == a.n) break;
        }
        map.assign(a.n, -1);
        rmap.assign(b.n, -1);
        map[0] = 0;
        rmap[0] = 0;
        defined = {0};
        recurse(0);
    }
};

} // namespace

std::optional<std::vector<int>> groups_isomorphic(const group_table& a, const group_table& b) {
    if (a.n != b.n) return std::nullopt;
    if (a.n == 1) return std::vector<int>{0};
    iso_search s(a, b);
    s.run();
    if (s.found.empty()) return std::nullopt;
    return s.found.front();
}

std::vector<std::vector<int>> automorphism_maps(const group_table& g, size_t cap) {
    if (g.n == 1) return {std::vector<int>{0}};
    iso_search s(g, g);
    s.collect_all = true;
    s.cap = cap;
    s.run();
    if (s.found.size() >= cap)
        throw error(errc::size_budget_exceeded, "automorphism count reached cap " + std::to_string(cap));
    std::sort(s.found.begin(), s.found.end());
    return s.found;
}

sub_table_result sub_table(const group_table& g, const subgroup_set& s) {
    if (!is_subgroup(g, s)) throw error(errc::invalid_argument, "element set is not a subgroup");
    sub_table_result out;
    int m = int(s.size());
    out.index_map.assign(g.n, -1);
    out.parent_of = s; // sorted, so identity (0) comes first
    for (int i = 0; i < m; ++i) out.index_map[s[i]] = i;
    out.group.n = m;
    out.group.mul_tab.assign(size_t(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out.group.mul_tab[size_t(i) * m + j] = uint16_t(out.index_map[g.mul(s[i], s[j])]);
    out.group.inv_tab.assign(m, 0);
    for (int i = 0; i < m; ++i) out.group.inv_tab[i] = uint16_t(out.index_map[g.inv(s[i])]);
    if (!g.labels.empty()) {
        out.group.labels.resize(m);
        for (int i = 0; i < m; ++i) out.group.labels[i] = g.labels[s[i]];
    }
    return out;
}

group_table cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return group_from_table(t);
}

group_table dihedral_group(int order) {
    if (order < 4 || order % 2 != 0) throw error(errc::invalid_argument, "dihedral order must be even, >= 4");
    int m = order / 2;
    auto enc = [m](int k, int flip) { return flip * m + k; };
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int e1 = 0; e1 < 2; ++e1)
        for (int k1 = 0; k1 < m; ++k1)
            for (int e2 = 0; e2 < 2; ++e2)
                for (int k2 = 0; k2 < m; ++k2) {
                    int k = ((e2 ? m - k1 : k1) + k2) % m;
                    t[enc(k1, e1)][enc(k2, e2)] = enc(k, (e1 + e2) % 2);
                }
    return group_from_table(t);
}

group_table direct_product(const group_table& a, const group_table& b) {
    int n = a.n * b.n;
    if (n > kMaxGroupOrder) throw error(errc::size_budget_exceeded, "product order exceeds table budget");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    auto enc = [&](int x, int y) { return x * b.n + y; };
    for (int x1 = 0; x1 < a.n; ++x1)
        for (int y1 = 0; y1 < b.n; ++y1)
            for (int x2 = 0; x2 < a.n; ++x2)
                for (int y2 = 0; y2 < b.n; ++y2)
                    t[enc(x1, y1)][enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
    return group_from_table(t);
}

} // namespace gqlab
