#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "gqlab/io.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

namespace {

// Combined vertex view of the incidence graph: points first, then lines.
struct graph_view {
    int P = 0, L = 0, V = 0;
    const incidence_geometry* geo = nullptr;
    std::vector<std::vector<int>> adj;
};

graph_view make_view(const incidence_geometry& geo) {
    graph_view gv;
    gv.P = geo.points;
    gv.L = geo.num_lines();
    gv.V = gv.P + gv.L;
    gv.geo = &geo;
    gv.adj.resize(gv.V);
    for (int j = 0; j < gv.L; ++j)
        for (int p : geo.lines[j]) {
            gv.adj[p].push_back(gv.P + j);
            gv.adj[gv.P + j].push_back(p);
        }
    return gv;
}

using partition = std::vector<std::vector<int>>;

// Equitable refinement: cells split by neighbour counts into every cell
// that has ever been a cell, with subcells ordered by count. Every step
// is label-equivariant, so isomorphic inputs refine in lockstep.
void refine(const graph_view& gv, partition& cells) {
    std::deque<std::vector<int>> queue(cells.begin(), cells.end());
    std::vector<int> cnt(gv.V);
    while (!queue.empty()) {
        std::vector<int> splitter = std::move(queue.front());
        queue.pop_front();
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int s : splitter)
            for (int u : gv.adj[s])
                ++cnt[u];
        partition next;
        next.reserve(cells.size());
        for (auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(std::move(cell));
                continue;
            }
            std::map<int, std::vector<int>> groups;
            for (int v : cell)
                groups[cnt[v]].push_back(v);
            if (groups.size() == 1) {
                next.push_back(std::move(cell));
                continue;
            }
            for (auto& [key, grp] : groups) {
                queue.push_back(grp);
                next.push_back(std::move(grp));
            }
        }
        cells = std::move(next);
    }
}

partition individualized(const partition& cells, int cell_index, int v) {
    partition out;
    out.reserve(cells.size() + 1);
    for (int i = 0; i < int(cells.size()); ++i) {
        if (i != cell_index) {
            out.push_back(cells[i]);
            continue;
        }
        out.push_back({v});
        std::vector<int> rest;
        for (int w : cells[i])
            if (w != v)
                rest.push_back(w);
        out.push_back(std::move(rest));
    }
    return out;
}

void push16(std::vector<unsigned char>& out, int v) {
    out.push_back((unsigned char)((v >> 8) & 0xff));
    out.push_back((unsigned char)(v & 0xff));
}

// Certificate of a leaf: the line sets rewritten in canonical point
// indices and sorted. Independent of the leaf's line order, so duplicate
// (twin) lines cannot destabilize it.
std::vector<unsigned char> cert_of(const graph_view& gv, const std::vector<int>& pts_order) {
    std::vector<int> rank(gv.P);
    for (int i = 0; i < gv.P; ++i)
        rank[pts_order[i]] = i;
    std::vector<std::vector<int>> lines;
    lines.reserve(gv.L);
    for (const auto& line : gv.geo->lines) {
        std::vector<int> rel;
        rel.reserve(line.size());
        for (int p : line)
            rel.push_back(rank[p]);
        std::sort(rel.begin(), rel.end());
        lines.push_back(std::move(rel));
    }
    std::sort(lines.begin(), lines.end());
    std::vector<unsigned char> bytes;
    push16(bytes, gv.P);
    push16(bytes, gv.L);
    for (const auto& line : lines) {
        push16(bytes, int(line.size()));
        for (int p : line)
            push16(bytes, p);
    }
    return bytes;
}

int perm_image(const perm_pair& g, int P, int v) {
    return v < P ? g.pts[v] : P + g.lns[v - P];
}

// Point bijection between two leaves of one graph, with the line part
// recovered by matching image point sets (twins are matched in order).
std::optional<perm_pair> leaf_perm(const graph_view& gv, const std::vector<int>& from,
                                   const std::vector<int>& to) {
    perm_pair g;
    g.pts.resize(gv.P);
    for (int i = 0; i < gv.P; ++i)
        g.pts[from[i]] = to[i];
    std::map<std::vector<int>, std::deque<int>> by_set;
    for (int j = 0; j < gv.L; ++j)
        by_set[gv.geo->lines[j]].push_back(j);
    g.lns.resize(gv.L);
    for (int j = 0; j < gv.L; ++j) {
        std::vector<int> image;
        image.reserve(gv.geo->lines[j].size());
        for (int p : gv.geo->lines[j])
            image.push_back(g.pts[p]);
        std::sort(image.begin(), image.end());
        auto it = by_set.find(image);
        if (it == by_set.end() || it->second.empty())
            return std::nullopt;
        g.lns[j] = it->second.front();
        it->second.pop_front();
    }
    if (!is_geometry_automorphism(*gv.geo, g))
        return std::nullopt;
    return g;
}

struct search_ctx {
    std::vector<perm_pair> auts;
    std::vector<int> first_leaf, best_leaf;
    std::vector<unsigned char> first_cert, best_cert;
    bool have_first = false;
    long long nodes = 0;
};

std::vector<int> leaf_points(const graph_view& gv, const partition& cells) {
    std::vector<int> pts;
    pts.reserve(gv.P);
    for (const auto& cell : cells)
        if (cell[0] < gv.P)
            pts.push_back(cell[0]);
    return pts;
}

void dfs(const graph_view& gv, partition cells, std::vector<int>& path, search_ctx& ctx) {
    if (++ctx.nodes > 5'000'000)
        throw error(errc::size_budget_exceeded, "automorphism search exceeded its node budget");
    refine(gv, cells);
    int target = -1;
    for (int i = 0; i < int(cells.size()); ++i)
        if (cells[i].size() > 1) {
            target = i;
            break;
        }
    if (target < 0) {
        std::vector<int> pts = leaf_points(gv, cells);
        auto cert = cert_of(gv, pts);
        if (!ctx.have_first) {
            ctx.have_first = true;
            ctx.first_leaf = pts;
            ctx.first_cert = cert;
            ctx.best_leaf = std::move(pts);
            ctx.best_cert = std::move(cert);
            return;
        }
        if (cert == ctx.first_cert) {
            if (auto g = leaf_perm(gv, ctx.first_leaf, pts))
                ctx.auts.push_back(std::move(*g));
        } else if (cert == ctx.best_cert) {
            if (auto g = leaf_perm(gv, ctx.best_leaf, pts))
                ctx.auts.push_back(std::move(*g));
        }
        if (cert < ctx.best_cert) {
            ctx.best_leaf = std::move(pts);
            ctx.best_cert = std::move(cert);
        }
        return;
    }

    const std::vector<int> branch = cells[target];
    std::vector<int> explored;
    std::size_t auts_seen = 0;
    std::vector<char> reachable(gv.V, 0);
    auto recompute_reachable = [&]() {
        std::fill(reachable.begin(), reachable.end(), 0);
        std::vector<const perm_pair*> fixing;
        for (const auto& g : ctx.auts) {
            bool fixes_path = true;
            for (int v : path)
                if (perm_image(g, gv.P, v) != v) {
                    fixes_path = false;
                    break;
                }
            if (fixes_path)
                fixing.push_back(&g);
        }
        std::vector<int> frontier = explored;
        for (int v : explored)
            reachable[v] = 1;
        while (!frontier.empty()) {
            int v = frontier.back();
            frontier.pop_back();
            for (const perm_pair* g : fixing) {
                int w = perm_image(*g, gv.P, v);
                if (!reachable[w]) {
                    reachable[w] = 1;
                    frontier.push_back(w);
                }
            }
        }
        auts_seen = ctx.auts.size();
    };
    recompute_reachable();
    for (int v : branch) {
        if (auts_seen != ctx.auts.size())
            recompute_reachable();
        if (reachable[v])
            continue;
        explored.push_back(v);
        reachable[v] = 1;
        path.push_back(v);
        dfs(gv, individualized(cells, target, v), path, ctx);
        path.pop_back();
    }
}

partition base_cells(const graph_view& gv, const std::vector<int>& fixed_points,
                     const std::vector<int>& fixed_lines) {
    partition cells;
    std::vector<char> used(gv.V, 0);
    for (int p : fixed_points) {
        if (p < 0 || p >= gv.P)
            throw error(errc::invalid_point, "fixed point " + std::to_string(p) + " out of range");
        if (used[p])
            continue;
        used[p] = 1;
        cells.push_back({p});
    }
    for (int l : fixed_lines) {
        if (l < 0 || l >= gv.L)
            throw error(errc::invalid_argument, "fixed line " + std::to_string(l) + " out of range");
        if (used[gv.P + l])
            continue;
        used[gv.P + l] = 1;
        cells.push_back({gv.P + l});
    }
    std::vector<int> rest_p, rest_l;
    for (int p = 0; p < gv.P; ++p)
        if (!used[p])
            rest_p.push_back(p);
    for (int l = 0; l < gv.L; ++l)
        if (!used[gv.P + l])
            rest_l.push_back(gv.P + l);
    if (!rest_p.empty())
        cells.push_back(std::move(rest_p));
    if (!rest_l.empty())
        cells.push_back(std::move(rest_l));
    return cells;
}

search_ctx run_search(const graph_view& gv, const partition& start) {
    search_ctx ctx;
    std::vector<int> path;
    dfs(gv, start, path, ctx);
    return ctx;
}

struct pair_hash {
    std::size_t operator()(const perm_pair& g) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : g.pts) {
            h ^= std::size_t(x);
            h *= 1099511628211ull;
        }
        for (int x : g.lns) {
            h ^= std::size_t(x);
            h *= 1099511628211ull;
        }
        return h;
    }
};

constexpr std::size_t kClosureCap = std::size_t(1) << 18;

// Every product of the generators, by breadth-first closure.
std::vector<perm_pair> close_group(const incidence_geometry& geo,
                                   const std::vector<perm_pair>& gens) {
    std::unordered_set<perm_pair, pair_hash> seen;
    std::deque<perm_pair> frontier;
    auto add = [&](perm_pair g) {
        if (seen.insert(g).second) {
            if (seen.size() > kClosureCap)
                throw error(errc::size_budget_exceeded,
                            "automorphism group larger than " + std::to_string(kClosureCap));
            frontier.push_back(std::move(g));
        }
    };
    add(identity_perm(geo));
    for (const auto& g : gens)
        add(g);
    while (!frontier.empty()) {
        perm_pair g = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& h : gens)
            add(compose(g, h));
    }
    std::vector<perm_pair> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Orbit-stabilizer recount of an explicitly enumerated group: walk a point
// stabilizer chain and insist the product of orbit sizes matches at every
// level, ending in the trivial group.
void verify_chain(const incidence_geometry& geo, const std::vector<perm_pair>& elements) {
    std::vector<const perm_pair*> level;
    for (const auto& g : elements)
        level.push_back(&g);
    int next_base = 0;
    while (level.size() > 1) {
        int base = -1;
        for (int p = next_base; p < geo.points && base < 0; ++p)
            for (const perm_pair* g : level)
                if (g->pts[p] != p) {
                    base = p;
                    break;
                }
        if (base < 0)
            throw error(errc::invalid_action,
                        "non-trivial stabilizer fixes every point: line permutations escape");
        std::set<int> orbit;
        std::vector<const perm_pair*> stab;
        for (const perm_pair* g : level) {
            orbit.insert(g->pts[base]);
            if (g->pts[base] == base)
                stab.push_back(g);
        }
        if (orbit.size() * stab.size() != level.size())
            throw error(errc::invalid_action, "orbit-stabilizer recount failed at point " +
                                                  std::to_string(base));
        level = std::move(stab);
        next_base = base + 1;
    }
    if (level.empty())
        throw error(errc::invalid_action, "group enumeration lost the identity");
}

} // namespace

std::vector<perm_pair> automorphisms_fixing(const incidence_geometry& geo,
                                            const std::vector<int>& fixed_points,
                                            const std::vector<int>& fixed_lines) {
    graph_view gv = make_view(geo);
    search_ctx ctx = run_search(gv, base_cells(gv, fixed_points, fixed_lines));
    return close_group(geo, ctx.auts);
}

std::vector<perm_pair> symmetries_about(const incidence_geometry& geo, int x) {
    if (x < 0 || x >= geo.points)
        throw error(errc::invalid_point, "point " + std::to_string(x) + " out of range");
    // Fixing x^perp pointwise already fixes every line through x, because
    // all its points are fixed.
    return automorphisms_fixing(geo, perp(geo, {x}), {});
}

automorphism_group_result automorphism_group(const incidence_geometry& geo) {
    graph_view gv = make_view(geo);
    search_ctx ctx = run_search(gv, base_cells(gv, {}, {}));
    auto elements = close_group(geo, ctx.auts);
    for (const auto& g : ctx.auts)
        if (!is_geometry_automorphism(geo, g))
            throw error(errc::invalid_action, "generator fails the incidence re-check");
    verify_chain(geo, elements);

    automorphism_group_result out;
    out.generators = ctx.auts;
    out.order = (long long)elements.size();
    out.canonical_hash = hash_hex(fnv1a(ctx.best_cert.data(), ctx.best_cert.size()));
    out.self_dual = geometry_isomorphic(geo, dual(geo)).has_value();
    out.combined_order = out.self_dual ? 2 * out.order : out.order;
    return out;
}

std::vector<unsigned char> canonical_bytes(const incidence_geometry& geo) {
    graph_view gv = make_view(geo);
    search_ctx ctx = run_search(gv, base_cells(gv, {}, {}));
    return ctx.best_cert;
}

std::string canonical_hash(const incidence_geometry& geo) {
    auto bytes = canonical_bytes(geo);
    return hash_hex(fnv1a(bytes.data(), bytes.size()));
}

namespace {

std::optional<perm_pair> isomorphism_between(const incidence_geometry& g1,
                                             const incidence_geometry& g2,
                                             const std::vector<int>& pins1,
                                             const std::vector<int>& pins2) {
    if (g1.points != g2.points || g1.num_lines() != g2.num_lines())
        return std::nullopt;
    graph_view v1 = make_view(g1), v2 = make_view(g2);
    search_ctx c1 = run_search(v1, base_cells(v1, pins1, {}));
    search_ctx c2 = run_search(v2, base_cells(v2, pins2, {}));
    if (c1.best_cert != c2.best_cert)
        return std::nullopt;
    perm_pair g;
    g.pts.resize(g1.points);
    for (int i = 0; i < g1.points; ++i)
        g.pts[c1.best_leaf[i]] = c2.best_leaf[i];
    std::map<std::vector<int>, std::deque<int>> by_set;
    for (int j = 0; j < g2.num_lines(); ++j)
        by_set[g2.lines[j]].push_back(j);
    g.lns.resize(g1.num_lines());
    for (int j = 0; j < g1.num_lines(); ++j) {
        std::vector<int> image;
        for (int p : g1.lines[j])
            image.push_back(g.pts[p]);
        std::sort(image.begin(), image.end());
        auto it = by_set.find(image);
        if (it == by_set.end() || it->second.empty())
            throw error(errc::invalid_action, "canonical labels agree but lines fail to match");
        g.lns[j] = it->second.front();
        it->second.pop_front();
    }
    return g;
}

} // namespace

std::optional<perm_pair> geometry_isomorphic(const incidence_geometry& g1,
                                             const incidence_geometry& g2) {
    return isomorphism_between(g1, g2, {}, {});
}

moufang_report is_moufang_iroot(const incidence_geometry& geo, const root_chain& r,
                                const std::vector<perm_pair>* candidate) {
    validate_root(geo, r);
    std::vector<int> fixed_points, fixed_lines;
    if (r.dual_root) {
        // Interior (line, point, line): everything incident with an
        // interior element is fixed.
        for (int p : geo.lines[r.e[1]])
            fixed_points.push_back(p);
        for (int p : geo.lines[r.e[3]])
            fixed_points.push_back(p);
        fixed_lines = geo.point_lines[r.e[2]];
    } else {
        fixed_points = geo.lines[r.e[2]];
        for (int l : geo.point_lines[r.e[1]])
            fixed_lines.push_back(l);
        for (int l : geo.point_lines[r.e[3]])
            fixed_lines.push_back(l);
    }

    std::vector<perm_pair> group;
    if (candidate) {
        for (const auto& g : *candidate) {
            if (!is_geometry_automorphism(geo, g))
                throw error(errc::invalid_action, "candidate element is not an automorphism");
            bool fixes = true;
            for (int p : fixed_points)
                if (g.pts[p] != p) {
                    fixes = false;
                    break;
                }
            for (int l : fixed_lines)
                if (fixes && g.lns[l] != l)
                    fixes = false;
            if (fixes)
                group.push_back(g);
        }
    } else {
        group = automorphisms_fixing(geo, fixed_points, fixed_lines);
    }

    auto apartments = apartments_through(geo, r);
    moufang_report rep;
    rep.group_order = (long long)group.size();
    rep.apartment_count = (long long)apartments.size();
    if (apartments.empty()) {
        rep.witness = "no apartment contains the chain";
        return rep;
    }
    using key_t = std::pair<std::vector<int>, std::vector<int>>;
    auto key_of = [](const apartment& a) {
        std::vector<int> ps(a.pts.begin(), a.pts.end());
        std::vector<int> ls(a.lns.begin(), a.lns.end());
        std::sort(ps.begin(), ps.end());
        std::sort(ls.begin(), ls.end());
        return key_t{ps, ls};
    };
    std::set<key_t> all;
    for (const auto& a : apartments)
        all.insert(key_of(a));
    std::set<key_t> orbit{key_of(apartments[0])};
    std::vector<key_t> frontier{key_of(apartments[0])};
    while (!frontier.empty()) {
        key_t k = std::move(frontier.back());
        frontier.pop_back();
        for (const auto& g : group) {
            key_t img;
            for (int p : k.first)
                img.first.push_back(g.pts[p]);
            for (int l : k.second)
                img.second.push_back(g.lns[l]);
            std::sort(img.first.begin(), img.first.end());
            std::sort(img.second.begin(), img.second.end());
            if (!all.count(img))
                throw error(errc::invalid_action, "root group moved an apartment off the root");
            if (orbit.insert(img).second)
                frontier.push_back(img);
        }
    }
    rep.moufang = orbit.size() == all.size();
    if (!rep.moufang) {
        for (const auto& k : all)
            if (!orbit.count(k)) {
                rep.witness = "apartment through point " + std::to_string(k.first[0]) +
                              " is outside the orbit";
                break;
            }
    }
    rep.sharply_transitive = rep.moufang && rep.group_order == rep.apartment_count;
    if (rep.moufang && !rep.sharply_transitive)
        rep.witness = "root group order " + std::to_string(rep.group_order) +
                      " differs from the apartment count " + std::to_string(rep.apartment_count);
    return rep;
}

std::optional<perm_pair> triple_isomorphic(const stgq_triple& t1, const stgq_triple& t2) {
    if (t1.geo.points != t2.geo.points || t1.geo.num_lines() != t2.geo.num_lines() ||
        t1.action.group.n != t2.action.group.n)
        return std::nullopt;
    auto sigma0 = isomorphism_between(t1.geo, t2.geo, {t1.x}, {t2.x});
    if (!sigma0)
        return std::nullopt;
    auto elems1 = action_perms(t1.action);
    auto elems2 = action_perms(t2.action);
    std::sort(elems2.begin(), elems2.end());
    auto stab2 = automorphisms_fixing(t2.geo, {t2.x}, {});
    for (const auto& gamma : stab2) {
        perm_pair sigma = compose(*sigma0, gamma);
        perm_pair sigma_inv = inverse(sigma);
        bool ok = true;
        for (const auto& e : elems1) {
            perm_pair conj = compose(compose(sigma_inv, e), sigma);
            if (!std::binary_search(elems2.begin(), elems2.end(), conj)) {
                ok = false;
                break;
            }
        }
        if (ok)
            return sigma;
    }
    return std::nullopt;
}

} // namespace gqlab
