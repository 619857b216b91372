#include "gqlab/geometry.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gqlab {

incidence_geometry make_geometry(int points, std::vector<std::vector<int>> lines) {
    if (points < 1)
        throw error(errc::invalid_argument, "geometry needs at least one point");
    incidence_geometry geo;
    geo.points = points;
    geo.lines = std::move(lines);
    geo.point_lines.assign(points, {});
    for (int li = 0; li < int(geo.lines.size()); ++li) {
        auto& line = geo.lines[li];
        if (line.size() < 2)
            throw error(errc::invalid_argument,
                        "line " + std::to_string(li) + " has fewer than two points");
        std::sort(line.begin(), line.end());
        for (std::size_t k = 0; k < line.size(); ++k) {
            int p = line[k];
            if (p < 0 || p >= points)
                throw error(errc::invalid_argument,
                            "line " + std::to_string(li) + " references point " + std::to_string(p) +
                                " outside 0.." + std::to_string(points - 1));
            if (k > 0 && line[k - 1] == p)
                throw error(errc::invalid_argument,
                            "line " + std::to_string(li) + " repeats point " + std::to_string(p));
            geo.point_lines[p].push_back(li);
        }
    }
    return geo;
}

std::vector<bitset> collinearity_map(const incidence_geometry& geo) {
    std::vector<bitset> adj(geo.points, bitset(geo.points));
    for (int p = 0; p < geo.points; ++p) {
        adj[p].set(p);
        for (int li : geo.point_lines[p])
            for (int q : geo.lines[li])
                adj[p].set(q);
    }
    return adj;
}

int line_through(const incidence_geometry& geo, int p, int q) {
    for (int li : geo.point_lines[p])
        if (std::binary_search(geo.lines[li].begin(), geo.lines[li].end(), q))
            return li;
    return -1;
}

namespace {

bool incident(const incidence_geometry& geo, int p, int li) {
    return std::binary_search(geo.lines[li].begin(), geo.lines[li].end(), p);
}

// Depth-first search for a 10-cycle in the incidence graph. The start
// point is constrained to be the least point on the cycle, which prunes
// without losing completeness.
bool pentagon_from(const incidence_geometry& geo, int start, std::vector<char>& used_pt,
                   std::vector<char>& used_ln, int at, int depth) {
    if (depth == 9) {
        return incident(geo, start, at);
    }
    if (depth % 2 == 0) { // at is a point, move to a line
        for (int li : geo.point_lines[at]) {
            if (used_ln[li])
                continue;
            used_ln[li] = 1;
            if (pentagon_from(geo, start, used_pt, used_ln, li, depth + 1))
                return true;
            used_ln[li] = 0;
        }
    } else { // at is a line, move to a point
        for (int p : geo.lines[at]) {
            if (p <= start || used_pt[p])
                continue;
            used_pt[p] = 1;
            if (pentagon_from(geo, start, used_pt, used_ln, p, depth + 1))
                return true;
            used_pt[p] = 0;
        }
    }
    return false;
}

bool has_pentagon(const incidence_geometry& geo) {
    std::vector<char> used_pt(geo.points, 0), used_ln(geo.lines.size(), 0);
    for (int p = 0; p < geo.points; ++p) {
        used_pt[p] = 1;
        if (pentagon_from(geo, p, used_pt, used_ln, p, 0))
            return true;
        used_pt[p] = 0;
    }
    return false;
}

} // namespace

std::optional<std::array<int, 3>> projection_scan_serial(const incidence_geometry& geo,
                                                         const std::vector<bitset>& collinear) {
    for (int p = 0; p < geo.points; ++p) {
        for (int li = 0; li < geo.num_lines(); ++li) {
            if (incident(geo, p, li))
                continue;
            int count = 0;
            for (int q : geo.lines[li])
                count += collinear[p].test(q) ? 1 : 0;
            if (count != 1)
                return std::array<int, 3>{p, li, count};
        }
    }
    return std::nullopt;
}

std::optional<std::array<int, 3>> projection_scan_parallel(const incidence_geometry& geo,
                                                           const std::vector<bitset>& collinear,
                                                           int jobs) {
    std::optional<std::array<int, 3>> best;
#ifdef _OPENMP
    int best_p = geo.points; // rows above this cannot improve the witness
#pragma omp parallel num_threads(jobs > 0 ? jobs : omp_get_max_threads())
    {
#pragma omp for schedule(dynamic)
        for (int p = 0; p < geo.points; ++p) {
            int cur;
#pragma omp atomic read
            cur = best_p;
            if (p > cur)
                continue;
            std::optional<std::array<int, 3>> row;
            for (int li = 0; li < geo.num_lines() && !row; ++li) {
                if (incident(geo, p, li))
                    continue;
                int count = 0;
                for (int q : geo.lines[li])
                    count += collinear[p].test(q) ? 1 : 0;
                if (count != 1)
                    row = std::array<int, 3>{p, li, count};
            }
            if (row) {
#pragma omp critical(gqlab_projection_scan)
                {
                    if (!best || (*row)[0] < (*best)[0]) {
                        best = row;
                        int bp = (*best)[0];
#pragma omp atomic write
                        best_p = bp;
                    }
                }
            }
        }
    }
#else
    (void)jobs;
    best = projection_scan_serial(geo, collinear);
#endif
    return best;
}

gq_order verify_gq(const incidence_geometry& geo, int jobs) {
    if (geo.lines.empty())
        throw error(errc::not_uniform_order, "geometry has no lines");

    std::size_t line_size = geo.lines[0].size();
    for (int li = 0; li < geo.num_lines(); ++li)
        if (geo.lines[li].size() != line_size)
            throw error(errc::not_uniform_order,
                        "line " + std::to_string(li) + " has " + std::to_string(geo.lines[li].size()) +
                            " points, line 0 has " + std::to_string(line_size));
    std::size_t point_degree = geo.point_lines[0].size();
    for (int p = 0; p < geo.points; ++p)
        if (geo.point_lines[p].size() != point_degree)
            throw error(errc::not_uniform_order,
                        "point " + std::to_string(p) + " lies on " +
                            std::to_string(geo.point_lines[p].size()) + " lines, point 0 on " +
                            std::to_string(point_degree));
    if (point_degree < 2)
        throw error(errc::not_uniform_order, "every point must lie on at least two lines");

    // Digons: two distinct lines through two common points.
    for (int li = 0; li < geo.num_lines(); ++li)
        for (int p : geo.lines[li])
            for (int mi : geo.point_lines[p]) {
                if (mi <= li)
                    continue;
                for (int q : geo.lines[li])
                    if (q != p && incident(geo, q, mi))
                        throw error(errc::axiom_violation,
                                    "digon: lines " + std::to_string(li) + " and " + std::to_string(mi) +
                                        " both contain points " + std::to_string(std::min(p, q)) +
                                        " and " + std::to_string(std::max(p, q)));
            }

    auto collinear = collinearity_map(geo);

    // Triangles: a common neighbour of two points of a line, off that line.
    for (int li = 0; li < geo.num_lines(); ++li) {
        const auto& line = geo.lines[li];
        for (std::size_t i = 0; i < line.size(); ++i)
            for (std::size_t j = i + 1; j < line.size(); ++j) {
                bitset common = collinear[line[i]];
                common &= collinear[line[j]];
                for (int c : common.to_vector())
                    if (!incident(geo, c, li))
                        throw error(errc::axiom_violation,
                                    "triangle: points " + std::to_string(line[i]) + ", " +
                                        std::to_string(line[j]) + ", " + std::to_string(c));
            }
    }

    auto bad = jobs == 1 ? projection_scan_serial(geo, collinear)
                         : projection_scan_parallel(geo, collinear, jobs);
    if (bad)
        throw error(errc::axiom_violation,
                    "projection: point " + std::to_string((*bad)[0]) + " sees " +
                        std::to_string((*bad)[2]) + " points of non-incident line " +
                        std::to_string((*bad)[1]) + ", expected exactly one");

    if (!has_pentagon(geo))
        throw error(errc::axiom_violation, "no ordinary pentagon exists");

    return gq_order{int(line_size) - 1, int(point_degree) - 1};
}

std::vector<int> perp(const incidence_geometry& geo, const std::vector<int>& pts) {
    bitset acc(geo.points);
    for (int p = 0; p < geo.points; ++p)
        acc.set(p);
    auto collinear = collinearity_map(geo);
    for (int p : pts) {
        if (p < 0 || p >= geo.points)
            throw error(errc::invalid_point, "point " + std::to_string(p) + " out of range");
        acc &= collinear[p];
    }
    return acc.to_vector();
}

std::vector<int> span(const incidence_geometry& geo, const std::vector<int>& pts) {
    return perp(geo, perp(geo, pts));
}

regularity_result is_regular_point(const incidence_geometry& geo, int x) {
    if (x < 0 || x >= geo.points)
        throw error(errc::invalid_point, "point " + std::to_string(x) + " out of range");
    auto collinear = collinearity_map(geo);
    int t_plus_1 = int(geo.point_lines[x].size());
    for (int y = 0; y < geo.points; ++y) {
        if (y == x || collinear[x].test(y))
            continue;
        if (int(span(geo, {x, y}).size()) != t_plus_1)
            return {false, y};
    }
    return {true, -1};
}

incidence_geometry dual(const incidence_geometry& geo) {
    incidence_geometry d;
    d.points = geo.num_lines();
    d.lines = geo.point_lines;
    d.point_lines.assign(d.points, {});
    for (int p = 0; p < geo.points; ++p)
        for (int li : geo.point_lines[p])
            d.point_lines[li].push_back(p);
    for (auto& pl : d.point_lines)
        std::sort(pl.begin(), pl.end());
    d.point_tags = geo.line_tags;
    d.line_tags = geo.point_tags;
    return d;
}

std::vector<int> triad_centers(const incidence_geometry& geo, const std::array<int, 3>& triad,
                               element_kind kind) {
    if (kind == element_kind::line)
        return triad_centers(dual(geo), triad, element_kind::point);
    auto collinear = collinearity_map(geo);
    for (int i = 0; i < 3; ++i) {
        if (triad[i] < 0 || triad[i] >= geo.points)
            throw error(errc::invalid_point, "point " + std::to_string(triad[i]) + " out of range");
        for (int j = i + 1; j < 3; ++j) {
            if (triad[i] == triad[j])
                throw error(errc::not_triad, "repeated element " + std::to_string(triad[i]));
            if (collinear[triad[i]].test(triad[j]))
                throw error(errc::not_triad, "elements " + std::to_string(triad[i]) + " and " +
                                                 std::to_string(triad[j]) + " are collinear");
        }
    }
    return perp(geo, {triad[0], triad[1], triad[2]});
}

void validate_root(const incidence_geometry& geo, const root_chain& r) {
    // Even slots hold one kind, odd slots the other; which is which
    // depends on dual_root. Points must be in range, lines likewise.
    for (int k = 0; k < 5; ++k) {
        bool is_point = r.dual_root ? (k % 2 == 0) : (k % 2 == 1);
        int limit = is_point ? geo.points : geo.num_lines();
        if (r.e[k] < 0 || r.e[k] >= limit)
            throw error(errc::invalid_root, "slot " + std::to_string(k) + " element " +
                                                std::to_string(r.e[k]) + " out of range");
    }
    if (r.e[0] == r.e[2] || r.e[2] == r.e[4] || r.e[0] == r.e[4] || r.e[1] == r.e[3])
        throw error(errc::invalid_root, "chain elements are not pairwise distinct");
    for (int k = 0; k < 4; ++k) {
        int p = r.dual_root ? (k % 2 == 0 ? r.e[k] : r.e[k + 1]) : (k % 2 == 0 ? r.e[k + 1] : r.e[k]);
        int li = r.dual_root ? (k % 2 == 0 ? r.e[k + 1] : r.e[k]) : (k % 2 == 0 ? r.e[k] : r.e[k + 1]);
        if (!incident(geo, p, li))
            throw error(errc::invalid_root, "slots " + std::to_string(k) + " and " +
                                                std::to_string(k + 1) + " are not incident");
    }
}

std::vector<apartment> apartments_through(const incidence_geometry& geo, const root_chain& r) {
    validate_root(geo, r);
    std::vector<apartment> out;
    if (r.dual_root) {
        // Points e0,e2,e4; find y in {e0,e4}-perp completing the cycle.
        auto collinear = collinearity_map(geo);
        for (int y = 0; y < geo.points; ++y) {
            if (y == r.e[0] || y == r.e[2] || y == r.e[4])
                continue;
            if (!collinear[r.e[0]].test(y) || !collinear[r.e[4]].test(y))
                continue;
            int m1 = line_through(geo, r.e[4], y);
            int m2 = line_through(geo, y, r.e[0]);
            if (m1 < 0 || m2 < 0 || m1 == m2)
                continue;
            if (m1 == r.e[1] || m1 == r.e[3] || m2 == r.e[1] || m2 == r.e[3])
                continue;
            out.push_back(apartment{{r.e[0], r.e[2], r.e[4], y}, {r.e[1], r.e[3], m1, m2}});
        }
    } else {
        // Lines e0,e2,e4; find a transversal N of e0 and e4 other than e2.
        for (int n = 0; n < geo.num_lines(); ++n) {
            if (n == r.e[0] || n == r.e[2] || n == r.e[4])
                continue;
            std::vector<int> u_hits, w_hits;
            std::set_intersection(geo.lines[n].begin(), geo.lines[n].end(), geo.lines[r.e[0]].begin(),
                                  geo.lines[r.e[0]].end(), std::back_inserter(u_hits));
            std::set_intersection(geo.lines[n].begin(), geo.lines[n].end(), geo.lines[r.e[4]].begin(),
                                  geo.lines[r.e[4]].end(), std::back_inserter(w_hits));
            if (u_hits.size() != 1 || w_hits.size() != 1)
                continue;
            int u = u_hits[0], w = w_hits[0];
            if (u == w || u == r.e[1] || u == r.e[3] || w == r.e[1] || w == r.e[3])
                continue;
            out.push_back(apartment{{r.e[1], r.e[3], w, u}, {r.e[2], r.e[4], n, r.e[0]}});
        }
    }
    return out;
}

std::vector<root_chain> roots_on(const incidence_geometry& geo, int x, bool dual_root,
                                 root_position position) {
    if (x < 0 || x >= geo.points)
        throw error(errc::invalid_point, "point " + std::to_string(x) + " out of range");
    if (geo.point_lines[x].empty())
        throw error(errc::invalid_point, "point " + std::to_string(x) + " is isolated");
    std::vector<root_chain> out;
    if (dual_root) {
        // A point sits at slots 0, 2, 4; the interior point slot is the
        // center slot 2, so both positions coincide here.
        (void)position;
        for (int l1 : geo.point_lines[x])
            for (int l3 : geo.point_lines[x]) {
                if (l1 == l3)
                    continue;
                for (int e0 : geo.lines[l1]) {
                    if (e0 == x)
                        continue;
                    for (int e4 : geo.lines[l3]) {
                        if (e4 == x || e4 == e0)
                            continue;
                        out.push_back(root_chain{{e0, l1, x, l3, e4}, true});
                    }
                }
            }
    } else {
        if (position == root_position::center)
            return {}; // the center of a root is a line, never a point
        // x at slot 1: lines la, lb through x, then one more step from lb.
        for (int la : geo.point_lines[x])
            for (int lb : geo.point_lines[x]) {
                if (la == lb)
                    continue;
                for (int p : geo.lines[lb]) {
                    if (p == x)
                        continue;
                    for (int lc : geo.point_lines[p]) {
                        if (lc == lb || lc == la)
                            continue;
                        out.push_back(root_chain{{la, x, lb, p, lc}, false});
                    }
                }
            }
        // x at slot 3: mirror image of the slot-1 case.
        for (int lb : geo.point_lines[x])
            for (int ld : geo.point_lines[x]) {
                if (lb == ld)
                    continue;
                for (int p : geo.lines[lb]) {
                    if (p == x)
                        continue;
                    for (int la : geo.point_lines[p]) {
                        if (la == lb || la == ld)
                            continue;
                        out.push_back(root_chain{{la, p, lb, x, ld}, false});
                    }
                }
            }
    }
    std::sort(out.begin(), out.end(),
              [](const root_chain& a, const root_chain& b) { return a.e < b.e; });
    return out;
}

} // namespace gqlab
