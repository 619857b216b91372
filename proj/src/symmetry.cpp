#include "gqlab/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gqlab {

namespace {

bool is_perm(const std::vector<int>& v, int n) {
    if (int(v.size()) != n)
        return false;
    std::vector<char> seen(n, 0);
    for (int x : v) {
        if (x < 0 || x >= n || seen[x])
            return false;
        seen[x] = 1;
    }
    return true;
}

} // namespace

bool is_geometry_automorphism(const incidence_geometry& geo, const perm_pair& f) {
    if (!is_perm(f.pts, geo.points) || !is_perm(f.lns, geo.num_lines()))
        return false;
    for (int li = 0; li < geo.num_lines(); ++li) {
        std::vector<int> image;
        for (int p : geo.lines[li])
            image.push_back(f.pts[p]);
        std::sort(image.begin(), image.end());
        if (image != geo.lines[f.lns[li]])
            return false;
    }
    return true;
}

perm_pair identity_perm(const incidence_geometry& geo) {
    perm_pair id;
    id.pts.resize(geo.points);
    id.lns.resize(geo.num_lines());
    for (int p = 0; p < geo.points; ++p)
        id.pts[p] = p;
    for (int li = 0; li < geo.num_lines(); ++li)
        id.lns[li] = li;
    return id;
}

perm_pair compose(const perm_pair& f, const perm_pair& g) {
    perm_pair out;
    out.pts.resize(f.pts.size());
    out.lns.resize(f.lns.size());
    for (std::size_t i = 0; i < f.pts.size(); ++i)
        out.pts[i] = g.pts[f.pts[i]];
    for (std::size_t i = 0; i < f.lns.size(); ++i)
        out.lns[i] = g.lns[f.lns[i]];
    return out;
}

perm_pair inverse(const perm_pair& f) {
    perm_pair out;
    out.pts.resize(f.pts.size());
    out.lns.resize(f.lns.size());
    for (std::size_t i = 0; i < f.pts.size(); ++i)
        out.pts[f.pts[i]] = int(i);
    for (std::size_t i = 0; i < f.lns.size(); ++i)
        out.lns[f.lns[i]] = int(i);
    return out;
}

std::vector<perm_pair> action_perms(const geometry_action& a) {
    std::vector<perm_pair> out;
    out.reserve(a.group.n);
    for (int g = 0; g < a.group.n; ++g)
        out.push_back(perm_pair{a.point_perm[g], a.line_perm[g]});
    return out;
}

void validate_action(const incidence_geometry& geo, const geometry_action& a) {
    if (int(a.point_perm.size()) != a.group.n || int(a.line_perm.size()) != a.group.n)
        throw error(errc::invalid_action, "permutation count differs from group order");
    for (int g = 0; g < a.group.n; ++g)
        if (!is_geometry_automorphism(geo, perm_pair{a.point_perm[g], a.line_perm[g]}))
            throw error(errc::invalid_action,
                        "element " + a.group.label(g) + " does not preserve incidence");
    for (int p = 0; p < geo.points; ++p)
        if (a.point_perm[0][p] != p)
            throw error(errc::invalid_action, "identity moves point " + std::to_string(p));
    for (int li = 0; li < geo.num_lines(); ++li)
        if (a.line_perm[0][li] != li)
            throw error(errc::invalid_action, "identity moves line " + std::to_string(li));
    for (int g = 0; g < a.group.n; ++g)
        for (int h = 0; h < a.group.n; ++h) {
            int gh = a.group.mul(g, h);
            for (int p = 0; p < geo.points; ++p)
                if (a.point_perm[h][a.point_perm[g][p]] != a.point_perm[gh][p])
                    throw error(errc::invalid_action,
                                "action is not a homomorphism at pair (" + a.group.label(g) + ", " +
                                    a.group.label(h) + ")");
            for (int li = 0; li < geo.num_lines(); ++li)
                if (a.line_perm[h][a.line_perm[g][li]] != a.line_perm[gh][li])
                    throw error(errc::invalid_action,
                                "line action is not a homomorphism at pair (" + a.group.label(g) +
                                    ", " + a.group.label(h) + ")");
        }
}

geometry_action action_from_element_tags(const incidence_geometry& geo, const group_table& e) {
    if (geo.point_tags.empty())
        throw error(errc::invalid_action, "geometry carries no point tags");
    // Locate the element points and the underlying element sets of the
    // remaining points. A coset point's element set is the union of the
    // element points on its incident coset lines.
    std::vector<int> elt_point(e.n, -1); // group element -> point index
    std::vector<int> point_elt(geo.points, -1);
    for (int p = 0; p < geo.points; ++p) {
        const std::string& tag = geo.point_tags[p];
        if (tag.size() > 1 && tag[0] == 'g' &&
            tag.find_first_not_of("0123456789", 1) == std::string::npos) {
            int k = std::stoi(tag.substr(1));
            if (k < 0 || k >= e.n)
                throw error(errc::invalid_action, "tag " + tag + " outside the group");
            if (elt_point[k] != -1)
                throw error(errc::invalid_action, "duplicate tag " + tag);
            elt_point[k] = p;
            point_elt[p] = k;
        }
    }
    for (int k = 0; k < e.n; ++k)
        if (elt_point[k] < 0)
            throw error(errc::invalid_action, "no point tagged g" + std::to_string(k));

    // Element sets per line and per non-element point, as sorted lists.
    std::vector<std::vector<int>> line_elts(geo.num_lines());
    for (int li = 0; li < geo.num_lines(); ++li)
        for (int p : geo.lines[li])
            if (point_elt[p] >= 0)
                line_elts[li].push_back(point_elt[p]);
    std::vector<std::vector<int>> point_elts(geo.points);
    for (int p = 0; p < geo.points; ++p) {
        if (point_elt[p] >= 0)
            continue;
        std::set<int> acc;
        for (int li : geo.point_lines[p])
            acc.insert(line_elts[li].begin(), line_elts[li].end());
        point_elts[p].assign(acc.begin(), acc.end());
    }

    std::map<std::vector<int>, int> line_by_elts, point_by_elts;
    for (int li = 0; li < geo.num_lines(); ++li)
        if (!line_elts[li].empty())
            line_by_elts[line_elts[li]] = li;
    for (int p = 0; p < geo.points; ++p)
        if (point_elt[p] < 0 && !point_elts[p].empty())
            point_by_elts[point_elts[p]] = p;

    geometry_action a;
    a.group = e;
    a.point_perm.assign(e.n, std::vector<int>(geo.points));
    a.line_perm.assign(e.n, std::vector<int>(geo.num_lines()));
    for (int h = 0; h < e.n; ++h) {
        auto map_set = [&](const std::vector<int>& src) {
            std::vector<int> img;
            img.reserve(src.size());
            for (int k : src)
                img.push_back(e.mul(k, h));
            std::sort(img.begin(), img.end());
            return img;
        };
        for (int p = 0; p < geo.points; ++p) {
            if (point_elt[p] >= 0) {
                a.point_perm[h][p] = elt_point[e.mul(point_elt[p], h)];
            } else if (point_elts[p].empty()) {
                a.point_perm[h][p] = p; // the point at infinity
            } else {
                auto it = point_by_elts.find(map_set(point_elts[p]));
                if (it == point_by_elts.end())
                    throw error(errc::invalid_action,
                                "point " + std::to_string(p) + " has no image under g" +
                                    std::to_string(h));
                a.point_perm[h][p] = it->second;
            }
        }
        for (int li = 0; li < geo.num_lines(); ++li) {
            if (line_elts[li].empty()) {
                a.line_perm[h][li] = li; // a pencil line through infinity
            } else {
                auto it = line_by_elts.find(map_set(line_elts[li]));
                if (it == line_by_elts.end())
                    throw error(errc::invalid_action,
                                "line " + std::to_string(li) + " has no image under g" +
                                    std::to_string(h));
                a.line_perm[h][li] = it->second;
            }
        }
    }
    validate_action(geo, a);
    return a;
}

elation_report is_elation_action(const incidence_geometry& geo, int x, const geometry_action& a) {
    if (x < 0 || x >= geo.points)
        throw error(errc::invalid_point, "point " + std::to_string(x) + " out of range");
    validate_action(geo, a);
    elation_report r;
    r.fixes_lines = true;
    for (int g = 0; g < a.group.n && r.fixes_lines; ++g)
        for (int li : geo.point_lines[x])
            if (a.line_perm[g][li] != li) {
                r.fixes_lines = false;
                r.failure = "element " + a.group.label(g) + " moves line " + std::to_string(li) +
                            " through the base point";
                break;
            }

    auto coll = collinearity_map(geo);
    std::vector<int> opposite;
    for (int p = 0; p < geo.points; ++p)
        if (!coll[x].test(p))
            opposite.push_back(p);

    r.sharply_transitive = false;
    if (r.fixes_lines) {
        if (opposite.empty()) {
            r.failure = "no points opposite the base point";
        } else if (int(opposite.size()) != a.group.n) {
            r.failure = "group order " + std::to_string(a.group.n) + " differs from the " +
                        std::to_string(opposite.size()) + " opposite points";
        } else {
            std::set<int> image;
            for (int g = 0; g < a.group.n; ++g)
                image.insert(a.point_perm[g][opposite[0]]);
            if (int(image.size()) == a.group.n &&
                std::equal(image.begin(), image.end(), opposite.begin(), opposite.end()))
                r.sharply_transitive = true;
            else
                r.failure = "orbit of the least opposite point is not the full opposite set";
        }
    }
    r.elation = r.fixes_lines && r.sharply_transitive;
    return r;
}

subgroup_set symmetries_about(const incidence_geometry& geo, int x, const geometry_action& within) {
    if (x < 0 || x >= geo.points)
        throw error(errc::invalid_point, "point " + std::to_string(x) + " out of range");
    auto coll = collinearity_map(geo);
    auto fixed = coll[x].to_vector();
    subgroup_set members;
    for (int g = 0; g < within.group.n; ++g) {
        bool ok = true;
        for (int p : fixed)
            if (within.point_perm[g][p] != p) {
                ok = false;
                break;
            }
        for (int li : geo.point_lines[x])
            if (ok && within.line_perm[g][li] != li)
                ok = false;
        if (ok)
            members.push_back(g);
    }
    if (!is_subgroup(within.group, members))
        throw error(errc::invalid_action, "symmetries about the point do not close");
    return members;
}

} // namespace gqlab
