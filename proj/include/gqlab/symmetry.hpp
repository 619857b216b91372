#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"

namespace gqlab {

// A group acting on a geometry: one point permutation and one line
// permutation per element. action(g then h) = action(g*h), the identity
// acts trivially, and every permutation preserves incidence.
struct geometry_action {
    group_table group;
    std::vector<std::vector<int>> point_perm;
    std::vector<std::vector<int>> line_perm;
};

// Throws InvalidAction with a witness if any invariant fails.
void validate_action(const incidence_geometry& geo, const geometry_action& a);

// One geometry automorphism: images of every point and every line.
struct perm_pair {
    std::vector<int> pts;
    std::vector<int> lns;
    bool operator==(const perm_pair&) const = default;
    bool operator<(const perm_pair& o) const {
        return pts != o.pts ? pts < o.pts : lns < o.lns;
    }
};

bool is_geometry_automorphism(const incidence_geometry& geo, const perm_pair& f);
perm_pair identity_perm(const incidence_geometry& geo);
perm_pair compose(const perm_pair& f, const perm_pair& g); // f then g
perm_pair inverse(const perm_pair& f);

// The permutations realized by an action, one per group element.
std::vector<perm_pair> action_perms(const geometry_action& a);

// Rebuilds the right-multiplication action of a coset model from its
// element point tags ("g<k>"); used when a geometry is reloaded from disk.
geometry_action action_from_element_tags(const incidence_geometry& geo, const group_table& e);

struct elation_report {
    bool elation = false;
    bool fixes_lines = false;      // every element fixes every line through x
    bool sharply_transitive = false; // on points opposite x
    std::string failure;
};

// Elation action at x: every line through x fixed (as a line) by every
// element, and the action on points opposite x sharply transitive.
elation_report is_elation_action(const incidence_geometry& geo, int x, const geometry_action& a);

// Elements of the action fixing every point collinear with x and every
// line through x; always a subgroup of the acting group.
subgroup_set symmetries_about(const incidence_geometry& geo, int x, const geometry_action& within);
// Same set inside the full automorphism group, as explicit permutations.
std::vector<perm_pair> symmetries_about(const incidence_geometry& geo, int x);

// All automorphisms fixing the listed points individually and the listed
// lines setwise (singleton color constraints in the search).
std::vector<perm_pair> automorphisms_fixing(const incidence_geometry& geo,
                                            const std::vector<int>& fixed_points,
                                            const std::vector<int>& fixed_lines);

struct automorphism_group_result {
    std::vector<perm_pair> generators;
    long long order = 1;
    bool self_dual = false;        // the geometry is isomorphic to its dual
    long long combined_order = 1;  // order, doubled when self_dual
    std::string canonical_hash;    // 16 hex digits over the canonical bytes
};

automorphism_group_result automorphism_group(const incidence_geometry& geo);

// Explicit point/line bijections realizing an isomorphism, if one exists.
std::optional<perm_pair> geometry_isomorphic(const incidence_geometry& g1,
                                             const incidence_geometry& g2);

// Canonical byte stream of the geometry (relabeling-invariant).
std::vector<unsigned char> canonical_bytes(const incidence_geometry& geo);
std::string canonical_hash(const incidence_geometry& geo);

struct moufang_report {
    bool moufang = false;          // root group transitive on apartments
    bool sharply_transitive = false;
    long long group_order = 0;
    long long apartment_count = 0;
    std::string witness;
};

// Moufang check for the i-root given by the interior of r. The root group
// is computed from the candidate when given, otherwise from the full
// automorphism group.
moufang_report is_moufang_iroot(const incidence_geometry& geo, const root_chain& r,
                                const std::vector<perm_pair>* candidate = nullptr);

struct stgq_triple {
    incidence_geometry geo;
    int x = 0;
    geometry_action action;
};

// Isomorphism of triples: a geometry isomorphism mapping x1 to x2 and
// conjugating the first action group onto the second (as permutation
// groups on the geometry).
std::optional<perm_pair> triple_isomorphic(const stgq_triple& t1, const stgq_triple& t2);

} // namespace gqlab
