#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gqlab/bitset.hpp"
#include "gqlab/errors.hpp"

namespace gqlab {

// Point-line incidence geometry. Lines are sorted lists of point indices.
// Tags are optional free-form strings (one per point/line when present)
// used by coset constructions to record the algebraic origin of elements.
struct incidence_geometry {
    int points = 0;
    std::vector<std::vector<int>> lines;
    std::vector<std::vector<int>> point_lines;
    std::vector<std::string> point_tags;
    std::vector<std::string> line_tags;

    int num_lines() const { return int(lines.size()); }
};

// Validates ranges, sorts line members, derives the point->lines map.
incidence_geometry make_geometry(int points, std::vector<std::vector<int>> lines);

struct gq_order {
    int s = 0;
    int t = 0;
    bool operator==(const gq_order&) const = default;
};

// Generalized-quadrangle check. Verifies uniform degrees, then the axioms:
// no digon, no triangle, the one-point projection property for every
// non-incident point-line pair, and the existence of an ordinary pentagon.
// Throws NotUniformOrder or AxiomViolation with a witness; returns (s,t).
gq_order verify_gq(const incidence_geometry& geo, int jobs = 0);

// Kernel behind the projection-property scan: least non-incident pair
// (point, line) whose count of collinear line points differs from one,
// together with that count.
std::optional<std::array<int, 3>> projection_scan_serial(const incidence_geometry& geo,
                                                         const std::vector<bitset>& collinear);
std::optional<std::array<int, 3>> projection_scan_parallel(const incidence_geometry& geo,
                                                           const std::vector<bitset>& collinear, int jobs);

// Collinearity bitsets; a point is collinear with itself.
std::vector<bitset> collinearity_map(const incidence_geometry& geo);

// Common neighbours of a point set; perp of the empty set is every point.
std::vector<int> perp(const incidence_geometry& geo, const std::vector<int>& pts);
// The closure perp(perp(S)).
std::vector<int> span(const incidence_geometry& geo, const std::vector<int>& pts);

struct regularity_result {
    bool regular = true;
    int witness = -1; // a point y with |span({x,y})| != t+1, if any
};
regularity_result is_regular_point(const incidence_geometry& geo, int x);

incidence_geometry dual(const incidence_geometry& geo);

enum class element_kind { point, line };

// Centers of a triad. For points: three pairwise non-collinear points and
// their common perp. For lines: three pairwise non-concurrent lines and the
// lines meeting all three. Throws NotTriad when the input is not a triad.
std::vector<int> triad_centers(const incidence_geometry& geo, const std::array<int, 3>& triad,
                               element_kind kind);

// A root is a 5-chain e0 I e1 I ... I e4 of pairwise distinct elements.
// Roots have lines at the ends, dual roots have points at the ends; the
// interior is (e1,e2,e3).
struct root_chain {
    std::array<int, 5> e{};
    bool dual_root = false;
};

void validate_root(const incidence_geometry& geo, const root_chain& r);

struct apartment {
    std::array<int, 4> pts{};
    std::array<int, 4> lns{};
};

// All ordinary quadrangles containing the chain. Exactly t for a dual
// root, s for a root.
std::vector<apartment> apartments_through(const incidence_geometry& geo, const root_chain& r);

enum class root_position { center, interior };

// All roots of the requested kind holding point x at the stated position.
// Chains are ordered, so a chain and its reversal are both listed.
std::vector<root_chain> roots_on(const incidence_geometry& geo, int x, bool dual_root,
                                 root_position position);

// Index of the unique line through two distinct collinear points, or -1.
int line_through(const incidence_geometry& geo, int p, int q);

} // namespace gqlab
