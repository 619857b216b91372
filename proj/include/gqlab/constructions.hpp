#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gqlab/field.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

// Kantor family (E, E*) of type (s,t) in a group of order s^2 t: t+1
// pairs E_i <= E_i* with |E_i| = s, |E_i*| = st, E_i E_j meeting every
// third member trivially and E_i* meeting every other E_j trivially.
struct kantor_family {
    group_table group;
    std::vector<std::pair<subgroup_set, subgroup_set>> members;
    int s = 0;
    int t = 0;
};

struct kantor_violation {
    std::string clause;
    std::string witness;
};

struct kantor_validation {
    bool ok = false;
    int s = 0;
    int t = 0;
    std::vector<kantor_violation> violations;
};

// Checks all family axioms by enumeration; violations are returned as
// data, never thrown.
kantor_validation validate_kantor_family(const group_table& g,
                                         const std::vector<std::pair<subgroup_set, subgroup_set>>& members);

// The group of upper unitriangular-style triples (alpha, c, beta) with
// alpha, beta in F_q^n and c in F_q, multiplied by
// (alpha, c, beta)(alpha', c', beta') = (alpha+alpha', c+c'+alpha.beta', beta+beta').
// Element index: alpha and beta as big-endian base-q digit strings, laid
// out as alpha * q^(n+1) + c * q^n + beta. Labels read "(a1,..,an|c|b1,..,bn)".
group_table heisenberg(int n, int q);

// All points of PG(3,q) with the totally isotropic lines of the
// alternating form x0 y1 - x1 y0 + x2 y3 - x3 y2.
incidence_geometry symplectic_quadrangle(int q);

// Points and lines of the Hermitian surface x0^{q+1} + .. + x3^{q+1} = 0
// in PG(3,q^2).
incidence_geometry hermitian_quadrangle(int q);

// q upper-triangular 2x2 matrices A_u with pairwise anisotropic
// differences; K_u = A_u + A_u^T.
struct qclan {
    finite_field field;
    std::vector<std::array<int, 4>> a; // row-major A_u per field index u
    std::array<int, 4> k(int u) const; // A_u + A_u^T
};

// A_u = u * [[1, b], [0, c]] for the least (b,c) with x^2 + bx + c
// irreducible.
qclan linear_qclan(int q);

// Anisotropy check: a witness string for some u != v and alpha != 0 with
// alpha (A_u - A_v) alpha^T = 0, or nothing when the clan is valid.
std::optional<std::string> qclan_violation(const qclan& c);

// The family A(u) = {(alpha, alpha A_u alpha^T, alpha K_u)} with
// A(inf) = {(0,0,beta)} inside heisenberg(2,q); stars adjoin the center,
// resp. all (0,c,beta). Validated; throws ConstructionInvalid on failure.
kantor_family qclan_kantor_family(const qclan& c);

// Type (q,q) family in a group of order q^3. Odd q: explicit one-variable
// family in heisenberg(1,q), validated. Even q: first family found by the
// exhaustive search over the bundled catalog of order-q^3 groups.
kantor_family w3_kantor_family(int q);

// Coset model of a Kantor family. Point indices: group elements first,
// then the star cosets family by family (cosets ordered by least member),
// then the point at infinity. Line indices: the E_i cosets family by
// family, then the t+1 pencil lines. Tags: "g<k>", "E<i>*g<rep>",
// "(infinity)" on points; "E<i>g<rep>", "[E<i>]" on lines.
struct coset_geometry_result {
    incidence_geometry geometry;
    geometry_action action; // right multiplication (inverse-left for the left build)
    int infinity = -1;      // point index of (infinity)
};

coset_geometry_result coset_geometry(const kantor_family& fam, bool left_cosets = false);

} // namespace gqlab
