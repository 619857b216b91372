#pragma once

#include <string>
#include <vector>

#include "gqlab/field.hpp"
#include "gqlab/group.hpp"

namespace gqlab {

// Bilinear form on V = G/Z(G) with values in the field identified with the
// center. mat is dim x dim, row-major, entries are field element indices.
struct bilinear_form {
    finite_field field;
    int dim = 0;
    std::vector<int> mat;
    bool alternating = false;
    bool nonsingular = false;

    int at(int i, int j) const { return mat[size_t(i) * dim + j]; }
};

// The form (aZ, bZ) -> [a, b] for a class-two group whose center is
// elementary abelian. The center is identified with the additive group of
// GF(q), q = |Z(G)|:
//  - for prime q: powers of the least non-identity central element,
//  - otherwise: coordinate labels of the form "(a|c|b)" on the elements,
//    whose middle entry is the field index of the central component.
// A basis of V is chosen greedily over ascending coset representatives.
bilinear_form commutator_form(const group_table& g);

struct special_pgroup_report {
    bool is_pgroup = false;
    int p = 0;
    bool center_equals_derived = false;
    bool center_equals_frattini = false;
    bool center_elementary_abelian = false;
    bool center_order_q = false;
    bool order_is_q5 = false;
    bool special = false; // all center clauses
    bool verdict = false; // special and order clause
    std::string describe() const;
};

// Special p-group test relative to the field size q:
// Z(G) = Phi(G) = [G,G], elementary abelian of order q; the order clause
// |G| = q^5 is reported separately and folded into the final verdict.
special_pgroup_report is_special_pgroup(const group_table& g, int q);

} // namespace gqlab
