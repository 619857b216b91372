#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gqlab/constructions.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

// One checked clause: the certificate names the exhaustive check behind a
// true value, the witness explains a false one.
struct clause_report {
    bool value = false;
    std::string certificate;
    std::string witness;
};

struct stgq_report {
    bool is_egq = false;
    bool is_stgq = false;
    gq_order order;
    int s_prime = 0, s_power = 0; // s = s_prime^s_power (0,0 if not a prime power)
    int t_prime = 0, t_power = 0;
    subgroup_set symmetries;      // symmetries about x inside the action group
    clause_report egq;            // elation certificate
    clause_report symmetry_count; // |symmetries| = t
    clause_report regular_point;  // x is regular
    bool certificates_agree = false;
};

// Elation check plus the two equivalent skew-translation certificates:
// t symmetries about x inside the group, and regularity of x. Both are
// computed and must agree.
stgq_report is_stgq(const stgq_triple& t);

// The Kantor family carried by the action: pick the least point z opposite
// x; member i is the stabilizer of the line joining z to the i-th line
// through x, its star the stabilizer of the junction point. Validated;
// throws NoKantorFamily when the action does not carry one.
kantor_family family_of(const stgq_triple& t);

struct centrality_report {
    bool holds = false; // the symmetries about x lie in the center of E
    std::string witness;
};
centrality_report property_c(const stgq_triple& t);

struct line_star_report {
    int line = -1;
    bool stabilizers_coincide = false;
    bool stabilizer_normal = false; // of the stabilizer at the least point
    bool pass = false;
    subgroup_set stabilizer;
    std::string witness;
};

struct star_report {
    bool star = false; // every line through x passes
    int passing_lines = 0;
    bool zero_one_all = false; // passing count in {0, 1, t+1}
    std::vector<line_star_report> lines;
};

// Per-line point-stabilizer report: a line passes when the stabilizers of
// all its points away from x coincide and are normal in E.
star_report property_star(const stgq_triple& t);

struct mstgq_report {
    bool m1 = false; // every i-root on x Moufang, root group inside E, sharp
    bool m3 = false; // no line through x is a unique centre of a line triad
    long long roots_checked = 0;
    long long triads_checked = 0;
    std::string m1_witness;
    std::string m3_witness;
};

mstgq_report mstgq_check(const stgq_triple& t);

struct quotient_geometry {
    subgroup_set phi;              // Frattini subgroup of the action group
    incidence_geometry gamma;      // orbit geometry
    std::vector<int> point_orbit;  // geometry point -> orbit point (-1 elsewhere)
    std::vector<int> line_orbit;   // geometry point -> orbit line (-1 elsewhere)
    int degree = 0;                // common point degree (t+1), validated
    std::optional<group_table> quotient_by_symmetries; // E/S when S is normal
};

// Orbit geometry of the Frattini subgroup: lines are its orbits on the
// points (other than x) of lines through x, points its orbits on the
// points opposite x, incidence by collinearity between orbits.
quotient_geometry gamma_phi(const stgq_triple& t);

struct generic_report {
    bool dual_partial_linear = false; // distinct orbit lines share <= 1 point
    bool dual_reading = false;        // distinct orbit points share <= 1 line
    bool pair_span_proper = false;    // the subgroup condition on member pairs
    long long pairs_checked = 0;
    std::string witness_partial;
    std::string witness_span;
    // The ambient group of the span condition is read as the full elation
    // group; the extension hypothesis stays an unchecked hypothesis.
    std::string span_reading = "ambient group read as the elation group";
    std::string unchecked = "extension hypothesis: unchecked";
};

generic_report generic_conditions(const stgq_triple& t);

struct ideal_subgq {
    subgroup_set subgroup; // E' inside the action group, contains the symmetries
    std::vector<std::pair<subgroup_set, subgroup_set>> traces; // family cut to E'
    incidence_geometry geometry; // induced point-subset geometry, a verified GQ
    gq_order order;
    std::vector<int> points; // ambient point subset
    std::vector<int> lines;  // ambient lines meeting the subset in order.s+1 points
    bool thick = false;
    bool parameters_square = false; // order is (t^2, t)
};

// Thick proper ideal subquadrangles through x: subgroups E' between the
// symmetries and E whose family traces validate; each is certified twice,
// once by the trace coset model and once by the induced point subset.
std::vector<ideal_subgq> find_ideal_subgq(const stgq_triple& t);

struct theorem_verdict {
    std::string name;
    int q = 0;
    bool pass = false;
    std::vector<std::string> evidence; // one finding per line
};

// Scripted desk-scale experiments by name:
//   chen-hachenberger     parameters of every found family share one prime;
//                         no type-(4,3) family in any order-48 group
//   heisenberg-flock      the special rank-two triple group carries the
//                         clan family and yields the hermitian quadrangle
//   stgq-qq-odd           exhaustive order-q^3 sweep, q odd: every
//                         skew-translation family gives the symplectic
//                         quadrangle with the rank-one triple group
//   payne-distinct-elation two non-isomorphic order-32 elation classes on
//                         the hermitian surface quadrangle
//   star-implies-stgq     per-line normal stabilizers force the
//                         skew-translation property at order (t^2, t)
//   star-implies-C        ... and centrality away from even order (t,t)
theorem_verdict theorem_harness(const std::string& name, int q = 0);

} // namespace gqlab
