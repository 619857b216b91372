#pragma once

#include <vector>

#include "gqlab/constructions.hpp"
#include "gqlab/group.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

// Budgets abort a search loudly: exceeding one throws BudgetExceeded or,
// where partial results are legal, marks the result incomplete.
struct search_budget {
    long long max_subgroups = 2'000'000;
    long long max_nodes = 500'000'000; // search-tree nodes
    double seconds = 0;                // 0 = no wall-clock cap
    int jobs = 0;                      // 0 = all hardware threads
    long long limit = 0;               // stop after this many results (0 = all)
};

// All subgroups, optionally of one order and deduplicated by conjugacy.
// Orders not dividing |G| give an empty list.
std::vector<subgroup_set> enumerate_subgroups(const group_table& g, int order = -1,
                                              bool up_to_conjugacy = false,
                                              const search_budget& budget = {});

struct kantor_search_result {
    std::vector<kantor_family> families;
    bool complete = true; // false when a budget or limit cut the run short
    long long nodes = 0;
};

// Exhaustive search for type-(s,t) Kantor families in g. Families are
// built member by member with product-intersection pruning; every hit is
// re-checked by validate_kantor_family. With modulo_aut, one
// representative per orbit of Aut(g) is kept.
kantor_search_result search_kantor_families(const group_table& g, int s, int t,
                                            bool modulo_aut = false,
                                            const search_budget& budget = {});

// Serial and parallel cores behind search_kantor_families; exposed for
// the equivalence tests and the benchmark.
kantor_search_result search_kantor_families_serial(const group_table& g, int s, int t,
                                                   const search_budget& budget);
kantor_search_result search_kantor_families_parallel(const group_table& g, int s, int t,
                                                     const search_budget& budget);

struct elation_class {
    group_table group;               // abstract copy of the subgroup found
    std::vector<perm_pair> elements; // as automorphisms of the geometry
    int count = 0;                   // members of this isomorphism class
};

struct elation_search_result {
    std::vector<elation_class> classes;
    bool complete = true;
    long long stabilizer_order = 0;
};

// All elation groups at x: order-s^2t subgroups of the stabilizer of x in
// the full automorphism group, filtered by is_elation_action and grouped
// by abstract isomorphism.
elation_search_result search_elation_groups(const incidence_geometry& geo, int x,
                                            const search_budget& budget = {});

} // namespace gqlab
