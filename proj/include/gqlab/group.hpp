#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gqlab/errors.hpp"

namespace gqlab {

// A subgroup is stored as the sorted list of element indices of its parent
// group; functions taking one always take the parent group_table as well.
using subgroup_set = std::vector<int>;

// Finite group given by its full multiplication table. Index 0 is always
// the identity; group_from_table relabels its input to enforce that.
// Element count is capped so tables stay explicit.
struct group_table {
    int n = 0;
    std::vector<uint16_t> mul_tab; // n * n entries, row-major
    std::vector<uint16_t> inv_tab;
    std::vector<std::string> labels; // empty, or one label per element

    int mul(int a, int b) const { return mul_tab[size_t(a) * n + b]; }
    int inv(int a) const { return inv_tab[a]; }

    std::string label(int g) const {
        return labels.empty() ? std::to_string(g) : labels[g];
    }

    // Lazy caches; kept consistent with fresh recomputation.
    mutable std::optional<subgroup_set> center_cache;
    mutable std::optional<subgroup_set> derived_cache;
    mutable std::optional<subgroup_set> frattini_cache;
};

constexpr int kMaxGroupOrder = 4096;

// Validates associativity, identity and inverses, then relabels so the
// identity has index 0. The witness for a failed check is reported in the
// error message; for associativity it is the least failing triple.
group_table group_from_table(const std::vector<std::vector<int>>& table, int jobs = 0);

// Kernel behind group_from_table, exposed for testing and benchmarks:
// returns the least triple (a,b,c) with (a*b)*c != a*(b*c), if any.
std::optional<std::array<int, 3>> associativity_witness_serial(const std::vector<uint16_t>& tab, int n);
std::optional<std::array<int, 3>> associativity_witness_parallel(const std::vector<uint16_t>& tab, int n, int jobs);

subgroup_set subgroup_generated(const group_table& g, const std::vector<int>& gens);
bool is_subgroup(const group_table& g, const subgroup_set& s);
// If not normal, fills witness with (h, x) where x h x^-1 escapes s.
bool is_normal(const group_table& g, const subgroup_set& s, std::pair<int, int>* witness = nullptr);

const subgroup_set& center(const group_table& g);
const subgroup_set& derived_subgroup(const group_table& g);
// Frattini subgroup. For p-groups: closure of commutators and p-th powers.
// For other groups: intersection of maximal subgroups.
const subgroup_set& frattini(const group_table& g);

int element_order(const group_table& g, int x);
int group_exponent(const group_table& g);
bool is_abelian(const group_table& g);
bool is_pgroup(const group_table& g, int* p = nullptr);
// Nilpotency class via the lower central series; throws for the trivial
// bound only if the series fails to reach 1 (cannot happen for p-groups).
int nilpotency_class(const group_table& g);

std::vector<subgroup_set> conjugacy_classes(const group_table& g);

struct quotient_result {
    group_table group;
    std::vector<int> projection; // element -> coset index
    std::vector<int> coset_rep;  // coset index -> least element
};
quotient_result quotient_group(const group_table& g, const subgroup_set& n);

// Every subgroup, found by closing each known subgroup with one extra
// element until nothing new appears. Sorted by (order, members).
std::vector<subgroup_set> all_subgroups(const group_table& g);
std::vector<subgroup_set> maximal_subgroups(const group_table& g);

// Isomorphism by generator-image backtracking; candidate images are
// filtered and ordered by (element order, conjugacy class size). Returns
// an element bijection h with h[mul_g(a,b)] = mul_h(h[a], h[b]).
std::optional<std::vector<int>> groups_isomorphic(const group_table& a, const group_table& b);

// All automorphisms as element permutations; throws SizeBudgetExceeded if
// more than cap are found.
std::vector<std::vector<int>> automorphism_maps(const group_table& g, size_t cap = 1u << 24);

// Standalone group on the elements of s, identity first, preserving the
// order of s for the remaining elements. index_map sends parent index to
// sub index (-1 outside s).
struct sub_table_result {
    group_table group;
    std::vector<int> index_map;
    std::vector<int> parent_of; // sub index -> parent index
};
sub_table_result sub_table(const group_table& g, const subgroup_set& s);

group_table cyclic_group(int n);
group_table dihedral_group(int order);
group_table direct_product(const group_table& a, const group_table& b);

} // namespace gqlab
