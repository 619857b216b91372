#pragma once

#include <string>
#include <vector>

#include "gqlab/group.hpp"

namespace gqlab {

// Every group of a given order up to isomorphism, generated by cyclic
// extensions: each group with a normal subgroup N of prime index p is
// rebuilt from (N, alpha, h) with alpha in Aut(N), alpha(h) = h and
// alpha^p = conjugation by h. Complete for solvable orders, which covers
// every order this project enumerates.
std::vector<group_table> generate_groups_of_order(int n);

struct catalog_entry {
    std::string name; // file stem, e.g. "order27_03"
    group_table group;
};

struct catalog_list {
    std::vector<catalog_entry> entries;
    bool complete = false; // from the bundled manifest
};

// Bundled catalog for an order, loaded from the data directory and
// verified against its manifest hashes.
catalog_list catalog_groups(int order);

// Directory holding bundled data; GQLAB_DATA_DIR in the environment
// overrides the compiled-in source location.
std::string data_dir();

// Writes the generated catalog for an order under dir/catalog/order<n>/,
// with a manifest. Used once to produce the bundled files and by tests to
// regenerate and compare.
void write_catalog(const std::string& dir, int order, const std::vector<group_table>& groups,
                   bool complete, bool force);

} // namespace gqlab
