#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <vector>

#include "gqlab/catalog.hpp"
#include "gqlab/errors.hpp"
#include "gqlab/group.hpp"

using namespace gqlab;
namespace fs = std::filesystem;

namespace {

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return errc(-1);
}

} // namespace

TEST_CASE("group counts by order match the classification") {
    const std::map<int, std::size_t> expected = {
        {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},
        {8, 5},  {9, 2},  {12, 5}, {15, 1}, {16, 14}, {21, 2}, {24, 15},
        {27, 5}, {48, 52},
    };
    for (const auto& [order, count] : expected) {
        auto groups = generate_groups_of_order(order);
        INFO("order " << order);
        CHECK(groups.size() == count);
    }
}

TEST_CASE("generated groups are pairwise non-isomorphic and pass table validation") {
    for (int order : {8, 12, 16}) {
        auto groups = generate_groups_of_order(order);
        for (std::size_t i = 0; i < groups.size(); ++i) {
            std::vector<std::vector<int>> rows(order, std::vector<int>(order));
            for (int x = 0; x < order; ++x)
                for (int y = 0; y < order; ++y)
                    rows[x][y] = groups[i].mul(x, y);
            CHECK(group_from_table(rows).n == order);
            for (std::size_t j = i + 1; j < groups.size(); ++j)
                CHECK(!groups_isomorphic(groups[i], groups[j]).has_value());
        }
    }
}

TEST_CASE("generation is capped below the first non-solvable order") {
    CHECK(thrown_code([] { generate_groups_of_order(60); }) == errc::size_budget_exceeded);
    CHECK(thrown_code([] { generate_groups_of_order(0); }) == errc::invalid_argument);
}

TEST_CASE("the bundled catalog equals a fresh generation") {
    for (int order : {8, 16, 24, 27, 48}) {
        auto fresh = generate_groups_of_order(order);
        catalog_list bundled = catalog_groups(order);
        CHECK(bundled.complete);
        REQUIRE(bundled.entries.size() == fresh.size());
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            CHECK(bundled.entries[i].name ==
                  "order" + std::to_string(order) + "_" +
                      (fresh.size() > 9 && i < 10 ? "0" : "") + std::to_string(i));
            CHECK(bundled.entries[i].group.mul_tab == fresh[i].mul_tab);
        }
    }
}

TEST_CASE("the order-64 catalog is marked incomplete") {
    catalog_list bundled = catalog_groups(64);
    CHECK(!bundled.complete);
    REQUIRE(bundled.entries.size() == 2);
    for (const auto& e : bundled.entries) {
        CHECK(e.group.n == 64);
        int p = 0;
        CHECK(is_pgroup(e.group, &p));
        CHECK(p == 2);
    }
    // First the elementary abelian group, then a non-abelian one.
    CHECK(is_abelian(bundled.entries[0].group));
    CHECK(group_exponent(bundled.entries[0].group) == 2);
    CHECK(!is_abelian(bundled.entries[1].group));
}

TEST_CASE("catalog reads verify manifest hashes") {
    fs::path tmp = fs::temp_directory_path() / "gqlab_catalog_test";
    fs::remove_all(tmp);
    fs::create_directories(tmp / "catalog" / "order8");
    for (const auto& entry : fs::directory_iterator(std::string(data_dir()) + "/catalog/order8"))
        fs::copy_file(entry.path(), tmp / "catalog" / "order8" / entry.path().filename());

    std::string saved = data_dir();
    setenv("GQLAB_DATA_DIR", tmp.string().c_str(), 1);
    CHECK(catalog_groups(8).entries.size() == 5);

    // Flip one byte inside a table row: the manifest hash must catch it.
    {
        std::fstream f(tmp / "catalog" / "order8" / "order8_0.grp",
                       std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(10);
        char c = 0;
        f.seekg(10);
        f.get(c);
        f.seekp(10);
        f.put(c == '1' ? '2' : '1');
    }
    CHECK(thrown_code([] { catalog_groups(8); }) == errc::io_error);

    unsetenv("GQLAB_DATA_DIR");
    CHECK(data_dir() == saved);
    fs::remove_all(tmp);

    CHECK(thrown_code([] { catalog_groups(10); }) == errc::io_error);
}
