#include "gqlab/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <tuple>

#include "gqlab/io.hpp"

namespace gqlab {

namespace {

namespace fs = std::filesystem;

std::vector<int> prime_divisors(int n) {
    std::vector<int> ps;
    for (int p = 2; p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    return ps;
}

// Cheap isomorphism-invariant fingerprint used to bucket candidates
// before running the full isomorphism test.
using profile = std::tuple<std::vector<int>, int, int, std::vector<int>>;

profile profile_of(const group_table& g) {
    std::vector<int> orders(g.n);
    for (int x = 0; x < g.n; ++x)
        orders[x] = element_order(g, x);
    std::sort(orders.begin(), orders.end());
    std::vector<int> class_sizes;
    for (const auto& c : conjugacy_classes(g))
        class_sizes.push_back(int(c.size()));
    std::sort(class_sizes.begin(), class_sizes.end());
    return {std::move(orders), int(center(g).size()), int(derived_subgroup(g).size()),
            std::move(class_sizes)};
}

std::vector<int> compose_maps(const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = g[f[i]];
    return out;
}

// All extensions of N by a cyclic group of prime order p: the new
// generator g acts on N as alpha and satisfies g^p = h, which forces
// alpha(h) = h and alpha^p = conjugation by h. Conversely every such
// pair yields a group, with (x, i) standing for x g^i.
void extend_by_prime(const group_table& N, int p, std::vector<group_table>& out,
                     std::map<profile, std::vector<int>>& buckets) {
    int m = N.n;
    int n = m * p;
    auto keep = [&](const group_table& g) {
        profile key = profile_of(g);
        auto& bucket = buckets[key];
        for (int idx : bucket)
            if (groups_isomorphic(out[idx], g))
                return;
        bucket.push_back(int(out.size()));
        out.push_back(g);
    };

    for (const auto& alpha : automorphism_maps(N)) {
        std::vector<std::vector<int>> powers(p + 1);
        powers[0].resize(m);
        for (int x = 0; x < m; ++x)
            powers[0][x] = x;
        for (int i = 1; i <= p; ++i)
            powers[i] = compose_maps(powers[i - 1], alpha);
        for (int h = 0; h < m; ++h) {
            if (alpha[h] != h)
                continue;
            bool ok = true;
            int hinv = N.inv(h);
            for (int y = 0; y < m && ok; ++y)
                if (powers[p][y] != N.mul(N.mul(h, y), hinv))
                    ok = false;
            if (!ok)
                continue;
            std::vector<std::vector<int>> table(n, std::vector<int>(n));
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) {
                    int carry = (i + j) / p;
                    int k = (i + j) % p;
                    for (int x = 0; x < m; ++x)
                        for (int y = 0; y < m; ++y) {
                            int z = N.mul(x, powers[i][y]);
                            if (carry)
                                z = N.mul(z, h);
                            table[i * m + x][j * m + y] = k * m + z;
                        }
                }
            keep(group_from_table(table));
        }
    }
}

std::vector<group_table> generate_memo(int n, std::map<int, std::vector<group_table>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end())
        return it->second;
    std::vector<group_table> out;
    if (n == 1) {
        out.push_back(group_from_table({{0}}));
    } else {
        std::map<profile, std::vector<int>> buckets;
        for (int p : prime_divisors(n))
            for (const auto& N : generate_memo(n / p, memo))
                extend_by_prime(N, p, out, buckets);
    }
    memo[n] = out;
    return out;
}

} // namespace

std::vector<group_table> generate_groups_of_order(int n) {
    if (n < 1)
        throw error(errc::invalid_argument, "order must be positive");
    // Cyclic extensions reach every solvable group; the first non-solvable
    // order is 60, and automorphism enumeration also grows past there.
    if (n >= 60)
        throw error(errc::size_budget_exceeded,
                    "generation is only supported below order 60, got " + std::to_string(n));
    std::map<int, std::vector<group_table>> memo;
    return generate_memo(n, memo);
}

std::string data_dir() {
    if (const char* env = std::getenv("GQLAB_DATA_DIR"))
        return env;
    return GQLAB_DATA_DIR;
}

namespace {

std::string order_dir(const std::string& base, int order) {
    return base + "/catalog/order" + std::to_string(order);
}

} // namespace

catalog_list catalog_groups(int order) {
    std::string dir = order_dir(data_dir(), order);
    manifest_file m = read_manifest(dir + "/manifest");
    catalog_list out;
    out.complete = m.complete;
    for (const auto& [hash, name] : m.entries) {
        std::string path = dir + "/" + name;
        if (hash_hex(file_hash(path)) != hash)
            throw error(errc::io_error, path + " does not match its manifest hash");
        catalog_entry e;
        e.name = fs::path(name).stem().string();
        e.group = read_group(path);
        if (e.group.n != order)
            throw error(errc::io_error, path + " has order " + std::to_string(e.group.n) +
                                            ", catalog expects " + std::to_string(order));
        out.entries.push_back(std::move(e));
    }
    return out;
}

void write_catalog(const std::string& dir, int order, const std::vector<group_table>& groups,
                   bool complete, bool force) {
    std::string d = order_dir(dir, order);
    fs::create_directories(d);
    manifest_file m;
    m.complete = complete;
    int width = groups.size() > 9 ? 2 : 1;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        std::string num = std::to_string(i);
        while (int(num.size()) < width)
            num = "0" + num;
        std::string name = "order" + std::to_string(order) + "_" + num + ".grp";
        write_group(d + "/" + name, groups[i], force);
        m.entries.push_back({hash_hex(file_hash(d + "/" + name)), name});
    }
    write_manifest(d + "/manifest", m, force);
}

} // namespace gqlab
