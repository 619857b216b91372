#include "gqlab/forms.hpp"

#include <algorithm>
#include <numeric>

namespace gqlab {

namespace {

// Coordinate labels have the shape "(a1,..,an|c|b1,..,bn)" with field
// element indices as decimal integers. Returns false if the label does not
// parse.
bool parse_triple_label(const std::string& s, std::vector<int>* alpha, int* c, std::vector<int>* beta) {
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') return false;
    std::string body = s.substr(1, s.size() - 2);
    size_t p1 = body.find('|');
    size_t p2 = body.rfind('|');
    if (p1 == std::string::npos || p2 == p1) return false;
    auto parse_list = [](const std::string& part, std::vector<int>* out) {
        out->clear();
        size_t pos = 0;
        while (pos <= part.size()) {
            size_t comma = part.find(',', pos);
            std::string tok = part.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) return false;
            out->push_back(std::stoi(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return true;
    };
    std::vector<int> mid;
    if (!parse_list(body.substr(0, p1), alpha)) return false;
    if (!parse_list(body.substr(p1 + 1, p2 - p1 - 1), &mid) || mid.size() != 1) return false;
    if (!parse_list(body.substr(p2 + 1), beta)) return false;
    *c = mid[0];
    return alpha->size() == beta->size();
}

int rank_over_field(const finite_field& f, std::vector<int> m, int dim) {
    int rank = 0;
    for (int col = 0; col < dim && rank < dim; ++col) {
        int pivot = -1;
        for (int r = rank; r < dim; ++r)
            if (m[size_t(r) * dim + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < dim; ++j) std::swap(m[size_t(rank) * dim + j], m[size_t(pivot) * dim + j]);
        int lead = f.inv(m[size_t(rank) * dim + col]);
        for (int j = 0; j < dim; ++j) m[size_t(rank) * dim + j] = f.mul(m[size_t(rank) * dim + j], lead);
        for (int r = 0; r < dim; ++r) {
            if (r == rank) continue;
            int factor = m[size_t(r) * dim + col];
            if (factor == 0) continue;
            for (int j = 0; j < dim; ++j)
                m[size_t(r) * dim + j] = f.sub(m[size_t(r) * dim + j], f.mul(factor, m[size_t(rank) * dim + j]));
        }
        ++rank;
    }
    return rank;
}

int commutator(const group_table& g, int a, int b) {
    return g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
}

} // namespace

bilinear_form commutator_form(const group_table& g) {
    const subgroup_set& z = center(g);
    const subgroup_set& d = derived_subgroup(g);
    if (!std::includes(z.begin(), z.end(), d.begin(), d.end()))
        throw error(errc::not_class_two, "derived subgroup is not central");

    int q = int(z.size());
    int p = 0, h = 0;
    if (!is_prime_power(q, &p, &h)) {
        if (q == 1) {
            // Perfect center-free case cannot occur here (class <= 2 and
            // [G,G] <= Z forces Z trivial only for the trivial group).
            bilinear_form f0{finite_field::create(2), 0, {}, true, false};
            return f0;
        }
        throw error(errc::center_not_elementary_abelian, "center order " + std::to_string(q) +
                                                             " is not a prime power");
    }
    for (int x : z)
        if (x != 0 && element_order(g, x) != p)
            throw error(errc::center_not_elementary_abelian,
                        "central element " + std::to_string(x) + " has order != " + std::to_string(p));

    finite_field field = finite_field::create(q);

    // Identification of the center with GF(q).
    std::vector<int> iota(g.n, -1); // central element -> field index
    bool labeled = false;
    if (!g.labels.empty() && h > 1) {
        labeled = true;
        std::vector<int> seen(q, 0);
        for (int x : z) {
            std::vector<int> a, b;
            int c = 0;
            if (!parse_triple_label(g.labels[x], &a, &c, &b) || c < 0 || c >= q ||
                std::any_of(a.begin(), a.end(), [](int v) { return v != 0; }) ||
                std::any_of(b.begin(), b.end(), [](int v) { return v != 0; })) {
                labeled = false;
                break;
            }
            iota[x] = c;
            seen[c] = 1;
        }
        if (labeled)
            labeled = std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; });
    }
    if (!labeled) {
        if (h > 1)
            throw error(errc::center_not_field_sized,
                        "center of composite order " + std::to_string(q) +
                            " carries no canonical GF(q) structure without coordinate labels");
        int z0 = 0;
        for (int x : z)
            if (x != 0) {
                z0 = x;
                break;
            }
        int acc = 0;
        for (int k = 0; k < p; ++k) {
            iota[acc] = k;
            acc = g.mul(acc, z0);
        }
    }

    auto quo = quotient_group(g, z);
    const group_table& v = quo.group;
    if (v.n > 1 && group_exponent(v) != p)
        throw error(errc::invalid_argument, "G/Z is not elementary abelian");

    bilinear_form out{field, 0, {}, true, false};
    if (v.n == 1) {
        // Abelian input: the zero form on a zero-dimensional space, flagged
        // singular by convention.
        out.dim = 0;
        out.alternating = true;
        out.nonsingular = false;
        return out;
    }

    // Pick lifted basis elements of V.
    std::vector<int> basis_lift;
    if (labeled) {
        // One basis vector per (alpha|beta) coordinate unit.
        std::vector<int> na, nb;
        int nc = 0;
        parse_triple_label(g.labels[0], &na, &nc, &nb);
        int n = int(na.size());
        for (int unit = 0; unit < 2 * n; ++unit) {
            int found = -1;
            for (int x = 0; x < g.n && found < 0; ++x) {
                std::vector<int> a, b;
                int c = 0;
                if (!parse_triple_label(g.labels[x], &a, &c, &b)) continue;
                if (c != 0) continue;
                bool match = true;
                for (int i = 0; i < n && match; ++i) {
                    int want_a = (unit < n && i == unit) ? 1 : 0;
                    int want_b = (unit >= n && i == unit - n) ? 1 : 0;
                    match = a[i] == want_a && b[i] == want_b;
                }
                if (match) found = x;
            }
            if (found < 0)
                throw error(errc::center_not_field_sized, "coordinate labels lack unit vectors");
            basis_lift.push_back(found);
        }
    } else {
        subgroup_set spanned{0};
        for (int x = 1; x < v.n; ++x) {
            if (std::binary_search(spanned.begin(), spanned.end(), x)) continue;
            basis_lift.push_back(quo.coset_rep[x]);
            std::vector<int> gens;
            for (int lift : basis_lift) gens.push_back(quo.projection[lift]);
            spanned = subgroup_generated(v, gens);
            if (int(spanned.size()) == v.n) break;
        }
    }

    int dim = int(basis_lift.size());
    out.dim = dim;
    out.mat.assign(size_t(dim) * dim, 0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            int comm = commutator(g, basis_lift[i], basis_lift[j]);
            if (iota[comm] < 0)
                throw error(errc::not_class_two, "commutator escapes the center");
            out.mat[size_t(i) * dim + j] = iota[comm];
        }

    out.alternating = true;
    for (int i = 0; i < dim && out.alternating; ++i) {
        if (out.at(i, i) != 0) out.alternating = false;
        for (int j = 0; j < dim && out.alternating; ++j)
            if (out.at(i, j) != field.neg(out.at(j, i))) out.alternating = false;
    }
    out.nonsingular = rank_over_field(field, out.mat, dim) == dim;
    return out;
}

special_pgroup_report is_special_pgroup(const group_table& g, int q) {
    if (!is_prime_power(q))
        throw error(errc::invalid_argument, "q must be a prime power");
    special_pgroup_report r;
    r.is_pgroup = is_pgroup(g, &r.p);
    if (!r.is_pgroup) return r;
    const subgroup_set& z = center(g);
    r.center_equals_derived = z == derived_subgroup(g);
    r.center_equals_frattini = z == frattini(g);
    r.center_elementary_abelian = true;
    for (int x : z)
        if (x != 0 && element_order(g, x) != r.p) r.center_elementary_abelian = false;
    r.center_order_q = int(z.size()) == q;
    long long q5 = 1;
    for (int i = 0; i < 5; ++i) q5 *= q;
    r.order_is_q5 = g.n == q5;
    r.special = r.center_equals_derived && r.center_equals_frattini && r.center_elementary_abelian &&
                r.center_order_q;
    r.verdict = r.special && r.order_is_q5;
    return r;
}

std::string special_pgroup_report::describe() const {
    auto b = [](bool v) { return v ? "yes" : "no"; };
    std::string s;
    s += "p_group: " + std::string(b(is_pgroup)) + "\n";
    s += "center_equals_derived: " + std::string(b(center_equals_derived)) + "\n";
    s += "center_equals_frattini: " + std::string(b(center_equals_frattini)) + "\n";
    s += "center_elementary_abelian: " + std::string(b(center_elementary_abelian)) + "\n";
    s += "center_order_q: " + std::string(b(center_order_q)) + "\n";
    s += "order_is_q5: " + std::string(b(order_is_q5)) + "\n";
    s += "special: " + std::string(b(special)) + "\n";
    s += "verdict: " + std::string(b(verdict)) + "\n";
    return s;
}

} // namespace gqlab
