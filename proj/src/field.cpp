#include "gqlab/field.hpp"

namespace gqlab {

namespace {

constexpr int kMaxQ = 16;

// Polynomials over F_p stored as digit vectors, constant term first.
std::vector<int> digits(int value, int p, int len) {
    std::vector<int> d(len, 0);
    for (int i = 0; i < len; ++i) {
        d[i] = value % p;
        value /= p;
    }
    return d;
}

// Remainder of a polynomial (degree < 2h-1) modulo the monic polynomial
// x^h + red. Plain schoolbook division; sizes here are tiny.
std::vector<int> mod_reduce(std::vector<int> a, const std::vector<int>& red, int p) {
    int h = int(red.size());
    for (int d = int(a.size()) - 1; d >= h; --d) {
        int lead = a[d];
        if (lead == 0) continue;
        a[d] = 0;
        for (int i = 0; i < h; ++i) {
            a[d - h + i] = ((a[d - h + i] - lead * red[i]) % p + p) % p;
        }
    }
    a.resize(h);
    return a;
}

std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& red, int p) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return mod_reduce(std::move(prod), red, p);
}

// Divisibility of the monic polynomial x^h + red by the monic polynomial
// x^d + g (both with digit coefficient vectors).
bool divisible(const std::vector<int>& red, const std::vector<int>& g, int p) {
    int h = int(red.size()), d = int(g.size());
    std::vector<int> rem(red);
    rem.push_back(1); // full dividend, degree h
    for (int k = h; k >= d; --k) {
        int lead = rem[k];
        if (lead == 0) continue;
        rem[k] = 0;
        for (int i = 0; i < d; ++i) rem[k - d + i] = ((rem[k - d + i] - lead * g[i]) % p + p) % p;
    }
    for (int i = 0; i < d; ++i)
        if (rem[i] != 0) return false;
    return true;
}

bool is_irreducible(const std::vector<int>& red, int p) {
    int h = int(red.size());
    for (int d = 1; 2 * d <= h; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int v = 0; v < count; ++v) {
            if (divisible(red, digits(v, p, d), p)) return false;
        }
    }
    return true;
}

} // namespace

bool is_prime_power(int q, int* p_out, int* h_out) {
    if (q < 2) return false;
    int p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (p * p > q) p = q; // q itself is prime
    int h = 0, v = q;
    while (v % p == 0) {
        v /= p;
        ++h;
    }
    if (v != 1) return false;
    if (p_out) *p_out = p;
    if (h_out) *h_out = h;
    return true;
}

finite_field finite_field::create(int q) {
    int p = 0, h = 0;
    if (!is_prime_power(q, &p, &h))
        throw error(errc::not_prime_power, std::to_string(q) + " is not a prime power");
    if (q > kMaxQ)
        throw error(errc::size_budget_exceeded,
                    "field order " + std::to_string(q) + " exceeds supported maximum " + std::to_string(kMaxQ));

    finite_field f;
    f.q_ = q;
    f.p_ = p;
    f.h_ = h;
    if (h > 1) {
        for (int v = 0;; ++v) {
            auto cand = digits(v, p, h);
            if (is_irreducible(cand, p)) {
                f.red_ = cand;
                break;
            }
        }
    }

    f.add_.assign(q * q, 0);
    f.mul_.assign(q * q, 0);
    f.neg_.assign(q, 0);
    f.inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p, h);
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p, h);
            int s = 0, base = 1;
            for (int i = 0; i < h; ++i) {
                s += ((da[i] + db[i]) % p) * base;
                base *= p;
            }
            f.add_[a * q + b] = s;
            auto dm = h > 1 ? poly_mul_mod(da, db, f.red_, p) : std::vector<int>{(a * b) % p};
            int m = 0;
            base = 1;
            for (int i = 0; i < h; ++i) {
                m += dm[i] * base;
                base *= p;
            }
            f.mul_[a * q + b] = m;
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (f.add_[a * q + b] == 0) f.neg_[a] = b;
            if (a != 0 && f.mul_[a * q + b] == 1) f.inv_[a] = b;
        }
    }
    return f;
}

int finite_field::pow(int a, long long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string finite_field::reduction_string() const {
    if (h_ == 1) return "none (prime field)";
    std::string s = "x^" + std::to_string(h_);
    for (int i = h_ - 1; i >= 0; --i) {
        if (red_[i] == 0) continue;
        s += " + ";
        if (i == 0) {
            s += std::to_string(red_[i]);
        } else {
            if (red_[i] != 1) s += std::to_string(red_[i]) + "*";
            s += i == 1 ? "x" : "x^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace gqlab
