#pragma once

#include <string>
#include <vector>

#include "gqlab/errors.hpp"

namespace gqlab {

// Finite field of order q = p^h, q <= 16. Elements are the integers
// 0..q-1; element a encodes the polynomial sum a_i x^i over F_p where
// a_0..a_{h-1} are the base-p digits of a (a_0 least significant). Index 0
// is zero and index 1 is one. Extension arithmetic reduces modulo the
// lexicographically least monic irreducible polynomial of degree h, where
// candidates x^h + c_{h-1} x^{h-1} + ... + c_0 are ordered by the integer
// whose base-p digits are c_0..c_{h-1}.
class finite_field {
  public:
    static finite_field create(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int h() const { return h_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }

    int inv(int a) const {
        if (a == 0) throw error(errc::division_by_zero, "inverse of 0 in GF(" + std::to_string(q_) + ")");
        return inv_[a];
    }
    int div(int a, int b) const { return mul(a, inv(b)); }

    int pow(int a, long long e) const;

    // Reduction polynomial coefficients c_0..c_{h-1}; empty for prime fields.
    const std::vector<int>& reduction() const { return red_; }
    std::string reduction_string() const;

  private:
    finite_field() = default;
    int q_ = 0, p_ = 0, h_ = 0;
    std::vector<int> red_;
    std::vector<int> add_, mul_, neg_, inv_;
};

// Returns true and fills p, h if q = p^h for a prime p and h >= 1.
bool is_prime_power(int q, int* p = nullptr, int* h = nullptr);

} // namespace gqlab
