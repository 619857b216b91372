#pragma once

#include <stdexcept>
#include <string>

namespace gqlab {

enum class errc {
    not_prime_power,
    division_by_zero,
    not_associative,
    no_identity,
    no_inverse,
    not_normal,
    not_class_two,
    center_not_elementary_abelian,
    center_not_field_sized,
    size_budget_exceeded,
    construction_invalid,
    axiom_violation,
    not_uniform_order,
    not_triad,
    invalid_root,
    invalid_point,
    invalid_action,
    not_stgq,
    no_kantor_family,
    unknown_theorem,
    budget_exceeded,
    invalid_argument,
    io_error,
};

const char* errc_name(errc c);

// All recoverable failures are thrown as error; code() identifies the
// condition, what() carries a witness when one exists.
class error : public std::runtime_error {
  public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

} // namespace gqlab
