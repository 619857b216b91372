#include "gqlab/errors.hpp"

namespace gqlab {

const char* errc_name(errc c) {
    switch (c) {
    case errc::not_prime_power: return "NotPrimePower";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::not_associative: return "NotAssociative";
    case errc::no_identity: return "NoIdentity";
    case errc::no_inverse: return "NoInverse";
    case errc::not_normal: return "NotNormal";
    case errc::not_class_two: return "NotClassTwo";
    case errc::center_not_elementary_abelian: return "CenterNotElementaryAbelian";
    case errc::center_not_field_sized: return "CenterNotFieldSized";
    case errc::size_budget_exceeded: return "SizeBudgetExceeded";
    case errc::construction_invalid: return "ConstructionInvalid";
    case errc::axiom_violation: return "AxiomViolation";
    case errc::not_uniform_order: return "NotUniformOrder";
    case errc::not_triad: return "NotTriad";
    case errc::invalid_root: return "InvalidRoot";
    case errc::invalid_point: return "InvalidPoint";
    case errc::invalid_action: return "InvalidAction";
    case errc::not_stgq: return "NotSTGQ";
    case errc::no_kantor_family: return "NoKantorFamily";
    case errc::unknown_theorem: return "UnknownTheorem";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

} // namespace gqlab
