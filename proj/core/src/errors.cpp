#include "tsfrac/errors.hpp"

#include "tsfrac/format.hpp"

namespace tsfrac {

NotInScaleError::NotInScaleError(double t)
    : Error("time " + format_double(t) + " is not a member of the time scale") {}

NotANodeError::NotANodeError(double t)
    : Error("time " + format_double(t) + " is not a mesh node") {}

SingularKernelError::SingularKernelError(std::size_t cell, std::size_t node, double alpha)
    : Error("literal kernel (t - sigma(s))^(alpha-1) diverges: cell " + std::to_string(cell) +
            " has sigma(s) equal to evaluation node " + std::to_string(node) +
            " with alpha = " + format_double(alpha)),
      cell_(cell), node_(node) {}

SchemaError::SchemaError(std::string field, const std::string& message)
    : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

} // namespace tsfrac
