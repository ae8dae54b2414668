#pragma once

#include <stdexcept>
#include <string>

namespace spt {

enum class ErrorKind {
    invalid_order,
    malformed_table,
    out_of_range,
    group_mismatch,
    chain_mismatch,
    unsupported_denominator,
    not_cyclic_consistent,
    not_normalized,
    budget_exceeded,
    not_factorizable,
    pipeline_failure,
    internal_inconsistency,
    parse_error,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace spt
