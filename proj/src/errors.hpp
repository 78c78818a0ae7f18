#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

enum class errc {
  invalid_argument,
  dimension_mismatch,
  not_a_frame,
  not_tight,
  singular_operator,
  non_symmetric,
  no_convergence,
  domain_error,
  invalid_indices,
  wrong_dimension,
  all_zero,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

} // namespace framekit
