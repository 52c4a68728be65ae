// SPDX-License-Identifier: Apache-2.0
#ifndef HGW_ERRORS_HPP
#define HGW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hgw {

/// Machine-checkable reason attached to every hgw::Error.
enum class errc {
  negative_weight,
  conflicting_duplicate_edge,
  malformed_line,
  malformed_input,
  disconnected_graph,
  not_symmetric,
  non_finite,
  convergence_failure,
  negative_time,
  nonpositive_time,
  nonpositive_scale,
  nonpositive_jump,
  dimension_mismatch,
  invalid_spectrum_range,
  empty_scale_set,
  quadrature_nonconvergence,
  singular_system,
  invalid_vertex,
};

/// All failures surface as this exception; code() distinguishes them
/// without string matching.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what_arg)
      : std::runtime_error(what_arg), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hgw

#endif  // HGW_ERRORS_HPP
