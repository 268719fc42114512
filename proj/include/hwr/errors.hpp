#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwr {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HWR_DEFINE_ERROR(name)             \
  class name : public error {              \
   public:                                 \
    using error::error;                    \
  };

HWR_DEFINE_ERROR(non_unit)
HWR_DEFINE_ERROR(composition_domain)
HWR_DEFINE_ERROR(not_proper)
HWR_DEFINE_ERROR(base_not_unit1)
HWR_DEFINE_ERROR(exp_domain)
HWR_DEFINE_ERROR(log_domain)
HWR_DEFINE_ERROR(out_of_range)
HWR_DEFINE_ERROR(invalid_ref_seq)
HWR_DEFINE_ERROR(not_homogeneous)
HWR_DEFINE_ERROR(mode_mismatch)
HWR_DEFINE_ERROR(not_unit)
HWR_DEFINE_ERROR(has_constant_term)
HWR_DEFINE_ERROR(ref_seq_mismatch)
HWR_DEFINE_ERROR(unsupported_degree)
HWR_DEFINE_ERROR(not_polynomial)
HWR_DEFINE_ERROR(degree_too_low)
HWR_DEFINE_ERROR(negative_excess)
HWR_DEFINE_ERROR(lambda_mismatch)
HWR_DEFINE_ERROR(division_by_zero)

#undef HWR_DEFINE_ERROR

class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hwr
