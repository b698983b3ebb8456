#ifndef BORNOCONV_ERROR_HPP
#define BORNOCONV_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bornoconv {

enum class errc {
  empty_set,
  non_positive_epsilon,
  unknown_index,
  trivial_ideal,
  degenerate_trace,
  not_a_cover,
  instance_too_large,
  invariant_violation,
  parse_error,
  unknown_mode,
  io_error,
};

inline std::string_view to_string(errc code) {
  switch (code) {
    case errc::empty_set: return "EmptySet";
    case errc::non_positive_epsilon: return "NonPositiveEpsilon";
    case errc::unknown_index: return "UnknownIndex";
    case errc::trivial_ideal: return "TrivialIdeal";
    case errc::degenerate_trace: return "DegenerateTrace";
    case errc::not_a_cover: return "NotACover";
    case errc::instance_too_large: return "InstanceTooLarge";
    case errc::invariant_violation: return "InvariantViolation";
    case errc::parse_error: return "ParseError";
    case errc::unknown_mode: return "UnknownMode";
    case errc::io_error: return "IOError";
  }
  return "Unknown";
}

/// The single exception type thrown by the library; `code()` identifies the
/// failure class, `what()` carries a human-readable diagnostic.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace bornoconv

#endif
