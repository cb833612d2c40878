#ifndef SPECMIX_ERRORS_HPP
#define SPECMIX_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace specmix {

enum class ErrorCode {
  DuplicateEdge,
  NonpositiveWeight,
  IsolatedVertex,
  EmptySet,
  Disconnected,
  TooLargeForExact,
  SingletonGraph,
  SingletonFullGraph,
  KTooSmall,
  KTooLargeForDense,
  KOutOfRange,
  BadPieceLabel,
  PartialMap,
  NegativeTime,
  UnknownSubcommand,
  BadInputFile,
};

std::string_view error_name(ErrorCode code);

/// Library-wide exception; the message always starts with the error name.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace specmix

#endif
