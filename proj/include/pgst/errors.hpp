#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pgst {

// Precondition refusal: the request is well formed but falls outside the
// hypotheses of the operation (wrong path order for a specialized decider,
// numeric amplitudes where certified answers are required, ...).  Carries a
// stable machine-readable code so callers can map it to an exit status.
class refusal_error : public std::runtime_error {
 public:
  refusal_error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace pgst
