#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsq {

enum class Errc {
  InvalidArgument,
  NotRepresentable,
  Infeasible,
  NotCoprime,
  NoSU,
  BelowBound,
  ConstructionFailed,
  OutOfRange,
  NoAdmissibleS,
  SearchExhausted,
  ResourceLimit,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rsq
