#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rsq/arith.hpp"

namespace rsq::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNonexistent = 2,
  kVerificationFailed = 3,
};

inline constexpr const char* kSchemaVersion = "1";

struct DecomposeArgs {
  i64 n = 0;
  i64 m = 1;
  i64 d = 1;
  std::string mode = "su";
  std::optional<int> cap;
};

struct ScanArgs {
  i64 m = 1;
  i64 d = 1;
  i64 max_n = 0;
  bool exceptions_only = false;
  unsigned jobs = 1;
};

struct WitnessArgs {
  i64 m = 1;
  i64 d = 1;
  std::string kind = "asu-lower";
  int count = 1;
};

int cmd_tables(i64 m_max, std::ostream& out, std::ostream& err);
int cmd_decompose(const DecomposeArgs& args, std::ostream& out, std::ostream& err);
int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err);
int cmd_witness(const WitnessArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, unsigned jobs, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsq::cli
