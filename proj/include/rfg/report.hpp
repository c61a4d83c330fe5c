#pragma once

#include <string>

namespace rfg {

enum class CheckStatus { pass, fail, inconclusive };

inline const char *to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::pass:
    return "pass";
  case CheckStatus::fail:
    return "fail";
  case CheckStatus::inconclusive:
    return "inconclusive";
  }
  return "?";
}

/// One line of `verify` output. detail never contains commas.
struct CheckReport {
  std::string name;
  std::string instance;
  CheckStatus status = CheckStatus::fail;
  std::string detail;

  bool passed() const { return status == CheckStatus::pass; }
};

} // namespace rfg
