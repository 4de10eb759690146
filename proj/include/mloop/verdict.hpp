#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace mloop {

enum class CheckStatus { Pass, Fail, Skipped };

std::string_view to_string(CheckStatus status);

/// One entry of a VerdictReport. Failing entries always carry a witness.
struct CheckOutcome {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  nlohmann::ordered_json witness;
  std::int64_t millis = 0;

  bool passed() const noexcept { return status == CheckStatus::Pass; }
};

inline CheckOutcome make_outcome(std::string name, bool ok, nlohmann::ordered_json witness) {
  return CheckOutcome{std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail,
                      std::move(witness), 0};
}

}  // namespace mloop
