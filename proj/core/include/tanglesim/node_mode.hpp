#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace tanglesim {

struct Inactive {};
/// Poisson issuance at a fixed fraction of the guaranteed rate.
struct Content {
  double fraction = 0.5;
};
/// Issues at the AIMD rate.
struct BestEffort {};
/// Ignores rate control and issues at multiple * guaranteed rate.
struct MaliciousSpammer {
  double multiple = 10.0;
};
/// Sends each neighbor its own compliant stream of distinct blocks.
struct MaliciousMultiRate {};

using NodeMode = std::variant<Inactive, Content, BestEffort, MaliciousSpammer, MaliciousMultiRate>;

[[nodiscard]] bool is_malicious(const NodeMode& mode);

/// Short label: inactive, content, best_effort, spammer, multirate.
[[nodiscard]] std::string mode_label(const NodeMode& mode);

/// Round-trips with parse_mode, e.g. "content:0.5", "spammer:10".
[[nodiscard]] std::string format_mode(const NodeMode& mode);

/// Throws std::invalid_argument on unknown labels or out-of-range parameters.
[[nodiscard]] NodeMode parse_mode(std::string_view text);

}  // namespace tanglesim
