#include "tanglesim/node_mode.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace tanglesim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double parse_number(std::string_view text, std::string_view label) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("mode '" + std::string(label) + "': bad parameter '" +
                                std::string(text) + "'");
  }
  return value;
}

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

bool is_malicious(const NodeMode& mode) {
  return std::holds_alternative<MaliciousSpammer>(mode) ||
         std::holds_alternative<MaliciousMultiRate>(mode);
}

std::string mode_label(const NodeMode& mode) {
  return std::visit(Overloaded{
                        [](const Inactive&) { return std::string("inactive"); },
                        [](const Content&) { return std::string("content"); },
                        [](const BestEffort&) { return std::string("best_effort"); },
                        [](const MaliciousSpammer&) { return std::string("spammer"); },
                        [](const MaliciousMultiRate&) { return std::string("multirate"); },
                    },
                    mode);
}

std::string format_mode(const NodeMode& mode) {
  if (const auto* c = std::get_if<Content>(&mode)) return "content:" + format_number(c->fraction);
  if (const auto* s = std::get_if<MaliciousSpammer>(&mode)) {
    return "spammer:" + format_number(s->multiple);
  }
  return mode_label(mode);
}

NodeMode parse_mode(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view label = text.substr(0, colon);
  const bool has_param = colon != std::string_view::npos;
  const std::string_view param = has_param ? text.substr(colon + 1) : std::string_view{};

  if (label == "content") {
    Content c;
    if (has_param) c.fraction = parse_number(param, label);
    if (!(c.fraction > 0.0 && c.fraction <= 1.0)) {
      throw std::invalid_argument("content fraction must be in (0, 1]");
    }
    return c;
  }
  if (label == "spammer") {
    MaliciousSpammer s;
    if (has_param) s.multiple = parse_number(param, label);
    if (!(s.multiple > 1.0)) throw std::invalid_argument("spammer multiple must be > 1");
    return s;
  }
  if (has_param) {
    throw std::invalid_argument("mode '" + std::string(label) + "' takes no parameter");
  }
  if (label == "inactive") return Inactive{};
  if (label == "best_effort") return BestEffort{};
  if (label == "multirate") return MaliciousMultiRate{};
  throw std::invalid_argument("unknown node mode '" + std::string(text) + "'");
}

}  // namespace tanglesim
