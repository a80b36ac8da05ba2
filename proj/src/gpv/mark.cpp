#include "gpv/mark.hpp"

namespace gpv {

const char* mark_name(Mark m) {
  switch (m) {
    case Mark::None: return "none";
    case Mark::Red: return "red";
    case Mark::Green: return "green";
    case Mark::Blue: return "blue";
    case Mark::Grey: return "grey";
    case Mark::Dashed: return "dashed";
    case Mark::Any: return "any";
  }
  return "?";
}

std::optional<Mark> mark_from_name(const std::string& s) {
  if (s == "none") return Mark::None;
  if (s == "red") return Mark::Red;
  if (s == "green") return Mark::Green;
  if (s == "blue") return Mark::Blue;
  if (s == "grey" || s == "gray") return Mark::Grey;
  if (s == "dashed") return Mark::Dashed;
  if (s == "any") return Mark::Any;
  return std::nullopt;
}

bool is_node_mark(Mark m) {
  return m == Mark::None || m == Mark::Red || m == Mark::Green || m == Mark::Blue ||
         m == Mark::Grey;
}

bool is_edge_mark(Mark m) {
  return m == Mark::None || m == Mark::Red || m == Mark::Green || m == Mark::Blue ||
         m == Mark::Dashed;
}

bool is_rule_node_mark(Mark m) { return is_node_mark(m) || m == Mark::Any; }
bool is_rule_edge_mark(Mark m) { return is_edge_mark(m) || m == Mark::Any; }

const std::vector<Mark>& any_node_marks() {
  static const std::vector<Mark> v{Mark::Red, Mark::Green, Mark::Blue, Mark::Grey};
  return v;
}

const std::vector<Mark>& any_edge_marks() {
  static const std::vector<Mark> v{Mark::Red, Mark::Green, Mark::Blue, Mark::Dashed};
  return v;
}

}  // namespace gpv
