#include "gpv/list_value.hpp"

namespace gpv {

bool is_atom_value(const ListValue& v) { return v.size() == 1; }

bool is_int_value(const ListValue& v) { return v.size() == 1 && v[0].is_int; }

bool is_string_value(const ListValue& v) { return v.size() == 1 && !v[0].is_int; }

bool is_char_value(const ListValue& v) {
  return is_string_value(v) && v[0].str.size() == 1;
}

std::string print_atom(const Atom& a) {
  if (a.is_int) return std::to_string(a.num);
  return "\"" + a.str + "\"";
}

std::string print_list(const ListValue& v) {
  if (v.empty()) return "empty";
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ":";
    out += print_atom(v[i]);
  }
  return out;
}

int compare_lists(const ListValue& a, const ListValue& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

}  // namespace gpv
