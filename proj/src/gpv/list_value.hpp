#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gpv {

// An atom of a host-graph list: an integer or a character string.
struct Atom {
  bool is_int = true;
  long long num = 0;
  std::string str;

  static Atom of_int(long long v) { return Atom{true, v, {}}; }
  static Atom of_str(std::string s) { return Atom{false, 0, std::move(s)}; }

  bool operator==(const Atom& o) const {
    return is_int == o.is_int && (is_int ? num == o.num : str == o.str);
  }
  bool operator<(const Atom& o) const {
    if (is_int != o.is_int) return is_int;  // ints before strings
    return is_int ? num < o.num : str < o.str;
  }
};

// A host list. Lists of length one are identified with their content, so an
// integer value is the singleton list holding it.
using ListValue = std::vector<Atom>;

// Type tests along the GP 2 subtype chain list > atom > string > char, atom > int.
bool is_atom_value(const ListValue& v);
bool is_int_value(const ListValue& v);
bool is_string_value(const ListValue& v);
bool is_char_value(const ListValue& v);

std::string print_atom(const Atom& a);
std::string print_list(const ListValue& v);  // `empty` for the empty list

int compare_lists(const ListValue& a, const ListValue& b);  // total order

}  // namespace gpv
