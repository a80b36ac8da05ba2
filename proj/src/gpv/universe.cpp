#include "gpv/universe.hpp"

namespace gpv {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Node: return "node";
    case Sort::Edge: return "edge";
    case Sort::List: return "list";
    case Sort::Atom: return "atom";
    case Sort::Int: return "int";
    case Sort::String: return "string";
    case Sort::Char: return "char";
  }
  return "?";
}

bool is_label_sort(Sort s) { return s != Sort::Node && s != Sort::Edge; }

std::vector<std::string> LabelUniverse::strings() const {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (int len = 1; len <= max_string_len; ++len) {
    std::vector<std::string> next;
    for (const auto& s : layer)
      for (char c : chars) next.push_back(s + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

const std::vector<ListValue>& LabelUniverse::atoms() const {
  if (atoms_cache_.empty()) {
    for (long long i = int_lo; i <= int_hi; ++i) atoms_cache_.push_back({Atom::of_int(i)});
    for (const auto& s : strings()) atoms_cache_.push_back({Atom::of_str(s)});
  }
  return atoms_cache_;
}

const std::vector<ListValue>& LabelUniverse::lists() const {
  if (lists_cache_.empty()) {
    const auto& as = atoms();
    lists_cache_.push_back({});  // empty
    std::vector<ListValue> layer{{}};
    for (int len = 1; len <= max_list_len; ++len) {
      std::vector<ListValue> next;
      for (const auto& l : layer)
        for (const auto& a : as) {
          ListValue v = l;
          v.push_back(a[0]);
          next.push_back(std::move(v));
        }
      lists_cache_.insert(lists_cache_.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  }
  return lists_cache_;
}

bool LabelUniverse::contains(const ListValue& v) const {
  if ((int)v.size() > max_list_len) return false;
  for (const auto& a : v) {
    if (a.is_int) {
      if (a.num < int_lo || a.num > int_hi) return false;
    } else {
      if ((int)a.str.size() > max_string_len) return false;
      for (char c : a.str)
        if (chars.find(c) == std::string::npos) return false;
    }
  }
  return true;
}

bool LabelUniverse::contains_sorted(const ListValue& v, Sort s) const {
  return value_has_sort(v, s) && contains(v);
}

std::string LabelUniverse::describe() const {
  return "ints [" + std::to_string(int_lo) + ".." + std::to_string(int_hi) + "], chars {" +
         chars + "}, strings <= " + std::to_string(max_string_len) + ", lists <= " +
         std::to_string(max_list_len);
}

bool value_has_sort(const ListValue& v, Sort s) {
  switch (s) {
    case Sort::List: return true;
    case Sort::Atom: return is_atom_value(v);
    case Sort::Int: return is_int_value(v);
    case Sort::String: return is_string_value(v);
    case Sort::Char: return is_char_value(v);
    default: return false;
  }
}

}  // namespace gpv
