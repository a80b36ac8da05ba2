#pragma once

#include "gpv/list_value.hpp"

#include <string>
#include <vector>

namespace gpv {

// Variable kinds. Node/Edge are first-order structure variables; the rest are
// label kinds with domains per the GP 2 type hierarchy.
enum class Sort { Node, Edge, List, Atom, Int, String, Char };

const char* sort_name(Sort s);
bool is_label_sort(Sort s);

// Finite enumeration domain for label quantifiers and for bounded
// counterexample search. The true label domain is infinite; every bounded
// check in this toolkit is relative to one of these universes.
struct LabelUniverse {
  long long int_lo = -2;
  long long int_hi = 3;
  std::string chars = "ab";
  int max_string_len = 1;
  int max_list_len = 2;

  const std::vector<ListValue>& lists() const;   // all lists up to max_list_len
  const std::vector<ListValue>& atoms() const;   // singleton lists
  std::vector<std::string> strings() const;

  bool contains(const ListValue& v) const;
  bool contains_sorted(const ListValue& v, Sort s) const;

  std::string describe() const;

 private:
  mutable std::vector<ListValue> lists_cache_;
  mutable std::vector<ListValue> atoms_cache_;
};

// True iff v lies in the domain of sort s (ignoring universe bounds).
bool value_has_sort(const ListValue& v, Sort s);

}  // namespace gpv
