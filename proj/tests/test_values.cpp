#include <doctest.h>

#include "gpv/list_value.hpp"
#include "gpv/universe.hpp"

using namespace gpv;

TEST_CASE("list value typing follows the subtype chain") {
  ListValue five{Atom::of_int(5)};
  ListValue str{Atom::of_str("ab")};
  ListValue ch{Atom::of_str("a")};
  ListValue pair{Atom::of_int(1), Atom::of_int(2)};
  ListValue empty;

  CHECK(is_int_value(five));
  CHECK(is_atom_value(five));
  CHECK(!is_string_value(five));
  CHECK(is_string_value(str));
  CHECK(!is_char_value(str));
  CHECK(is_char_value(ch));
  CHECK(!is_atom_value(pair));
  CHECK(!is_atom_value(empty));
}

TEST_CASE("list printing") {
  CHECK(print_list({}) == "empty");
  CHECK(print_list({Atom::of_int(-3)}) == "-3");
  CHECK(print_list({Atom::of_int(1), Atom::of_str("ab")}) == "1:\"ab\"");
}

TEST_CASE("default universe sizes") {
  LabelUniverse u;
  // ints -2..3, strings "", "a", "b"
  CHECK(u.atoms().size() == 9);
  // empty + 9 + 81
  CHECK(u.lists().size() == 91);
  CHECK(u.contains({Atom::of_int(3)}));
  CHECK(!u.contains({Atom::of_int(4)}));
  CHECK(u.contains_sorted({Atom::of_int(2)}, Sort::Int));
  CHECK(!u.contains_sorted({Atom::of_str("a")}, Sort::Int));
  CHECK(!u.contains({Atom::of_str("abc")}));
}
