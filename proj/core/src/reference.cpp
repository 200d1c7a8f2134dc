#include "ptf/reference.hpp"

#include <array>
#include <stdexcept>

namespace ptf::reference {

namespace {

NamedMask nm(const char* op, int n, std::vector<Sign> coeffs, std::vector<std::string> vars) {
  return NamedMask{op, TernaryMask(n, std::move(coeffs), std::move(vars))};
}

std::vector<NamedMask> build_n2() {
  const auto v = default_variables(2);
  std::vector<NamedMask> m;
  m.push_back(nm("false", 2, {+1, 0, 0, 0}, v));
  m.push_back(nm("true", 2, {-1, 0, 0, 0}, v));
  m.push_back(nm("and", 2, {+1, +1, +1, -1}, v));
  m.push_back(nm("nand", 2, {-1, -1, -1, +1}, v));
  m.push_back(nm("or", 2, {-1, +1, +1, +1}, v));
  m.push_back(nm("nor", 2, {+1, -1, -1, -1}, v));
  m.push_back(nm("xor", 2, {0, 0, 0, +1}, v));
  m.push_back(nm("xnor", 2, {0, 0, 0, -1}, v));
  m.push_back(nm("a", 2, {0, +1, 0, 0}, v));
  m.push_back(nm("not_a", 2, {0, -1, 0, 0}, v));
  m.push_back(nm("b", 2, {0, 0, +1, 0}, v));
  m.push_back(nm("not_b", 2, {0, 0, -1, 0}, v));
  m.push_back(nm("not_implies", 2, {+1, +1, -1, +1}, v));   // a and not b
  m.push_back(nm("converse", 2, {-1, +1, -1, -1}, v));      // a or not b
  m.push_back(nm("not_converse", 2, {+1, -1, +1, +1}, v));  // not a and b
  m.push_back(nm("implies", 2, {-1, -1, +1, -1}, v));       // not a or b
  return m;
}

// Recorded in the conventional display order [1, a, b, c, ab, ac, bc, abc];
// storage is character-bitmask order, so positions for c and ab swap.
NamedMask nm3(const char* op, std::array<Sign, 8> printed) {
  return nm(op, 3,
            {printed[0], printed[1], printed[2], printed[4], printed[3], printed[5], printed[6],
             printed[7]},
            default_variables(3));
}

std::vector<NamedMask> build_n3() {
  std::vector<NamedMask> m;
  m.push_back(nm3("parity_3", {-1, 0, 0, 0, 0, 0, 0, +1}));
  m.push_back(nm3("majority_3", {-1, 0, +1, +1, 0, 0, 0, -1}));
  m.push_back(nm3("and_3", {-1, 0, 0, +1, 0, +1, +1, +1}));
  m.push_back(nm3("or_3", {-1, +1, +1, +1, -1, -1, -1, +1}));
  m.push_back(nm3("xor_ab_xor_c", {-1, 0, 0, 0, 0, 0, 0, +1}));
  m.push_back(nm3("and_ab_or_c", {-1, 0, +1, +1, +1, 0, -1, -1}));
  m.push_back(nm3("or_ab_and_c", {-1, 0, 0, +1, -1, +1, +1, 0}));
  m.push_back(nm3("implies_ab_c", {-1, 0, -1, +1, -1, 0, +1, +1}));
  m.push_back(nm3("xor_and_ab_c", {-1, -1, 0, -1, 0, +1, +1, +1}));
  m.push_back(nm3("and_xor_ab_c", {-1, -1, 0, +1, +1, 0, 0, +1}));
  return m;
}

std::vector<NamedMask> build_n4() {
  const std::vector<std::string> v{"d", "c", "b", "a"};
  std::vector<NamedMask> m;
  m.push_back(nm("xor_4", 4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, +1}, v));
  m.push_back(nm("and_4", 4, {-1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1, +1}, v));
  m.push_back(nm("or_4", 4, {+1, +1, +1, -1, +1, -1, -1, +1, +1, -1, -1, +1, -1, +1, +1, -1}, v));
  m.push_back(nm("majority_4", 4, {+1, +1, +1, -1, +1, 0, 0, -1, +1, -1, 0, 0, -1, -1, -1, +1}, v));
  m.push_back(nm("threshold_3of4", 4, {-1, +1, +1, +1, +1, +1, 0, 0, +1, 0, 0, 0, +1, 0, 0, -1}, v));
  m.push_back(nm("exactly_2of4", 4, {-1, 0, 0, -1, 0, -1, -1, 0, 0, -1, -1, 0, -1, 0, 0, +1}, v));
  m.push_back(nm("xor_ab_and_cd", 4, {-1, +1, +1, +1, 0, 0, 0, 0, 0, 0, 0, 0, +1, +1, +1, +1}, v));
  m.push_back(nm("or_ab_xor_cd", 4, {+1, +1, +1, -1, +1, +1, +1, -1, +1, +1, +1, -1, -1, -1, -1, +1}, v));
  m.push_back(nm("nested_xor", 4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, +1}, v));
  m.push_back(nm("implies_chain", 4, {+1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1, -1, +1}, v));
  return m;
}

}  // namespace

const std::vector<NamedMask>& masks_n2() {
  static const auto m = build_n2();
  return m;
}

const std::vector<NamedMask>& masks_n3() {
  static const auto m = build_n3();
  return m;
}

const std::vector<NamedMask>& masks_n4() {
  static const auto m = build_n4();
  return m;
}

const std::vector<LinearCompositionRow>& linear_composition_rows() {
  static const std::vector<LinearCompositionRow> rows{
      {"xor", "xor", +1},     {"and", "and", +1},          {"or", "or", +1},
      {"implies", "implies", +1}, {"xnor", "xor", -1},     {"nand", "and", -1},
      {"nor", "or", -1},      {"not_implies", "implies", -1},
  };
  return rows;
}

TernaryMask primitive_mask(const std::string& op_name) {
  for (const auto& entry : masks_n2()) {
    if (entry.op == op_name) return entry.mask;
  }
  throw std::invalid_argument("no reference mask for operation " + op_name);
}

const TernaryMask& const_false_mask() {
  static const TernaryMask m(2, {+1, 0, 0, 0});
  return m;
}

}  // namespace ptf::reference
