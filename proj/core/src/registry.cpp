#include "ptf/registry.hpp"

#include <stdexcept>

namespace ptf {

namespace {

using Args = std::span<const Sign>;

Sign land(Sign a, Sign b) { return sign_from_bool(truth(a) && truth(b)); }
Sign lor(Sign a, Sign b) { return sign_from_bool(truth(a) || truth(b)); }
Sign lxor(Sign a, Sign b) { return sign_from_bool(truth(a) != truth(b)); }
Sign limp(Sign a, Sign b) { return sign_from_bool(!truth(a) || truth(b)); }

int true_count(Args x) {
  int c = 0;
  for (Sign v : x) c += truth(v);
  return c;
}

OperationSpec make_op(std::string name, int n, std::vector<std::string> variables,
                      std::function<Sign(Args)> fn) {
  return OperationSpec{std::move(name), n, std::move(variables), std::move(fn)};
}

std::vector<OperationSpec> build_n2() {
  std::vector<OperationSpec> ops;
  auto add = [&](const char* name, std::function<Sign(Sign, Sign)> fn) {
    ops.push_back(make_op(name, 2, default_variables(2),
                          [fn = std::move(fn)](Args x) { return fn(x[0], x[1]); }));
  };
  add("false", [](Sign, Sign) { return kFalse; });
  add("true", [](Sign, Sign) { return kTrue; });
  add("a", [](Sign a, Sign) { return a; });
  add("not_a", [](Sign a, Sign) { return negated(a); });
  add("b", [](Sign, Sign b) { return b; });
  add("not_b", [](Sign, Sign b) { return negated(b); });
  add("and", land);
  add("nand", [](Sign a, Sign b) { return negated(land(a, b)); });
  add("or", lor);
  add("nor", [](Sign a, Sign b) { return negated(lor(a, b)); });
  add("xor", lxor);
  add("xnor", [](Sign a, Sign b) { return negated(lxor(a, b)); });
  add("implies", limp);                                                  // a -> b
  add("not_implies", [](Sign a, Sign b) { return negated(limp(a, b)); });  // a and not b
  add("converse", [](Sign a, Sign b) { return limp(b, a); });            // b -> a
  add("not_converse", [](Sign a, Sign b) { return negated(limp(b, a)); });  // not a and b
  return ops;
}

// The three-variable group keeps the names of the reference mask corpus; that
// corpus was recorded under the opposite output polarity, so several names
// read inverted. The formula in each comment is authoritative.
std::vector<OperationSpec> build_n3() {
  std::vector<OperationSpec> ops;
  auto add = [&](const char* name, std::function<Sign(Sign, Sign, Sign)> fn) {
    ops.push_back(make_op(name, 3, default_variables(3),
                          [fn = std::move(fn)](Args x) { return fn(x[0], x[1], x[2]); }));
  };
  add("parity_3", [](Sign a, Sign b, Sign c) { return lxor(lxor(a, b), c); });  // odd parity
  add("majority_3", [](Sign a, Sign b, Sign c) {
    return sign_from_bool(truth(a) + truth(b) + truth(c) >= 2);  // at least 2 true
  });
  add("and_3", [](Sign a, Sign b, Sign c) { return lor(lor(a, b), c); });   // a or b or c
  add("or_3", [](Sign a, Sign b, Sign c) { return land(land(a, b), c); });  // a and b and c
  add("xor_ab_xor_c", [](Sign a, Sign b, Sign c) { return lxor(lxor(a, b), c); });  // (a^b)^c
  add("and_ab_or_c", [](Sign a, Sign b, Sign c) { return land(lor(a, b), c); });    // (a|b)&c
  add("or_ab_and_c", [](Sign a, Sign b, Sign c) { return lor(land(a, b), c); });    // (a&b)|c
  add("implies_ab_c", [](Sign a, Sign b, Sign c) { return land(limp(b, a), c); });  // (b->a)&c
  add("xor_and_ab_c", [](Sign a, Sign b, Sign c) { return lxor(lor(a, b), c); });   // (a|b)^c
  add("and_xor_ab_c", [](Sign a, Sign b, Sign c) { return lor(lxor(a, b), c); });   // (a^b)|c
  return ops;
}

// Four-variable operations declare the variable order (d,c,b,a) -- d at bit
// position 0 -- so serialized coefficients follow the conventional printed
// character sequence [1, d, c, cd, b, ..., abcd].
std::vector<OperationSpec> build_n4() {
  std::vector<OperationSpec> ops;
  const std::vector<std::string> vars{"d", "c", "b", "a"};
  auto add = [&](const char* name, std::function<Sign(Sign, Sign, Sign, Sign)> fn) {
    ops.push_back(make_op(name, 4, vars,
                          [fn = std::move(fn)](Args x) { return fn(x[3], x[2], x[1], x[0]); }));
  };
  add("xor_4", [](Sign a, Sign b, Sign c, Sign d) { return lxor(lxor(lxor(a, b), c), d); });
  add("and_4", [](Sign a, Sign b, Sign c, Sign d) { return land(land(land(a, b), c), d); });
  add("or_4", [](Sign a, Sign b, Sign c, Sign d) { return lor(lor(lor(a, b), c), d); });
  // Majority vote; ties (2 of 4) resolved by the first input's value.
  add("majority_4", [](Sign a, Sign b, Sign c, Sign d) {
    return sign_from_bool(2 * truth(a) + truth(b) + truth(c) + truth(d) >= 3);
  });
  add("threshold_3of4", [](Sign a, Sign b, Sign c, Sign d) {
    Sign x[4] = {a, b, c, d};
    return sign_from_bool(true_count(x) >= 3);
  });
  add("exactly_2of4", [](Sign a, Sign b, Sign c, Sign d) {
    Sign x[4] = {a, b, c, d};
    return sign_from_bool(true_count(x) == 2);
  });
  add("xor_ab_and_cd", [](Sign a, Sign b, Sign c, Sign d) { return land(lxor(a, b), land(c, d)); });
  add("or_ab_xor_cd", [](Sign a, Sign b, Sign c, Sign d) { return lxor(lor(a, b), lxor(c, d)); });
  add("nested_xor", [](Sign a, Sign b, Sign c, Sign d) { return lxor(lxor(lxor(a, b), c), d); });
  // Right-associative chain a -> (b -> (c -> d)).
  add("implies_chain", [](Sign a, Sign b, Sign c, Sign d) { return limp(a, limp(b, limp(c, d))); });
  return ops;
}

const std::vector<OperationSpec>& group(int n) {
  static const std::vector<OperationSpec> n2 = build_n2();
  static const std::vector<OperationSpec> n3 = build_n3();
  static const std::vector<OperationSpec> n4 = build_n4();
  switch (n) {
    case 2: return n2;
    case 3: return n3;
    case 4: return n4;
    default: throw std::invalid_argument("no built-in operations for n = " + std::to_string(n));
  }
}

}  // namespace

TruthTable truth_table_of(const OperationSpec& op) {
  if (op.n < 1 || op.n > TruthTable::kMaxMaterializedN) {
    throw std::invalid_argument("truth_table_of: n exceeds materialization bound");
  }
  const std::size_t size = std::size_t{1} << op.n;
  std::vector<Sign> outputs(size);
  std::vector<Sign> x(static_cast<std::size_t>(op.n));
  for (std::size_t idx = 0; idx < size; ++idx) {
    for (int i = 0; i < op.n; ++i) x[static_cast<std::size_t>(i)] = input_bit(idx, i);
    outputs[idx] = op.evaluator(x);
    if (!is_sign(outputs[idx])) {
      throw std::logic_error("operation evaluator returned a non-sign value");
    }
  }
  return TruthTable(op.n, std::move(outputs));
}

const std::vector<OperationSpec>& builtin_operations(int n) { return group(n); }

const OperationSpec* find_operation(std::string_view name) {
  for (int n : {2, 3, 4}) {
    for (const auto& op : group(n)) {
      if (op.name == name) return &op;
    }
  }
  return nullptr;
}

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  for (int n : {2, 3, 4}) {
    for (const auto& op : group(n)) names.push_back(op.name);
  }
  return names;
}

}  // namespace ptf
