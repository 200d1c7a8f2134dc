#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ptf/core.hpp"
#include "ptf/io.hpp"
#include "ptf/reference.hpp"
#include "ptf/registry.hpp"
#include "ptf/rng.hpp"
#include "ptf/transform.hpp"

using namespace ptf;

namespace {

const TruthTable& table_of(const char* name) {
  static std::vector<std::pair<std::string, TruthTable>> cache;
  for (const auto& [key, table] : cache) {
    if (key == name) return table;
  }
  const OperationSpec* op = find_operation(name);
  REQUIRE(op != nullptr);
  cache.emplace_back(name, truth_table_of(*op));
  return cache.back().second;
}

const TernaryMask& reference_mask(const std::vector<reference::NamedMask>& group,
                                  const std::string& name) {
  for (const auto& entry : group) {
    if (entry.op == name) return entry.mask;
  }
  REQUIRE_MESSAGE(false, "missing reference mask for " << name);
  static TernaryMask dummy(2, {0, 0, 0, 0});
  return dummy;
}

}  // namespace

TEST_CASE("expand_basis on small assignments") {
  SUBCASE("all-ones input") {
    const Sign x[] = {+1, +1};
    const auto phi = expand_basis(x);
    CHECK(phi == std::vector<Sign>{+1, +1, +1, +1});
  }
  SUBCASE("mixed input, ordering [1,a,b,ab]") {
    const Sign x[] = {-1, +1};
    const auto phi = expand_basis(x);
    CHECK(phi == std::vector<Sign>{+1, -1, +1, -1});
  }
  SUBCASE("n=3 all TRUE: products over each character subset") {
    const Sign x[] = {-1, -1, -1};
    const auto phi = expand_basis(x);
    // bitmask order: [1, a, b, ab, c, ac, bc, abc]
    CHECK(phi == std::vector<Sign>{+1, -1, -1, +1, -1, +1, +1, -1});
    // equivalently, in the display order [1, a, b, c, ab, ac, bc, abc]:
    const auto vars = default_variables(3);
    CHECK(phi[0b100] == -1);  // c
    CHECK(phi[0b011] == +1);  // ab
    CHECK(character_label(0b100, vars) == "c");
    CHECK(character_label(0b011, vars) == "ab");
  }
  SUBCASE("rejects values other than +-1") {
    const Sign x[] = {0, +1};
    CHECK_THROWS_AS(expand_basis(x), std::invalid_argument);
  }
}

TEST_CASE("eval_mask and the sign(0) convention") {
  SUBCASE("XOR mask on (TRUE, FALSE)") {
    const TernaryMask xor_mask(2, {0, 0, 0, +1});
    const Sign x[] = {-1, +1};
    CHECK(eval_mask(xor_mask, x) == kTrue);
  }
  SUBCASE("all-zero mask is constant FALSE") {
    const TernaryMask zero(2, {0, 0, 0, 0});
    for (std::size_t idx = 0; idx < 4; ++idx) {
      const Sign x[] = {input_bit(idx, 0), input_bit(idx, 1)};
      CHECK(eval_mask(zero, x) == kFalse);
    }
  }
  SUBCASE("majority_3 reference mask hits a zero dot product on all-FALSE") {
    const auto& mask = reference_mask(reference::masks_n3(), "majority_3");
    const Sign x[] = {+1, +1, +1};
    CHECK(mask_dot(mask, x) == 0);
    CHECK(eval_mask(mask, x) == kFalse);
  }
  SUBCASE("dimension mismatch throws") {
    const TernaryMask mask(2, {0, 0, 0, +1});
    const Sign x[] = {-1, +1, -1};
    CHECK_THROWS_AS(eval_mask(mask, x), std::invalid_argument);
  }
}

TEST_CASE("truth_table_of materializes registry operations") {
  SUBCASE("and") {
    const auto& t = table_of("and");
    // index bits: bit0 = a, bit1 = b; bit 1 means TRUE
    CHECK(t.output(0b11) == kTrue);
    CHECK(t.output(0b01) == kFalse);
    CHECK(t.output(0b10) == kFalse);
    CHECK(t.output(0b00) == kFalse);
  }
  SUBCASE("implies matches sign(-1 - a + b - ab) pointwise") {
    const auto& t = table_of("implies");
    const TernaryMask mask(2, {-1, -1, +1, -1});
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
      CHECK(t.output(idx) == sign_of(mask_dot_at(mask, idx)));
    }
  }
  SUBCASE("parity_3 equals the product abc at every input") {
    const auto& t = table_of("parity_3");
    for (std::size_t idx = 0; idx < t.size(); ++idx) {
      const auto x = t.input_at(idx);
      CHECK(t.output(idx) == static_cast<Sign>(x[0] * x[1] * x[2]));
    }
  }
}

TEST_CASE("accuracy") {
  SUBCASE("reference AND mask scores 1.0") {
    CHECK(accuracy(reference_mask(reference::masks_n2(), "and"), table_of("and")) == 1.0);
  }
  SUBCASE("all-zero mask scores 0.0 against constant TRUE") {
    const TernaryMask zero(2, {0, 0, 0, 0});
    CHECK(accuracy(zero, table_of("true")) == 0.0);
  }
  SUBCASE("XOR parent against NAND table scores 0.75") {
    CHECK(accuracy(reference_mask(reference::masks_n2(), "xor"), table_of("nand")) == 0.75);
  }
  SUBCASE("dimension mismatch throws") {
    const TernaryMask zero(2, {0, 0, 0, 0});
    CHECK_THROWS_AS(accuracy(zero, table_of("parity_3")), std::invalid_argument);
  }
}

TEST_CASE("support statistics") {
  SUBCASE("n=3 reference masks average support 4.9") {
    std::vector<TernaryMask> masks;
    for (const auto& entry : reference::masks_n3()) masks.push_back(entry.mask);
    const auto stats = support_stats(masks);
    CHECK(stats.mean_support == doctest::Approx(4.9));
    CHECK(stats.mean_sparsity == doctest::Approx(1.0 - 4.9 / 8.0));
  }
  SUBCASE("n=4 reference masks average support 10.3") {
    std::vector<TernaryMask> masks;
    for (const auto& entry : reference::masks_n4()) masks.push_back(entry.mask);
    const auto stats = support_stats(masks);
    CHECK(stats.mean_support == doctest::Approx(10.3));
  }
  SUBCASE("single all-zero mask") {
    const std::vector<TernaryMask> masks{TernaryMask(2, {0, 0, 0, 0})};
    const auto stats = support_stats(masks);
    CHECK(stats.mean_support == 0.0);
    CHECK(stats.mean_sparsity == 1.0);
  }
  SUBCASE("empty input throws") {
    CHECK_THROWS_AS(support_stats({}), std::invalid_argument);
  }
}

TEST_CASE("character orthogonality for n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t t = s; t < dim; ++t) {
        std::int64_t dot = 0;
        for (std::size_t x = 0; x < dim; ++x) {
          const int chi_s = std::popcount(x & s) & 1 ? -1 : 1;
          const int chi_t = std::popcount(x & t) & 1 ? -1 : 1;
          dot += chi_s * chi_t;
        }
        if (s == t) {
          CHECK(dot == static_cast<std::int64_t>(dim));
        } else {
          CHECK(dot == 0);
        }
      }
    }
  }
}

TEST_CASE("XOR spectrum concentrates on the parity character") {
  const auto spectrum = exact_coefficients(table_of("xor"));
  CHECK(spectrum.coeffs[0] == 0.0);
  CHECK(spectrum.coeffs[1] == 0.0);
  CHECK(spectrum.coeffs[2] == 0.0);
  CHECK(spectrum.coeffs[3] == 1.0);
}

TEST_CASE("every reference mask reproduces its operation exactly") {
  for (const auto& entry : reference::masks_n2()) {
    CAPTURE(entry.op);
    CHECK(accuracy(entry.mask, table_of(entry.op.c_str())) == 1.0);
  }
  for (const auto& entry : reference::masks_n3()) {
    CAPTURE(entry.op);
    CHECK(accuracy(entry.mask, table_of(entry.op.c_str())) == 1.0);
  }
}

TEST_CASE("eval_mask is pure") {
  const auto& mask = reference_mask(reference::masks_n3(), "implies_ab_c");
  const Sign x[] = {-1, +1, -1};
  const Sign first = eval_mask(mask, x);
  for (int i = 0; i < 10; ++i) CHECK(eval_mask(mask, x) == first);
}

TEST_CASE("registry group sizes and lookup") {
  CHECK(builtin_operations(2).size() == 16);
  CHECK(builtin_operations(3).size() == 10);
  CHECK(builtin_operations(4).size() == 10);
  CHECK_THROWS_AS(builtin_operations(5), std::invalid_argument);
  CHECK(find_operation("xor_4") != nullptr);
  CHECK(find_operation("no_such_op") == nullptr);

  // All 16 two-variable functions are distinct.
  std::set<std::vector<Sign>> tables;
  for (const auto& op : builtin_operations(2)) {
    const auto t = truth_table_of(op);
    tables.insert(std::vector<Sign>(t.outputs().begin(), t.outputs().end()));
  }
  CHECK(tables.size() == 16);
}

TEST_CASE("mask reindexing between declared variable orders") {
  // xor_4 under the (d,c,b,a) declared order: coefficient at index 15 only.
  const auto& recorded = reference_mask(reference::masks_n4(), "xor_4");
  const auto reordered = reindexed(recorded, {"a", "b", "c", "d"});
  CHECK(reordered.coeff(15) == +1);
  CHECK(reordered.support() == 1);

  // An asymmetric mask moves: coefficient on {d} alone lands on bit 3.
  TernaryMask d_only(4, {0, +1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                     {"d", "c", "b", "a"});
  const auto moved = reindexed(d_only, {"a", "b", "c", "d"});
  CHECK(moved.coeff(1u << 3) == +1);
  CHECK(moved.support() == 1);

  // Round trip restores the original coefficients.
  const auto back = reindexed(moved, {"d", "c", "b", "a"});
  CHECK(back.coeffs() == d_only.coeffs());

  CHECK_THROWS_AS(reindexed(d_only, {"a", "b", "c", "x"}), std::invalid_argument);
}

TEST_CASE("character labels") {
  const std::vector<std::string> abc = default_variables(3);
  CHECK(character_label(0, abc) == "1");
  CHECK(character_label(0b011, abc) == "ab");
  CHECK(character_label(0b111, abc) == "abc");
  const std::vector<std::string> dcba{"d", "c", "b", "a"};
  CHECK(character_label(0b0011, dcba) == "cd");
  CHECK(character_label(0b1111, dcba) == "abcd");
}

TEST_CASE("interchange documents round-trip") {
  rng::Stream stream(2024, 0);
  for (int round = 0; round < 25; ++round) {
    const int n = 2 + static_cast<int>(stream.below(3));
    std::vector<Sign> coeffs(std::size_t{1} << n);
    for (auto& c : coeffs) c = static_cast<Sign>(static_cast<int>(stream.below(3)) - 1);
    const TernaryMask mask(n, coeffs);
    const auto parsed = io::mask_from_json(io::to_json(mask, "fuzz"));
    CHECK(parsed == mask);
    CHECK(parsed.variables() == mask.variables());

    std::vector<Sign> outputs(std::size_t{1} << n);
    for (auto& o : outputs) o = stream.below(2) ? kTrue : kFalse;
    const TruthTable table(n, outputs);
    CHECK(io::table_from_json(io::to_json(table)) == table);
  }
}

TEST_CASE("invalid constructions are rejected") {
  CHECK_THROWS_AS(TruthTable(2, std::vector<Sign>{1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TruthTable(2, std::vector<Sign>{1, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(TernaryMask(2, std::vector<Sign>{2, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(TernaryMask(2, std::vector<Sign>{0, 0, 0}), std::invalid_argument);
}
