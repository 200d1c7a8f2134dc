#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ptf/reference.hpp"
#include "ptf/registry.hpp"
#include "ptf/rng.hpp"
#include "ptf/route.hpp"

using namespace ptf;

namespace {

RealMatrix random_logits(int rows, int cols, std::uint64_t seed) {
  RealMatrix m(rows, cols);
  rng::Stream stream(seed, 0);
  for (auto& v : m.data) v = stream.uniform(-5.0, 5.0);
  return m;
}

std::vector<TernaryMask> primitive_bank() {
  return {reference::primitive_mask("xor"), reference::primitive_mask("and"),
          reference::primitive_mask("or"), reference::primitive_mask("implies")};
}

std::vector<TruthTable> tables_for(std::initializer_list<const char*> names) {
  std::vector<TruthTable> tables;
  for (const char* name : names) tables.push_back(truth_table_of(*find_operation(name)));
  return tables;
}

}  // namespace

TEST_CASE("sinkhorn_project fixed points") {
  SUBCASE("zero 4x4 logits give the uniform doubly stochastic matrix") {
    const auto routing = sinkhorn_project(RealMatrix(4, 4), 20);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) CHECK(routing.p.at(r, c) == doctest::Approx(0.25).epsilon(1e-12));
    }
  }
  SUBCASE("strong diagonal logits converge to the identity") {
    RealMatrix logits(4, 4);
    for (int i = 0; i < 4; ++i) logits.at(i, i) = 10.0;
    const auto routing = sinkhorn_project(logits, 20);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        CHECK(std::abs(routing.p.at(r, c) - (r == c ? 1.0 : 0.0)) < 1e-3);
      }
    }
  }
  SUBCASE("zero 4x16 logits: every entry 0.25, columns sum 1, rows sum 4") {
    const auto routing = sinkhorn_project(RealMatrix(4, 16), 20);
    CHECK(routing.row_target == doctest::Approx(4.0));
    for (const double v : routing.p.data) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
    for (int c = 0; c < 16; ++c) CHECK(routing.column_sum(c) == doctest::Approx(1.0).epsilon(1e-12));
    for (int r = 0; r < 4; ++r) CHECK(routing.row_sum(r) == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("rejects non-finite logits and bad iteration counts") {
    RealMatrix logits(2, 2);
    logits.at(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sinkhorn_project(logits, 20), std::invalid_argument);
    CHECK_THROWS_AS(sinkhorn_project(RealMatrix(2, 2), 0), std::invalid_argument);
  }
  SUBCASE("column sums are exact after the final normalization, any logits") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto routing = sinkhorn_project(random_logits(4, 4, seed), 20);
      for (int c = 0; c < 4; ++c) {
        CHECK(std::abs(routing.column_sum(c) - 1.0) < 1e-12);
      }
    }
  }
  SUBCASE("log-domain updates stay finite for |logit| up to 700") {
    RealMatrix logits(3, 3);
    logits.at(0, 0) = 700.0;
    logits.at(1, 1) = -700.0;
    const auto routing = sinkhorn_project(logits, 50);
    for (double v : routing.p.data) CHECK(std::isfinite(v));
    for (int c = 0; c < 3; ++c) CHECK(routing.column_sum(c) == doctest::Approx(1.0));
  }
}

TEST_CASE("converged projections satisfy the full tolerance and closure suite") {
  // Convergence to 1e-6 row sums needs a few hundred iterations on hard
  // draws; use a comfortably converged count for the property checks.
  const int iterations = 600;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto a = sinkhorn_project(random_logits(4, 4, seed), iterations);
    const auto b = sinkhorn_project(random_logits(4, 4, seed + 1000), iterations);
    for (int c = 0; c < 4; ++c) {
      CHECK(std::abs(a.column_sum(c) - 1.0) <= 1e-6);
    }
    for (int r = 0; r < 4; ++r) {
      CHECK(std::abs(a.row_sum(r) - 1.0) <= 1e-6);
    }
    // Closure under multiplication.
    const auto product = matmul(a.p, b.p);
    for (int c = 0; c < 4; ++c) {
      double col = 0.0;
      for (int r = 0; r < 4; ++r) col += product.at(r, c);
      CHECK(std::abs(col - 1.0) <= 1e-6);
    }
    for (int r = 0; r < 4; ++r) {
      double row = 0.0;
      for (int c = 0; c < 4; ++c) row += product.at(r, c);
      CHECK(std::abs(row - 1.0) <= 1e-6);
    }
    // Norm preservation.
    CHECK(spectral_norm(a.p) <= 1.0 + 1e-6);
    CHECK(spectral_norm(product) <= 1.0 + 1e-6);
  }
  // Rectangular case: columns to 1, rows to n/m.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = sinkhorn_project(random_logits(4, 16, seed), iterations);
    for (int c = 0; c < 16; ++c) CHECK(std::abs(p.column_sum(c) - 1.0) <= 1e-6);
    for (int r = 0; r < 4; ++r) CHECK(std::abs(p.row_sum(r) - 4.0) <= 1e-6);
  }
}

TEST_CASE("harden_routing") {
  SUBCASE("identity-like matrix hardens to the identity assignment") {
    RealMatrix logits(4, 4);
    for (int i = 0; i < 4; ++i) logits.at(i, i) = 8.0;
    const auto assignment = harden_routing(sinkhorn_project(logits, 20));
    CHECK(assignment == std::vector<int>{0, 1, 2, 3});
  }
  SUBCASE("uniform columns break ties toward parent 0") {
    const auto assignment = harden_routing(sinkhorn_project(RealMatrix(4, 4), 20));
    CHECK(assignment == std::vector<int>{0, 0, 0, 0});
  }
  SUBCASE("the doubled-identity 4x16 pattern routes children j and j+4 alike") {
    RealMatrix logits(4, 16);
    for (int child = 0; child < 8; ++child) logits.at(child % 4, child) = 9.0;
    // children 8..15 keep uniform columns and fall to parent 0 by tie-break
    const auto assignment = harden_routing(sinkhorn_project(logits, 20));
    for (int child = 0; child < 8; ++child) CHECK(assignment[child] == child % 4);
  }
}

TEST_CASE("compose_mask applies the column sign") {
  CompositionPlan plan;
  plan.parents = primitive_bank();  // xor, and, or, implies
  plan.assignment = {1, 0, 2};
  plan.signs.signs = {-1, +1, -1};

  SUBCASE("AND parent with sign -1 gives the NAND mask") {
    CHECK(compose_mask(plan, 0).coeffs() == std::vector<Sign>{-1, -1, -1, +1});
  }
  SUBCASE("positive sign leaves the parent mask unchanged") {
    CHECK(compose_mask(plan, 1).coeffs() == std::vector<Sign>{0, 0, 0, +1});
  }
  SUBCASE("OR parent with sign -1 gives the NOR mask") {
    CHECK(compose_mask(plan, 2).coeffs() == std::vector<Sign>{+1, -1, -1, -1});
  }
  SUBCASE("composed masks stay ternary and index errors throw") {
    for (int child = 0; child < 3; ++child) {
      const auto composed = compose_mask(plan, child);
      for (Sign c : composed.coeffs()) CHECK((c >= -1 && c <= 1));
    }
    CHECK_THROWS_AS(compose_mask(plan, 3), std::out_of_range);
  }
}

TEST_CASE("solve_linear_composition") {
  const auto parents = primitive_bank();

  SUBCASE("all 8 sign-modulated operations reach 1.0 with the recorded pattern") {
    std::vector<std::string> names;
    std::vector<TruthTable> targets;
    for (const auto& row : reference::linear_composition_rows()) {
      names.push_back(row.target);
      targets.push_back(truth_table_of(*find_operation(row.target)));
    }
    const auto fits = solve_linear_composition(targets, parents, true);
    REQUIRE(fits.size() == 8);
    const std::vector<std::string> parent_names{"xor", "and", "or", "implies"};
    for (std::size_t i = 0; i < fits.size(); ++i) {
      const auto& row = reference::linear_composition_rows()[i];
      CAPTURE(row.target);
      CHECK(fits[i].accuracy == 1.0);
      // the recorded (parent, sign) pair is among the optima: it must
      // itself achieve accuracy 1.0
      const auto parent_mask = reference::primitive_mask(row.parent);
      const auto composed = row.sign == +1 ? parent_mask : parent_mask.negated_mask();
      CHECK(accuracy(composed, targets[i]) == 1.0);
      // and the search's winner names the same parent for these targets
      CHECK(parent_names[static_cast<std::size_t>(fits[i].parent)] == row.parent);
      CHECK(fits[i].sign == row.sign);
    }
  }

  SUBCASE("NAND without signs caps at 0.75 via the XOR parent") {
    const auto fits =
        solve_linear_composition(tables_for({"nand"}), parents, false);
    REQUIRE(fits.size() == 1);
    CHECK(fits[0].accuracy == 0.75);
    CHECK(fits[0].parent == 0);
    CHECK(fits[0].sign == +1);
  }

  SUBCASE("negation boundary over the convex-hull primitive set") {
    // parent bank {and, or, xor, const_false}: the three negations cap at
    // exactly 0.75 without signs and reach 1.0 once signs are allowed.
    std::vector<TernaryMask> hull{reference::primitive_mask("and"),
                                  reference::primitive_mask("or"),
                                  reference::primitive_mask("xor"),
                                  reference::const_false_mask()};
    const auto targets = tables_for({"nand", "nor", "xnor"});
    const auto unsigned_fits = solve_linear_composition(targets, hull, false);
    for (const auto& fit : unsigned_fits) CHECK(fit.accuracy == 0.75);
    const auto signed_fits = solve_linear_composition(targets, hull, true);
    for (const auto& fit : signed_fits) CHECK(fit.accuracy == 1.0);
  }

  SUBCASE("the eight non-routable functions never reach 1.0 even with signs") {
    const auto targets =
        tables_for({"false", "true", "a", "not_a", "b", "not_b", "converse", "not_converse"});
    const auto fits = solve_linear_composition(targets, parents, true);
    for (const auto& fit : fits) {
      CHECK(fit.accuracy < 1.0);
    }
  }

  SUBCASE("empty parent set throws") {
    CHECK_THROWS_AS(solve_linear_composition(tables_for({"nand"}), {}, true),
                    std::invalid_argument);
  }
}
