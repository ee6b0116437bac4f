// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "evinet/dsl.hpp"
#include "evinet/engine.hpp"
#include "evinet/error.hpp"
#include "evinet/symbolic.hpp"
#include "test_support.hpp"

using namespace evinet;
using evinet::testing::fig1;
using evinet::testing::fig2;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PlaceSet set_of(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> idx;
  for (std::size_t i : one_based) idx.push_back(i - 1);
  return PlaceSet(idx);
}

Check fig1_tables() {
  Check c;
  const auto start = Clock::now();
  const auto net = fig1();
  struct Row {
    Receptivity r;
    PlaceSet from_p1;
    PlaceSet from_p13;
  };
  const std::vector<Row> rows{
      {{1, 0, 0}, set_of({2}), set_of({2, 3})},
      {{0, 1, 0}, set_of({1}), set_of({1, 3})},
      {{0, 0, 1}, set_of({1}), set_of({1})},
      {{1, 1, 0}, set_of({2}), set_of({2, 3})},
      {{1, 0, 1}, set_of({2}), set_of({1, 2})},
      {{0, 1, 1}, set_of({1}), set_of({1})},
      {{1, 1, 1}, set_of({2}), set_of({1, 2})},
      {{0, 0, 0}, set_of({1}), set_of({1, 3})},
  };
  const auto table = build_transfer_table(net);
  int assertions = 0;
  for (const auto& row : rows) {
    c.expect(table.cell(set_of({1}), row.r) == row.from_p1, "{P1} by " + row.r.to_string());
    c.expect(table.cell(set_of({1, 3}), row.r) == row.from_p13,
             "{P1,P3} by " + row.r.to_string());
    c.expect(transform(net, set_of({1}), row.r) == row.from_p1, "transform {P1}");
    c.expect(transform(net, set_of({1, 3}), row.r) == row.from_p13, "transform {P1,P3}");
    assertions += 2;
  }
  c.expect(assertions == 16, "assertion count");
  c.expect(seconds_since(start) < 1.0, "slower than 1 s");
  return c;
}

Check fig1_inversion() {
  Check c;
  const std::set<std::pair<PlaceSet, Receptivity>> expected{
      {set_of({1}), {0, 0, 0}},    {set_of({1}), {0, 1, 0}},
      {set_of({1}), {0, 0, 1}},    {set_of({1}), {0, 1, 1}},
      {set_of({3}), {0, 0, 1}},    {set_of({3}), {1, 0, 1}},
      {set_of({3}), {0, 1, 1}},    {set_of({3}), {1, 1, 1}},
      {set_of({1, 3}), {0, 0, 1}}, {set_of({1, 3}), {0, 1, 1}},
  };
  const auto pairs = invert_table(build_transfer_table(fig1()), set_of({1}));
  const std::set<std::pair<PlaceSet, Receptivity>> got(pairs.begin(), pairs.end());
  c.expect(pairs.size() == 10, "expected 10 pairs, got " + std::to_string(pairs.size()));
  c.expect(got == expected, "pair sets differ");
  return c;
}

Check fig1_equations() {
  Check c;
  const std::vector<std::string> printed{
      "M{1}(k+1) = !r1*M{1}(k) + r3*M{3}(k) + !r1*r3*M{1,3}(k)",
      "M{2}(k+1) = !r2*M{2}(k) + r1*M{1}(k) + !r2*r1*M{1,2}(k)",
      "M{3}(k+1) = !r3*M{3}(k) + r2*M{2}(k) + !r3*r2*M{2,3}(k)",
      "M{1,2}(k+1) = !r1*!r2*M{1,2}(k) + r1*r3*M{1,3}(k) + !r2*r3*(M{2,3}(k) + M{1,2,3}(k))",
      "M{1,3}(k+1) = !r1*!r3*M{1,3}(k) + r2*r3*M{2,3}(k) + !r1*r2*(M{1,2}(k) + M{1,2,3}(k))",
      "M{2,3}(k+1) = !r2*!r3*M{2,3}(k) + r1*r2*M{1,2}(k) + !r3*r1*(M{1,3}(k) + M{1,2,3}(k))",
      "M{1,2,3}(k+1) = (!r1*!r2*!r3 + r1*r2*r3)*M{1,2,3}(k)",
  };
  const auto emitted = emit_equations(build_transfer_table(fig1()), true);
  c.expect(emitted.size() == 7, "expected 7 equations");
  int checks = 0;
  for (const auto& text : printed) {
    const auto reference = parse_equation(text, 3);
    const MassEquation* match = nullptr;
    for (const auto& eq : emitted) {
      if (eq.target == reference.target) match = &eq;
    }
    c.expect(match != nullptr, "no emitted equation for " + text);
    if (!match) continue;
    for (std::uint64_t code = 0; code < 8; ++code) {
      for (const auto& source : canonical_subsets(3)) {
        c.expect(match->coefficient(source, code) == reference.coefficient(source, code),
                 text + " differs at " + Receptivity::from_code(code, 3).to_string());
      }
      ++checks;
    }
  }
  c.expect(checks == 56, "expected 56 truth-table checks, ran " + std::to_string(checks));
  return c;
}

Check fig1_run() {
  Check c;
  const auto net = fig1();
  const std::vector<Receptivity> inputs{{0, 1, 0}};
  const auto mass = run(net, ignorance_mass(net), inputs).final_mass();
  c.expect(mass.dense(3) == std::vector<double>{0, 0, 0, 0, 1, 0, 0}, "dense vector");
  c.expect(serialize_mass_dense(mass, 3) == "[0,0,0,0,1,0,0]", "dense record");
  for (const auto& [set, value] : mass.focal_elements()) {
    c.expect(!set.contains(1), "a focal element contains P2");
  }
  return c;
}

Check fig2_conflict() {
  Check c;
  const auto net = fig2();
  const auto start = MassVector::categorical(set_of({1, 2}));
  c.expect(step(net, start, {0, 1, 0, 0}) == MassVector::categorical(set_of({2, 3})),
           "{P1,P2} by 0100");
  try {
    step(net, start, {1, 1, 0, 0});
    c.expect(false, "1100 accepted");
  } catch (const ConflictError& e) {
    c.expect(std::string(e.what()).find("P1") != std::string::npos,
             "diagnostic does not name P1");
  }
  return c;
}

Check conservation() {
  Check c;
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  int cases = 0;
  for (; cases < 2000; ++cases) {
    const auto net = evinet::testing::random_net(rng, 8, 12);
    const auto mass = evinet::testing::random_mass(rng, net.place_count(), 4);
    const auto r = evinet::testing::random_admissible(rng, net);
    const double total = step(net, mass, r).total();
    c.expect(std::abs(total - 1.0) <= 1e-9, "sum " + std::to_string(total));
  }
  c.expect(cases >= 1000, "too few cases");
  c.expect(seconds_since(start) < 10.0, "slower than 10 s");
  return c;
}

Check classic_equivalence() {
  Check c;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = evinet::testing::random_cycle(rng, 8);
    const std::size_t n = net.place_count();
    const std::size_t m = net.transition_count();
    c.expect(detect_conflicts(net).empty(), "cycle has a conflict");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
        const auto r = Receptivity::from_code(code, m);
        const auto classic = classic_step(net, ClassicMarking::token_at(p, n), r);
        const auto mass = step(net, MassVector::categorical(PlaceSet::singleton(p)), r);
        c.expect(mass == MassVector::categorical(PlaceSet::singleton(classic.marked_place())),
                 "support differs at P" + std::to_string(p + 1) + " by " + r.to_string());
      }
    }
  }
  return c;
}

Check union_oracle() {
  Check c;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = evinet::testing::random_net(rng, 4, 6);
    const std::size_t m = net.transition_count();
    const auto subsets = canonical_subsets(net.place_count());
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
      const auto r = Receptivity::from_code(code, m);
      if (!check_receptivity(net, r).ok()) continue;
      for (const auto& x : subsets) {
        for (const auto& y : subsets) {
          c.expect(transform(net, x | y, r) == (transform(net, x, r) | transform(net, y, r)),
                   "distributivity " + x.index_label() + " " + y.index_label());
        }
      }
      const auto mass = evinet::testing::random_mass(rng, net.place_count());
      const auto expected = evinet::testing::oracle_step(net, evinet::testing::to_raw(mass),
                                                         r.bits());
      c.expect(expected.has_value(), "oracle rejected an admissible combination");
      if (!expected) continue;
      const auto got = evinet::testing::to_raw(step(net, mass, r));
      c.expect(got.size() == expected->size(), "focal count differs");
      for (const auto& [bits, value] : *expected) {
        c.expect(got.count(bits) == 1 && std::abs(got.at(bits) - value) <= 1e-12,
                 "step differs from oracle");
      }
    }
  }
  return c;
}

Check table_cardinality() {
  Check c;
  const auto t1 = build_transfer_table(fig1());
  const auto t2 = build_transfer_table(fig2());
  c.expect(t1.defined_cell_count() == 56, "fig1 cells " + std::to_string(t1.defined_cell_count()));
  c.expect(t2.admissible_codes().size() == 12, "fig2 admissible combinations");
  c.expect(t2.defined_cell_count() == 84, "fig2 cells " + std::to_string(t2.defined_cell_count()));
  return c;
}

Check dsl_round_trip() {
  Check c;
  auto round_trip = [&](const PetriNet& net, const std::string& label) {
    const std::string text = serialize_net(net);
    const auto back = parse_net(text);
    c.expect(back.same_structure(net) && serialize_net(back) == text, label);
  };
  round_trip(fig1(), "fig1");
  round_trip(fig2(), "fig2");
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    round_trip(evinet::testing::random_net(rng), "random net " + std::to_string(trial));
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"AC1 fig1 transformation tables", fig1_tables},
      {"AC2 fig1 inversion for {P1}", fig1_inversion},
      {"AC3 fig1 equation system", fig1_equations},
      {"AC4 fig1 worked run", fig1_run},
      {"AC5 fig2 conflict example", fig2_conflict},
      {"AC6 mass conservation", conservation},
      {"AC7 classic equivalence", classic_equivalence},
      {"AC8 union distributivity and oracle", union_oracle},
      {"AC9 table cardinality", table_cardinality},
      {"AC10 dsl round trip", dsl_round_trip},
  };
  int failures = 0;
  for (const auto& [name, run_check] : criteria) {
    Check result;
    try {
      result = run_check();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    if (result.ok) {
      std::printf("[PASS] %s\n", name.c_str());
    } else {
      ++failures;
      std::printf("[FAIL] %s: %s\n", name.c_str(), result.detail.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
