#include <gtest/gtest.h>

#include <random>

#include "evinet/engine.hpp"
#include "evinet/error.hpp"
#include "test_support.hpp"

using namespace evinet;
using evinet::testing::fig1;
using evinet::testing::fig2;

TEST(Ignorance, MassOnWholeFrame) {
  EXPECT_EQ(ignorance_mass(fig1()), MassVector::categorical(PlaceSet{0, 1, 2}));
  EXPECT_EQ(ignorance_mass(fig1()).dense(3), (std::vector<double>{0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(ignorance_mass(fig2()), MassVector::categorical(PlaceSet{0, 1, 2}));
  // No valid one-place net exists (self-loops are rejected), but the frame
  // is still {P1}.
  const auto lone = PetriNet::from_matrices({{1}}, {{1}});
  EXPECT_EQ(ignorance_mass(lone), MassVector::categorical(PlaceSet{0}));
}

TEST(Transform, Examples) {
  EXPECT_EQ(transform(fig1(), PlaceSet{0}, {1, 0, 0}), (PlaceSet{1}));
  EXPECT_EQ(transform(fig1(), PlaceSet{0, 2}, {1, 0, 1}), (PlaceSet{0, 1}));
  EXPECT_EQ(transform(fig1(), PlaceSet{0, 1, 2}, {0, 1, 0}), (PlaceSet{0, 2}));
  EXPECT_EQ(transform(fig2(), PlaceSet{0, 1}, {0, 1, 0, 0}), (PlaceSet{1, 2}));
}

TEST(Transform, AllFalseIsIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = evinet::testing::random_net(rng);
    const auto r = Receptivity::all_false(net.transition_count());
    for (const auto& x : canonical_subsets(net.place_count())) {
      ASSERT_EQ(transform(net, x, r), x);
    }
  }
}

TEST(Transform, Errors) {
  EXPECT_THROW(transform(fig2(), PlaceSet{0}, {1, 1, 0, 0}), ConflictError);
  EXPECT_THROW(transform(fig1(), PlaceSet{0}, {1, 0}), DimensionError);
  EXPECT_THROW(transform(fig1(), PlaceSet{3}, {1, 0, 0}), IndexError);
}

TEST(Step, Examples) {
  const auto net = fig1();
  EXPECT_EQ(step(net, ignorance_mass(net), {0, 1, 0}),
            MassVector::categorical(PlaceSet{0, 2}));

  const MassVector split({{PlaceSet{0}, 0.5}, {PlaceSet{2}, 0.5}});
  const MassVector expected({{PlaceSet{1}, 0.5}, {PlaceSet{2}, 0.5}});
  EXPECT_EQ(step(net, split, {1, 0, 0}), expected);
  const auto oracle = evinet::testing::oracle_step(
      net, evinet::testing::to_raw(split), std::vector<bool>{true, false, false});
  ASSERT_TRUE(oracle);
  EXPECT_EQ(*oracle, evinet::testing::to_raw(expected));
}

TEST(Step, AllFalseIsIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = evinet::testing::random_net(rng);
    const auto mass = evinet::testing::random_mass(rng, net.place_count());
    EXPECT_EQ(step(net, mass, Receptivity::all_false(net.transition_count())), mass);
  }
}

TEST(Step, AggregatesColliding) {
  // {P1} and {P3} both land on {P1} under r3 with r1 false.
  const MassVector m({{PlaceSet{0}, 0.25}, {PlaceSet{2}, 0.75}});
  EXPECT_EQ(step(fig1(), m, {0, 0, 1}), MassVector::categorical(PlaceSet{0}));
}

TEST(Step, Errors) {
  EXPECT_THROW(step(fig2(), ignorance_mass(fig2()), {1, 1, 0, 0}), ConflictError);
  EXPECT_THROW(step(fig1(), MassVector::categorical(PlaceSet{4}), {0, 0, 0}),
               IndexError);
  EXPECT_THROW(step(fig1(), ignorance_mass(fig1()), {0, 0}), DimensionError);
}

TEST(Run, Examples) {
  const auto net = fig1();
  const std::vector<Receptivity> one{{0, 1, 0}};
  const auto t1 = run(net, ignorance_mass(net), one);
  ASSERT_EQ(t1.steps.size(), 1u);
  EXPECT_EQ(t1.final_mass(), MassVector::categorical(PlaceSet{0, 2}));

  const auto t0 = run(net, ignorance_mass(net), {});
  EXPECT_TRUE(t0.steps.empty());
  EXPECT_EQ(t0.final_mass(), ignorance_mass(net));

  const std::vector<Receptivity> two{{0, 1, 0}, {1, 0, 0}};
  const auto t2 = run(net, ignorance_mass(net), two);
  ASSERT_EQ(t2.steps.size(), 2u);
  EXPECT_EQ(t2.steps[0].mass, MassVector::categorical(PlaceSet{0, 2}));
  EXPECT_EQ(t2.final_mass(), MassVector::categorical(PlaceSet{1, 2}));
  EXPECT_EQ(t2.steps[1].receptivity, (Receptivity{1, 0, 0}));
}

TEST(Run, FailingInputCarriesIndex) {
  const auto net = fig2();
  const std::vector<Receptivity> inputs{{0, 1, 0, 0}, {0, 0, 0, 0}, {1, 1, 0, 0}};
  try {
    run(net, ignorance_mass(net), inputs);
    FAIL() << "expected RunError";
  } catch (const RunError& e) {
    EXPECT_EQ(e.index(), 2u);
    EXPECT_EQ(e.kind(), ErrorKind::kConflict);
  }
}

TEST(SequentialCheck, Examples) {
  const auto net = fig1();
  const auto p1 = MassVector::categorical(PlaceSet{0});
  EXPECT_EQ(sequential_step_check(net, p1, {1, 0, 0}),
            MassVector::categorical(PlaceSet{1}));
  EXPECT_EQ(sequential_step_check(net, p1, {0, 0, 0}), p1);
  EXPECT_EQ(sequential_step_check(net, MassVector::categorical(PlaceSet{0, 1}), {1, 0, 0}),
            MassVector::categorical(PlaceSet{1}));
}

TEST(SequentialCheck, AgreesWithStepOnFig1) {
  const auto net = fig1();
  // The six singleton/adjacent-pair configurations plus one mixture of all
  // of them.
  std::vector<MassVector> configs;
  for (const auto& x : canonical_subsets(3)) {
    if (x.size() <= 2) configs.push_back(MassVector::categorical(x));
  }
  configs.push_back(MassVector({{PlaceSet{0}, 0.1}, {PlaceSet{1}, 0.15}, {PlaceSet{2}, 0.2},
                                {PlaceSet{0, 1}, 0.25}, {PlaceSet{0, 2}, 0.05},
                                {PlaceSet{1, 2}, 0.25}}));
  ASSERT_EQ(configs.size(), 7u);
  for (const auto& mass : configs) {
    for (std::uint64_t code = 0; code < 8; ++code) {
      const auto r = Receptivity::from_code(code, 3);
      EXPECT_TRUE(approx_equal(sequential_step_check(net, mass, r), step(net, mass, r)))
          << r.to_string();
    }
  }
}

TEST(SequentialCheck, AgreesWithStepOnRandomCycles) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = evinet::testing::random_cycle(rng);
    ASSERT_TRUE(is_simple_cycle(net));
    const std::size_t n = net.place_count();
    // Singletons and adjacent pairs only.
    std::vector<std::pair<PlaceSet, double>> entries;
    std::uniform_int_distribution<std::size_t> place(0, n - 1);
    const std::size_t a = place(rng);
    const std::size_t b = net.output_place(net.output_transitions(a).front());
    const std::size_t c = place(rng);
    entries.emplace_back(PlaceSet{a, b}, 0.5);
    entries.emplace_back(PlaceSet{c}, 0.5);
    const MassVector mass(entries);
    const auto r = evinet::testing::random_admissible(rng, net);
    EXPECT_TRUE(approx_equal(sequential_step_check(net, mass, r), step(net, mass, r)));
  }
}

TEST(SequentialCheck, Preconditions) {
  EXPECT_THROW(sequential_step_check(fig2(), MassVector::categorical(PlaceSet{0}),
                                     {0, 0, 0, 0}),
               PreconditionError);
  // Four-place cycle: {P1,P3} is not adjacent.
  const auto ring = PetriNet::from_matrices(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
      {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_THROW(sequential_step_check(ring, MassVector::categorical(PlaceSet{0, 2}),
                                     {0, 0, 0, 0}),
               PreconditionError);
  EXPECT_THROW(sequential_step_check(fig1(), ignorance_mass(fig1()), {0, 0, 0}),
               PreconditionError);
}

TEST(SequentialCheck, SimpleCycleDetection) {
  EXPECT_TRUE(is_simple_cycle(fig1()));
  EXPECT_TRUE(is_simple_cycle(evinet::testing::cycle2()));
  EXPECT_FALSE(is_simple_cycle(fig2()));
  // Two disjoint 2-cycles.
  const auto split = PetriNet::from_matrices(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  EXPECT_FALSE(is_simple_cycle(split));
}
