#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "structobs/system.hpp"
#include "support/examples.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace structobs;
using namespace structobs::testing;

namespace {

std::vector<Entry> entries_of(const StructuralMatrix& m) {
  return {m.entries().begin(), m.entries().end()};
}

}  // namespace

TEST(StructuralMatrix, SortsAndCollapsesDuplicates) {
  StructuralMatrix m(3, 3, {{2, 1}, {1, 3}, {2, 1}});
  EXPECT_EQ(m.nnz(), 2u);
  EXPECT_EQ(entries_of(m), (std::vector<Entry>{{1, 3}, {2, 1}}));
  EXPECT_TRUE(m.contains(2, 1));
  EXPECT_FALSE(m.contains(1, 1));
}

TEST(StructuralMatrix, RejectsOutOfRange) {
  EXPECT_THROW(StructuralMatrix(2, 2, {{3, 1}}), ValidationError);
  EXPECT_THROW(StructuralMatrix(2, 2, {{0, 1}}), ValidationError);
}

TEST(StructuralMatrix, EqualityIsPatternEquality) {
  EXPECT_EQ(StructuralMatrix(2, 2, {{1, 1}, {2, 2}}), StructuralMatrix::identity(2));
  EXPECT_NE(StructuralMatrix(2, 3, {}), StructuralMatrix(3, 2, {}));
}

TEST(UnionOf, ExampleOneAugmentedModes) {
  const AugmentedSystem aug = augment(example1());
  EXPECT_EQ(entries_of(union_of(aug.aug_modes)),
            (std::vector<Entry>{{3, 1}, {3, 3}, {4, 2}, {4, 3}, {5, 4}, {6, 4}}));
  EXPECT_EQ(aug.union_pattern, union_of(aug.aug_modes));
}

TEST(UnionOf, SingleOperandAndZero) {
  const StructuralMatrix M(3, 3, {{1, 2}, {3, 3}});
  const std::vector<StructuralMatrix> one{M};
  EXPECT_EQ(union_of(one), M);
  const std::vector<StructuralMatrix> with_zero{M, StructuralMatrix(3, 3)};
  EXPECT_EQ(union_of(with_zero), M);
}

TEST(UnionOf, DimensionMismatchNamesOperand) {
  const std::vector<StructuralMatrix> ms{StructuralMatrix(2, 2), StructuralMatrix(2, 3)};
  try {
    union_of(ms);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::DimensionMismatch);
    EXPECT_EQ(e.mode(), 2u);
  }
}

TEST(UnionOf, CommutativeAndIdempotent) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<StructuralMatrix> ms;
    for (int k = 0; k < 3; ++k) ms.emplace_back(4, 5, random_entries(rng, 4, 5, 0.3));
    const StructuralMatrix u = union_of(ms);
    std::vector<StructuralMatrix> shuffled = ms;
    shuffled.push_back(ms[1]);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(union_of(shuffled), u) << "trial " << t;
  }
}

TEST(Augment, ExampleOneModeOne) {
  const AugmentedSystem aug = augment(example1());
  EXPECT_EQ(entries_of(aug.aug_modes[0]), (std::vector<Entry>{{3, 1}, {3, 3}, {4, 2}, {5, 4}}));
}

TEST(Augment, ExampleThreeModeOne) {
  const AugmentedSystem aug = augment(example3());
  EXPECT_EQ(entries_of(aug.aug_modes[0]), (std::vector<Entry>{{1, 1}, {2, 1}, {2, 2}}));
}

TEST(Augment, NoInputsLeavesAUnchanged) {
  Rng rng(3);
  const SwitchedSystem sys = random_general(rng, 5, 0, 2, 0.3);
  const AugmentedSystem aug = augment(sys);
  for (std::size_t k = 0; k < sys.m(); ++k) EXPECT_EQ(aug.aug_modes[k], sys.modes[k].A);
}

TEST(Augment, BlockStructureAgainstDirectConstruction) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const SmallShape s = small_shape(rng);
    const SwitchedSystem sys = random_general(rng, s.n, s.p, s.m, s.density);
    const AugmentedSystem aug = augment(sys);
    const auto naive = naive_union(sys);
    const std::size_t N = sys.n + sys.p;
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t j = 1; j <= N; ++j) {
        EXPECT_EQ(aug.union_pattern.contains(i, j), naive[i][j]) << "trial " << t;
      }
    }
    for (const auto& M : aug.aug_modes) {
      for (const Entry& e : M.entries()) {
        EXPECT_FALSE(e.row <= sys.p && e.col > sys.p) << "top-right block, trial " << t;
      }
    }
  }
}

TEST(Validate, AcceptsExamplesAndNoInputs) {
  EXPECT_NO_THROW(validate(example1()));
  EXPECT_NO_THROW(validate(example2()));
  EXPECT_NO_THROW(validate(example3()));
  EXPECT_NO_THROW(validate(single_self_loop()));
}

TEST(Validate, ZeroDisturbanceColumn) {
  SwitchedSystem sys{2, 1, {{StructuralMatrix::identity(2), StructuralMatrix(2, 1), StructuralMatrix(1, 1)}}};
  try {
    validate(sys);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::ZeroDisturbanceColumn);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_NO_THROW(validate(sys, true));
}

TEST(Validate, ZeroColumnCheckUsesUnionOverModes) {
  SwitchedSystem sys = example1();
  sys.modes[1].F = StructuralMatrix(5, 1);
  EXPECT_NO_THROW(validate(sys));
}

TEST(Validate, DimensionMismatchNamesMode) {
  SwitchedSystem sys = example1();
  sys.modes[1].A = StructuralMatrix(4, 4);
  try {
    validate(sys);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), ValidationKind::DimensionMismatch);
    EXPECT_EQ(e.mode(), 2u);
  }
}

TEST(Validate, NonPositiveDimensions) {
  EXPECT_THROW(validate(SwitchedSystem{0, 0, {{}}}), ValidationError);
  EXPECT_THROW(validate(SwitchedSystem{2, 0, {}}), ValidationError);
}

TEST(PlacementToOutputs, ExampleOne) {
  const auto pl = make_placement({5, 6}, 1);
  const OutputMatrices out = placement_to_outputs(pl, 5, 1);
  EXPECT_EQ(out.C, StructuralMatrix(2, 5, {{1, 4}, {2, 5}}));
  EXPECT_EQ(out.D.rows(), 0u);
  const StructuralMatrix c = out.combined(5, 1);
  EXPECT_EQ(c.rows(), 2u);
  EXPECT_EQ(entries_of(c), (std::vector<Entry>{{1, 5}, {2, 6}}));
}

TEST(PlacementToOutputs, EmptyAndInputOnly) {
  const auto empty = placement_to_outputs(make_placement({}, 1), 5, 1);
  EXPECT_EQ(empty.C.rows(), 0u);
  EXPECT_EQ(empty.D.rows(), 0u);
  const auto input = placement_to_outputs(make_placement({1}, 1), 5, 1);
  EXPECT_EQ(input.D, StructuralMatrix(1, 1, {{1, 1}}));
  EXPECT_EQ(input.C.rows(), 0u);
}

TEST(PlacementToOutputs, CombinedHasOneStarPerSensor) {
  const auto pl = make_placement({1, 3, 4, 7}, 2);
  const StructuralMatrix c = placement_to_outputs(pl, 5, 2).combined(5, 2);
  ASSERT_EQ(c.rows(), 4u);
  ASSERT_EQ(c.nnz(), 4u);
  EXPECT_EQ(entries_of(c), (std::vector<Entry>{{1, 1}, {2, 3}, {3, 4}, {4, 7}}));
}

TEST(PlacementToOutputs, OutOfRange) {
  EXPECT_THROW(placement_to_outputs(make_placement({7}, 1), 5, 1), ValidationError);
}

TEST(SensorPlacement, SplitsInputsAndStates) {
  const auto pl = make_placement({4, 1, 2}, 2);
  EXPECT_EQ(pl.J, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ(pl.J_d, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(pl.J_x, (std::vector<std::size_t>{4}));
  EXPECT_EQ(pl.J_x_states, (std::vector<std::size_t>{2}));
}
