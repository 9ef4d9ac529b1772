// Copyright 2026 The espec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "espec/path.hpp"
#include "espec/protocol.hpp"
#include "espec/random.hpp"
#include "espec/specfile.hpp"
#include "support.hpp"

namespace espec {
namespace {

using testing::apply_by_definition;

SpecDocument load(const std::string& name) {
  std::ifstream in(std::string(ESPEC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  auto r = parse(ss.str());
  EXPECT_TRUE(r.ok());
  return r.document;
}

std::string first_code(const Network& n, const Path& p) {
  const auto d = validate_path(n, p);
  return d.empty() ? "" : d.front().code;
}

TEST(Path, ExampleNetworkChainsAllEightLabels) {
  const SpecDocument doc = load("example-network.espec");
  const Network n = to_network(doc);
  const Path& p = doc.find_path("main")->path;
  ASSERT_TRUE(validate_path(n, p).empty());
  EXPECT_EQ(projector_count(n, p), 8);
  EXPECT_EQ(start_kind(n, p), StartKind::Input);

  CVector v = n.inputs().at(1);
  for (const char* id : {"f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"}) {
    v = apply_by_definition(n.find_event(id)->as<BipartiteProjector>()->label, v);
  }
  EXPECT_TRUE(prop_eq(predict_output(n, p), v, 1e-12));
  EXPECT_EQ(composite(n, p).linearity(), Linearity::Linear);
}

TEST(Path, TwoUnitaryComposite) {
  Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    const auto c = testing::two_unitary_case(rng);
    ASSERT_TRUE(validate_path(c.network, c.path).empty());
    EXPECT_EQ(start_kind(c.network, c.path), StartKind::Anchored);
    const CVector phi = random_vector(rng, 2);
    const CVector got = path_function(c.network, c.path)(phi);
    EXPECT_TRUE(prop_eq(got, testing::two_unitary_expected(c, phi), 1e-12));
  }
}

TEST(Path, TeleportationReproducesInput) {
  const SpecDocument doc = load("teleport.espec");
  const Network n = to_network(doc);
  const Path& p = doc.find_path("teleport")->path;
  EXPECT_TRUE(prop_eq(predict_output(n, p), n.inputs().at(1), 1e-12));
  EXPECT_TRUE(prop_eq(composite(n, p).matrix(), identity(2), 1e-12));
}

TEST(Path, CorrectedBranchEquivalentToPlainTeleport) {
  // The pi outcome at the measurement, undone by pi^dagger on the output
  // track, is equivalent to the id branch since id o pi = pi o id.
  const Builtin t = builtin_teleportation();
  Network corrected = t.network.with_label("bell", bell::pi());
  corrected.add_unitary("fix", 3, 3, adjoint(pauli::x()));
  Path p = t.path;
  p.steps.push_back(PathStep::forward("fix", 3));
  p.end.time = 3;
  ASSERT_TRUE(validate_path(corrected, p).empty());
  EXPECT_TRUE(equivalent(corrected, p, t.network, t.path));
  EXPECT_FALSE(equivalent(t.network.with_label("bell", bell::pi()), t.path, t.network, t.path));
}

TEST(Path, EquivalentRejectsDifferentEndpoints) {
  const Builtin t = builtin_teleportation();
  const Builtin s = builtin_swap();
  EXPECT_THROW(equivalent(t.network, t.path, s.network, s.path), std::invalid_argument);
}

TEST(Path, Diagnostics) {
  const Builtin t = builtin_teleportation();
  const Network& n = t.network;
  const Path good = t.path;
  ASSERT_EQ(first_code(n, good), "");

  Path p = good;
  p.start = {1, 3, Direction::Up};
  EXPECT_EQ(first_code(n, p), "path-start");

  p = good;
  p.steps[0].event = "nope";
  EXPECT_EQ(first_code(n, p), "unknown-event");

  p = good;
  p.steps.push_back(p.steps[0]);
  EXPECT_EQ(first_code(n, p), "path-revisit");

  p = good;
  p.steps[1].entry_track = 1;
  EXPECT_EQ(first_code(n, p), "path-connect");

  p = good;
  p.steps[0] = PathStep::bounce("bell", 1, 2, Side::Above);
  EXPECT_EQ(first_code(n, p), "path-side");

  p = good;
  p.steps[0].exit_side = Side::Above;
  EXPECT_EQ(first_code(n, p), "path-side");

  p = good;
  p.steps[0].exit_track = 3;
  EXPECT_EQ(first_code(n, p), "path-leg");

  p = good;
  p.end.track = 2;
  EXPECT_EQ(first_code(n, p), "path-end");

  p = good;
  p.steps.pop_back();
  p.end.track = 2;
  EXPECT_EQ(first_code(n, p), "path-end");

  Network with_u = n;
  with_u.add_unitary("u", 3, 3, pauli::z());
  EXPECT_EQ(first_code(with_u, good), "path-end");
  p = good;
  p.steps.push_back(PathStep::forward("u", 3));
  p.end.time = 3;
  EXPECT_EQ(first_code(with_u, p), "");
  p.steps.back() = PathStep::backward("u", 3);
  EXPECT_EQ(first_code(with_u, p), "path-side");

  Network skipped = n;
  skipped.add_unitary("w", 2, 3, pauli::z());
  skipped.add_unitary("v", 1, 1, pauli::z());
  EXPECT_EQ(first_code(skipped, good), "path-segment");

  Network capped = n;
  capped.add_uniproj("a", 3, 4, CVector::Ones(2));
  p = good;
  p.steps.push_back(PathStep::forward("a", 3));
  EXPECT_EQ(first_code(capped, p), "path-event");
}

TEST(Path, OpenStartMustBeAboveAllEvents) {
  const Builtin s = builtin_swap();
  EXPECT_EQ(start_kind(s.network, s.path), StartKind::Open);
  EXPECT_THROW(predict_output(s.network, s.path), std::invalid_argument);
  Network later = s.network;
  later.add_unitary("u", 1, 3, pauli::x());
  EXPECT_EQ(first_code(later, s.path), "path-start");
}

TEST(Path, SwapComposesToIdentity) {
  const Builtin s = builtin_swap();
  EXPECT_TRUE(prop_eq(composite(s.network, s.path), bell::id(), 1e-12));
}

TEST(LinearMode, MatchesAntiLinearComposite) {
  Rng rng(22);
  for (int i = 0; i < 30; ++i) {
    const auto c = testing::random_case(rng);
    const Network lin = testing::with_projector_linearity(c.network, Linearity::Linear);
    const FunctionalLabel a = composite(c.network, c.path);
    const FunctionalLabel l = composite(lin, c.path);
    EXPECT_LE(max_abs(a.matrix() - l.matrix()), 1e-12 * std::max(1.0, max_abs(a.matrix())));
    EXPECT_EQ(path_function(lin, c.path).linearity(), path_function(c.network, c.path).linearity());
  }
}

TEST(LinearMode, MixedLinearitiesRejected) {
  const Builtin t = builtin_teleportation();
  const Network mixed = t.network.with_label("bell", bell::id().with_linearity(Linearity::Linear));
  EXPECT_THROW(composite(mixed, t.path), std::invalid_argument);
}

TEST(LinearMode, BelowBouncesConjugate) {
  Rng rng(23);
  const FunctionalLabel f = random_label(rng, 2, 2, Linearity::Linear);
  const FunctionalLabel g = random_label(rng, 2, 2, Linearity::Linear);
  Network n;
  n.add_track(1, 2).add_track(2, 2).add_track(3, 2);
  n.add_projector("f", 1, 2, 2, f);
  n.add_projector("g", 2, 3, 1, g);
  n.set_input(1, random_vector(rng, 2));
  const Path p{"p",
               {1, 0, Direction::Up},
               {PathStep::bounce("f", 1, 2, Side::Below), PathStep::bounce("g", 2, 3, Side::Above)},
               {3, 2}};
  ASSERT_EQ(first_code(n, p), "");
  const FunctionalLabel c = composite(n, p);
  EXPECT_EQ(c.linearity(), Linearity::Linear);
  EXPECT_LE(max_abs(c.matrix() - g.matrix() * f.matrix().conjugate()), 1e-14);
}

TEST(LinearMode, OddPathTakesConjugatedArgument) {
  Rng rng(25);
  const FunctionalLabel f = random_label(rng, 2, 2, Linearity::Linear);
  Network n;
  n.add_track(1, 2).add_track(2, 2);
  n.add_uniproj("a", 1, 3, random_vector(rng, 2));
  n.add_projector("f", 1, 2, 1, f);
  const Path p{"p", {1, 3, Direction::Down}, {PathStep::bounce("f", 1, 2, Side::Above)}, {2, 3}};
  ASSERT_EQ(first_code(n, p), "");
  const FunctionalLabel m = path_function(n, p);
  EXPECT_EQ(m.linearity(), Linearity::AntiLinear);
  EXPECT_LE(max_abs(m.matrix() - f.matrix()), 1e-14);
}

TEST(Path, RandomCasesValidate) {
  Rng rng(24);
  int anchored = 0, traversed = 0, long_paths = 0;
  for (int i = 0; i < 100; ++i) {
    const auto c = testing::random_case(rng);
    EXPECT_TRUE(validate_path(c.network, c.path).empty());
    EXPECT_EQ(projector_count(c.network, c.path), c.projectors_on_path);
    anchored += start_kind(c.network, c.path) == StartKind::Anchored;
    traversed += c.unitaries_on_path > 0;
    long_paths += c.projectors_on_path >= 4;
  }
  EXPECT_GT(anchored, 20);
  EXPECT_GT(traversed, 20);
  EXPECT_GT(long_paths, 20);
}

}  // namespace
}  // namespace espec
