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

#include <cmath>
#include <stdexcept>

#include "espec/error.hpp"
#include "espec/protocol.hpp"
#include "espec/random.hpp"

namespace espec {
namespace {

const CompiledBranch& branch(const CompiledProtocol& c, const std::string& key) {
  for (const auto& b : c.branches) {
    if (b.key == key) return b;
  }
  throw std::out_of_range(key);
}

bool all_pass(const std::vector<BranchReport>& rs) {
  for (const auto& r : rs) {
    if (!r.report.ok() || r.report.passed == 0) return false;
  }
  return true;
}

TEST(Tree, BranchesAndInstantiation) {
  const Builtin t = builtin_teleportation();
  const ProtocolTree tree = build_tree(t.network, t.plan, 3);
  const auto bs = branches(tree);
  ASSERT_EQ(bs.size(), 4u);
  EXPECT_EQ(branch_key(bs[3]), "11");
  const Network n = instantiate(tree, {"01"});
  EXPECT_EQ(n.find_event("bell")->as<BipartiteProjector>()->label, bell::pi());
  EXPECT_THROW(instantiate(tree, {"77"}), std::invalid_argument);
  EXPECT_THROW(instantiate(tree, {}), std::invalid_argument);
  EXPECT_THROW(instantiate(tree, {"00", "00"}), std::invalid_argument);
  EXPECT_THROW(build_tree(t.network, {{"nope", bell_measurement(), 1}}, 3), std::invalid_argument);
  EXPECT_THROW(build_tree(t.network, t.plan, 9), std::invalid_argument);
}

TEST(Tree, TwoStageKeys) {
  const Builtin t = builtin_teleportation(true);
  const auto bs = branches(build_tree(t.network, t.plan, 3));
  ASSERT_EQ(bs.size(), 4u);
  EXPECT_EQ(branch_key(bs[1]), "0/1");
}

TEST(Teleportation, CorrectionsArePaulis) {
  const Builtin t = builtin_teleportation();
  const CompiledProtocol c = compile_unconditional(t.network, t.path, t.plan, t.target);
  ASSERT_EQ(c.branches.size(), 4u);
  CMatrix y_like(2, 2);
  y_like << 0, 1, -1, 0;
  EXPECT_LE(max_abs(branch(c, "00").correction - identity(2)), 1e-12);
  EXPECT_LE(max_abs(branch(c, "01").correction - pauli::x()), 1e-12);
  EXPECT_LE(max_abs(branch(c, "10").correction - pauli::z()), 1e-12);
  EXPECT_LE(max_abs(branch(c, "11").correction - y_like), 1e-12);
  for (const auto& b : c.branches) {
    EXPECT_TRUE(is_unitary(b.correction, kCorrectionTol));
    // The correction undoes the outcome's Pauli.
    const CMatrix outcome = std::sqrt(2.0) * bell_measurement().find(b.key)->label.matrix();
    EXPECT_TRUE(prop_eq(b.correction, adjoint(outcome), 1e-12)) << b.key;
  }
  EXPECT_TRUE(all_pass(verify_protocol(c, 5, 1)));
}

TEST(Teleportation, TwoStageCompilesToTheSameCorrections) {
  const Builtin one = builtin_teleportation(false);
  const Builtin two = builtin_teleportation(true);
  const CompiledProtocol a = compile_unconditional(one.network, one.path, one.plan, one.target);
  const CompiledProtocol b = compile_unconditional(two.network, two.path, two.plan, two.target);
  ASSERT_EQ(b.branches.size(), 4u);
  const Measurement bell = bell_measurement();
  for (const auto& br : b.branches) {
    // The two-stage branch map is the single Bell label it selects.
    const auto tok = bell.token_of(br.composite.with_linearity(Linearity::AntiLinear), 1e-12);
    ASSERT_TRUE(tok.has_value()) << br.key;
    EXPECT_TRUE(prop_eq(br.correction, branch(a, *tok).correction, 1e-12)) << br.key;
  }
  EXPECT_TRUE(all_pass(verify_protocol(b, 5, 2)));
}

TEST(GateTeleportation, CnotCorrectionsFactor) {
  const Builtin g = builtin_gate_teleportation(*named_label("cnot"));
  const CompiledProtocol c = compile_unconditional(g.network, g.path, g.plan, g.target);
  ASSERT_EQ(c.branches.size(), 16u);
  for (const auto& b : c.branches) {
    EXPECT_TRUE(is_unitary(b.correction, kCorrectionTol));
    const TensorFactors f = factor_tensor(b.correction, 2, 2);
    EXPECT_LE(f.residual, 1e-9) << b.key;
    EXPECT_TRUE(prop_eq(kron(f.a, f.b), b.correction, 1e-9));
  }
  EXPECT_TRUE(all_pass(verify_protocol(c, 3, 3)));
  EXPECT_THROW(builtin_gate_teleportation(FunctionalLabel(identity(3), Linearity::AntiLinear)),
               std::invalid_argument);
}

TEST(FactorTensor, EntangledHasResidual) {
  const TensorFactors f = factor_tensor(named_label("cnot")->matrix(), 2, 2);
  EXPECT_GT(f.residual, 0.5);
  Rng rng(41);
  const CMatrix a = random_unitary(rng, 2);
  const CMatrix b = random_unitary(rng, 3);
  const TensorFactors g = factor_tensor(kron(a, b), 2, 3);
  EXPECT_LE(g.residual, 1e-12);
  EXPECT_TRUE(prop_eq(g.a, a, 1e-10));
  EXPECT_TRUE(prop_eq(g.b, b, 1e-10));
}

TEST(Swap, FourBranchesCompile) {
  const Builtin s = builtin_swap();
  const CompiledProtocol c = compile_unconditional(s.network, s.path, s.plan, s.target);
  EXPECT_EQ(c.branches.size(), 4u);
  EXPECT_TRUE(all_pass(verify_protocol(c, 3, 4)));
}

TEST(Parallel, ChainOfThree) {
  Rng rng(42);
  std::vector<FunctionalLabel> fs;
  for (int i = 0; i < 3; ++i) fs.push_back(FunctionalLabel(random_unitary(rng, 2), Linearity::AntiLinear));
  const Builtin p = builtin_parallel(fs);
  const CompiledProtocol c = compile_unconditional(p.network, p.path, p.plan, p.target);
  EXPECT_EQ(c.branches.size(), 64u);
  EXPECT_TRUE(all_pass(verify_protocol(c, 2, 5)));
  EXPECT_THROW(builtin_parallel({}), std::invalid_argument);
}

TEST(Compile, UncorrectableBranches) {
  const Builtin t = builtin_teleportation();
  CMatrix rank_one = CMatrix::Zero(2, 2);
  rank_one(0, 0) = 1.0;
  CMatrix skew = identity(2);
  skew(0, 0) = 2.0;
  const Measurement singular({{"ok", bell::id()}, {"bad", FunctionalLabel(rank_one, Linearity::AntiLinear)}});
  try {
    compile_unconditional(t.network, t.path, {{"bell", singular, 1}}, t.target);
    FAIL() << "expected NotCompilable";
  } catch (const NotCompilable& e) {
    EXPECT_EQ(e.branch(), "bad");
  }
  const Measurement nonunitary({{"ok", bell::id()}, {"skew", FunctionalLabel(skew, Linearity::AntiLinear)}});
  EXPECT_THROW(compile_unconditional(t.network, t.path, {{"bell", nonunitary, 1}}, t.target),
               NotCompilable);
  const Measurement foreign({{"p", bell::pi()}});
  EXPECT_THROW(compile_unconditional(t.network, t.path, {{"bell", foreign, 1}}, t.target),
               std::invalid_argument);
  // Two anti-linear labels make a linear branch map.
  EXPECT_THROW(compile_unconditional(t.network, t.path, t.plan, bell::id()), NotCompilable);
}

TEST(BetaInput, FeedsOpenTrack) {
  const Builtin s = builtin_swap();
  CVector phi(2);
  phi << 0.6, Complex(0, 0.8);
  const Network n = beta_input(s.network, 1, phi);
  EXPECT_NE(n.find_event("beta1"), nullptr);
  EXPECT_THROW(beta_input(n, 1, phi), std::invalid_argument);
  EXPECT_THROW(beta_input(s.network, 9, phi), std::invalid_argument);
}

}  // namespace
}  // namespace espec
