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

#include "espec/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "espec/error.hpp"

namespace espec {

namespace {

using Op = std::variant<Event, MeasureOp>;

ProtocolNode grow(const std::vector<Op>& ops, std::size_t i, std::string token,
                  const CorrectionOp& slot) {
  if (i == ops.size()) return {std::move(token), slot, {}};
  if (const auto* e = std::get_if<Event>(&ops[i])) {
    ProtocolNode node{std::move(token), *e, {}};
    node.children.push_back(grow(ops, i + 1, "", slot));
    return node;
  }
  const auto& m = std::get<MeasureOp>(ops[i]);
  ProtocolNode node{std::move(token), m, {}};
  for (const auto& o : m.measurement.outcomes()) {
    node.children.push_back(grow(ops, i + 1, o.token, slot));
  }
  return node;
}

void collect(const ProtocolNode& node, std::vector<std::string>& prefix,
             std::vector<std::vector<std::string>>& out) {
  const bool branching = std::holds_alternative<MeasureOp>(node.op);
  if (node.children.empty()) {
    out.push_back(prefix);
    return;
  }
  for (const auto& child : node.children) {
    if (branching) prefix.push_back(child.token);
    collect(child, prefix, out);
    if (branching) prefix.pop_back();
  }
}

/// Positive-real phase on the first entry (row-major) of largest magnitude.
CMatrix fix_phase(const CMatrix& m) {
  const double peak = max_abs(m);
  if (peak == 0.0) return m;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) >= peak * (1.0 - 1e-9)) {
        return m * (std::abs(m(r, c)) / m(r, c));
      }
    }
  }
  return m;
}

CMatrix unit_scale(const CMatrix& m) {
  const double s = std::sqrt((m.adjoint() * m).trace().real() / static_cast<double>(m.cols()));
  return s == 0.0 ? m : CMatrix(m / s);
}

void fill_slots(ProtocolNode& node, std::vector<std::string>& prefix,
                const std::map<std::string, CMatrix>& by_key) {
  if (auto* slot = std::get_if<CorrectionOp>(&node.op)) {
    slot->matrix = by_key.at(branch_key(prefix));
    return;
  }
  const bool branching = std::holds_alternative<MeasureOp>(node.op);
  for (auto& child : node.children) {
    if (branching) prefix.push_back(child.token);
    fill_slots(child, prefix, by_key);
    if (branching) prefix.pop_back();
  }
}

int log2_exact(Eigen::Index d) {
  int q = 0;
  while ((Eigen::Index{1} << q) < d) ++q;
  return (Eigen::Index{1} << q) == d ? q : -1;
}

Measurement qubit_bell_measurement(Eigen::Index dim) {
  const int q = log2_exact(dim);
  if (q < 1) {
    throw std::invalid_argument("Bell measurements need a power-of-two dimension, got " +
                                std::to_string(dim));
  }
  return tensor_bell_measurement(q);
}

}  // namespace

ProtocolTree build_tree(const Network& n, const MeasurementPlan& plan,
                        int correction_track) {
  std::map<std::string, std::vector<const MeasurementStage*>> staged;
  for (const auto& s : plan) {
    const Event* e = n.find_event(s.event);
    if (!e) throw std::invalid_argument("measurement on unknown event '" + s.event + "'");
    const auto* b = e->as<BipartiteProjector>();
    if (!b) {
      throw std::invalid_argument("measurement on '" + s.event +
                                  "', which is not a bipartite projector");
    }
    if (s.measurement.dom_dim() != b->label.dom_dim() ||
        s.measurement.cod_dim() != b->label.cod_dim()) {
      throw std::invalid_argument("measurement on '" + s.event + "' has the wrong shape");
    }
    staged[s.event].push_back(&s);
  }
  for (auto& [id, stages] : staged) {
    std::sort(stages.begin(), stages.end(),
              [](const auto* a, const auto* b) { return a->stage < b->stage; });
    for (std::size_t i = 1; i < stages.size(); ++i) {
      if (stages[i]->stage == stages[i - 1]->stage) {
        throw std::invalid_argument("two measurements on '" + id + "' share stage " +
                                    std::to_string(stages[i]->stage));
      }
    }
  }
  if (!n.find_track(correction_track)) {
    throw std::invalid_argument("correction on unknown track " +
                                std::to_string(correction_track));
  }

  std::vector<const Event*> order;
  for (const auto& e : n.events()) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const Event* a, const Event* b) {
    return a->time != b->time ? a->time < b->time : a->id < b->id;
  });
  std::vector<Op> ops;
  for (const Event* e : order) {
    auto it = staged.find(e->id);
    if (it == staged.end()) {
      ops.emplace_back(*e);
      continue;
    }
    for (const auto* s : it->second) ops.emplace_back(MeasureOp{*e, s->measurement, s->stage});
  }

  CorrectionOp slot{"K", correction_track, n.max_time() + 1, std::nullopt};
  for (int k = 1; n.find_event(slot.id); ++k) slot.id = "K" + std::to_string(k);

  return {n.tracks(), n.inputs(), grow(ops, 0, "", slot)};
}

std::vector<std::vector<std::string>> branches(const ProtocolTree& t) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> prefix;
  collect(t.root, prefix, out);
  return out;
}

std::string branch_key(const std::vector<std::string>& tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += '/';
    key += tokens[i];
  }
  return key;
}

Network instantiate(const ProtocolTree& t, const std::vector<std::string>& tokens) {
  std::vector<Event> events;
  std::map<std::string, std::size_t> measured;
  std::size_t used = 0;
  const ProtocolNode* node = &t.root;
  while (true) {
    const ProtocolNode* next = node->children.empty() ? nullptr : &node->children.front();
    if (const auto* e = std::get_if<Event>(&node->op)) {
      events.push_back(*e);
    } else if (const auto* m = std::get_if<MeasureOp>(&node->op)) {
      if (used >= tokens.size()) throw std::invalid_argument("too few tokens for the tree");
      const std::string& tok = tokens[used++];
      const Outcome* o = m->measurement.find(tok);
      auto child = std::find_if(node->children.begin(), node->children.end(),
                                [&tok](const ProtocolNode& c) { return c.token == tok; });
      if (!o || child == node->children.end()) {
        throw std::invalid_argument("unknown token '" + tok + "' at event '" +
                                    m->placement.id + "'");
      }
      next = &*child;
      auto it = measured.find(m->placement.id);
      if (it == measured.end()) {
        Event e = m->placement;
        std::get<BipartiteProjector>(e.kind).label = o->label;
        measured.emplace(e.id, events.size());
        events.push_back(std::move(e));
      } else {
        auto& label = std::get<BipartiteProjector>(events[it->second].kind).label;
        label = compose(o->label, label);
      }
    } else {
      const auto& c = std::get<CorrectionOp>(node->op);
      if (c.matrix) events.push_back({c.id, c.time, LocalUnitary{c.track, *c.matrix}});
    }
    if (!next) break;
    node = next;
  }
  if (used != tokens.size()) throw std::invalid_argument("too many tokens for the tree");

  Network n;
  for (const auto& tr : t.tracks) n.add_track(tr.index, tr.dim);
  for (const auto& [track, state] : t.inputs) n.set_input(track, state);
  for (auto& e : events) n.add_event(std::move(e));
  return n;
}

CompiledProtocol compile_unconditional(const Network& n, const Path& p,
                                       const MeasurementPlan& plan,
                                       const FunctionalLabel& target) {
  if (auto d = validate(n); !d.empty()) {
    throw std::invalid_argument("invalid network: " + d.front().message);
  }
  if (auto d = validate_path(n, p); !d.empty()) {
    throw std::invalid_argument("invalid path: " + d.front().message);
  }
  const Eigen::Index out_dim = n.dim(p.end.track);
  if (target.cod_dim() != out_dim || target.dom_dim() != n.dim(p.start.track)) {
    throw DimensionError("target does not map the path's input track to its output track");
  }

  CompiledProtocol c{build_tree(n, plan, p.end.track), p, target, {}};

  bool designated = false;
  std::map<std::string, CMatrix> by_key;
  for (auto& tokens : branches(c.tree)) {
    const std::string key = branch_key(tokens);
    const Network net = instantiate(c.tree, tokens);

    bool matches = true;
    for (const auto& s : plan) {
      const auto& mine = n.find_event(s.event)->as<BipartiteProjector>()->label;
      const auto& theirs = net.find_event(s.event)->as<BipartiteProjector>()->label;
      matches = matches && prop_eq(mine, theirs);
    }
    designated = designated || matches;

    FunctionalLabel cb = path_function(net, p);
    if (cb.linearity() != target.linearity()) {
      throw NotCompilable(key, std::string("branch map is ") + to_string(cb.linearity()) +
                                   " but the target is " + to_string(target.linearity()));
    }
    if (cb.dom_dim() != cb.cod_dim()) throw NotCompilable(key, "branch map is not square");
    const auto sv = singular_values(cb.matrix());
    if (sv.back() <= 1e-12 * sv.front()) throw NotCompilable(key, "branch map is singular");

    const CMatrix k = fix_phase(unit_scale(target.matrix() * cb.matrix().inverse()));
    if (!is_unitary(k, kCorrectionTol)) {
      throw NotCompilable(key, "the required correction is not unitary");
    }
    by_key.emplace(key, k);
    c.branches.push_back({std::move(tokens), key, std::move(cb), k});
  }
  if (!designated) {
    throw std::invalid_argument("no branch reproduces the labels of the given network");
  }

  std::vector<std::string> prefix;
  fill_slots(c.tree.root, prefix, by_key);

  const ProtocolNode* leaf = &c.tree.root;
  while (!leaf->children.empty()) leaf = &leaf->children.front();
  const auto& slot = std::get<CorrectionOp>(leaf->op);
  c.path.steps.push_back(PathStep::forward(slot.id, slot.track));
  c.path.end.time = std::max(c.path.end.time, slot.time);
  return c;
}

std::vector<BranchReport> verify_protocol(const CompiledProtocol& c, int trials,
                                          std::uint64_t seed, double tol) {
  std::vector<BranchReport> out;
  for (const auto& b : c.branches) {
    out.push_back({b.key, verify_theorem(instantiate(c.tree, b.tokens), c.path, c.target,
                                         trials, seed, tol)});
  }
  return out;
}

TensorFactors factor_tensor(const CMatrix& k, Eigen::Index d1, Eigen::Index d2) {
  if (k.rows() != d1 * d2 || k.cols() != d1 * d2) {
    throw DimensionError("factor_tensor: matrix is not (d1*d2) x (d1*d2)");
  }
  CMatrix r(d1 * d1, d2 * d2);
  for (Eigen::Index i1 = 0; i1 < d1; ++i1) {
    for (Eigen::Index j1 = 0; j1 < d1; ++j1) {
      for (Eigen::Index i2 = 0; i2 < d2; ++i2) {
        for (Eigen::Index j2 = 0; j2 < d2; ++j2) {
          r(i1 * d1 + j1, i2 * d2 + j2) = k(i1 * d2 + i2, j1 * d2 + j2);
        }
      }
    }
  }
  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) throw std::invalid_argument("factor_tensor: zero matrix");
  CMatrix a(d1, d1);
  CMatrix b(d2, d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    for (Eigen::Index j = 0; j < d1; ++j) a(i, j) = svd.matrixU()(i * d1 + j, 0);
  }
  for (Eigen::Index i = 0; i < d2; ++i) {
    for (Eigen::Index j = 0; j < d2; ++j) {
      b(i, j) = sv(0) * std::conj(svd.matrixV()(i * d2 + j, 0));
    }
  }
  return {fix_phase(unit_scale(a)), fix_phase(unit_scale(b)),
          sv.size() > 1 ? sv(1) / sv(0) : 0.0};
}

Builtin builtin_teleportation(bool two_stage) {
  Network n;
  n.add_track(1, 2).add_track(2, 2).add_track(3, 2);
  n.add_prep("epr", 2, 3, 1, bell::id());
  n.add_projector("bell", 1, 2, 2, bell::id());
  Path p{"teleport",
         {1, 0, Direction::Up},
         {PathStep::bounce("bell", 1, 2, Side::Below), PathStep::bounce("epr", 2, 3, Side::Above)},
         {3, 2}};
  MeasurementPlan plan;
  if (two_stage) {
    auto [first, second] = virtual_factorization();
    plan.push_back({"bell", std::move(first), 1});
    plan.push_back({"bell", std::move(second), 2});
  } else {
    plan.push_back({"bell", bell_measurement(), 1});
  }
  return {std::move(n), std::move(p), std::move(plan),
          FunctionalLabel(identity(2), Linearity::Linear)};
}

Builtin builtin_gate_teleportation(const FunctionalLabel& g) {
  const Eigen::Index d = g.dom_dim();
  if (g.cod_dim() != d) throw DimensionError("gate label must be square");
  Measurement m = qubit_bell_measurement(d);
  const int dim = static_cast<int>(d);
  Network n;
  n.add_track(1, dim).add_track(2, dim).add_track(3, dim);
  n.add_prep("prep", 2, 3, 1, g.with_linearity(Linearity::AntiLinear));
  n.add_projector("bell", 1, 2, 2, FunctionalLabel(identity(d), Linearity::AntiLinear));
  Path p{"gate",
         {1, 0, Direction::Up},
         {PathStep::bounce("bell", 1, 2, Side::Below), PathStep::bounce("prep", 2, 3, Side::Above)},
         {3, 2}};
  MeasurementPlan plan{{"bell", std::move(m), 1}};
  return {std::move(n), std::move(p), std::move(plan), g.with_linearity(Linearity::Linear)};
}

Builtin builtin_swap() {
  Network n;
  for (int t = 1; t <= 4; ++t) n.add_track(t, 2);
  n.add_prep("f", 1, 2, 1, bell::id());
  n.add_prep("h", 3, 4, 1, bell::id());
  n.add_projector("g", 2, 3, 2, bell::id());
  Path p{"swap",
         {1, 2, Direction::Down},
         {PathStep::bounce("f", 1, 2, Side::Above), PathStep::bounce("g", 2, 3, Side::Below),
          PathStep::bounce("h", 3, 4, Side::Above)},
         {4, 2}};
  MeasurementPlan plan{{"g", bell_measurement(), 1}};
  return {std::move(n), std::move(p), std::move(plan), bell::id()};
}

Builtin builtin_parallel(const std::vector<FunctionalLabel>& fs) {
  if (fs.empty()) throw std::invalid_argument("builtin_parallel needs at least one label");
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (fs[i].dom_dim() != fs[i - 1].cod_dim()) {
      throw DimensionError("builtin_parallel: labels do not form a chain");
    }
  }
  Network n;
  n.add_track(1, static_cast<int>(fs[0].dom_dim()));
  Path p{"chain", {1, 0, Direction::Up}, {}, {0, 2}};
  MeasurementPlan plan;
  CMatrix product = identity(fs[0].dom_dim());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const int a = 2 * static_cast<int>(i) + 1;
    const std::string m = "m" + std::to_string(i + 1);
    const std::string f = "f" + std::to_string(i + 1);
    n.add_track(a + 1, static_cast<int>(fs[i].dom_dim()));
    n.add_track(a + 2, static_cast<int>(fs[i].cod_dim()));
    n.add_projector(m, a, a + 1, 2,
                    FunctionalLabel(identity(fs[i].dom_dim()), Linearity::AntiLinear));
    n.add_prep(f, a + 1, a + 2, 1, fs[i].with_linearity(Linearity::AntiLinear));
    p.steps.push_back(PathStep::bounce(m, a, a + 1, Side::Below));
    p.steps.push_back(PathStep::bounce(f, a + 1, a + 2, Side::Above));
    plan.push_back({m, qubit_bell_measurement(fs[i].dom_dim()), 1});
    product = fs[i].matrix() * product;
  }
  p.end.track = 2 * static_cast<int>(fs.size()) + 1;
  return {std::move(n), std::move(p), std::move(plan),
          FunctionalLabel(std::move(product), Linearity::Linear)};
}

Network beta_input(const Network& n, int track, const CVector& phi) {
  if (!n.find_track(track)) {
    throw std::invalid_argument("unknown track " + std::to_string(track));
  }
  const auto on = n.events_on(track);
  if (on.empty()) {
    throw std::invalid_argument("track " + std::to_string(track) + " is not a function input");
  }
  if (on.back()->as<UnipartiteProjector>()) {
    throw std::invalid_argument("track " + std::to_string(track) + " is already consumed");
  }
  return Network(n).add_uniproj("beta" + std::to_string(track), track, n.max_time() + 1, phi);
}

}  // namespace espec
