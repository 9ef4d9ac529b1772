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

#include "espec/path.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "espec/error.hpp"

namespace espec {

const char* to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }
const char* to_string(Side s) { return s == Side::Below ? "below" : "above"; }

const Event* start_anchor(const Network& n, const Path& p) {
  const Event* e = n.event_at(p.start.track, p.start.time);
  return (e && e->as<UnipartiteProjector>()) ? e : nullptr;
}

StartKind start_kind(const Network& n, const Path& p) {
  if (!n.find_track(p.start.track)) {
    throw std::invalid_argument("path starts on unknown track " +
                                std::to_string(p.start.track));
  }
  if (p.start.direction == Direction::Up && p.start.time == 0) return StartKind::Input;
  if (start_anchor(n, p)) return StartKind::Anchored;
  if (p.start.direction == Direction::Down && p.start.time > 0 &&
      !n.event_at(p.start.track, p.start.time)) {
    return StartKind::Open;
  }
  throw std::invalid_argument(
      "path start (track " + std::to_string(p.start.track) + ", time " +
      std::to_string(p.start.time) + ", " + to_string(p.start.direction) +
      ") is neither the input, a unipartite projector nor an open output");
}

namespace {

/// Nearest event on `track` strictly after (Up) or before (Down) `time`.
const Event* next_event(const Network& n, int track, int time, Direction dir) {
  const auto on = n.events_on(track);
  if (dir == Direction::Up) {
    for (const Event* e : on) {
      if (e->time > time) return e;
    }
    return nullptr;
  }
  for (auto it = on.rbegin(); it != on.rend(); ++it) {
    if ((*it)->time < time) return *it;
  }
  return nullptr;
}

Direction flip(Direction d) { return d == Direction::Up ? Direction::Down : Direction::Up; }

std::string step_name(std::size_t i, const PathStep& s) {
  return "step " + std::to_string(i + 1) + " ('" + s.event + "')";
}

}  // namespace

std::vector<Diagnostic> validate_path(const Network& n, const Path& p) {
  std::vector<Diagnostic> out;
  const auto report = [&out](std::string code, std::string msg, std::string ev = {}) {
    out.push_back({std::move(code), std::move(msg), std::move(ev)});
  };

  StartKind kind;
  try {
    kind = start_kind(n, p);
  } catch (const std::invalid_argument& e) {
    report("path-start", e.what());
    return out;
  }

  std::set<std::string> visited;
  if (kind == StartKind::Anchored) visited.insert(start_anchor(n, p)->id);
  if (kind == StartKind::Open) {
    if (const Event* e = next_event(n, p.start.track, p.start.time, Direction::Up)) {
      report("path-start",
             "open start on track " + std::to_string(p.start.track) +
                 " is followed by event '" + e->id + "' at time " +
                 std::to_string(e->time),
             e->id);
    }
  }

  int track = p.start.track;
  int time = p.start.time;
  Direction dir = p.start.direction;
  int covered = time;

  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const PathStep& s = p.steps[i];
    const std::string name = step_name(i, s);
    const Event* e = n.find_event(s.event);
    if (!e) {
      report("unknown-event", name + ": no such event", s.event);
      return out;
    }
    if (!visited.insert(e->id).second) {
      report("path-revisit", name + ": event visited twice", e->id);
      return out;
    }
    if (s.entry_track != track) {
      report("path-connect",
             name + ": entered on track " + std::to_string(s.entry_track) +
                 " but the path is on track " + std::to_string(track),
             e->id);
      return out;
    }
    const Side arrival = dir == Direction::Up ? Side::Below : Side::Above;
    if (s.entry_side != arrival) {
      report("path-side",
             name + ": the path arrives from " + to_string(arrival) + " but enters " +
                 to_string(s.entry_side),
             e->id);
      return out;
    }
    const Event* reached = next_event(n, track, time, dir);
    if (reached != e) {
      report("path-segment",
             name + ": moving " + to_string(dir) + " on track " + std::to_string(track) +
                 " from time " + std::to_string(time) +
                 (reached ? " first meets event '" + reached->id + "'"
                          : std::string(" meets no further event")),
             e->id);
      return out;
    }

    if (const auto* b = e->as<BipartiteProjector>()) {
      const bool legs_ok =
          (s.entry_track == b->dom_track && s.exit_track == b->cod_track) ||
          (s.entry_track == b->cod_track && s.exit_track == b->dom_track);
      if (!legs_ok) {
        report("path-leg", name + ": a projector must be entered on one leg and left on the other",
               e->id);
        return out;
      }
      if (s.exit_side != s.entry_side) {
        report("path-side", name + ": a projector must be left on the side it was entered",
               e->id);
        return out;
      }
      dir = flip(dir);
    } else if (const auto* u = e->as<LocalUnitary>()) {
      if (s.exit_track != u->track || s.exit_side == s.entry_side) {
        report("path-leg", name + ": a unitary is passed straight through on its track",
               e->id);
        return out;
      }
    } else {
      report("path-event", name + ": only bipartite projectors and unitaries can be passed",
             e->id);
      return out;
    }
    track = s.exit_track;
    time = e->time;
    covered = std::max(covered, time);
  }

  if (dir != Direction::Up) {
    report("path-end", "the path ends heading down, before times it covers");
  }
  if (p.end.track != track) {
    report("path-end", "the path ends on track " + std::to_string(p.end.track) +
                           " but its last segment is on track " + std::to_string(track));
  } else if (dir == Direction::Up) {
    if (const Event* e = next_event(n, track, time, Direction::Up)) {
      report("path-end",
             "event '" + e->id + "' at time " + std::to_string(e->time) +
                 " acts on the output track after the path's last event",
             e->id);
    }
  }
  if (p.end.time < covered) {
    report("path-end", "the path ends at time " + std::to_string(p.end.time) +
                           " but covers time " + std::to_string(covered));
  }
  return out;
}

namespace {

struct Fold {
  FunctionalLabel label;
  bool linear_mode;
  int projectors;
};

const Event& step_event(const Network& n, const PathStep& s) {
  const Event* e = n.find_event(s.event);
  if (!e) throw std::invalid_argument("path references unknown event '" + s.event + "'");
  return *e;
}

Fold fold(const Network& n, const Path& p) {
  int al = 0;
  int lin = 0;
  for (const auto& s : p.steps) {
    if (const auto* b = step_event(n, s).as<BipartiteProjector>()) {
      (b->label.is_antilinear() ? al : lin) += 1;
    }
  }
  if (al > 0 && lin > 0) {
    throw std::invalid_argument("path mixes linear and anti-linear projector labels");
  }
  const bool linear_mode = lin > 0;

  FunctionalLabel acc(identity(n.dim(p.start.track)), Linearity::Linear);
  for (const auto& s : p.steps) {
    const Event& e = step_event(n, s);
    if (const auto* b = e.as<BipartiteProjector>()) {
      const bool at_dom = s.entry_track == b->dom_track;
      if (!linear_mode) {
        acc = compose(at_dom ? b->label : adjoint(b->label), acc);
      } else {
        CMatrix m = at_dom ? b->label.matrix() : transpose(b->label.matrix());
        if (s.entry_side == Side::Below) m = conj(m);
        acc = compose(FunctionalLabel(std::move(m), Linearity::Linear), acc);
      }
    } else if (const auto* u = e.as<LocalUnitary>()) {
      const bool forward = s.entry_side == Side::Below;
      CMatrix m = forward ? u->matrix
                          : (linear_mode ? transpose(u->matrix) : adjoint(u->matrix));
      acc = compose(FunctionalLabel(std::move(m), Linearity::Linear), acc);
    } else {
      throw std::invalid_argument("event '" + e.id + "' cannot be passed by a path");
    }
  }
  return {std::move(acc), linear_mode, al + lin};
}

}  // namespace

int projector_count(const Network& n, const Path& p) {
  int k = 0;
  for (const auto& s : p.steps) {
    if (step_event(n, s).as<BipartiteProjector>()) ++k;
  }
  return k;
}

FunctionalLabel composite(const Network& n, const Path& p) { return fold(n, p).label; }

FunctionalLabel path_function(const Network& n, const Path& p) {
  Fold f = fold(n, p);
  if (f.linear_mode && f.projectors % 2 == 1) {
    return f.label.with_linearity(Linearity::AntiLinear);
  }
  return f.label;
}

CVector predict_output(const Network& n, const Path& p) {
  switch (start_kind(n, p)) {
    case StartKind::Input: {
      auto it = n.inputs().find(p.start.track);
      if (it == n.inputs().end()) {
        throw std::invalid_argument("track " + std::to_string(p.start.track) +
                                    " has no input state");
      }
      return path_function(n, p)(it->second);
    }
    case StartKind::Anchored:
      return path_function(n, p)(start_anchor(n, p)->as<UnipartiteProjector>()->state);
    case StartKind::Open:
      break;
  }
  throw std::invalid_argument("an open path start has no argument to apply");
}

bool equivalent(const Network& n1, const Path& p1, const Network& n2, const Path& p2,
                double tol) {
  if (start_kind(n1, p1) != start_kind(n2, p2) || p1.start.track != p2.start.track ||
      p1.end.track != p2.end.track || n1.dim(p1.start.track) != n2.dim(p2.start.track) ||
      n1.dim(p1.end.track) != n2.dim(p2.end.track)) {
    throw std::invalid_argument("paths do not share their input and output tracks");
  }
  return prop_eq(path_function(n1, p1), path_function(n2, p2), tol);
}

bool equivalent(const Network& n, const Path& p1, const Path& p2, double tol) {
  return equivalent(n, p1, n, p2, tol);
}

}  // namespace espec
