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

#include "espec/network.hpp"

#include <cctype>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "espec/error.hpp"

namespace espec {

std::vector<int> Event::tracks() const {
  return std::visit(
      [](const auto& k) -> std::vector<int> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, BipartiteProjector>) {
          return {k.dom_track, k.cod_track};
        } else if constexpr (std::is_same_v<T, MultipartiteProjector>) {
          return k.tracks;
        } else {
          return {k.track};
        }
      },
      kind);
}

bool Event::is_projector() const { return !as<LocalUnitary>(); }

bool Event::is_preparation() const {
  if (auto* p = as<BipartiteProjector>()) return p->is_preparation;
  if (auto* p = as<UnipartiteProjector>()) return p->is_preparation;
  if (auto* p = as<MultipartiteProjector>()) return p->is_preparation;
  return false;
}

Network Network::from_parts(std::vector<Track> tracks, std::vector<Event> events,
                            std::map<int, CVector> inputs) {
  Network n;
  n.tracks_ = std::move(tracks);
  n.events_ = std::move(events);
  n.inputs_ = std::move(inputs);
  return n;
}

Network& Network::add_track(int index, int dim) {
  if (dim < 1) throw std::invalid_argument("track dimension must be >= 1");
  if (find_track(index)) {
    throw std::invalid_argument("duplicate track " + std::to_string(index));
  }
  tracks_.push_back({index, dim});
  return *this;
}

std::string Network::fresh_id() const {
  for (std::size_t k = 1;; ++k) {
    std::string id = "e" + std::to_string(k);
    if (!find_event(id)) return id;
  }
}

void Network::check_new_event(const Event& e) const {
  Network probe = *this;
  probe.events_.push_back(e);
  for (const auto& d : validate(probe)) {
    if (d.event == e.id) throw std::invalid_argument(d.message);
  }
}

Network& Network::add_event(Event e) {
  if (e.id.empty()) e.id = fresh_id();
  check_new_event(e);
  events_.push_back(std::move(e));
  return *this;
}

Network& Network::add_projector(std::string id, int dom_track, int cod_track,
                                int time, FunctionalLabel label) {
  return add_event({std::move(id), time,
                    BipartiteProjector{dom_track, cod_track, std::move(label),
                                       false}});
}

Network& Network::add_prep(std::string id, int dom_track, int cod_track,
                           int time, FunctionalLabel label) {
  return add_event(
      {std::move(id), time,
       BipartiteProjector{dom_track, cod_track, std::move(label), true}});
}

Network& Network::add_unitary(std::string id, int track, int time,
                              CMatrix matrix) {
  return add_event({std::move(id), time, LocalUnitary{track, std::move(matrix)}});
}

Network& Network::add_uniproj(std::string id, int track, int time,
                              CVector state, bool is_preparation) {
  return add_event({std::move(id), time,
                    UnipartiteProjector{track, std::move(state), is_preparation}});
}

Network& Network::add_multiproj(std::string id, std::vector<int> tracks,
                                int time, CVector state, bool is_preparation) {
  return add_event(
      {std::move(id), time,
       MultipartiteProjector{std::move(tracks), std::move(state), is_preparation}});
}

Network& Network::set_input(int track, CVector state) {
  const Track* t = find_track(track);
  if (!t) throw std::invalid_argument("input on unknown track " + std::to_string(track));
  if (state.size() != t->dim) {
    throw std::invalid_argument("input dimension does not match track " +
                                std::to_string(track));
  }
  if (state.squaredNorm() == 0.0) throw std::invalid_argument("zero input state");
  inputs_[track] = std::move(state);
  return *this;
}

const Track* Network::find_track(int index) const {
  for (const auto& t : tracks_) {
    if (t.index == index) return &t;
  }
  return nullptr;
}

const Event* Network::find_event(const std::string& id) const {
  for (const auto& e : events_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

int Network::dim(int track) const {
  const Track* t = find_track(track);
  if (!t) throw std::out_of_range("unknown track " + std::to_string(track));
  return t->dim;
}

int Network::max_time() const {
  int m = 0;
  for (const auto& e : events_) m = std::max(m, e.time);
  return m;
}

std::vector<const Event*> Network::events_on(int track) const {
  std::vector<const Event*> out;
  for (const auto& e : events_) {
    const auto ts = e.tracks();
    if (std::find(ts.begin(), ts.end(), track) != ts.end()) out.push_back(&e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Event* a, const Event* b) { return a->time < b->time; });
  return out;
}

const Event* Network::event_at(int track, int time) const {
  for (const Event* e : events_on(track)) {
    if (e->time == time) return e;
  }
  return nullptr;
}

Network Network::with_label(const std::string& id, FunctionalLabel label) const {
  Network copy = *this;
  for (auto& e : copy.events_) {
    if (e.id != id) continue;
    auto* p = std::get_if<BipartiteProjector>(&e.kind);
    if (!p) throw std::invalid_argument("event '" + id + "' is not a bipartite projector");
    if (p->label.dom_dim() != label.dom_dim() || p->label.cod_dim() != label.cod_dim()) {
      throw DimensionError("replacement label for '" + id + "' has the wrong shape");
    }
    p->label = std::move(label);
    return copy;
  }
  throw std::invalid_argument("no event '" + id + "'");
}

Network Network::with_uniproj_state(const std::string& id, CVector state) const {
  Network copy = *this;
  for (auto& e : copy.events_) {
    if (e.id != id) continue;
    auto* p = std::get_if<UnipartiteProjector>(&e.kind);
    if (!p) throw std::invalid_argument("event '" + id + "' is not a unipartite projector");
    if (p->state.size() != state.size()) {
      throw DimensionError("replacement state for '" + id + "' has the wrong size");
    }
    p->state = std::move(state);
    return copy;
  }
  throw std::invalid_argument("no event '" + id + "'");
}

Network Network::without_input(int track) const {
  Network copy = *this;
  copy.inputs_.erase(track);
  return copy;
}

namespace {

bool valid_id(const std::string& id) {
  if (id.empty() || !(std::isalpha(static_cast<unsigned char>(id[0])) || id[0] == '_')) {
    return false;
  }
  return valid_token(id);
}

}  // namespace

std::vector<Diagnostic> validate(const Network& n) {
  std::vector<Diagnostic> out;
  const auto report = [&out](std::string code, std::string msg, std::string ev = {}) {
    out.push_back({std::move(code), std::move(msg), std::move(ev)});
  };

  std::set<int> seen_tracks;
  for (const auto& t : n.tracks()) {
    if (!seen_tracks.insert(t.index).second) {
      report("duplicate-track", "track " + std::to_string(t.index) + " declared twice");
    }
    if (t.dim < 1) {
      report("bad-dimension", "track " + std::to_string(t.index) + " has dimension < 1");
    }
  }

  const auto track_dim = [&n](int track) -> int {
    const Track* t = n.find_track(track);
    return t ? t->dim : -1;
  };

  std::set<std::string> seen_ids;
  std::map<std::pair<int, int>, std::string> occupied;
  for (const auto& e : n.events()) {
    const std::string where = "event '" + e.id + "'";
    if (!valid_id(e.id)) report("bad-id", where + ": invalid identifier", e.id);
    if (!seen_ids.insert(e.id).second) {
      report("duplicate-event", where + " declared twice", e.id);
    }
    if (e.time < 1) report("bad-time", where + ": time must be >= 1", e.id);

    const auto tracks = e.tracks();
    bool tracks_ok = true;
    for (int t : tracks) {
      if (track_dim(t) < 0) {
        report("unknown-track", where + " references unknown track " + std::to_string(t), e.id);
        tracks_ok = false;
      }
    }
    if (std::set<int>(tracks.begin(), tracks.end()).size() != tracks.size()) {
      report("same-track", where + " touches the same track twice", e.id);
      tracks_ok = false;
    }
    for (int t : tracks) {
      auto [it, fresh] = occupied.emplace(std::pair{t, e.time}, e.id);
      if (!fresh && it->second != e.id) {
        report("time-collision",
               where + " and event '" + it->second + "' both touch track " +
                   std::to_string(t) + " at time " + std::to_string(e.time),
               e.id);
      }
    }
    if (!tracks_ok) continue;

    if (auto* p = e.as<BipartiteProjector>()) {
      if (p->label.dom_dim() != track_dim(p->dom_track) ||
          p->label.cod_dim() != track_dim(p->cod_track)) {
        report("dim-mismatch",
               where + ": label is " + std::to_string(p->label.cod_dim()) + "x" +
                   std::to_string(p->label.dom_dim()) + " but tracks have dimensions " +
                   std::to_string(track_dim(p->dom_track)) + " -> " +
                   std::to_string(track_dim(p->cod_track)),
               e.id);
      } else if (max_abs(p->label.matrix()) == 0.0) {
        report("zero-state", where + ": zero label", e.id);
      }
    } else if (auto* u = e.as<LocalUnitary>()) {
      if (u->matrix.rows() != track_dim(u->track) || u->matrix.cols() != track_dim(u->track)) {
        report("dim-mismatch", where + ": unitary does not match track dimension", e.id);
      } else if (!is_unitary(u->matrix, kUnitaryTol)) {
        report("not-unitary", where + ": matrix is not unitary", e.id);
      }
    } else if (auto* q = e.as<UnipartiteProjector>()) {
      if (q->state.size() != track_dim(q->track)) {
        report("dim-mismatch", where + ": state does not match track dimension", e.id);
      } else if (q->state.squaredNorm() == 0.0) {
        report("zero-state", where + ": zero state", e.id);
      }
    } else if (auto* m = e.as<MultipartiteProjector>()) {
      long long size = 1;
      for (int t : m->tracks) size *= track_dim(t);
      if (m->tracks.empty() || m->state.size() != size) {
        report("dim-mismatch", where + ": state size does not match tracks", e.id);
      } else if (m->state.squaredNorm() == 0.0) {
        report("zero-state", where + ": zero state", e.id);
      }
    }
  }

  for (const auto& [track, state] : n.inputs()) {
    const int d = track_dim(track);
    if (d < 0) {
      report("unknown-track", "input on unknown track " + std::to_string(track));
    } else if (state.size() != d) {
      report("dim-mismatch", "input on track " + std::to_string(track) +
                                 " does not match its dimension");
    } else if (state.squaredNorm() == 0.0) {
      report("zero-state", "input on track " + std::to_string(track) + " is zero");
    }
  }
  return out;
}

}  // namespace espec
