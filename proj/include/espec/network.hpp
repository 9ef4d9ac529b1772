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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "espec/labels.hpp"
#include "espec/linalg.hpp"

namespace espec {

struct Track {
  int index = 0;
  int dim = 0;

  friend bool operator==(const Track&, const Track&) = default;
};

/// Projector onto the state labelled by `label` on dom_track (x) cod_track.
struct BipartiteProjector {
  int dom_track = 0;
  int cod_track = 0;
  FunctionalLabel label;
  bool is_preparation = false;

  friend bool operator==(const BipartiteProjector&,
                         const BipartiteProjector&) = default;
};

struct LocalUnitary {
  int track = 0;
  CMatrix matrix;

  friend bool operator==(const LocalUnitary& a, const LocalUnitary& b) {
    return a.track == b.track && a.matrix.rows() == b.matrix.rows() &&
           a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix;
  }
};

/// Projector onto a single-track state. Doubles as the anchor that feeds an
/// argument to a network-produced function.
struct UnipartiteProjector {
  int track = 0;
  CVector state;
  bool is_preparation = false;

  friend bool operator==(const UnipartiteProjector& a,
                         const UnipartiteProjector& b) {
    return a.track == b.track && a.is_preparation == b.is_preparation &&
           a.state.size() == b.state.size() && a.state == b.state;
  }
};

/// Rank-one projector on several tracks; amplitudes are flattened in the
/// order `tracks` is listed (first track most significant).
struct MultipartiteProjector {
  std::vector<int> tracks;
  CVector state;
  bool is_preparation = false;

  friend bool operator==(const MultipartiteProjector& a,
                         const MultipartiteProjector& b) {
    return a.tracks == b.tracks && a.is_preparation == b.is_preparation &&
           a.state.size() == b.state.size() && a.state == b.state;
  }
};

using EventKind = std::variant<BipartiteProjector, LocalUnitary,
                               UnipartiteProjector, MultipartiteProjector>;

struct Event {
  std::string id;
  int time = 0;
  EventKind kind;

  /// Tracks touched, in the order the event's amplitudes are laid out.
  std::vector<int> tracks() const;
  bool is_projector() const;
  bool is_preparation() const;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&kind);
  }

  friend bool operator==(const Event&, const Event&) = default;
};

struct Diagnostic {
  std::string code;
  std::string message;
  /// Event the diagnostic refers to, when there is one.
  std::string event;
};

/// Tracks, time-placed events and optional pure inputs at time 0.
///
/// The add_* builders check every invariant they can and throw
/// std::invalid_argument on a violation. from_parts() performs no checks;
/// pair it with validate().
class Network {
 public:
  Network() = default;

  static Network from_parts(std::vector<Track> tracks, std::vector<Event> events,
                            std::map<int, CVector> inputs);

  Network& add_track(int index, int dim);
  /// An empty id asks for a generated one ("e1", "e2", ...).
  Network& add_projector(std::string id, int dom_track, int cod_track, int time,
                         FunctionalLabel label);
  Network& add_prep(std::string id, int dom_track, int cod_track, int time,
                    FunctionalLabel label);
  Network& add_unitary(std::string id, int track, int time, CMatrix matrix);
  Network& add_uniproj(std::string id, int track, int time, CVector state,
                       bool is_preparation = false);
  Network& add_multiproj(std::string id, std::vector<int> tracks, int time,
                         CVector state, bool is_preparation = false);
  Network& add_event(Event e);
  Network& set_input(int track, CVector state);

  const std::vector<Track>& tracks() const { return tracks_; }
  const std::vector<Event>& events() const { return events_; }
  const std::map<int, CVector>& inputs() const { return inputs_; }

  const Track* find_track(int index) const;
  const Event* find_event(const std::string& id) const;
  /// Dimension of a track; throws std::out_of_range if it does not exist.
  int dim(int track) const;
  int max_time() const;
  /// Events touching `track`, sorted by time.
  std::vector<const Event*> events_on(int track) const;
  const Event* event_at(int track, int time) const;

  /// Copy with the label of bipartite projector `id` replaced.
  Network with_label(const std::string& id, FunctionalLabel label) const;
  /// Copy with the state of unipartite projector `id` replaced.
  Network with_uniproj_state(const std::string& id, CVector state) const;
  Network without_input(int track) const;

 private:
  std::string fresh_id() const;
  void check_new_event(const Event& e) const;

  std::vector<Track> tracks_;
  std::vector<Event> events_;
  std::map<int, CVector> inputs_;
};

/// All invariant violations; empty iff the network is well formed.
std::vector<Diagnostic> validate(const Network& n);

/// Tolerance for the unitarity check of local unitaries.
inline constexpr double kUnitaryTol = 1e-9;

}  // namespace espec
