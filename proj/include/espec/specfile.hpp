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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "espec/labels.hpp"
#include "espec/network.hpp"
#include "espec/path.hpp"
#include "espec/protocol.hpp"

namespace espec {

// Every record remembers the source line it came from (0 when built in
// code). Line numbers never take part in equality.

struct TrackRecord {
  Track track;
  int line = 0;
  friend bool operator==(const TrackRecord& a, const TrackRecord& b) {
    return a.track == b.track;
  }
};

struct InputRecord {
  int track = 0;
  CVector state;
  int line = 0;
  friend bool operator==(const InputRecord& a, const InputRecord& b) {
    return a.track == b.track && a.state.size() == b.state.size() && a.state == b.state;
  }
};

struct EventRecord {
  Event event;
  int line = 0;
  friend bool operator==(const EventRecord& a, const EventRecord& b) {
    return a.event == b.event;
  }
};

struct MeasurementRecord {
  std::string name;
  std::string event;
  int stage = 1;
  Measurement measurement;
  int line = 0;
  friend bool operator==(const MeasurementRecord& a, const MeasurementRecord& b);
};

struct PathRecord {
  Path path;
  int line = 0;
  friend bool operator==(const PathRecord& a, const PathRecord& b) { return a.path == b.path; }
};

/// A compiled protocol: the path it corrects, the target map and the slot
/// the corrections occupy. The plan is the document's measurements.
struct ProtocolRecord {
  std::string name;
  std::string path;
  FunctionalLabel target;
  int correct_track = 0;
  int correct_time = 0;
  int line = 0;
  friend bool operator==(const ProtocolRecord& a, const ProtocolRecord& b) {
    return a.name == b.name && a.path == b.path && a.target == b.target &&
           a.correct_track == b.correct_track && a.correct_time == b.correct_time;
  }
};

struct CorrectionRecord {
  /// Branch tokens joined by '/'.
  std::string key;
  CMatrix matrix;
  int line = 0;
  friend bool operator==(const CorrectionRecord& a, const CorrectionRecord& b) {
    return a.key == b.key && a.matrix.rows() == b.matrix.rows() &&
           a.matrix.cols() == b.matrix.cols() && a.matrix == b.matrix;
  }
};

struct SpecDocument {
  int version = 1;
  std::vector<TrackRecord> tracks;
  std::vector<InputRecord> inputs;
  std::vector<EventRecord> events;
  std::vector<MeasurementRecord> measurements;
  std::vector<PathRecord> paths;
  std::optional<ProtocolRecord> protocol;
  std::vector<CorrectionRecord> corrections;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;

  const PathRecord* find_path(const std::string& name) const;
};

struct SpecDiagnostic {
  /// One of: syntax, unknown-keyword, dangling-reference, duplicate, version.
  std::string code;
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParseResult {
  SpecDocument document;
  std::vector<SpecDiagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

inline constexpr int kFormatVersion = 1;

ParseResult parse(std::string_view text);

/// Records sorted into canonical order: tracks by index, inputs by track,
/// events by (time, first track, id), measurements by (event, stage), paths
/// by name, corrections by key.
SpecDocument canonical(SpecDocument doc);

/// Canonical text; parse(serialize(d)) is structurally equal to d.
std::string serialize(const SpecDocument& doc);

/// Equality of the canonical forms.
bool structurally_equal(const SpecDocument& a, const SpecDocument& b);

/// Shortest text that reads back to exactly `c` under the literal grammar.
std::string format_complex(Complex c);

/// The network the document describes, without checks; pair with validate().
Network to_network(const SpecDocument& doc);
MeasurementPlan to_plan(const SpecDocument& doc);
SpecDocument to_document(const Network& n, const std::vector<Path>& paths = {},
                         const MeasurementPlan& plan = {});

/// Records `c` as the document's protocol: the protocol record (for the
/// document path named `path`) and one correction per branch.
void attach_protocol(SpecDocument& doc, const std::string& name, const std::string& path,
                     const CompiledProtocol& c);

}  // namespace espec
