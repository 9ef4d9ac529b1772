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

#include "espec/specfile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace espec {

bool operator==(const MeasurementRecord& a, const MeasurementRecord& b) {
  if (a.name != b.name || a.event != b.event || a.stage != b.stage ||
      a.measurement.size() != b.measurement.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.measurement.size(); ++i) {
    const auto& x = a.measurement.outcomes()[i];
    const auto& y = b.measurement.outcomes()[i];
    if (x.token != y.token || !(x.label == y.label)) return false;
  }
  return true;
}

const PathRecord* SpecDocument::find_path(const std::string& name) const {
  for (const auto& p : paths) {
    if (p.path.name == name) return &p;
  }
  return nullptr;
}

namespace {

struct Failure {
  std::string code;
  int column;
  std::string message;
};

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool digit(char c) { return c >= '0' && c <= '9'; }

class Cursor {
 public:
  explicit Cursor(std::string_view text) : s_(text) {}

  int column() const { return static_cast<int>(pos_) + 1; }
  void ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    ws();
    return pos_ >= s_.size();
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char peek_at(std::size_t k) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, int col = 0) const {
    throw Failure{"syntax", col ? col : column(), msg};
  }

  bool accept(char c) {
    ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }
  void expect(std::string_view sym) {
    ws();
    if (s_.substr(pos_, sym.size()) != sym) fail("expected '" + std::string(sym) + "'" + found());
    pos_ += sym.size();
  }

  /// Next maximal run of word characters without consuming it.
  std::string_view peek_word() {
    ws();
    std::size_t end = pos_;
    while (end < s_.size() && word_char(s_[end])) ++end;
    return s_.substr(pos_, end - pos_);
  }
  bool accept_word(std::string_view w) {
    if (peek_word() != w) return false;
    pos_ += w.size();
    return true;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail("expected '" + std::string(w) + "'" + found());
  }

  /// [A-Za-z0-9_]+
  std::string token(const char* what) {
    const std::string_view w = peek_word();
    if (w.empty()) fail(std::string("expected ") + what + found());
    pos_ += w.size();
    if (pos_ < s_.size() && static_cast<unsigned char>(s_[pos_]) >= 0x80) {
      fail(std::string(what) + " must be ASCII letters, digits or '_'");
    }
    return std::string(w);
  }
  std::string ident(const char* what) {
    const int col = (ws(), column());
    std::string t = token(what);
    if (digit(t[0])) fail(std::string(what) + " must not start with a digit", col);
    return t;
  }
  int integer(const char* what) {
    ws();
    const int col = column();
    bool neg = accept('-');
    const std::string_view w = peek_word();
    int v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (w.empty() || ec != std::errc() || p != w.data() + w.size()) {
      fail(std::string("expected ") + what + found(), col);
    }
    pos_ += w.size();
    return neg ? -v : v;
  }

  Linearity linearity() {
    if (accept_word("al")) return Linearity::AntiLinear;
    if (accept_word("l")) return Linearity::Linear;
    fail("expected linearity 'al' or 'l'" + found());
  }

  Complex complex() {
    ws();
    const int col = column();
    double s1 = 1.0;
    if (peek() == '+' || peek() == '-') s1 = s_[pos_++] == '-' ? -1.0 : 1.0;
    if (peek() == 'i' && !word_char(peek_at(1))) {
      ++pos_;
      return {0.0, s1};
    }
    if (!digit(peek())) fail("expected a number" + found(), col);
    const double x = s1 * decimal();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, x};
    }
    if ((peek() == '+' || peek() == '-') && (digit(peek_at(1)) || peek_at(1) == 'i')) {
      const double s2 = s_[pos_++] == '-' ? -1.0 : 1.0;
      const double y = digit(peek()) ? decimal() : 1.0;
      if (peek() != 'i') fail("expected 'i' after the imaginary part" + found());
      ++pos_;
      return {x, s2 * y};
    }
    return {x, 0.0};
  }

  CVector vector() {
    const int col = (ws(), column());
    expect('[');
    std::vector<Complex> v;
    if (!accept(']')) {
      do {
        v.push_back(complex());
      } while (accept(','));
      expect(']');
    }
    if (v.empty()) fail("empty vector", col);
    return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
  }

  CMatrix matrix() {
    const int col = (ws(), column());
    expect('[');
    std::vector<CVector> rows;
    do {
      rows.push_back(vector());
    } while (accept(','));
    expect(']');
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) fail("rows of a matrix differ in length", col);
    }
    CMatrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r];
    return m;
  }

  std::string found() {
    ws();
    if (pos_ >= s_.size()) return ", found end of line";
    return ", found '" + std::string(1, s_[pos_]) + "'";
  }

 private:
  double decimal() {
    const std::size_t start = pos_;
    while (digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (digit(peek())) ++pos_;
    }
    double v = 0.0;
    std::from_chars(s_.data() + start, s_.data() + pos_, v);
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

enum class RefKind { Track, Event, BipartiteEvent, Path };

struct Ref {
  RefKind kind;
  std::string name;
  int line;
  int column;
};

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      parse_line(line, line_no);
      start = end + 1;
    }
    resolve();
    std::stable_sort(out_.diagnostics.begin(), out_.diagnostics.end(),
                     [](const SpecDiagnostic& a, const SpecDiagnostic& b) {
                       return std::tie(a.line, a.column) < std::tie(b.line, b.column);
                     });
    return std::move(out_);
  }

 private:
  void report(std::string code, int line, int column, std::string msg) {
    out_.diagnostics.push_back({std::move(code), line, column, std::move(msg)});
  }

  void parse_line(std::string_view text, int line) {
    Cursor c(text);
    if (c.at_end()) return;
    try {
      const int col = c.column();
      const std::string kw(c.peek_word());
      if (kw.empty()) c.fail("expected a record keyword" + c.found());
      c.token("keyword");
      if (kw == "espec") {
        header(c, line, col);
      } else {
        if (!seen_header_) {
          report("version", line, col, "missing 'espec 1' header");
          seen_header_ = true;
        }
        record(kw, c, line, col);
      }
      if (!c.at_end()) c.fail("unexpected text" + c.found());
    } catch (const Failure& f) {
      report(f.code, line, f.column, f.message);
    }
  }

  void header(Cursor& c, int line, int col) {
    if (seen_header_) throw Failure{"duplicate", col, "repeated 'espec' header"};
    seen_header_ = true;
    const int vcol = (c.ws(), c.column());
    const int v = c.integer("format version");
    if (v != kFormatVersion) {
      throw Failure{"version", vcol, "unsupported format version " + std::to_string(v)};
    }
    out_.document.version = v;
    (void)line;
  }

  int track_ref(Cursor& c, int line) {
    c.ws();
    const int col = c.column();
    const int t = c.integer("track index");
    refs_.push_back({RefKind::Track, std::to_string(t), line, col});
    return t;
  }

  std::string event_ref(Cursor& c, int line, RefKind kind = RefKind::Event) {
    c.ws();
    const int col = c.column();
    std::string id = c.ident("event id");
    refs_.push_back({kind, id, line, col});
    return id;
  }

  int time(Cursor& c) {
    c.expect_word("at");
    return c.integer("time");
  }

  void add_event(Event e, int line, int col) {
    if (!event_ids_.insert(e.id).second) {
      throw Failure{"duplicate", col, "event '" + e.id + "' declared twice"};
    }
    out_.document.events.push_back({std::move(e), line});
  }

  void record(const std::string& kw, Cursor& c, int line, int col) {
    auto& doc = out_.document;
    if (kw == "track") {
      const int icol = (c.ws(), c.column());
      const int index = c.integer("track index");
      c.expect_word("dim");
      const int dim = c.integer("dimension");
      if (dim < 1) c.fail("dimension must be at least 1");
      if (!track_ids_.insert(index).second) {
        throw Failure{"duplicate", icol, "track " + std::to_string(index) + " declared twice"};
      }
      doc.tracks.push_back({{index, dim}, line});
    } else if (kw == "input") {
      const int tcol = (c.ws(), c.column());
      const int t = track_ref(c, line);
      CVector v = c.vector();
      if (!input_ids_.insert(t).second) {
        throw Failure{"duplicate", tcol, "second input on track " + std::to_string(t)};
      }
      doc.inputs.push_back({t, std::move(v), line});
    } else if (kw == "proj" || kw == "prep") {
      const int icol = (c.ws(), c.column());
      std::string id = c.ident("event id");
      const int a = track_ref(c, line);
      c.expect("->");
      const int b = track_ref(c, line);
      const int t = time(c);
      const Linearity lin = c.linearity();
      CMatrix m = c.matrix();
      add_event({std::move(id), t,
                 BipartiteProjector{a, b, FunctionalLabel(std::move(m), lin), kw == "prep"}},
                line, icol);
    } else if (kw == "unitary") {
      const int icol = (c.ws(), c.column());
      std::string id = c.ident("event id");
      const int tr = track_ref(c, line);
      const int t = time(c);
      add_event({std::move(id), t, LocalUnitary{tr, c.matrix()}}, line, icol);
    } else if (kw == "uniproj" || kw == "uniprep") {
      const int icol = (c.ws(), c.column());
      std::string id = c.ident("event id");
      const int tr = track_ref(c, line);
      const int t = time(c);
      add_event({std::move(id), t, UnipartiteProjector{tr, c.vector(), kw == "uniprep"}}, line,
                icol);
    } else if (kw == "mproj" || kw == "mprep") {
      const int icol = (c.ws(), c.column());
      std::string id = c.ident("event id");
      std::vector<int> tracks;
      while (c.peek_word() != "at") {
        tracks.push_back(track_ref(c, line));
      }
      if (tracks.empty()) c.fail("expected at least one track");
      const int t = time(c);
      add_event({std::move(id), t, MultipartiteProjector{std::move(tracks), c.vector(),
                                                         kw == "mprep"}},
                line, icol);
    } else if (kw == "measurement") {
      measurement(c, line);
    } else if (kw == "path") {
      path(c, line);
    } else if (kw == "protocol") {
      const int ncol = (c.ws(), c.column());
      std::string name = c.ident("protocol name");
      c.expect_word("path");
      const int pcol = (c.ws(), c.column());
      std::string p = c.ident("path name");
      refs_.push_back({RefKind::Path, p, line, pcol});
      c.expect_word("target");
      const Linearity lin = c.linearity();
      FunctionalLabel target(c.matrix(), lin);
      c.expect_word("correct");
      const int tr = track_ref(c, line);
      const int t = time(c);
      if (doc.protocol) throw Failure{"duplicate", ncol, "a document holds one protocol"};
      doc.protocol = ProtocolRecord{std::move(name), std::move(p), std::move(target), tr, t, line};
    } else if (kw == "correction") {
      const int kcol = (c.ws(), c.column());
      std::string key = c.token("branch token");
      while (c.accept('/')) key += "/" + c.token("branch token");
      CMatrix m = c.matrix();
      if (!correction_keys_.insert(key).second) {
        throw Failure{"duplicate", kcol, "second correction for branch '" + key + "'"};
      }
      if (!first_correction_line_) first_correction_line_ = line;
      doc.corrections.push_back({std::move(key), std::move(m), line});
    } else {
      throw Failure{"unknown-keyword", col, "unknown record '" + kw + "'"};
    }
  }

  void measurement(Cursor& c, int line) {
    const int ncol = (c.ws(), c.column());
    std::string name = c.ident("measurement name");
    c.expect_word("on");
    const std::string ev = event_ref(c, line, RefKind::BipartiteEvent);
    int stage = 1;
    const int scol = (c.ws(), c.column());
    if (c.accept_word("stage")) stage = c.integer("stage");
    if (stage < 1) c.fail("stage must be at least 1", scol);
    c.expect(':');
    std::vector<Outcome> outcomes;
    std::set<std::string> seen;
    do {
      const int tcol = (c.ws(), c.column());
      std::string tok = c.token("outcome token");
      if (!seen.insert(tok).second) {
        throw Failure{"duplicate", tcol, "outcome '" + tok + "' listed twice"};
      }
      c.expect('=');
      const Linearity lin = c.linearity();
      outcomes.push_back({std::move(tok), FunctionalLabel(c.matrix(), lin)});
    } while (c.accept(','));
    for (const auto& o : outcomes) {
      if (o.label.dom_dim() != outcomes.front().label.dom_dim() ||
          o.label.cod_dim() != outcomes.front().label.cod_dim()) {
        c.fail("outcome labels differ in shape", ncol);
      }
    }
    if (!measurement_names_.insert(name).second) {
      throw Failure{"duplicate", ncol, "measurement '" + name + "' declared twice"};
    }
    if (!measurement_slots_.insert({ev, stage}).second) {
      throw Failure{"duplicate", ncol,
                    "second measurement at stage " + std::to_string(stage) + " of '" + ev + "'"};
    }
    out_.document.measurements.push_back(
        {std::move(name), ev, stage, Measurement(std::move(outcomes)), line});
  }

  Side side(Cursor& c) {
    if (c.accept_word("below")) return Side::Below;
    if (c.accept_word("above")) return Side::Above;
    c.fail("expected 'below' or 'above'" + c.found());
  }

  void path(Cursor& c, int line) {
    const int ncol = (c.ws(), c.column());
    Path p;
    p.name = c.ident("path name");
    c.expect_word("start");
    p.start.track = track_ref(c, line);
    p.start.time = time(c);
    if (c.accept_word("up")) {
      p.start.direction = Direction::Up;
    } else if (c.accept_word("down")) {
      p.start.direction = Direction::Down;
    } else {
      c.fail("expected 'up' or 'down'" + c.found());
    }
    c.expect(':');
    c.ws();
    if (c.peek() != ';') {
      do {
        PathStep s;
        s.event = event_ref(c, line);
        s.entry_track = track_ref(c, line);
        s.entry_side = side(c);
        c.expect('>');
        s.exit_track = track_ref(c, line);
        s.exit_side = side(c);
        p.steps.push_back(std::move(s));
      } while (c.accept(','));
    }
    c.expect(';');
    c.expect_word("end");
    p.end.track = track_ref(c, line);
    p.end.time = time(c);
    if (!path_names_.insert(p.name).second) {
      throw Failure{"duplicate", ncol, "path '" + p.name + "' declared twice"};
    }
    out_.document.paths.push_back({std::move(p), line});
  }

  void resolve() {
    const auto& doc = out_.document;
    std::map<std::string, const Event*> events;
    for (const auto& e : doc.events) events.emplace(e.event.id, &e.event);
    for (const auto& r : refs_) {
      switch (r.kind) {
        case RefKind::Track:
          if (!track_ids_.count(std::stoi(r.name))) {
            report("dangling-reference", r.line, r.column, "no track " + r.name);
          }
          break;
        case RefKind::Event:
        case RefKind::BipartiteEvent: {
          auto it = events.find(r.name);
          if (it == events.end()) {
            report("dangling-reference", r.line, r.column, "no event '" + r.name + "'");
          } else if (r.kind == RefKind::BipartiteEvent &&
                     !it->second->as<BipartiteProjector>()) {
            report("dangling-reference", r.line, r.column,
                   "event '" + r.name + "' is not a bipartite projector");
          }
          break;
        }
        case RefKind::Path:
          if (!path_names_.count(r.name)) {
            report("dangling-reference", r.line, r.column, "no path '" + r.name + "'");
          }
          break;
      }
    }
    if (first_correction_line_ && !doc.protocol) {
      report("dangling-reference", first_correction_line_, 1,
             "corrections given without a protocol");
    }
  }

  ParseResult out_;
  bool seen_header_ = false;
  std::vector<Ref> refs_;
  std::set<int> track_ids_;
  std::set<int> input_ids_;
  std::set<std::string> event_ids_;
  std::set<std::string> measurement_names_;
  std::set<std::pair<std::string, int>> measurement_slots_;
  std::set<std::string> path_names_;
  std::set<std::string> correction_keys_;
  int first_correction_line_ = 0;
};

std::string format_real(double x) {
  char buf[512];
  auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  return std::string(buf, r.ptr);
}

std::string format_vector(const CVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_complex(v(i));
  }
  return s + "]";
}

std::string format_matrix(const CMatrix& m) {
  std::string s = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) s += ", ";
    s += format_vector(m.row(r).transpose());
  }
  return s + "]";
}

const char* lin(Linearity l) { return l == Linearity::AntiLinear ? "al" : "l"; }

}  // namespace

std::string format_complex(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_real(im) + "i";
  return format_real(re) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
}

ParseResult parse(std::string_view text) { return Parser().run(text); }

SpecDocument canonical(SpecDocument doc) {
  std::sort(doc.tracks.begin(), doc.tracks.end(),
            [](const auto& a, const auto& b) { return a.track.index < b.track.index; });
  std::sort(doc.inputs.begin(), doc.inputs.end(),
            [](const auto& a, const auto& b) { return a.track < b.track; });
  std::sort(doc.events.begin(), doc.events.end(), [](const auto& a, const auto& b) {
    const auto ta = a.event.tracks();
    const auto tb = b.event.tracks();
    return std::tie(a.event.time, ta.front(), a.event.id) <
           std::tie(b.event.time, tb.front(), b.event.id);
  });
  std::sort(doc.measurements.begin(), doc.measurements.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.event, a.stage) < std::tie(b.event, b.stage);
            });
  std::sort(doc.paths.begin(), doc.paths.end(),
            [](const auto& a, const auto& b) { return a.path.name < b.path.name; });
  std::sort(doc.corrections.begin(), doc.corrections.end(),
            [](const auto& a, const auto& b) { return a.key < b.key; });
  return doc;
}

std::string serialize(const SpecDocument& in) {
  const SpecDocument doc = canonical(in);
  std::ostringstream o;
  o << "espec " << doc.version << "\n";
  for (const auto& t : doc.tracks) o << "track " << t.track.index << " dim " << t.track.dim << "\n";
  for (const auto& i : doc.inputs) o << "input " << i.track << " " << format_vector(i.state) << "\n";
  for (const auto& r : doc.events) {
    const Event& e = r.event;
    if (const auto* b = e.as<BipartiteProjector>()) {
      o << (b->is_preparation ? "prep " : "proj ") << e.id << " " << b->dom_track << " -> "
        << b->cod_track << " at " << e.time << " " << lin(b->label.linearity()) << " "
        << format_matrix(b->label.matrix());
    } else if (const auto* u = e.as<LocalUnitary>()) {
      o << "unitary " << e.id << " " << u->track << " at " << e.time << " "
        << format_matrix(u->matrix);
    } else if (const auto* q = e.as<UnipartiteProjector>()) {
      o << (q->is_preparation ? "uniprep " : "uniproj ") << e.id << " " << q->track << " at "
        << e.time << " " << format_vector(q->state);
    } else {
      const auto& m = *e.as<MultipartiteProjector>();
      o << (m.is_preparation ? "mprep " : "mproj ") << e.id;
      for (int t : m.tracks) o << " " << t;
      o << " at " << e.time << " " << format_vector(m.state);
    }
    o << "\n";
  }
  for (const auto& m : doc.measurements) {
    o << "measurement " << m.name << " on " << m.event;
    if (m.stage != 1) o << " stage " << m.stage;
    o << " :";
    for (std::size_t i = 0; i < m.measurement.size(); ++i) {
      const auto& out = m.measurement.outcomes()[i];
      o << (i ? ", " : " ") << out.token << " = " << lin(out.label.linearity()) << " "
        << format_matrix(out.label.matrix());
    }
    o << "\n";
  }
  for (const auto& r : doc.paths) {
    const Path& p = r.path;
    o << "path " << p.name << " start " << p.start.track << " at " << p.start.time << " "
      << to_string(p.start.direction) << " :";
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      const auto& s = p.steps[i];
      o << (i ? ", " : " ") << s.event << " " << s.entry_track << " " << to_string(s.entry_side)
        << " > " << s.exit_track << " " << to_string(s.exit_side);
    }
    o << " ; end " << p.end.track << " at " << p.end.time << "\n";
  }
  if (doc.protocol) {
    const auto& p = *doc.protocol;
    o << "protocol " << p.name << " path " << p.path << " target " << lin(p.target.linearity())
      << " " << format_matrix(p.target.matrix()) << " correct " << p.correct_track << " at "
      << p.correct_time << "\n";
  }
  for (const auto& c : doc.corrections) o << "correction " << c.key << " " << format_matrix(c.matrix) << "\n";
  return o.str();
}

bool structurally_equal(const SpecDocument& a, const SpecDocument& b) {
  return canonical(a) == canonical(b);
}

Network to_network(const SpecDocument& doc) {
  std::vector<Track> tracks;
  for (const auto& t : doc.tracks) tracks.push_back(t.track);
  std::vector<Event> events;
  for (const auto& e : doc.events) events.push_back(e.event);
  std::map<int, CVector> inputs;
  for (const auto& i : doc.inputs) inputs.emplace(i.track, i.state);
  return Network::from_parts(std::move(tracks), std::move(events), std::move(inputs));
}

MeasurementPlan to_plan(const SpecDocument& doc) {
  MeasurementPlan plan;
  for (const auto& m : doc.measurements) plan.push_back({m.event, m.measurement, m.stage});
  return plan;
}

SpecDocument to_document(const Network& n, const std::vector<Path>& paths,
                         const MeasurementPlan& plan) {
  SpecDocument doc;
  for (const auto& t : n.tracks()) doc.tracks.push_back({t, 0});
  for (const auto& [t, v] : n.inputs()) doc.inputs.push_back({t, v, 0});
  for (const auto& e : n.events()) doc.events.push_back({e, 0});
  for (const auto& s : plan) {
    std::string name = "m_" + s.event;
    if (s.stage != 1) name += "_" + std::to_string(s.stage);
    doc.measurements.push_back({std::move(name), s.event, s.stage, s.measurement, 0});
  }
  for (const auto& p : paths) doc.paths.push_back({p, 0});
  return canonical(std::move(doc));
}

void attach_protocol(SpecDocument& doc, const std::string& name, const std::string& path,
                     const CompiledProtocol& c) {
  const ProtocolNode* leaf = &c.tree.root;
  while (!leaf->children.empty()) leaf = &leaf->children.front();
  const auto& slot = std::get<CorrectionOp>(leaf->op);
  doc.protocol = ProtocolRecord{name, path, c.target, slot.track, slot.time, 0};
  doc.corrections.clear();
  for (const auto& b : c.branches) doc.corrections.push_back({b.key, b.correction, 0});
}

}  // namespace espec
