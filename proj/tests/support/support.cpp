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

#include "support.hpp"

#include "espec/protocol.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace espec::testing {

CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    }
  }
  return out;
}

namespace {

std::vector<int> digits(Eigen::Index k, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    d[i] = static_cast<int>(k % dims[i]);
    k /= dims[i];
  }
  return d;
}

std::size_t position(const std::vector<int>& all, int track) {
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), track) - all.begin());
}

}  // namespace

CMatrix dense_projector(const std::vector<int>& all_tracks, const std::vector<int>& dims,
                        const std::vector<int>& tracks, const CVector& phi) {
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  std::vector<std::size_t> axes;
  for (int t : tracks) axes.push_back(position(all_tracks, t));
  CMatrix p = CMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto dr = digits(r, dims);
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto dc = digits(c, dims);
      bool same_rest = true;
      for (std::size_t ax = 0; ax < dims.size(); ++ax) {
        if (std::find(axes.begin(), axes.end(), ax) == axes.end() && dr[ax] != dc[ax]) {
          same_rest = false;
        }
      }
      if (!same_rest) continue;
      Eigen::Index sr = 0;
      Eigen::Index sc = 0;
      for (std::size_t ax : axes) {
        sr = sr * dims[ax] + dr[ax];
        sc = sc * dims[ax] + dc[ax];
      }
      p(r, c) = phi(sr) * std::conj(phi(sc));
    }
  }
  return p;
}

CMatrix dense_unitary(const std::vector<int>& all_tracks, const std::vector<int>& dims,
                      int track, const CMatrix& u) {
  const std::size_t ax = position(all_tracks, track);
  Eigen::Index n = 1;
  for (int d : dims) n *= d;
  CMatrix full = CMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto dr = digits(r, dims);
    for (Eigen::Index c = 0; c < n; ++c) {
      auto dc = digits(c, dims);
      const int col_digit = dc[ax];
      dc[ax] = dr[ax];
      if (dc == dr) full(r, c) = u(dr[ax], col_digit);
    }
  }
  return full;
}

CVector apply_by_definition(const FunctionalLabel& f, const CVector& v) {
  CVector out = CVector::Zero(f.cod_dim());
  for (Eigen::Index a = 0; a < f.dom_dim(); ++a) {
    const Complex coeff = f.is_antilinear() ? std::conj(v(a)) : v(a);
    for (Eigen::Index b = 0; b < f.cod_dim(); ++b) out(b) += f.matrix()(b, a) * coeff;
  }
  return out;
}

Complex inner(const CVector& u, const CVector& v) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) s += std::conj(u(i)) * v(i);
  return s;
}

CMatrix first_order_by_contraction(const TripartiteLabel& t, const CVector& psi) {
  const auto [d1, d2, d3] = t.dims();
  CMatrix n(d3, d2);
  for (Eigen::Index b = 0; b < d2; ++b) {
    for (Eigen::Index c = 0; c < d3; ++c) {
      Complex s = 0.0;
      for (Eigen::Index a = 0; a < d1; ++a) {
        s += std::conj(psi(a)) * t.coefficients()((a * d2 + b) * d3 + c);
      }
      n(c, b) = s;
    }
  }
  return n;
}

namespace {

struct Segment {
  int track;
  int lo;
  int hi;
  bool up;
};

class Grower {
 public:
  Grower(Rng& rng, const GeneratorLimits& lim) : rng_(rng), lim_(lim) {}

  std::optional<RandomCase> attempt() {
    const int nt = rng_.uniform_int(2, lim_.max_tracks);
    const int top = lim_.times;
    const bool backward = rng_.uniform() < 0.5;
    const int k = backward ? 2 * rng_.uniform_int(0, (lim_.max_projectors - 1) / 2) + 1
                           : 2 * rng_.uniform_int(0, lim_.max_projectors / 2);

    Network n;
    for (int t = 1; t <= nt; ++t) n.add_track(t, 2);
    Path p;
    p.name = "grown";
    int cur = rng_.uniform_int(1, nt);
    int time = 0;
    bool up = true;
    if (backward) {
      time = rng_.uniform_int(2, top);
      up = false;
      n.add_uniproj("a", cur, time, random_vector(rng_, 2));
      occupied_.insert({cur, time});
      p.start = {cur, time, Direction::Down};
    } else {
      p.start = {cur, 0, Direction::Up};
    }

    std::vector<PathStep> bounces;
    for (int i = 0; i < k; ++i) {
      std::vector<int> times;
      for (int t = up ? time + 1 : 1; up ? t <= top : t < time; ++t) {
        if (free(cur, t) && clear_between(cur, time, t) && !overlaps(cur, time, t)) {
          times.push_back(t);
        }
      }
      if (times.empty()) return std::nullopt;
      const int t = times[rng_.uniform_int(0, static_cast<int>(times.size()) - 1)];
      std::vector<int> others;
      for (int o = 1; o <= nt; ++o) {
        if (o != cur && free(o, t)) others.push_back(o);
      }
      if (others.empty()) return std::nullopt;
      const int o = others[rng_.uniform_int(0, static_cast<int>(others.size()) - 1)];

      segments_.push_back({cur, std::min(time, t), std::max(time, t), up});
      const std::string id = "p" + std::to_string(i);
      const bool forward_label = rng_.uniform() < 0.5;
      n.add_projector(id, forward_label ? cur : o, forward_label ? o : cur, t,
                      random_label(rng_, 2, 2));
      occupied_.insert({cur, t});
      occupied_.insert({o, t});
      bounces.push_back(PathStep::bounce(id, cur, o, up ? Side::Below : Side::Above));
      cur = o;
      time = t;
      up = !up;
    }
    if (!up) throw std::logic_error("generator parity");
    for (int t = time + 1; t <= top; ++t) {
      if (!free(cur, t)) return std::nullopt;
    }
    if (overlaps(cur, time, top + 1)) return std::nullopt;
    segments_.push_back({cur, time, top + 1, true});
    p.end = {cur, top};

    // Unitaries: traversed when they land on a segment.
    std::map<std::size_t, std::vector<std::pair<int, std::string>>> on_segment;
    RandomCase out{Network(), Path(), k, 0};
    const int nu = rng_.uniform_int(0, lim_.max_unitaries);
    for (int u = 0; u < nu; ++u) {
      for (int tries = 0; tries < 20; ++tries) {
        const int tr = rng_.uniform_int(1, nt);
        const int t = rng_.uniform_int(1, top);
        if (occupied_.count({tr, t})) continue;
        const std::string id = "u" + std::to_string(u);
        n.add_unitary(id, tr, t, random_unitary(rng_, 2));
        occupied_.insert({tr, t});
        for (std::size_t s = 0; s < segments_.size(); ++s) {
          if (segments_[s].track == tr && segments_[s].lo < t && t < segments_[s].hi) {
            on_segment[s].push_back({t, id});
            ++out.unitaries_on_path;
          }
        }
        break;
      }
    }

    const int total = rng_.uniform_int(k, std::max(k, lim_.max_projectors));
    int placed = k;
    for (int tries = 0; placed < total && tries < 60; ++tries) {
      const int a = rng_.uniform_int(1, nt);
      const int b = rng_.uniform_int(1, nt);
      const int t = rng_.uniform_int(1, top);
      if (a == b || !free(a, t) || !free(b, t)) continue;
      n.add_projector("q" + std::to_string(placed), a, b, t, random_label(rng_, 2, 2));
      occupied_.insert({a, t});
      occupied_.insert({b, t});
      ++placed;
    }

    for (int t = 1; t <= nt; ++t) {
      if ((!backward && t == p.start.track) || rng_.uniform() < 0.5) {
        n.set_input(t, random_vector(rng_, 2));
      }
    }

    for (std::size_t s = 0; s < segments_.size(); ++s) {
      auto& us = on_segment[s];
      std::sort(us.begin(), us.end());
      if (!segments_[s].up) std::reverse(us.begin(), us.end());
      for (const auto& [t, id] : us) {
        p.steps.push_back(segments_[s].up ? PathStep::forward(id, segments_[s].track)
                                          : PathStep::backward(id, segments_[s].track));
      }
      if (s < bounces.size()) p.steps.push_back(bounces[s]);
    }

    if (!validate(n).empty() || !validate_path(n, p).empty()) {
      throw std::logic_error("generator produced an invalid case");
    }
    out.network = std::move(n);
    out.path = std::move(p);
    return out;
  }

 private:
  bool reserved(int track, int t) const {
    for (const auto& s : segments_) {
      if (s.track == track && s.lo < t && t < s.hi) return true;
    }
    return false;
  }
  bool free(int track, int t) const { return !occupied_.count({track, t}) && !reserved(track, t); }
  bool clear_between(int track, int a, int b) const {
    for (int t = std::min(a, b) + 1; t < std::max(a, b); ++t) {
      if (occupied_.count({track, t})) return false;
    }
    return true;
  }
  bool overlaps(int track, int a, int b) const {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    for (const auto& s : segments_) {
      if (s.track == track && std::max(s.lo, lo) < std::min(s.hi, hi)) return true;
    }
    return false;
  }

  Rng& rng_;
  GeneratorLimits lim_;
  std::set<std::pair<int, int>> occupied_;
  std::vector<Segment> segments_;
};

}  // namespace

RandomCase random_case(Rng& rng, const GeneratorLimits& limits) {
  while (true) {
    Grower g(rng, limits);
    if (auto c = g.attempt()) return std::move(*c);
  }
}

TwoUnitaryCase two_unitary_case(Rng& rng) {
  TwoUnitaryCase c{Network(), Path(), random_label(rng, 2, 2), random_label(rng, 2, 2),
               random_label(rng, 2, 2), random_unitary(rng, 2), random_unitary(rng, 2)};
  Network& n = c.network;
  for (int t = 1; t <= 4; ++t) n.add_track(t, 2);
  n.add_uniproj("phi", 1, 5, random_vector(rng, 2));
  n.add_projector("f", 1, 2, 1, c.f);
  n.add_unitary("U", 2, 2, c.u);
  n.add_projector("g", 2, 3, 3, c.g);
  n.add_unitary("V", 3, 2, c.v);
  n.add_projector("h", 3, 4, 1, c.h);
  c.path.name = "two_unitary";
  c.path.start = {1, 5, Direction::Down};
  c.path.steps = {PathStep::bounce("f", 1, 2, Side::Above), PathStep::forward("U", 2),
                  PathStep::bounce("g", 2, 3, Side::Below), PathStep::backward("V", 3),
                  PathStep::bounce("h", 3, 4, Side::Above)};
  c.path.end = {4, 5};
  return c;
}

CVector two_unitary_expected(const TwoUnitaryCase& c, const CVector& phi) {
  const CVector a = c.u * apply_by_definition(c.f, phi);
  const CVector b = c.v.adjoint() * apply_by_definition(c.g, a);
  return apply_by_definition(c.h, b);
}

WorkedExample random_worked_example(Rng& rng) {
  const auto tri = [&rng] { return TripartiteLabel({2, 2, 2}, random_vector(rng, 8)); };
  TripartiteLabel m1 = tri();
  TripartiteLabel m2 = tri();
  TripartiteLabel m3 = tri();
  return {m1, m2, m3, random_label(rng, 2, 2), random_label(rng, 2, 2), random_vector(rng, 2),
          random_vector(rng, 2)};
}

CVector by_loops(const WorkedExample& w) {
  const auto b1 = [&](int a, int b) { return w.b1.matrix()(b, a); };
  const auto b2 = [&](int a, int b) { return w.b2.matrix()(b, a); };
  CVector out = CVector::Zero(2);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int a3 = 0; a3 < 2; ++a3)
        for (int a4 = 0; a4 < 2; ++a4)
          for (int a5 = 0; a5 < 2; ++a5)
            for (int a6 = 0; a6 < 2; ++a6)
              for (int a7 = 0; a7 < 2; ++a7)
                for (int a8 = 0; a8 < 2; ++a8) {
                  out(a8) += std::conj(w.phi2(a7)) * b1(a3, a4) * w.phi1(a1) *
                             std::conj(w.m1.at(a1, a2, a3)) * b2(a2, a5) *
                             std::conj(w.m2.at(a4, a5, a6)) * w.m3.at(a6, a7, a8);
                }
  return out;
}

Network with_projector_linearity(const Network& n, Linearity l) {
  Network out = n;
  for (const auto& e : n.events()) {
    if (const auto* b = e.as<BipartiteProjector>()) {
      out = out.with_label(e.id, b->label.with_linearity(l));
    }
  }
  return out;
}

namespace {

Complex awkward(Rng& rng) {
  static const double pool[] = {1.0 / 3.0, -0.1, 1e-7, 12345.678, 0.0, -2.5, 0.30000000000000004,
                                1e-12, 7.0};
  const double re = pool[rng.uniform_int(0, 8)];
  const double im = pool[rng.uniform_int(0, 8)];
  switch (rng.uniform_int(0, 2)) {
    case 0: return {re, 0.0};
    case 1: return {0.0, im};
    default: return {re, -im};
  }
}

CMatrix roughen(CMatrix m, Rng& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (rng.uniform() < 0.3) m(i) = awkward(rng);
  }
  return m;
}

CVector roughen(CVector v, Rng& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (rng.uniform() < 0.3) v(i) = awkward(rng);
  }
  if (v.squaredNorm() == 0.0) v(0) = 1.0;
  return v;
}

std::string random_token(Rng& rng) {
  static const char chars[] = "abcXYZ019_";
  std::string t;
  const int len = rng.uniform_int(1, 4);
  for (int i = 0; i < len; ++i) t += chars[rng.uniform_int(0, 9)];
  return t;
}

}  // namespace

SpecDocument random_document(Rng& rng) {
  GeneratorLimits lim;
  lim.max_tracks = 5;
  RandomCase c = random_case(rng, lim);
  SpecDocument doc = to_document(c.network, {c.path});

  for (auto& r : doc.events) {
    Event& e = r.event;
    if (auto* b = std::get_if<BipartiteProjector>(&e.kind)) {
      const Linearity l = rng.uniform() < 0.3 ? Linearity::Linear : Linearity::AntiLinear;
      b->label = FunctionalLabel(roughen(b->label.matrix(), rng), l);
      b->is_preparation = rng.uniform() < 0.3;
    } else if (auto* u = std::get_if<LocalUnitary>(&e.kind)) {
      u->matrix = roughen(u->matrix, rng);
    } else if (auto* q = std::get_if<UnipartiteProjector>(&e.kind)) {
      q->state = roughen(q->state, rng);
      q->is_preparation = rng.uniform() < 0.5;
    }
  }
  for (auto& in : doc.inputs) in.state = roughen(in.state, rng);

  const int nt = static_cast<int>(doc.tracks.size());
  const int late = c.network.max_time() + 1;
  if (nt >= 2 && rng.uniform() < 0.5) {
    std::vector<int> tracks;
    for (int t = 1; t <= nt; ++t) {
      if (rng.uniform() < 0.6) tracks.push_back(t);
    }
    if (tracks.empty()) tracks.push_back(1);
    Eigen::Index size = Eigen::Index{1} << tracks.size();
    doc.events.push_back({{"mp", late,
                           MultipartiteProjector{tracks, roughen(random_vector(rng, size), rng),
                                                 rng.uniform() < 0.5}},
                          0});
  }

  std::vector<std::string> bipartite;
  for (const auto& r : doc.events) {
    if (r.event.as<BipartiteProjector>()) bipartite.push_back(r.event.id);
  }
  std::vector<std::vector<std::string>> token_sets;
  for (std::size_t i = 0; i < bipartite.size() && i < 3; ++i) {
    const int stages = rng.uniform_int(1, 2);
    for (int s = 1; s <= stages; ++s) {
      std::vector<Outcome> outcomes;
      std::set<std::string> seen;
      const int count = rng.uniform_int(1, 4);
      for (int o = 0; o < count; ++o) {
        std::string tok = random_token(rng);
        if (!seen.insert(tok).second) continue;
        outcomes.push_back({tok, FunctionalLabel(roughen(random_matrix(rng, 2, 2), rng),
                                                 rng.uniform() < 0.5 ? Linearity::Linear
                                                                     : Linearity::AntiLinear)});
      }
      std::vector<std::string> toks;
      for (const auto& o : outcomes) toks.push_back(o.token);
      token_sets.push_back(toks);
      doc.measurements.push_back({"meas" + std::to_string(i) + "_" + std::to_string(s),
                                  bipartite[i], s, Measurement(std::move(outcomes)), 0});
    }
  }

  if (rng.uniform() < 0.5) {
    Path extra = c.path;
    extra.name = "alt";
    if (!extra.steps.empty() && rng.uniform() < 0.5) extra.steps.pop_back();
    extra.end.time += rng.uniform_int(0, 3);
    doc.paths.push_back({extra, 0});
  }

  if (!token_sets.empty() && rng.uniform() < 0.6) {
    doc.protocol = ProtocolRecord{"proto", c.path.name,
                                  FunctionalLabel(roughen(random_unitary(rng, 2), rng),
                                                  rng.uniform() < 0.5 ? Linearity::Linear
                                                                      : Linearity::AntiLinear),
                                  c.path.end.track, late + 1, 0};
    std::set<std::string> keys;
    for (int i = 0; i < 4; ++i) {
      std::vector<std::string> key;
      for (const auto& toks : token_sets) key.push_back(toks[rng.uniform_int(0, static_cast<int>(toks.size()) - 1)]);
      const std::string k = branch_key(key);
      if (keys.insert(k).second) {
        doc.corrections.push_back({k, roughen(random_unitary(rng, 2), rng), 0});
      }
    }
  }
  return doc;
}

std::string scramble(const std::string& canonical_text, Rng& rng) {
  std::vector<std::string> lines;
  std::istringstream in(canonical_text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.empty()) return canonical_text;
  const std::string head = lines.front();
  std::vector<std::string> body(lines.begin() + 1, lines.end());
  for (std::size_t i = body.size(); i > 1; --i) {
    std::swap(body[i - 1], body[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
  }

  const auto respace = [&rng](const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.compare(i, 2, ", ") == 0) {
        static const char* variants[] = {",", " , ", ",   ", "\t,"};
        out += variants[rng.uniform_int(0, 3)];
        ++i;
      } else if (s[i] == '[' && rng.uniform() < 0.5) {
        out += "[ ";
      } else if (s[i] == ']' && rng.uniform() < 0.5) {
        out += " ]";
      } else if (s[i] == ' ' && rng.uniform() < 0.2) {
        out += "  ";
      } else {
        out += s[i];
      }
    }
    return out;
  };

  std::string out;
  if (rng.uniform() < 0.5) out += "# scrambled\n\n";
  out += head + "\n";
  for (const auto& b : body) {
    if (rng.uniform() < 0.2) out += "\n";
    if (rng.uniform() < 0.1) out += "   # note\n";
    out += std::string(static_cast<std::size_t>(rng.uniform_int(0, 2)), ' ') + respace(b);
    if (rng.uniform() < 0.2) out += "  # trailing";
    out += "\n";
  }
  return out;
}

}  // namespace espec::testing
