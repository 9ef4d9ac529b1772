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

#include "espec/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/SVD>

#include "espec/error.hpp"
#include "espec/random.hpp"

namespace espec {

StateTensor::StateTensor(std::vector<int> tracks, std::vector<int> dims,
                         CVector amplitudes)
    : tracks_(std::move(tracks)), dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (tracks_.size() != dims_.size()) throw DimensionError("one dimension per track");
  Eigen::Index total = 1;
  for (int d : dims_) total *= d;
  if (total != amplitudes_.size()) {
    throw DimensionError("amplitude count does not match track dimensions");
  }
}

std::size_t StateTensor::axis(int track) const {
  auto it = std::find(tracks_.begin(), tracks_.end(), track);
  if (it == tracks_.end()) throw std::out_of_range("track not in state");
  return static_cast<std::size_t>(it - tracks_.begin());
}

std::vector<Eigen::Index> StateTensor::strides() const {
  std::vector<Eigen::Index> s(dims_.size());
  Eigen::Index acc = 1;
  for (std::size_t i = dims_.size(); i-- > 0;) {
    s[i] = acc;
    acc *= dims_[i];
  }
  return s;
}

StateTensor initial_state(const Network& n, std::uint64_t seed) {
  std::vector<Track> tracks = n.tracks();
  std::sort(tracks.begin(), tracks.end(),
            [](const Track& a, const Track& b) { return a.index < b.index; });
  long long total = 1;
  long long free_dim = 1;
  std::vector<int> ids;
  std::vector<int> dims;
  for (const auto& t : tracks) {
    total *= t.dim;
    if (total > kMaxHilbertDim) {
      throw CapacityError("total dimension exceeds " + std::to_string(kMaxHilbertDim));
    }
    if (!n.inputs().count(t.index)) free_dim *= t.dim;
    ids.push_back(t.index);
    dims.push_back(t.dim);
  }

  Rng rng(seed);
  const CVector joint = random_vector(rng, free_dim);
  CVector amps(total);
  for (long long k = 0; k < total; ++k) {
    long long rest = k;
    long long free_index = 0;
    long long free_stride = 1;
    Complex a = 1.0;
    for (std::size_t i = dims.size(); i-- > 0;) {
      const int digit = static_cast<int>(rest % dims[i]);
      rest /= dims[i];
      auto it = n.inputs().find(ids[i]);
      if (it != n.inputs().end()) {
        a *= it->second(digit);
      } else {
        free_index += digit * free_stride;
        free_stride *= dims[i];
      }
    }
    amps(k) = a * joint(free_index);
  }
  return {std::move(ids), std::move(dims), std::move(amps)};
}

StateTensor apply_projector(const StateTensor& s, const std::vector<int>& tracks,
                            const CVector& phi) {
  const auto strides = s.strides();
  std::vector<std::size_t> axes;
  Eigen::Index sub_total = 1;
  for (int t : tracks) {
    axes.push_back(s.axis(t));
    sub_total *= s.dims()[axes.back()];
  }
  if (phi.size() != sub_total) {
    throw DimensionError("projector state does not match its tracks");
  }

  const Eigen::Index n = s.size();
  std::vector<Eigen::Index> sub(n);
  std::vector<Eigen::Index> base(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index si = 0;
    Eigen::Index b = k;
    for (std::size_t ax : axes) {
      const Eigen::Index digit = (k / strides[ax]) % s.dims()[ax];
      si = si * s.dims()[ax] + digit;
      b -= digit * strides[ax];
    }
    sub[k] = si;
    base[k] = b;
  }

  const CVector& psi = s.amplitudes();
  CVector c = CVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) c(base[k]) += std::conj(phi(sub[k])) * psi(k);
  CVector out(n);
  for (Eigen::Index k = 0; k < n; ++k) out(k) = phi(sub[k]) * c(base[k]);
  return {s.tracks(), s.dims(), std::move(out)};
}

StateTensor apply_unitary(const StateTensor& s, int track, const CMatrix& u) {
  const std::size_t ax = s.axis(track);
  const Eigen::Index d = s.dims()[ax];
  if (u.rows() != d || u.cols() != d) throw DimensionError("unitary does not match track");
  const Eigen::Index stride = s.strides()[ax];
  const CVector& psi = s.amplitudes();
  CVector out = CVector::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const Eigen::Index digit = (k / stride) % d;
    const Eigen::Index b = k - digit * stride;
    for (Eigen::Index j = 0; j < d; ++j) out(k) += u(digit, j) * psi(b + j * stride);
  }
  return {s.tracks(), s.dims(), std::move(out)};
}

StateTensor apply_event(const StateTensor& s, const Event& e) {
  if (const auto* b = e.as<BipartiteProjector>()) {
    return apply_projector(s, {b->dom_track, b->cod_track}, state_of(b->label));
  }
  if (const auto* u = e.as<LocalUnitary>()) return apply_unitary(s, u->track, u->matrix);
  if (const auto* q = e.as<UnipartiteProjector>()) {
    return apply_projector(s, {q->track}, q->state);
  }
  const auto& m = *e.as<MultipartiteProjector>();
  return apply_projector(s, m.tracks, m.state);
}

StateTensor run(const Network& n, std::uint64_t seed, std::vector<TraceEntry>* trace) {
  const auto diags = validate(n);
  if (!diags.empty()) throw std::invalid_argument("invalid network: " + diags.front().message);

  std::vector<const Event*> order;
  for (const auto& e : n.events()) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const Event* a, const Event* b) {
    return a->time != b->time ? a->time < b->time : a->id < b->id;
  });

  StateTensor s = initial_state(n, seed);
  const double threshold = kZeroThreshold * max_abs(s.amplitudes());
  const Event* killer = nullptr;
  for (const Event* e : order) {
    s = apply_event(s, *e);
    const double peak = max_abs(s.amplitudes());
    if (!killer && peak < threshold) killer = e;
    if (trace) trace->push_back({e->id, e->time, peak});
  }
  if (max_abs(s.amplitudes()) < threshold) {
    std::string msg = "final state has zero amplitude";
    if (killer) {
      msg += " (vanished at event '" + killer->id + "', time " +
             std::to_string(killer->time) + ")";
    }
    throw ZeroAmplitude(msg);
  }
  return s;
}

FactorReport extract_factor(const StateTensor& s, const std::vector<int>& tracks) {
  const auto strides = s.strides();
  std::vector<std::size_t> sub_axes;
  Eigen::Index rows = 1;
  for (int t : tracks) {
    sub_axes.push_back(s.axis(t));
    rows *= s.dims()[sub_axes.back()];
  }
  std::vector<std::size_t> rest_axes;
  std::vector<int> rest_tracks;
  std::vector<int> rest_dims;
  for (std::size_t ax = 0; ax < s.tracks().size(); ++ax) {
    if (std::find(sub_axes.begin(), sub_axes.end(), ax) == sub_axes.end()) {
      rest_axes.push_back(ax);
      rest_tracks.push_back(s.tracks()[ax]);
      rest_dims.push_back(s.dims()[ax]);
    }
  }
  const Eigen::Index cols = s.size() / rows;

  CMatrix a(rows, cols);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (std::size_t ax : sub_axes) r = r * s.dims()[ax] + (k / strides[ax]) % s.dims()[ax];
    for (std::size_t ax : rest_axes) c = c * s.dims()[ax] + (k / strides[ax]) % s.dims()[ax];
    a(r, c) = s.amplitudes()(k);
  }

  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) throw ZeroAmplitude("cannot factor the zero state");

  FactorReport rep;
  rep.tracks = tracks;
  rep.factor = svd.matrixU().col(0);
  rep.residual = sv.size() > 1 ? sv(1) / sv(0) : 0.0;
  rep.remainder = StateTensor(std::move(rest_tracks), std::move(rest_dims),
                              sv(0) * svd.matrixV().col(0).conjugate());
  if (tracks.size() == 2) {
    rep.label = label_of(rep.factor, s.dims()[sub_axes[0]], s.dims()[sub_axes[1]],
                         Linearity::AntiLinear);
  }
  return rep;
}

Network with_argument(const Network& n, const Path& p, const CVector& phi) {
  switch (start_kind(n, p)) {
    case StartKind::Input:
      return Network(n).set_input(p.start.track, phi);
    case StartKind::Anchored:
      return n.with_uniproj_state(start_anchor(n, p)->id, phi);
    case StartKind::Open:
      break;
  }
  return Network(n).add_uniproj("", p.start.track, n.max_time() + 1, phi);
}

namespace {

VerifyReport verify_impl(const Network& n, const Path& p, const FunctionalLabel& map,
                         int trials, std::uint64_t seed, double tol) {
  const auto diags = validate_path(n, p);
  if (!diags.empty()) throw std::invalid_argument("invalid path: " + diags.front().message);
  const int in_dim = n.dim(p.start.track);
  if (map.dom_dim() != in_dim || map.cod_dim() != n.dim(p.end.track)) {
    throw DimensionError("claimed map does not match the path's tracks");
  }

  VerifyReport rep;
  for (int t = 0; t < trials; ++t) {
    TrialOutcome out;
    out.trial = t;
    out.seed = trial_seed(seed, static_cast<std::uint64_t>(t));
    Rng rng(out.seed);
    CVector phi = random_vector(rng, in_dim);
    while (phi.squaredNorm() == 0.0) phi = random_vector(rng, in_dim);
    const std::uint64_t run_seed = rng.next();
    try {
      const StateTensor final_state = run(with_argument(n, p, phi), run_seed);
      const FactorReport f = extract_factor(final_state, {p.end.track});
      out.residual = f.residual;
      out.mismatch = prop_distance(f.factor, map(phi));
      out.status = (out.residual <= tol && out.mismatch <= tol) ? TrialStatus::Pass
                                                                : TrialStatus::Fail;
    } catch (const ZeroAmplitude&) {
      out.status = TrialStatus::Zero;
    }
    switch (out.status) {
      case TrialStatus::Pass: ++rep.passed; break;
      case TrialStatus::Fail: ++rep.failed; break;
      case TrialStatus::Zero: ++rep.zero; break;
    }
    rep.trials.push_back(out);
  }
  return rep;
}

}  // namespace

VerifyReport verify_theorem(const Network& n, const Path& p, int trials,
                            std::uint64_t seed, double tol) {
  return verify_impl(n, p, path_function(n, p), trials, seed, tol);
}

VerifyReport verify_theorem(const Network& n, const Path& p, const FunctionalLabel& claimed,
                            int trials, std::uint64_t seed, double tol) {
  return verify_impl(n, p, claimed, trials, seed, tol);
}

}  // namespace espec
