// Copyright 2026 The nisqlab Authors
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

#include "nisq/noise/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nisq/core/random.hpp"

namespace nisq {

namespace {

constexpr std::size_t kBlock = 64;

struct Unravelling {
  CMatrix drift;                 // -i H - sum_k L_k^dagger L_k
  std::vector<CMatrix> jumps;    // sqrt(2) L_k
  int steps = 0;
  double h = 0.0;

  Unravelling(const LindbladSystem& sys, double t, double dt) {
    if (!(dt > 0.0) || !(t >= 0.0)) throw std::invalid_argument("sse: need dt > 0 and t >= 0");
    steps = std::max(0, static_cast<int>(std::ceil(t / dt - 1e-9)));
    h = steps > 0 ? t / steps : 0.0;
    drift = Complex(0.0, -1.0) * sys.hamiltonian.matrix();
    for (const auto& l : sys.jumps) {
      drift -= l.adjoint() * l;
      jumps.push_back(std::sqrt(2.0) * l);
    }
    if (h * 2.0 * sys.jump_norm() > 0.1)
      throw std::invalid_argument("sse: dt times the jump rate exceeds 0.1; reduce dt");
  }

  void drift_step(CVector& psi) const {
    CVector k1 = drift * psi;
    CVector k2 = drift * (psi + 0.5 * h * k1);
    CVector k3 = drift * (psi + 0.5 * h * k2);
    CVector k4 = drift * (psi + h * k3);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    psi /= psi.norm();
  }

  // Calls visit(step, psi) for step = 0..steps.
  template <typename Visit>
  std::vector<Jump> run(const CVector& psi0, std::uint64_t seed, Visit&& visit) const {
    Rng rng(seed);
    CVector psi = psi0;
    std::vector<Jump> record;
    std::vector<double> rates(jumps.size());
    visit(0, psi);
    for (int s = 0; s < steps; ++s) {
      double total = 0.0;
      for (std::size_t k = 0; k < jumps.size(); ++k) {
        rates[k] = (jumps[k] * psi).squaredNorm();
        total += rates[k];
      }
      if (total > 0.0 && rng.uniform() < total * h) {
        const std::size_t k = rng.discrete(rates);
        psi = jumps[k] * psi;
        psi /= psi.norm();
        record.push_back({(s + 1) * h, static_cast<int>(k)});
      } else {
        drift_step(psi);
      }
      visit(s + 1, psi);
    }
    return record;
  }
};

void check_input(const LindbladSystem& sys, const CVector& psi0) {
  if (psi0.size() != static_cast<Eigen::Index>(dim_of(sys.qubits())))
    throw std::invalid_argument("sse: state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw std::invalid_argument("sse: input state not normalised");
}

}  // namespace

Trajectory sse_trajectory(const LindbladSystem& sys, const CVector& psi0, double t, double dt,
                          std::uint64_t seed) {
  check_input(sys, psi0);
  Unravelling u(sys, t, dt);
  Trajectory out;
  out.jumps = u.run(psi0, seed, [&](int s, const CVector& psi) {
    out.times.push_back(s * u.h);
    out.states.push_back(psi);
  });
  return out;
}

CVector sse_drift(const LindbladSystem& sys, const CVector& psi0, double t, double dt) {
  check_input(sys, psi0);
  Unravelling u(sys, t, dt);
  CVector psi = psi0;
  for (int s = 0; s < u.steps; ++s) u.drift_step(psi);
  return psi;
}

TrajectoryEnsemble sse_ensemble(const LindbladSystem& sys, const CVector& psi0, double t, double dt,
                                std::size_t count, std::uint64_t seed, unsigned jobs) {
  check_input(sys, psi0);
  if (count == 0) throw std::invalid_argument("sse_ensemble: need at least one trajectory");
  Unravelling u(sys, t, dt);
  const std::size_t points = static_cast<std::size_t>(u.steps) + 1;
  const Eigen::Index d = psi0.size();

  struct Partial {
    std::vector<CMatrix> rho;
    std::vector<RVector> pop, pop2;
    bool ready = false;
  };
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<Partial> partial(blocks);
  Partial total;
  total.rho.assign(points, CMatrix::Zero(d, d));
  total.pop.assign(points, RVector::Zero(d));
  total.pop2.assign(points, RVector::Zero(d));
  std::size_t merged = 0;
  std::mutex lock;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
      Partial p;
      p.rho.assign(points, CMatrix::Zero(d, d));
      p.pop.assign(points, RVector::Zero(d));
      p.pop2.assign(points, RVector::Zero(d));
      const std::size_t end = std::min(count, (b + 1) * kBlock);
      for (std::size_t i = b * kBlock; i < end; ++i) {
        u.run(psi0, derive_seed(seed, i), [&](int s, const CVector& psi) {
          p.rho[s] += psi * psi.adjoint();
          RVector pr = psi.cwiseAbs2();
          p.pop[s] += pr;
          p.pop2[s] += pr.cwiseAbs2();
        });
      }
      p.ready = true;
      // Fold finished blocks into the total strictly in block order so the
      // floating-point sum is independent of scheduling.
      std::lock_guard<std::mutex> guard(lock);
      partial[b] = std::move(p);
      while (merged < blocks && partial[merged].ready) {
        for (std::size_t s = 0; s < points; ++s) {
          total.rho[s] += partial[merged].rho[s];
          total.pop[s] += partial[merged].pop[s];
          total.pop2[s] += partial[merged].pop2[s];
        }
        partial[merged] = Partial{{}, {}, {}, true};
        ++merged;
      }
    }
  };
  const unsigned n_threads = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(blocks)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  TrajectoryEnsemble out;
  out.count = count;
  const double n = double(count);
  for (std::size_t s = 0; s < points; ++s) {
    const CMatrix& rho = total.rho[s];
    const RVector& pop = total.pop[s];
    const RVector& pop2 = total.pop2[s];
    out.times.push_back(double(s) * u.h);
    out.mean.push_back(rho / n);
    RVector mean = pop / n;
    RVector var = count > 1 ? RVector((pop2 - n * mean.cwiseAbs2()) / (n - 1.0)) : RVector::Zero(d);
    out.population_variance.push_back(var.cwiseMax(0.0));
  }
  return out;
}

}  // namespace nisq
