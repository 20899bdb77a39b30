// Copyright 2026 The Autocomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "autocomm/channel/oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <omp.h>

namespace autocomm::channel {

namespace {

std::vector<double> axis_points(double lo, double hi, double step) {
  std::vector<double> v;
  const auto n = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  v.reserve(static_cast<std::size_t>(n + 2));
  for (std::int64_t i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * step);
  if (v.back() < hi) v.push_back(hi);
  return v;
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::int64_t i = 0;
  std::int64_t j = 0;

  void take(const Best& o) {
    if (o.value < value || (o.value == value && (o.i < i || (o.i == i && o.j < j)))) *this = o;
  }
};

struct Grid {
  std::vector<double> us, zs;
  std::vector<double> col_a, col_b;  // perpendicular^2 + du^2 per u sample
  std::vector<double> row_a, row_b;  // dz^2 per z sample
};

Grid make_grid(Vec3 a, Vec3 b, const Facade& f, double res) {
  if (!(res > 0)) throw InvalidArgument("oracle resolution must be positive");
  const double na = f.side(a);
  const double nb = f.side(b);
  if (na <= 0.0 || nb <= 0.0) {
    throw DegenerateGeometry("oracle endpoints must lie strictly in front of the facade");
  }
  Grid g;
  g.us = axis_points(f.u_min, f.u_max, res);
  g.zs = axis_points(f.z_min, f.z_max, res);
  const int ua = f.u_axis();
  for (double u : g.us) {
    g.col_a.push_back(na * na + (u - a[ua]) * (u - a[ua]));
    g.col_b.push_back(nb * nb + (u - b[ua]) * (u - b[ua]));
  }
  for (double z : g.zs) {
    g.row_a.push_back((z - a.z) * (z - a.z));
    g.row_b.push_back((z - b.z) * (z - b.z));
  }
  return g;
}

// Minimum over the columns [i0, i1).
Best scan(const Grid& g, std::int64_t i0, std::int64_t i1) {
  Best best;
  const auto nz = static_cast<std::int64_t>(g.zs.size());
  std::vector<double> buf(static_cast<std::size_t>(nz));
  const double* ra = g.row_a.data();
  const double* rb = g.row_b.data();
  double* out = buf.data();
  for (std::int64_t i = i0; i < i1; ++i) {
    const double ca = g.col_a[static_cast<std::size_t>(i)];
    const double cb = g.col_b[static_cast<std::size_t>(i)];
    for (std::int64_t j = 0; j < nz; ++j) out[j] = std::sqrt(ca + ra[j]) + std::sqrt(cb + rb[j]);
    for (std::int64_t j = 0; j < nz; ++j) {
      if (out[j] < best.value) best = {out[j], i, j};
    }
  }
  return best;
}

// Newton descent of |a-p| + |b-p| over (u, z) on the facade plane.
Vec3 plane_minimizer(Vec3 a, Vec3 b, const Facade& f, Vec3 start) {
  const int ua = f.u_axis();
  auto length = [&](double u, double z) {
    const Vec3 p = f.point(u, z);
    return distance(a, p) + distance(b, p);
  };
  double u = start[ua];
  double z = start.z;
  for (int it = 0; it < 100; ++it) {
    const Vec3 p = f.point(u, z);
    double gu = 0, gz = 0, huu = 0, huz = 0, hzz = 0;
    for (const Vec3 q : {a, b}) {
      const double du = u - q[ua];
      const double dz = z - q.z;
      const double r = distance(p, q);
      gu += du / r;
      gz += dz / r;
      const double r3 = r * r * r;
      huu += 1.0 / r - du * du / r3;
      huz += -du * dz / r3;
      hzz += 1.0 / r - dz * dz / r3;
    }
    const double det = huu * hzz - huz * huz;
    if (!(det > 0)) break;
    double su = -(hzz * gu - huz * gz) / det;
    double sz = -(-huz * gu + huu * gz) / det;
    const double f0 = length(u, z);
    double step = 1.0;
    while (step > 1e-6 && length(u + step * su, z + step * sz) > f0) step *= 0.5;
    u += step * su;
    z += step * sz;
    if (std::abs(step * su) + std::abs(step * sz) < 1e-13) break;
  }
  return f.point(u, z);
}

GridOracleResult finish(Vec3 a, Vec3 b, const Facade& f, const Grid& g, const Best& best) {
  GridOracleResult r;
  r.point = f.point(g.us[static_cast<std::size_t>(best.i)], g.zs[static_cast<std::size_t>(best.j)]);
  r.path_length = best.value;
  r.evaluated = static_cast<std::int64_t>(g.us.size() * g.zs.size());
  const auto last_i = static_cast<std::int64_t>(g.us.size()) - 1;
  const auto last_j = static_cast<std::int64_t>(g.zs.size()) - 1;
  r.on_boundary = best.i == 0 || best.j == 0 || best.i == last_i || best.j == last_j;
  r.residual_rad = reflection_residual_rad(a, b, r.point, f);
  r.refined_point = plane_minimizer(a, b, f, r.point);
  r.interior_solution = !r.on_boundary || f.contains(r.refined_point);
  return r;
}

}  // namespace

GridOracleResult grid_search_reflection_oracle_serial(Vec3 bs, Vec3 user, const Facade& f,
                                                      double resolution_m) {
  const Grid g = make_grid(bs, user, f, resolution_m);
  return finish(bs, user, f, g, scan(g, 0, static_cast<std::int64_t>(g.us.size())));
}

GridOracleResult grid_search_reflection_oracle(Vec3 bs, Vec3 user, const Facade& f,
                                               double resolution_m) {
  const Grid g = make_grid(bs, user, f, resolution_m);
  const auto nu = static_cast<std::int64_t>(g.us.size());
  Best best;
#pragma omp parallel
  {
    const auto nt = static_cast<std::int64_t>(omp_get_num_threads());
    const auto t = static_cast<std::int64_t>(omp_get_thread_num());
    const Best mine = scan(g, nu * t / nt, nu * (t + 1) / nt);
#pragma omp critical
    best.take(mine);
  }
  return finish(bs, user, f, g, best);
}

}  // namespace autocomm::channel
