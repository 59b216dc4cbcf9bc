// Copyright 2026 The Liouville Authors
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

#include "liouville/ot/log_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/core/error.hpp"
#include "liouville/core/parallel.hpp"

namespace liouville {

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class DenseKernel final : public LogKernel {
 public:
  DenseKernel(std::vector<Vec2> source, std::vector<Vec2> target)
      : source_(std::move(source)), target_(std::move(target)) {
    const std::size_t m = source_.size(), n = target_.size();
    cost_.resize(m * n);
    cost_t_.resize(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double c = (source_[i] - target_[j]).squaredNorm();
        cost_[i * n + j] = c;
        cost_t_[j * m + i] = c;
      }
    }
  }

  int rows() const override { return static_cast<int>(source_.size()); }
  int cols() const override { return static_cast<int>(target_.size()); }
  Vec2 source_point(int i) const override { return source_[i]; }
  Vec2 target_point(int j) const override { return target_[j]; }

  void softmin_rows(std::span<const double> h, double eps, std::span<double> out) const override {
    const int n = cols();
    parallel_for(rows(), [&](std::int64_t i) {
      std::vector<double> v(n);
      for (int j = 0; j < n; ++j) v[j] = (h[j] - cost_[i * n + j]) / eps;
      out[i] = -eps * log_sum_exp(v);
    });
  }

  void softmin_cols(std::span<const double> p, double eps, std::span<double> out) const override {
    const int n = cols(), m = rows();
    parallel_for(n, [&](std::int64_t j) {
      std::vector<double> v(m);
      const double* c = &cost_t_[static_cast<std::size_t>(j) * m];
      for (int i = 0; i < m; ++i) v[i] = (p[i] - c[i]) / eps;
      out[j] = -eps * log_sum_exp(v);
    });
  }

  void row_stats(std::span<const double> p, std::span<const double> h, double eps,
                 std::span<RowStats> out) const override {
    const int n = cols();
    parallel_for(rows(), [&](std::int64_t i) {
      std::vector<double> v(n);
      double mx = kNegInf;
      for (int j = 0; j < n; ++j) {
        v[j] = (h[j] - cost_[i * n + j]) / eps;
        mx = std::max(mx, v[j]);
      }
      RowStats& r = out[i];
      r = RowStats{};
      if (!std::isfinite(mx)) {
        r.log_mass = kNegInf;
        return;
      }
      double w = 0.0, c = 0.0;
      Vec2 y = Vec2::Zero();
      for (int j = 0; j < n; ++j) {
        const double e = std::exp(v[j] - mx);
        w += e;
        y += e * target_[j];
        c += e * cost_[i * n + j];
      }
      r.log_mass = p[i] / eps + mx + std::log(w);
      r.mean = y / w;
      r.cost = c / w;
    });
  }

 private:
  std::vector<Vec2> source_;
  std::vector<Vec2> target_;
  std::vector<double> cost_;
  std::vector<double> cost_t_;  // transposed, for column sweeps
};

// Axis-wise squared distances between two coordinate lists, a-major.
std::vector<double> axis_costs(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) c[i * b.size() + k] = (a[i] - b[k]) * (a[i] - b[k]);
  return c;
}

std::vector<double> coords(double lo, double h, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (i + 0.5) * h;
  return v;
}

// Tensor-grid point set side of a separable kernel.
struct Axes {
  std::vector<double> x, y;
  int nx() const { return static_cast<int>(x.size()); }
  int ny() const { return static_cast<int>(y.size()); }
};

// out_{a,b} = -eps log sum_{c,d} exp((h_{c,d} - cx_{a,c} - cy_{b,d}) / eps),
// where (a, b) indexes `out_axes` and (c, d) indexes `in_axes`.
void separable_softmin(const Axes& out_axes, const Axes& in_axes, const std::vector<double>& cx,
                       const std::vector<double>& cy, std::span<const double> h, double eps,
                       std::span<double> out) {
  const int na = out_axes.nx(), nb = out_axes.ny(), nc = in_axes.nx(), nd = in_axes.ny();
  std::vector<double> m(static_cast<std::size_t>(na) * nd);
  parallel_for(na, [&](std::int64_t a) {
    std::vector<double> v(nc);
    for (int d = 0; d < nd; ++d) {
      for (int c = 0; c < nc; ++c) v[c] = (h[d * nc + c] - cx[a * nc + c]) / eps;
      m[a * nd + d] = log_sum_exp(v);
    }
  });
  parallel_for(static_cast<std::int64_t>(na) * nb, [&](std::int64_t k) {
    const int a = static_cast<int>(k % na), b = static_cast<int>(k / na);
    std::vector<double> v(nd);
    for (int d = 0; d < nd; ++d) v[d] = m[a * nd + d] - cy[b * nd + d] / eps;
    out[b * na + a] = -eps * log_sum_exp(v);
  });
}

class GridKernel final : public LogKernel {
 public:
  GridKernel(const CellGrid& s, const CellGrid& t) {
    src_.x = coords(s.domain().lower().x(), s.dx(), s.nx());
    src_.y = coords(s.domain().lower().y(), s.dy(), s.ny());
    dst_.x = coords(t.domain().lower().x(), t.dx(), t.nx());
    dst_.y = coords(t.domain().lower().y(), t.dy(), t.ny());
    cx_ = axis_costs(src_.x, dst_.x);
    cy_ = axis_costs(src_.y, dst_.y);
    cx_t_ = axis_costs(dst_.x, src_.x);
    cy_t_ = axis_costs(dst_.y, src_.y);
  }

  int rows() const override { return src_.nx() * src_.ny(); }
  int cols() const override { return dst_.nx() * dst_.ny(); }
  Vec2 source_point(int i) const override {
    return Vec2(src_.x[i % src_.nx()], src_.y[i / src_.nx()]);
  }
  Vec2 target_point(int j) const override {
    return Vec2(dst_.x[j % dst_.nx()], dst_.y[j / dst_.nx()]);
  }

  void softmin_rows(std::span<const double> h, double eps, std::span<double> out) const override {
    separable_softmin(src_, dst_, cx_, cy_, h, eps, out);
  }

  void softmin_cols(std::span<const double> p, double eps, std::span<double> out) const override {
    separable_softmin(dst_, src_, cx_t_, cy_t_, p, eps, out);
  }

  void row_stats(std::span<const double> p, std::span<const double> h, double eps,
                 std::span<RowStats> out) const override {
    const int na = src_.nx(), nb = src_.ny(), nc = dst_.nx(), nd = dst_.ny();
    // Stage 1 over target columns c for each (a, d): log weight, mean x and
    // mean x-cost of the partial sums.
    std::vector<double> lw(static_cast<std::size_t>(na) * nd), mx(lw.size()), mc(lw.size());
    parallel_for(na, [&](std::int64_t a) {
      std::vector<double> v(nc);
      for (int d = 0; d < nd; ++d) {
        double top = kNegInf;
        for (int c = 0; c < nc; ++c) {
          v[c] = (h[d * nc + c] - cx_[a * nc + c]) / eps;
          top = std::max(top, v[c]);
        }
        const std::size_t k = a * nd + d;
        if (!std::isfinite(top)) {
          lw[k] = kNegInf;
          mx[k] = mc[k] = 0.0;
          continue;
        }
        double w = 0.0, sx = 0.0, sc = 0.0;
        for (int c = 0; c < nc; ++c) {
          const double e = std::exp(v[c] - top);
          w += e;
          sx += e * dst_.x[c];
          sc += e * cx_[a * nc + c];
        }
        lw[k] = top + std::log(w);
        mx[k] = sx / w;
        mc[k] = sc / w;
      }
    });
    parallel_for(static_cast<std::int64_t>(na) * nb, [&](std::int64_t k) {
      const int a = static_cast<int>(k % na), b = static_cast<int>(k / na);
      std::vector<double> v(nd);
      double top = kNegInf;
      for (int d = 0; d < nd; ++d) {
        v[d] = lw[a * nd + d] - cy_[b * nd + d] / eps;
        top = std::max(top, v[d]);
      }
      RowStats& r = out[b * na + a];
      r = RowStats{};
      if (!std::isfinite(top)) {
        r.log_mass = kNegInf;
        return;
      }
      double w = 0.0, sx = 0.0, sy = 0.0, sc = 0.0;
      for (int d = 0; d < nd; ++d) {
        const double e = std::exp(v[d] - top);
        w += e;
        sx += e * mx[a * nd + d];
        sy += e * dst_.y[d];
        sc += e * (mc[a * nd + d] + cy_[b * nd + d]);
      }
      r.log_mass = p[b * na + a] / eps + top + std::log(w);
      r.mean = Vec2(sx / w, sy / w);
      r.cost = sc / w;
    });
  }

 private:
  Axes src_, dst_;
  std::vector<double> cx_, cy_, cx_t_, cy_t_;
};

}  // namespace

std::shared_ptr<const LogKernel> make_dense_kernel(std::vector<Vec2> source,
                                                   std::vector<Vec2> target) {
  if (source.empty() || target.empty())
    throw Error(ErrorCode::kInvalidArgument, "kernel needs nonempty point sets");
  return std::make_shared<DenseKernel>(std::move(source), std::move(target));
}

std::shared_ptr<const LogKernel> make_grid_kernel(const CellGrid& source, const CellGrid& target) {
  return std::make_shared<GridKernel>(source, target);
}

}  // namespace liouville
