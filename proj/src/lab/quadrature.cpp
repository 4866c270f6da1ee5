#include "abq/lab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace abq::lab {

QuadBox box_for(std::span<const TestFunction* const> fs, double per_scale) {
  QuadBox b{0.0, 0.0, 2, 2};
  double scale = std::numeric_limits<double>::infinity();
  for (const TestFunction* f : fs) {
    b.lx = std::max(b.lx, f->half_width_x());
    b.ly = std::max(b.ly, f->half_width_y());
    scale = std::min(scale, f->min_scale());
  }
  const double h = scale / per_scale;
  b.nx = std::clamp(static_cast<int>(std::ceil(2.0 * b.lx / h)), 2, 1 << 14);
  b.ny = std::clamp(static_cast<int>(std::ceil(2.0 * b.ly / h)), 2, 1 << 14);
  return b;
}

QuadBox box_for(const TestFunction& f, double per_scale) {
  const TestFunction* p = &f;
  return box_for(std::span<const TestFunction* const>(&p, 1), per_scale);
}

Samples sample(const TestFunction& fn, const QuadBox& box) {
  const int nx = box.nx + 1;
  const int ny = box.ny + 1;
  Samples s;
  s.f.assign(box.size(), 0.0);
  s.fx.assign(box.size(), 0.0);
  s.fy.assign(box.size(), 0.0);
  std::vector<double> ex(nx), gx(nx), cx(nx), sx(nx), ey(ny), gy(ny), cy(ny), sy(ny);
  for (const Term& t : fn.terms) {
    for (int i = 0; i < nx; ++i) {
      const double x = box.x(i);
      const double d = x - t.cx;
      ex[i] = std::exp(-0.5 * d * d / (t.sx * t.sx));
      gx[i] = -d / (t.sx * t.sx);
      cx[i] = std::cos(t.wx * x + t.phase);
      sx[i] = std::sin(t.wx * x + t.phase);
    }
    for (int j = 0; j < ny; ++j) {
      const double y = box.y(j);
      const double d = y - t.cy;
      ey[j] = std::exp(-0.5 * d * d / (t.sy * t.sy));
      gy[j] = -d / (t.sy * t.sy);
      cy[j] = std::cos(t.wy * y);
      sy[j] = std::sin(t.wy * y);
    }
    for (int i = 0; i < nx; ++i) {
      const double ai = t.a * ex[i];
      if (ai == 0.0) continue;
      double* f = s.f.data() + static_cast<std::size_t>(i) * ny;
      double* fx = s.fx.data() + static_cast<std::size_t>(i) * ny;
      double* fy = s.fy.data() + static_cast<std::size_t>(i) * ny;
      for (int j = 0; j < ny; ++j) {
        const double c = cx[i] * cy[j] - sx[i] * sy[j];
        const double sn = sx[i] * cy[j] + cx[i] * sy[j];
        const double w = ai * ey[j];
        f[j] += w * c;
        fx[j] += w * (c * gx[i] - t.wx * sn);
        fy[j] += w * (c * gy[j] - t.wy * sn);
      }
    }
  }
  return s;
}

double integrate(const QuadBox& box, std::span<const double> v) {
  const int ny = box.ny + 1;
  double total = 0.0;
  for (int i = 0; i <= box.nx; ++i) {
    const double wi = (i == 0 || i == box.nx) ? 0.5 : 1.0;
    double row = 0.0;
    for (int j = 0; j < ny; ++j) {
      const double wj = (j == 0 || j == box.ny) ? 0.5 : 1.0;
      row += wj * v[static_cast<std::size_t>(i) * ny + j];
    }
    total += wi * row;
  }
  return total * box.hx() * box.hy();
}

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

template <class Pow>
double weighted_sum(const QuadBox& box, std::span<const double> v, double inv_m, Pow pw) {
  const int ny = box.ny + 1;
  double total = 0.0;
  for (int i = 0; i <= box.nx; ++i) {
    const double wi = (i == 0 || i == box.nx) ? 0.5 : 1.0;
    const double* row = v.data() + static_cast<std::size_t>(i) * ny;
    double acc = 0.5 * (pw(std::abs(row[0]) * inv_m) + pw(std::abs(row[box.ny]) * inv_m));
    for (int j = 1; j < box.ny; ++j) acc += pw(std::abs(row[j]) * inv_m);
    total += wi * acc;
  }
  return total * box.hx() * box.hy();
}

}  // namespace

double lp_norm(const QuadBox& box, std::span<const double> v, double p) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  const double inv = 1.0 / m;
  double sum;
  if (p == std::floor(p) && p >= 1.0 && p <= 64.0) {
    const int n = static_cast<int>(p);
    sum = weighted_sum(box, v, inv, [n](double x) { return ipow(x, n); });
  } else {
    sum = weighted_sum(box, v, inv, [p](double x) { return std::pow(x, p); });
  }
  return m * std::pow(sum, 1.0 / p);
}

double sup_norm(const TestFunction& f, const QuadBox& box, std::span<const double> values) {
  const int ny = box.ny + 1;
  double gmax = 0.0;
  for (double v : values) gmax = std::max(gmax, std::abs(v));
  if (gmax == 0.0) return 0.0;

  // local maxima of |f| above half the grid maximum
  struct Cand {
    double v;
    int i, j;
  };
  std::vector<Cand> cands;
  auto at = [&](int i, int j) { return std::abs(values[static_cast<std::size_t>(i) * ny + j]); };
  for (int i = 1; i < box.nx; ++i) {
    for (int j = 1; j < box.ny; ++j) {
      const double v = at(i, j);
      if (v < 0.5 * gmax) continue;
      bool peak = true;
      for (int di = -1; di <= 1 && peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di || dj) && at(i + di, j + dj) > v) {
            peak = false;
            break;
          }
        }
      }
      if (peak) cands.push_back({v, i, j});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.v > b.v; });
  if (cands.size() > 8) cands.resize(8);

  double best = gmax;
  for (const Cand& c : cands) {
    double x = box.x(c.i);
    double y = box.y(c.j);
    const double x0 = x, y0 = y;
    for (int it = 0; it < 30; ++it) {
      const Value v = f.eval(x, y);
      const double det = v.fxx * v.fyy - v.fxy * v.fxy;
      if (det == 0.0) break;
      const double dx = -(v.fyy * v.fx - v.fxy * v.fy) / det;
      const double dy = -(v.fxx * v.fy - v.fxy * v.fx) / det;
      x += dx;
      y += dy;
      if (std::abs(x - x0) > 2.0 * box.hx() || std::abs(y - y0) > 2.0 * box.hy()) break;
      best = std::max(best, std::abs(f.eval(x, y).f));
      if (std::abs(dx) + std::abs(dy) < 1e-15 * (1.0 + std::abs(x) + std::abs(y))) break;
    }
  }
  return best;
}

}  // namespace abq::lab
