#include "bmslice/demo_action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bmslice::demo {

namespace {

constexpr double kCompactnessThreshold = 1e6;  // envelope bound for "thin"
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = kInf;
  double hi = -kInf;
  bool empty() const { return lo > hi; }
};

}  // namespace

DemoPoint::DemoPoint(double x, double y) : x(x), y(y) {
  if (x * x + y * y <= 0.0) throw Error("DemoPoint: the origin is not a point of the space");
}

double DemoPoint::norm() const { return std::hypot(x, y); }

DemoGroupElem::DemoGroupElem(double lambda) : lambda(lambda) {
  if (!(lambda > 0.0)) throw Error("DemoGroupElem: lambda must be positive");
}

DemoPoint act(const DemoGroupElem& g, const DemoPoint& p) {
  return DemoPoint(g.lambda * p.x, g.lambda * p.y);
}

double slicing_map(DemoSliceKind slice, const DemoPoint& p) {
  if (slice == DemoSliceKind::Circle) return p.norm();
  // Hyperbola: p / lambda on the slice. Off the axes (x/l)(y/l) = +-1 gives
  // lambda = sqrt(|x y|); on the axes the slice points are (+-1,0), (0,+-1).
  if (p.x == 0.0) return std::abs(p.y);
  if (p.y == 0.0) return std::abs(p.x);
  return std::sqrt(std::abs(p.x * p.y));
}

SetDescriptor SetDescriptor::ball(double cx, double cy, double r) {
  SetDescriptor d;
  d.kind = Kind::Ball;
  d.cx = cx;
  d.cy = cy;
  d.radius = r;
  return d;
}

SetDescriptor SetDescriptor::annulus(double r_inner, double r_outer) {
  SetDescriptor d;
  d.kind = Kind::Annulus;
  d.r_inner = r_inner;
  d.r_outer = r_outer;
  return d;
}

SetDescriptor SetDescriptor::rect(double x0, double x1, double y0, double y1) {
  SetDescriptor d;
  d.kind = Kind::Rect;
  d.x0 = x0;
  d.x1 = x1;
  d.y0 = y0;
  d.y1 = y1;
  return d;
}

SetDescriptor SetDescriptor::circle_slice() {
  SetDescriptor d;
  d.kind = Kind::CircleSlice;
  return d;
}

SetDescriptor SetDescriptor::hyperbola_slice() {
  SetDescriptor d;
  d.kind = Kind::HyperbolaSlice;
  return d;
}

namespace {

// {t > 0 : t * dir in set} for a unit direction.
Interval radial_hits(const SetDescriptor& s, double dx, double dy) {
  Interval iv;
  switch (s.kind) {
    case SetDescriptor::Kind::Ball: {
      double dc = dx * s.cx + dy * s.cy;
      double disc = dc * dc - (s.cx * s.cx + s.cy * s.cy) + s.radius * s.radius;
      if (disc < 0.0) return iv;
      double root = std::sqrt(disc);
      double t0 = dc - root, t1 = dc + root;
      if (t1 <= 0.0) return iv;
      iv.lo = std::max(t0, 1e-300);
      iv.hi = t1;
      return iv;
    }
    case SetDescriptor::Kind::Annulus:
      iv.lo = std::max(s.r_inner, 1e-300);
      iv.hi = s.r_outer;
      return iv;
    case SetDescriptor::Kind::Rect: {
      double lo = 1e-300, hi = kInf;
      auto slab = [&](double d, double a, double b) {
        if (std::abs(d) < 1e-15) {
          if (a > 0.0 || b < 0.0) lo = kInf;  // empty
          return;
        }
        double u0 = a / d, u1 = b / d;
        if (u0 > u1) std::swap(u0, u1);
        lo = std::max(lo, u0);
        hi = std::min(hi, u1);
      };
      slab(dx, s.x0, s.x1);
      slab(dy, s.y0, s.y1);
      if (lo <= hi && hi > 0.0) {
        iv.lo = std::max(lo, 1e-300);
        iv.hi = hi;
      }
      return iv;
    }
    case SetDescriptor::Kind::CircleSlice:
      iv.lo = iv.hi = 1.0;
      return iv;
    case SetDescriptor::Kind::HyperbolaSlice: {
      double prod = std::abs(dx * dy);
      double t = prod > 0.0 ? 1.0 / std::sqrt(prod) : 1.0;  // axis dirs hit (+-1,0),(0,+-1)
      iv.lo = iv.hi = t;
      return iv;
    }
  }
  return iv;
}

// Deterministic parameter sampling of a descriptor.
void sample_points(const SetDescriptor& s, int grid, std::vector<std::pair<double, double>>& out) {
  const double pi = std::numbers::pi;
  switch (s.kind) {
    case SetDescriptor::Kind::Ball: {
      int na = std::max(8, static_cast<int>(std::sqrt(double(grid)) * 2));
      int nr = std::max(3, grid / na + 1);
      for (int ir = 0; ir < nr; ++ir) {
        double r = s.radius * ir / (nr - 1);
        for (int ia = 0; ia < na; ++ia) {
          double th = 2.0 * pi * ia / na;
          double x = s.cx + r * std::cos(th), y = s.cy + r * std::sin(th);
          if (x * x + y * y > 0.0) out.emplace_back(x, y);
        }
      }
      return;
    }
    case SetDescriptor::Kind::Annulus: {
      int na = std::max(8, static_cast<int>(std::sqrt(double(grid)) * 2));
      int nr = std::max(2, grid / na + 1);
      for (int ir = 0; ir < nr; ++ir) {
        double r = s.r_inner + (s.r_outer - s.r_inner) * ir / (nr - 1);
        if (r <= 0.0) continue;
        for (int ia = 0; ia < na; ++ia) {
          double th = 2.0 * pi * ia / na;
          out.emplace_back(r * std::cos(th), r * std::sin(th));
        }
      }
      return;
    }
    case SetDescriptor::Kind::Rect: {
      int nx = std::max(2, static_cast<int>(std::sqrt(double(grid))));
      for (int ix = 0; ix < nx; ++ix) {
        double x = s.x0 + (s.x1 - s.x0) * ix / (nx - 1);
        for (int iy = 0; iy < nx; ++iy) {
          double y = s.y0 + (s.y1 - s.y0) * iy / (nx - 1);
          if (x * x + y * y > 0.0) out.emplace_back(x, y);
        }
      }
      return;
    }
    case SetDescriptor::Kind::CircleSlice: {
      for (int ia = 0; ia < grid; ++ia) {
        double th = 2.0 * pi * ia / grid;
        out.emplace_back(std::cos(th), std::sin(th));
      }
      return;
    }
    case SetDescriptor::Kind::HyperbolaSlice: {
      // log-spaced |x| in [1/X, X], both branches and signs, plus axis points.
      int half = std::max(4, grid / 4);
      double logx = std::log(1e3);
      for (int i = 0; i < half; ++i) {
        double lx = -logx + 2.0 * logx * i / (half - 1);
        double x = std::exp(lx);
        out.emplace_back(x, 1.0 / x);
        out.emplace_back(x, -1.0 / x);
        out.emplace_back(-x, 1.0 / x);
        out.emplace_back(-x, -1.0 / x);
      }
      out.emplace_back(0.0, 1.0);
      out.emplace_back(0.0, -1.0);
      out.emplace_back(1.0, 0.0);
      out.emplace_back(-1.0, 0.0);
      return;
    }
  }
}

bool touches_axes(const SetDescriptor& s) {
  switch (s.kind) {
    case SetDescriptor::Kind::Ball:
      return std::abs(s.cx) <= s.radius || std::abs(s.cy) <= s.radius;
    case SetDescriptor::Kind::Annulus:
    case SetDescriptor::Kind::CircleSlice:
    case SetDescriptor::Kind::HyperbolaSlice:
      return true;
    case SetDescriptor::Kind::Rect:
      return (s.x0 <= 0.0 && s.x1 >= 0.0) || (s.y0 <= 0.0 && s.y1 >= 0.0);
  }
  return false;
}

bool touches_origin(const SetDescriptor& s) {
  switch (s.kind) {
    case SetDescriptor::Kind::Ball:
      return s.cx * s.cx + s.cy * s.cy <= s.radius * s.radius;
    case SetDescriptor::Kind::Annulus:
      return s.r_inner <= 0.0;
    case SetDescriptor::Kind::Rect:
      return s.x0 <= 0.0 && s.x1 >= 0.0 && s.y0 <= 0.0 && s.y1 >= 0.0;
    default:
      return false;
  }
}

bool is_round(const SetDescriptor& s) {
  return s.kind == SetDescriptor::Kind::Annulus || s.kind == SetDescriptor::Kind::CircleSlice;
}

void radial_range(const SetDescriptor& s, double& lo, double& hi) {
  if (s.kind == SetDescriptor::Kind::CircleSlice) {
    lo = hi = 1.0;
  } else {
    lo = s.r_inner;
    hi = s.r_outer;
  }
}

bool contains_hyperbola(const SetUnion& u) {
  return std::any_of(u.begin(), u.end(), [](const SetDescriptor& d) {
    return d.kind == SetDescriptor::Kind::HyperbolaSlice;
  });
}

// Range of |x y| over the sampled set, plus the analytic zero flag.
void abs_product_range(const SetUnion& u, int grid, double& lo, double& hi, bool& hits_zero) {
  lo = kInf;
  hi = 0.0;
  hits_zero = false;
  std::vector<std::pair<double, double>> pts;
  for (const auto& d : u) {
    sample_points(d, grid, pts);
    if (touches_axes(d)) hits_zero = true;
  }
  for (auto [x, y] : pts) {
    double p = std::abs(x * y);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
}

}  // namespace

TransporterEnvelope transporter(const SetUnion& u, const SetUnion& v, int grid) {
  TransporterEnvelope env;
  if (u.empty() || v.empty()) return env;

  double lmin = kInf, lmax = -kInf;
  bool found = false, below = false, above = false;
  auto merge = [&](double lo, double hi) {
    found = true;
    lmin = std::min(lmin, lo);
    lmax = std::max(lmax, hi);
  };

  // Exact path: every descriptor rotationally symmetric about the origin.
  bool all_round = std::all_of(u.begin(), u.end(), is_round) &&
                   std::all_of(v.begin(), v.end(), is_round);
  if (all_round) {
    double u_lo = kInf, u_hi = 0.0, v_lo = kInf, v_hi = 0.0;
    for (const auto& d : u) {
      double a, b;
      radial_range(d, a, b);
      u_lo = std::min(u_lo, a);
      u_hi = std::max(u_hi, b);
    }
    for (const auto& d : v) {
      double a, b;
      radial_range(d, a, b);
      v_lo = std::min(v_lo, a);
      v_hi = std::max(v_hi, b);
    }
    env.empty = false;
    env.lambda_min = v_lo / u_hi;
    env.lambda_max = u_lo > 0.0 ? v_hi / u_lo : kInf;
    env.unbounded_below = v_lo <= 0.0;
    env.unbounded_above = u_lo <= 0.0;
    return env;
  }

  // Semi-analytic path when the hyperbola slice is involved: lambda U meets
  // the hyperbola iff 1/lambda^2 lies in the |xy|-range of U (lambda^2 in the
  // |xy|-range of V when U is the hyperbola), with axis contact driving the
  // transporter to 0+ or infinity.
  bool hyp_u = contains_hyperbola(u), hyp_v = contains_hyperbola(v);
  if (hyp_u || hyp_v) {
    if (hyp_v) {
      double lo, hi;
      bool zero;
      abs_product_range(u, grid, lo, hi, zero);
      if (hi > 0.0) {
        merge(1.0 / std::sqrt(hi), lo > 0.0 ? 1.0 / std::sqrt(lo) : kInf);
        above = above || zero;
      }
    }
    if (hyp_u) {
      double lo, hi;
      bool zero;
      abs_product_range(v, grid, lo, hi, zero);
      if (hi > 0.0) {
        merge(std::sqrt(lo), std::sqrt(hi));
        below = below || zero;
      }
    }
    if (!found) return env;
    env.empty = false;
    env.lambda_min = lmin;
    env.lambda_max = lmax;
    env.unbounded_below = below || lmin <= 1.0 / kCompactnessThreshold;
    env.unbounded_above = above || lmax >= kCompactnessThreshold;
    return env;
  }

  // Generic grid path: sample U, intersect rays with V.
  std::vector<std::pair<double, double>> pts;
  for (const auto& d : u) sample_points(d, grid, pts);
  for (auto [x, y] : pts) {
    double norm = std::hypot(x, y);
    if (norm <= 0.0) continue;
    double dx = x / norm, dy = y / norm;
    for (const auto& d : v) {
      Interval iv = radial_hits(d, dx, dy);
      if (!iv.empty()) merge(iv.lo / norm, iv.hi / norm);
    }
  }
  if (!found) return env;
  env.empty = false;
  env.lambda_min = lmin;
  env.lambda_max = lmax;
  bool u_origin = std::any_of(u.begin(), u.end(), touches_origin);
  bool v_origin = std::any_of(v.begin(), v.end(), touches_origin);
  env.unbounded_above = u_origin || lmax >= kCompactnessThreshold;
  env.unbounded_below = v_origin || lmin <= 1.0 / kCompactnessThreshold;
  return env;
}

SmallnessReport is_small(DemoSliceKind slice, const std::vector<DemoPoint>& probes, int grid) {
  if (probes.empty()) throw Error("is_small: need at least one probe");
  SetUnion slice_set{slice == DemoSliceKind::Circle ? SetDescriptor::circle_slice()
                                                    : SetDescriptor::hyperbola_slice()};
  SmallnessReport report;
  for (const auto& q : probes) {
    bool thin = false;
    SmallnessProbe last{q, 0.0, {}, false};
    double r = 0.25 * q.norm();
    for (int step = 0; step < 4 && !thin; ++step, r *= 0.5) {
      SetUnion nb{SetDescriptor::ball(q.x, q.y, r)};
      TransporterEnvelope env = transporter(nb, slice_set, grid);
      bool bounded = !env.empty && !env.unbounded_below && !env.unbounded_above &&
                     env.lambda_min > 1.0 / kCompactnessThreshold &&
                     env.lambda_max < kCompactnessThreshold;
      last = {q, r, env, bounded};
      if (env.empty || bounded) thin = true;  // empty transporter is trivially compact
    }
    report.probes.push_back(last);
    if (!thin) {
      report.small = false;
      report.witnesses.push_back(q);
    }
  }
  return report;
}

}  // namespace bmslice::demo
