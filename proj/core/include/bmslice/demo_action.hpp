#pragma once

#include <vector>

#include "bmslice/errors.hpp"

namespace bmslice::demo {

/// Point of the punctured plane R^2 \ {0}.
struct DemoPoint {
  double x = 0.0;
  double y = 0.0;

  DemoPoint(double x, double y);
  double norm() const;
};

/// Element of the multiplicative group of positive reals.
struct DemoGroupElem {
  double lambda = 1.0;

  explicit DemoGroupElem(double lambda);
};

enum class DemoSliceKind {
  Circle,     // {p : ||p|| = 1}
  Hyperbola,  // {(x, +-1/x) : x != 0} united with {(0,+-1), (+-1,0)}
};

/// Scalar action lambda * (x, y) = (lambda x, lambda y).
DemoPoint act(const DemoGroupElem& g, const DemoPoint& p);

/// The unique lambda > 0 with p / lambda on the slice. Circle: ||p||.
/// Hyperbola: sqrt(|x y|) off the axes, |x| or |y| on them. Total on
/// R^2 \ {0}; discontinuous across the axes for the hyperbola slice.
double slicing_map(DemoSliceKind slice, const DemoPoint& p);

/// Set descriptors the transporter search understands.
struct SetDescriptor {
  enum class Kind { Ball, Annulus, Rect, CircleSlice, HyperbolaSlice };

  Kind kind = Kind::Ball;
  double cx = 0.0, cy = 0.0, radius = 0.0;      // Ball
  double r_inner = 0.0, r_outer = 0.0;          // Annulus (origin-centered)
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // Rect

  static SetDescriptor ball(double cx, double cy, double r);
  static SetDescriptor annulus(double r_inner, double r_outer);
  static SetDescriptor rect(double x0, double x1, double y0, double y1);
  static SetDescriptor circle_slice();
  static SetDescriptor hyperbola_slice();
};

using SetUnion = std::vector<SetDescriptor>;

/// Interval estimate of the transporter <U,V> = {lambda : lambda U meets V},
/// with analytic unboundedness flags (threshold 1e6 on either end).
struct TransporterEnvelope {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool empty = true;
  bool unbounded_below = false;  // inf of the transporter is 0+
  bool unbounded_above = false;  // sup of the transporter is infinite
};

TransporterEnvelope transporter(const SetUnion& u, const SetUnion& v, int grid = 512);

struct SmallnessProbe {
  DemoPoint probe;
  double neighborhood_radius;
  TransporterEnvelope envelope;  // <ball(probe, radius), S>
  bool thin;
};

struct SmallnessReport {
  bool small = true;
  std::vector<SmallnessProbe> probes;
  std::vector<DemoPoint> witnesses;  // probes with no thin neighborhood
};

/// Tests whether the slice is a small subset near the given probes:
/// shrinking ball neighborhoods must have transporters to the slice with
/// compact closure in the positive reals (bounded away from 0 and infinity).
SmallnessReport is_small(DemoSliceKind slice, const std::vector<DemoPoint>& probes,
                         int grid = 512);

}  // namespace bmslice::demo
