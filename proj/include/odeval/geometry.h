/* Copyright 2026 The odeval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Geometric kernels over yaw-only oriented boxes.

#ifndef ODEVAL_GEOMETRY_H_
#define ODEVAL_GEOMETRY_H_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "odeval/types.h"

namespace odeval {

enum class IouKind { kBev, k3d };

template <typename Scalar>
struct ConvexPolygon2 {
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
  // Counter-clockwise. Fewer than three vertices means an empty polygon.
  std::vector<Vector2> vertices;

  bool empty() const { return vertices.size() < 3; }

  // Shoelace formula; positive for counter-clockwise order.
  Scalar Area() const {
    if (empty()) return Scalar(0);
    Scalar twice = 0;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vector2& p = vertices[i];
      const Vector2& q = vertices[(i + 1) % n];
      twice += p.x() * q.y() - q.x() * p.y();
    }
    return twice / 2;
  }
};

template <typename Scalar>
ConvexPolygon2<Scalar> BevFootprint(const OrientedBox3<Scalar>& box) {
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
  const Scalar c = std::cos(box.yaw);
  const Scalar s = std::sin(box.yaw);
  const Scalar hl = box.dims.x() / 2;
  const Scalar hw = box.dims.y() / 2;
  Eigen::Matrix<Scalar, 2, 2> rot;
  rot << c, -s, s, c;
  const Vector2 center = box.bev_center();
  ConvexPolygon2<Scalar> poly;
  poly.vertices = {
      center + rot * Vector2(hl, -hw),
      center + rot * Vector2(hl, hw),
      center + rot * Vector2(-hl, hw),
      center + rot * Vector2(-hl, -hw),
  };
  return poly;
}

// Sutherland-Hodgman clipping of `subject` against the convex `clip`.
template <typename Scalar>
ConvexPolygon2<Scalar> ClipConvex(const ConvexPolygon2<Scalar>& subject,
                                  const ConvexPolygon2<Scalar>& clip) {
  using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
  std::vector<Vector2> output = subject.vertices;
  const std::size_t m = clip.vertices.size();
  for (std::size_t e = 0; e < m && output.size() >= 3; ++e) {
    const Vector2& a = clip.vertices[e];
    const Vector2 edge = clip.vertices[(e + 1) % m] - a;
    auto side = [&](const Vector2& p) {
      const Vector2 d = p - a;
      return edge.x() * d.y() - edge.y() * d.x();
    };
    std::vector<Vector2> input;
    input.swap(output);
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vector2& cur = input[i];
      const Vector2& prev = input[(i + n - 1) % n];
      const Scalar s_cur = side(cur);
      const Scalar s_prev = side(prev);
      if (s_cur >= 0) {
        if (s_prev < 0) {
          const Scalar t = s_prev / (s_prev - s_cur);
          output.push_back(prev + t * (cur - prev));
        }
        output.push_back(cur);
      } else if (s_prev >= 0) {
        const Scalar t = s_prev / (s_prev - s_cur);
        output.push_back(prev + t * (cur - prev));
      }
    }
  }
  ConvexPolygon2<Scalar> result;
  if (output.size() >= 3) result.vertices = std::move(output);
  return result;
}

template <typename Scalar>
Scalar BevIntersectionArea(const OrientedBox3<Scalar>& a,
                           const OrientedBox3<Scalar>& b) {
  // Circumscribed circles disjoint => footprints disjoint.
  const Scalar ra = a.dims.template head<2>().norm() / 2;
  const Scalar rb = b.dims.template head<2>().norm() / 2;
  if ((a.bev_center() - b.bev_center()).norm() >= ra + rb) return Scalar(0);

  const Scalar area = ClipConvex(BevFootprint(a), BevFootprint(b)).Area();
  // Clipping along a shared edge leaves a sliver made of rounding error.
  const Scalar floor = Scalar(1e-12) * std::min(a.dims.x() * a.dims.y(),
                                                b.dims.x() * b.dims.y());
  return area <= floor ? Scalar(0) : area;
}

template <typename Scalar>
Scalar BevIou(const OrientedBox3<Scalar>& a, const OrientedBox3<Scalar>& b) {
  if (a.center.template head<2>() == b.center.template head<2>() &&
      a.dims.template head<2>() == b.dims.template head<2>() &&
      a.yaw == b.yaw) {
    return Scalar(1);
  }
  const Scalar inter = BevIntersectionArea(a, b);
  if (inter == 0) return Scalar(0);
  const Scalar uni =
      a.dims.x() * a.dims.y() + b.dims.x() * b.dims.y() - inter;
  return std::clamp(inter / uni, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar Iou3d(const OrientedBox3<Scalar>& a, const OrientedBox3<Scalar>& b) {
  if (a == b) return Scalar(1);
  const Scalar dz =
      std::min(a.z_max(), b.z_max()) - std::max(a.z_min(), b.z_min());
  if (dz <= 0) return Scalar(0);
  const Scalar inter = BevIntersectionArea(a, b) * dz;
  if (inter == 0) return Scalar(0);
  const Scalar uni = a.volume() + b.volume() - inter;
  return std::clamp(inter / uni, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar Iou(const OrientedBox3<Scalar>& a, const OrientedBox3<Scalar>& b,
           IouKind kind) {
  return kind == IouKind::kBev ? BevIou(a, b) : Iou3d(a, b);
}

template <typename Scalar>
Scalar CenterDistanceBev(const OrientedBox3<Scalar>& a,
                         const OrientedBox3<Scalar>& b) {
  return (a.bev_center() - b.bev_center()).norm();
}

// Smallest angle between two headings, in [0, pi].
template <typename Scalar>
Scalar YawDelta(Scalar a, Scalar b) {
  return std::abs(NormalizeYaw(a - b));
}

// IoU once the boxes share center and heading; only the extents matter.
template <typename Scalar>
Scalar AlignedIou(const OrientedBox3<Scalar>& a,
                  const OrientedBox3<Scalar>& b) {
  const Scalar inter = a.dims.cwiseMin(b.dims).prod();
  const Scalar outer = a.dims.cwiseMax(b.dims).prod();
  // For nested extents the union is exactly the larger box.
  if (inter == a.volume() || inter == b.volume()) return inter / outer;
  return inter / (a.volume() + b.volume() - inter);
}

}  // namespace odeval

#endif  // ODEVAL_GEOMETRY_H_
