#pragma once

#include <complex>
#include <vector>

namespace nhg {

using Complex = std::complex<double>;

/// Straight segment or circular arc in the t-plane, parametrized by s in [0, 1].
struct PathPiece {
  enum class Kind { kLine, kArc };
  Kind kind = Kind::kLine;
  Complex from;
  Complex to;
  Complex center;
  double radius = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;

  static PathPiece line(Complex a, Complex b);
  /// Arc from angle theta0 to theta1 (counterclockwise when theta1 > theta0).
  static PathPiece arc(Complex center, double radius, double theta0, double theta1);

  Complex point(double s) const;
  /// dt/ds
  Complex velocity(double s) const;
  Complex start() const { return point(0.0); }
  Complex end() const { return point(1.0); }
  double length() const;
  double distance_to(Complex z) const;
  PathPiece reversed() const;
};

class Path {
 public:
  Path() = default;
  explicit Path(std::vector<PathPiece> pieces) : pieces_(std::move(pieces)) {}

  const std::vector<PathPiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  Complex start() const { return pieces_.front().start(); }
  Complex end() const { return pieces_.back().end(); }
  double distance_to(Complex z) const;
  Path reversed() const;
  Path then(const Path& next) const;

 private:
  std::vector<PathPiece> pieces_;
};

/// Waypoints joined by straight segments.
class Polyline {
 public:
  /// Throws kInvalidArgument when consecutive waypoints coincide or a
  /// closed polyline does not end where it starts.
  Polyline(std::vector<Complex> waypoints, bool closed = false);

  const std::vector<Complex>& waypoints() const { return waypoints_; }
  bool closed() const { return closed_; }
  Path to_path() const;

 private:
  std::vector<Complex> waypoints_;
  bool closed_ = false;
};

}  // namespace nhg

namespace nhg {

/// Polyline starting at `center` whose further waypoints are drawn
/// uniformly from the disc of the given radius (seeded).
Polyline random_route(Complex center, double radius, std::size_t waypoints, unsigned long long seed);

/// Half the distance from `t0` to the nearest point of `points`, or 1 when
/// there are none.
double safe_radius(Complex t0, const std::vector<Complex>& points);

}  // namespace nhg
