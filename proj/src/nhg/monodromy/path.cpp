#include "nhg/monodromy/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "nhg/error.hpp"

namespace nhg {

PathPiece PathPiece::line(Complex a, Complex b) {
  PathPiece p;
  p.kind = Kind::kLine;
  p.from = a;
  p.to = b;
  return p;
}

PathPiece PathPiece::arc(Complex center, double radius, double theta0, double theta1) {
  PathPiece p;
  p.kind = Kind::kArc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  p.from = center + std::polar(radius, theta0);
  p.to = center + std::polar(radius, theta1);
  return p;
}

Complex PathPiece::point(double s) const {
  if (kind == Kind::kLine) {
    if (s == 1.0) return to;
    return from + s * (to - from);
  }
  return center + std::polar(radius, theta0 + s * (theta1 - theta0));
}

Complex PathPiece::velocity(double s) const {
  if (kind == Kind::kLine) return to - from;
  const double theta = theta0 + s * (theta1 - theta0);
  return Complex(0.0, 1.0) * std::polar(radius, theta) * (theta1 - theta0);
}

double PathPiece::length() const {
  if (kind == Kind::kLine) return std::abs(to - from);
  return radius * std::abs(theta1 - theta0);
}

double PathPiece::distance_to(Complex z) const {
  if (kind == Kind::kLine) {
    const Complex d = to - from;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(z - from);
    const double s = std::clamp(((z - from) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(z - (from + s * d));
  }
  const Complex rel = z - center;
  const double r = std::abs(rel);
  double best = std::min(std::abs(z - from), std::abs(z - to));
  const double lo = std::min(theta0, theta1);
  const double hi = std::max(theta0, theta1);
  if (r > 0.0) {
    if (hi - lo >= 2.0 * std::numbers::pi) return std::abs(r - radius);
    double phi = std::arg(rel);
    while (phi < lo) phi += 2.0 * std::numbers::pi;
    while (phi > lo + 2.0 * std::numbers::pi) phi -= 2.0 * std::numbers::pi;
    if (phi <= hi) best = std::min(best, std::abs(r - radius));
  } else {
    best = radius;
  }
  return best;
}

PathPiece PathPiece::reversed() const {
  if (kind == Kind::kLine) return line(to, from);
  PathPiece p = arc(center, radius, theta1, theta0);
  p.from = to;
  p.to = from;
  return p;
}

double Path::distance_to(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) best = std::min(best, p.distance_to(z));
  return best;
}

Path Path::reversed() const {
  std::vector<PathPiece> out;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) out.push_back(it->reversed());
  return Path(std::move(out));
}

Path Path::then(const Path& next) const {
  std::vector<PathPiece> out = pieces_;
  out.insert(out.end(), next.pieces_.begin(), next.pieces_.end());
  return Path(std::move(out));
}

Polyline::Polyline(std::vector<Complex> waypoints, bool closed) : waypoints_(std::move(waypoints)), closed_(closed) {
  if (waypoints_.empty()) throw Error(ErrorCode::kInvalidArgument, "polyline needs at least one waypoint");
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    if (waypoints_[i] == waypoints_[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "consecutive polyline waypoints coincide");
    }
  }
  if (closed_ && waypoints_.front() != waypoints_.back()) {
    throw Error(ErrorCode::kInvalidArgument, "closed polyline must end at its first waypoint");
  }
}

Path Polyline::to_path() const {
  std::vector<PathPiece> pieces;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) pieces.push_back(PathPiece::line(waypoints_[i - 1], waypoints_[i]));
  return Path(std::move(pieces));
}

}  // namespace nhg

namespace nhg {

Polyline random_route(Complex center, double radius, std::size_t waypoints, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> pts{center};
  while (pts.size() < waypoints) {
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const Complex p = center + std::polar(r, theta);
    if (std::abs(p - pts.back()) > 1e-3 * radius) pts.push_back(p);
  }
  return Polyline(std::move(pts));
}

double safe_radius(Complex t0, const std::vector<Complex>& points) {
  if (points.empty()) return 1.0;
  double d = std::numeric_limits<double>::infinity();
  for (const Complex p : points) d = std::min(d, std::abs(p - t0));
  return 0.5 * d;
}

}  // namespace nhg
