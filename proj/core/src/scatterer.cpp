#include "cornerscat/scatterer.hpp"

#include <cmath>
#include <sstream>

#include "cornerscat/errors.hpp"

namespace cornerscat {

std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Rectangle: return "rectangle";
    case ShapeKind::LShape: return "l-shape";
    case ShapeKind::Disk: return "disk";
    case ShapeKind::Polygon: return "polygon";
  }
  return "unknown";
}

bool ShapeDescriptor::contains(const Vec2& p) const {
  switch (kind) {
    case ShapeKind::Rectangle:
      return std::abs(p.x()) < width / 2 && std::abs(p.y()) < height / 2;
    case ShapeKind::LShape: {
      if (!(std::abs(p.x()) < width / 2 && std::abs(p.y()) < height / 2)) return false;
      return !(p.x() > width / 2 - cut_width && p.y() > height / 2 - cut_height);
    }
    case ShapeKind::Disk:
      return p.squaredNorm() < radius * radius;
    case ShapeKind::Polygon: {
      // even-odd rule
      bool in = false;
      const std::size_t n = vertices.size();
      for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = vertices[i];
        const Vec2& b = vertices[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
          const double xc = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
          if (p.x() < xc) in = !in;
        }
      }
      return in;
    }
  }
  return false;
}

std::string ShapeDescriptor::str() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case ShapeKind::Rectangle: os << ' ' << width << 'x' << height; break;
    case ShapeKind::LShape: os << ' ' << width << 'x' << height << " cut " << cut_width << 'x' << cut_height; break;
    case ShapeKind::Disk: os << " r=" << radius; break;
    case ShapeKind::Polygon: os << ' ' << vertices.size() << " vertices"; break;
  }
  return os.str();
}

ScattererGrid::ScattererGrid(ShapeDescriptor shape, double width, double height, int nx, double rho0)
    : shape_(std::move(shape)), rho0_(rho0) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw ConfigError("rho0 must be positive");
  if (rho0 == 1.0) throw ConfigError("rho0 must be a constant different from one");
  if (nx < 2 || !(width > 0.0) || !(height > 0.0)) throw ConfigError("scatterer grid needs nx >= 2 and positive extent");
  nx_ = nx;
  h_ = width / nx;
  ny_ = std::max(2, static_cast<int>(std::lround(height / h_)));
  origin_ = Vec2(-width / 2, -ny_ * h_ / 2);
  mask_.assign(size(), 0);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      if (shape_.contains(center(i, j))) {
        mask_[index(i, j)] = 1;
        cells_.push_back(index(i, j));
      }
    }
  }
  if (cells_.empty()) throw ConfigError("scatterer covers no grid cell");
}

ScattererGrid ScattererGrid::rectangle(double width, double height, int nx, double rho0) {
  ShapeDescriptor s;
  s.kind = ShapeKind::Rectangle;
  s.width = width;
  s.height = height;
  return ScattererGrid(s, width, height, nx, rho0);
}

ScattererGrid ScattererGrid::l_shape(double width, double height, double cut_width, double cut_height, int nx,
                                     double rho0) {
  if (!(cut_width > 0 && cut_width < width && cut_height > 0 && cut_height < height)) {
    throw ConfigError("l-shape cut must be strictly inside the rectangle");
  }
  ShapeDescriptor s;
  s.kind = ShapeKind::LShape;
  s.width = width;
  s.height = height;
  s.cut_width = cut_width;
  s.cut_height = cut_height;
  return ScattererGrid(s, width, height, nx, rho0);
}

ScattererGrid ScattererGrid::disk(double radius, int n, double rho0) {
  if (!(radius > 0)) throw ConfigError("disk radius must be positive");
  ShapeDescriptor s;
  s.kind = ShapeKind::Disk;
  s.radius = radius;
  s.width = s.height = 2 * radius;
  return ScattererGrid(s, 2 * radius, 2 * radius, n, rho0);
}

ScattererGrid ScattererGrid::polygon(std::vector<Vec2> vertices, int nx, double rho0) {
  if (vertices.size() < 3) throw ConfigError("polygon needs at least three vertices");
  Vec2 lo = vertices.front();
  Vec2 hi = vertices.front();
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec2 mid = (lo + hi) / 2;
  ShapeDescriptor s;
  s.kind = ShapeKind::Polygon;
  for (auto& v : vertices) v -= mid;
  s.vertices = std::move(vertices);
  s.width = hi.x() - lo.x();
  s.height = hi.y() - lo.y();
  return ScattererGrid(s, s.width, s.height, nx, rho0);
}

ScattererGrid ScattererGrid::refined() const {
  return ScattererGrid(shape_, nx_ * h_, ny_ * h_, 2 * nx_, rho0_);
}

ScattererGrid ScattererGrid::with_rho0(double rho0) const {
  return ScattererGrid(shape_, nx_ * h_, ny_ * h_, nx_, rho0);
}

double WaveField::norm_on(const ScattererGrid& grid) const {
  double s = 0;
  for (auto idx : grid.cells()) s += values[idx].squaredNorm();
  return std::sqrt(s) * grid.h();
}

WaveField sample_plane_wave(const ScattererGrid& grid, const PlaneWave& wave) {
  WaveField f = WaveField::zeros(grid);
  for (auto idx : grid.cells()) f.values[idx] = plane_wave_eval(wave, grid.center(idx)).value;
  return f;
}

}  // namespace cornerscat
