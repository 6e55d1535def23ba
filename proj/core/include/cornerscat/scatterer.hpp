#pragma once

// Cell-centred rasterization of the scatterer D inside its bounding box, plus
// fields sampled on the box cells.

#include <string>
#include <vector>

#include "cornerscat/elastic.hpp"

namespace cornerscat {

enum class ShapeKind { Rectangle, LShape, Disk, Polygon };

std::string to_string(ShapeKind k);

struct ShapeDescriptor {
  ShapeKind kind = ShapeKind::Rectangle;
  double width = 0;       ///< rectangle / L-shape / bounding box
  double height = 0;
  double cut_width = 0;   ///< L-shape: the removed upper-right block
  double cut_height = 0;
  double radius = 0;      ///< disk
  std::vector<Vec2> vertices;  ///< polygon (counter-clockwise)

  bool contains(const Vec2& p) const;  ///< in shape coordinates (box centred at the origin)
  std::string str() const;
};

class ScattererGrid {
 public:
  /// Rectangle width x height centred at the origin, nx cells across; ny follows from h.
  static ScattererGrid rectangle(double width, double height, int nx, double rho0);
  /// Rectangle with its upper-right cut_width x cut_height block removed.
  static ScattererGrid l_shape(double width, double height, double cut_width, double cut_height, int nx, double rho0);
  /// Disk of the given radius on an n x n box of side 2 radius.
  static ScattererGrid disk(double radius, int n, double rho0);
  /// Simple polygon; the box is its bounding box, nx cells across.
  static ScattererGrid polygon(std::vector<Vec2> vertices, int nx, double rho0);

  const ShapeDescriptor& shape() const { return shape_; }
  double rho0() const { return rho0_; }
  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  Vec2 center(int i, int j) const { return origin_ + h_ * Vec2(i + 0.5, j + 0.5); }
  Vec2 center(std::size_t idx) const { return center(static_cast<int>(idx % nx_), static_cast<int>(idx / nx_)); }
  bool inside(std::size_t idx) const { return mask_[idx] != 0; }
  const std::vector<char>& mask() const { return mask_; }
  /// Box indices of the cells in D, in increasing order.
  const std::vector<std::size_t>& cells() const { return cells_; }
  double area() const { return static_cast<double>(cells_.size()) * h_ * h_; }

  /// Same shape and contrast at half the cell size.
  ScattererGrid refined() const;
  /// Same geometry with another contrast (rho0 != 1 still enforced).
  ScattererGrid with_rho0(double rho0) const;

 private:
  ScattererGrid(ShapeDescriptor shape, double width, double height, int nx, double rho0);

  ShapeDescriptor shape_;
  double rho0_ = 2.0;
  double h_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  Vec2 origin_ = Vec2::Zero();
  std::vector<char> mask_;
  std::vector<std::size_t> cells_;
};

/// Complex 2-vector per box cell (zero outside D where produced by the solver).
struct WaveField {
  std::vector<CVec2> values;

  static WaveField zeros(const ScattererGrid& grid) { return {std::vector<CVec2>(grid.size(), CVec2::Zero())}; }
  double norm_on(const ScattererGrid& grid) const;  ///< discrete L2 norm over D (weights h^2)
};

WaveField sample_plane_wave(const ScattererGrid& grid, const PlaneWave& wave);

}  // namespace cornerscat
