#ifndef FRACSTEP_MESH_HPP
#define FRACSTEP_MESH_HPP

#include <cstddef>
#include <vector>

namespace fracstep {

/// Geometrically graded time grid h_n = r^(n-1) h_1, t_n = t_{n-1} + h_n.
class GradedMesh {
 public:
  GradedMesh(double h1, double r, std::size_t steps);

  double first_step() const { return h1_; }
  double ratio() const { return r_; }
  bool uniform() const { return r_ == 1.0; }
  std::size_t steps() const { return steps_.size(); }
  /// Number of grid points t_0..t_N.
  std::size_t grid_points() const { return points_.size(); }

  /// h_n, n = 1..N.
  double step(std::size_t n) const { return steps_.at(n - 1); }
  /// t_n, n = 0..N.
  double point(std::size_t n) const { return points_.at(n); }
  double final_time() const { return points_.back(); }

 private:
  double h1_;
  double r_;
  std::vector<double> steps_;
  std::vector<double> points_;
};

/// Mesh whose final point t_N is the closest to T among graded meshes with
/// first step h1 and ratio r (uniform when r == 1).
GradedMesh build_mesh(double h1, double r, double T);

/// N equal steps covering [0, T].
GradedMesh uniform_mesh(std::size_t N, double T);

}  // namespace fracstep

#endif  // FRACSTEP_MESH_HPP
