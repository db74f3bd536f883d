#pragma once

#include <string>
#include <vector>

#include "sinodiff/errors.hpp"

namespace sinodiff::ct {

/// Fan-beam acquisition: point source and flat detector rotating about the
/// origin. The detector is centered on, and perpendicular to, the
/// source-to-center axis, at detector_distance beyond the rotation center.
struct FanBeamGeometry {
    double source_distance = 40.0;
    double detector_distance = 40.0;
    int detector_count = 512;
    double detector_total_width = 41.3;
    std::vector<double> view_angles;  // radians, evenly spaced over [0, 2pi)

    static FanBeamGeometry make(int num_views, int detector_count,
                                double source_distance = 40.0,
                                double detector_distance = 40.0,
                                double detector_total_width = 41.3);

    int num_views() const { return static_cast<int>(view_angles.size()); }
    void validate() const;

    /// Lateral offset of detector element d's center from the central ray.
    double detector_offset(int d) const {
        return ((d + 0.5) / detector_count - 0.5) * detector_total_width;
    }

    /// Radius of the disk seen by every fan.
    double fov_radius() const;

    std::string to_json() const;
    static FanBeamGeometry from_json(const std::string& json_text);
};

/// Square-pixel attenuation grid centered on the origin. Row r, column c
/// covers x in [x0 + c*pitch, x0 + (c+1)*pitch], y in [y0 + r*pitch, ...],
/// with x0 = -half_extent and y0 = -height*pitch/2 (row 0 at the bottom).
struct Image {
    int width = 0;
    int height = 0;
    double half_extent = 0.0;
    std::vector<double> pixels;  // row-major, width * height

    Image() = default;
    Image(int w, int h, double half_ext)
        : width(w), height(h), half_extent(half_ext),
          pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0.0) {}

    double pitch() const { return 2.0 * half_extent / width; }
    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
    void validate() const;
};

/// Views x detectors grid of line integrals, view-major.
struct Sinogram {
    int num_views = 0;
    int detector_count = 0;
    std::vector<double> values;

    Sinogram() = default;
    Sinogram(int views, int dets)
        : num_views(views), detector_count(dets),
          values(static_cast<std::size_t>(views) * static_cast<std::size_t>(dets), 0.0) {}

    double& at(int v, int d) { return values[static_cast<std::size_t>(v) * detector_count + d]; }
    double at(int v, int d) const { return values[static_cast<std::size_t>(v) * detector_count + d]; }
    void validate() const;
};

enum class FilterKind { RamLak, HannWindowedRamp };

/// Source position for a view angle.
void source_position(const FanBeamGeometry& g, int view, double& x, double& y);
/// Center of detector element d for a view angle.
void detector_position(const FanBeamGeometry& g, int view, int d, double& x, double& y);

/// Exact line integral of the piecewise-constant image along the segment
/// from (sx, sy) to (dx, dy). Zero when the segment misses the grid.
double siddon_trace(const Image& image, double sx, double sy, double dx, double dy);

Sinogram forward_project(const Image& image, const FanBeamGeometry& geom);

/// Exact adjoint of forward_project (same Siddon intersection weights).
Image adjoint_backproject(const Sinogram& sino, const FanBeamGeometry& geom,
                          int width, int height, double half_extent);

/// Discrete Ram-Lak kernel value at offset n for element spacing tau.
double ramlak_kernel(int n, double tau);

/// Per-row convolution with the ramp kernel. The Hann variant multiplies the
/// kernel's frequency response by a Hann window.
Sinogram ramp_filter(const Sinogram& sino, FilterKind kind, double spacing = 1.0);

/// Fan-beam filtered backprojection: cosine pre-weighting, ramp filtering,
/// distance-weighted backprojection scaled by the view angle increment.
Image fbp_reconstruct(const Sinogram& sino, const FanBeamGeometry& geom,
                      int width, int height, double half_extent,
                      FilterKind kind = FilterKind::RamLak);

}  // namespace sinodiff::ct
