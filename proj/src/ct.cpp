#include "sinodiff/ct.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "json.hpp"

namespace sinodiff::ct {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kAlphaTol = 1e-12;  // dedup tolerance in the ray parameter
}  // namespace

FanBeamGeometry FanBeamGeometry::make(int num_views, int detector_count,
                                      double source_distance, double detector_distance,
                                      double detector_total_width) {
    FanBeamGeometry g;
    g.source_distance = source_distance;
    g.detector_distance = detector_distance;
    g.detector_count = detector_count;
    g.detector_total_width = detector_total_width;
    if (num_views <= 0) throw InvalidArgument("num_views must be positive");
    g.view_angles.resize(static_cast<std::size_t>(num_views));
    for (int v = 0; v < num_views; ++v) g.view_angles[static_cast<std::size_t>(v)] = 2.0 * kPi * v / num_views;
    g.validate();
    return g;
}

void FanBeamGeometry::validate() const {
    if (!(source_distance > 0.0) || !std::isfinite(source_distance))
        throw InvalidArgument("source_distance must be positive and finite");
    if (!(detector_distance > 0.0) || !std::isfinite(detector_distance))
        throw InvalidArgument("detector_distance must be positive and finite");
    if (detector_count < 2) throw InvalidArgument("detector_count must be >= 2");
    if (!(detector_total_width > 0.0) || !std::isfinite(detector_total_width))
        throw InvalidArgument("detector_total_width must be positive and finite");
    if (view_angles.empty()) throw InvalidArgument("view_angles must be nonempty");
    for (double a : view_angles)
        if (!std::isfinite(a)) throw InvalidArgument("view angle must be finite");
    if (view_angles.size() > 1) {
        double step = view_angles[1] - view_angles[0];
        if (!(step > 0.0)) throw InvalidArgument("view_angles must be strictly increasing");
        for (std::size_t v = 1; v < view_angles.size(); ++v) {
            double d = view_angles[v] - view_angles[v - 1];
            if (!(d > 0.0) || std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(step)))
                throw InvalidArgument("view_angles must be evenly spaced and strictly increasing");
        }
    }
}

double FanBeamGeometry::fov_radius() const {
    double dsd = source_distance + detector_distance;
    double gamma_max = std::atan((detector_total_width / 2.0) / dsd);
    return source_distance * std::sin(gamma_max);
}

std::string FanBeamGeometry::to_json() const {
    nlohmann::json j;
    j["source_distance"] = source_distance;
    j["detector_distance"] = detector_distance;
    j["detector_count"] = detector_count;
    j["detector_total_width"] = detector_total_width;
    j["num_views"] = num_views();
    j["view_angles"] = view_angles;
    return j.dump();
}

FanBeamGeometry FanBeamGeometry::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) throw InvalidArgument("malformed geometry JSON");
    FanBeamGeometry g;
    g.source_distance = j.at("source_distance").get<double>();
    g.detector_distance = j.at("detector_distance").get<double>();
    g.detector_count = j.at("detector_count").get<int>();
    g.detector_total_width = j.at("detector_total_width").get<double>();
    g.view_angles = j.at("view_angles").get<std::vector<double>>();
    if (j.contains("num_views") && j.at("num_views").get<int>() != g.num_views())
        throw InvalidArgument("geometry JSON num_views does not match view_angles length");
    g.validate();
    return g;
}

void Image::validate() const {
    if (width <= 0 || height <= 0) throw InvalidArgument("image dims must be positive");
    if (!(half_extent > 0.0)) throw InvalidArgument("image half_extent must be positive");
    if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw InvalidArgument("image pixel count does not match dims");
    for (double p : pixels)
        if (!std::isfinite(p)) throw InvalidArgument("image pixels must be finite");
}

void Sinogram::validate() const {
    if (num_views <= 0 || detector_count <= 0) throw InvalidArgument("sinogram dims must be positive");
    if (values.size() != static_cast<std::size_t>(num_views) * static_cast<std::size_t>(detector_count))
        throw InvalidArgument("sinogram value count does not match dims");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument("sinogram values must be finite");
}

void source_position(const FanBeamGeometry& g, int view, double& x, double& y) {
    double a = g.view_angles[static_cast<std::size_t>(view)];
    x = g.source_distance * std::cos(a);
    y = g.source_distance * std::sin(a);
}

void detector_position(const FanBeamGeometry& g, int view, int d, double& x, double& y) {
    double a = g.view_angles[static_cast<std::size_t>(view)];
    double ca = std::cos(a), sa = std::sin(a);
    double s = g.detector_offset(d);
    // detector center at -detector_distance along the source axis, lateral
    // unit vector (-sin a, cos a)
    x = -g.detector_distance * ca - s * sa;
    y = -g.detector_distance * sa + s * ca;
}

namespace {

// Walks pixel crossings of the segment p0 -> p1 and calls
// visit(row, col, length) for every traversed pixel.
template <typename Visit>
void siddon_walk(const Image& img, double sx, double sy, double dx_, double dy_, Visit&& visit) {
    const double px = img.pitch();
    const double x0 = -img.half_extent;
    const double y0 = -0.5 * img.height * px;
    const double x1 = x0 + img.width * px;
    const double y1 = y0 + img.height * px;

    const double rx = dx_ - sx;
    const double ry = dy_ - sy;
    const double seg_len = std::hypot(rx, ry);

    double a_min = 0.0, a_max = 1.0;
    // slab clipping per axis
    if (std::abs(rx) > 0.0) {
        double t1 = (x0 - sx) / rx, t2 = (x1 - sx) / rx;
        if (t1 > t2) std::swap(t1, t2);
        a_min = std::max(a_min, t1);
        a_max = std::min(a_max, t2);
    } else if (sx < x0 || sx > x1) {
        return;
    }
    if (std::abs(ry) > 0.0) {
        double t1 = (y0 - sy) / ry, t2 = (y1 - sy) / ry;
        if (t1 > t2) std::swap(t1, t2);
        a_min = std::max(a_min, t1);
        a_max = std::min(a_max, t2);
    } else if (sy < y0 || sy > y1) {
        return;
    }
    if (a_min >= a_max - kAlphaTol) return;

    // parametric step between successive crossings of each axis
    const double ax_step = std::abs(rx) > 0.0 ? px / std::abs(rx) : std::numeric_limits<double>::infinity();
    const double ay_step = std::abs(ry) > 0.0 ? px / std::abs(ry) : std::numeric_limits<double>::infinity();

    // first crossing strictly after a_min on each axis
    double ax_next = std::numeric_limits<double>::infinity();
    if (std::isfinite(ax_step)) {
        double xa = sx + a_min * rx;
        double k = (xa - x0) / px;
        double next_plane = rx > 0.0 ? std::floor(k) + 1.0 : std::ceil(k) - 1.0;
        ax_next = ((x0 + next_plane * px) - sx) / rx;
        while (ax_next <= a_min + kAlphaTol) ax_next += ax_step;
    }
    double ay_next = std::numeric_limits<double>::infinity();
    if (std::isfinite(ay_step)) {
        double ya = sy + a_min * ry;
        double k = (ya - y0) / px;
        double next_plane = ry > 0.0 ? std::floor(k) + 1.0 : std::ceil(k) - 1.0;
        ay_next = ((y0 + next_plane * px) - sy) / ry;
        while (ay_next <= a_min + kAlphaTol) ay_next += ay_step;
    }

    double a = a_min;
    while (a < a_max - kAlphaTol) {
        double a_next = std::min({ax_next, ay_next, a_max});
        double mid = 0.5 * (a + a_next);
        int col = static_cast<int>(std::floor((sx + mid * rx - x0) / px));
        int row = static_cast<int>(std::floor((sy + mid * ry - y0) / px));
        if (col >= 0 && col < img.width && row >= 0 && row < img.height) {
            double len = (a_next - a) * seg_len;
            if (len > 0.0) visit(row, col, len);
        }
        if (ax_next <= a_next + kAlphaTol && ax_next < std::numeric_limits<double>::infinity())
            ax_next += ax_step;
        if (ay_next <= a_next + kAlphaTol && ay_next < std::numeric_limits<double>::infinity())
            ay_next += ay_step;
        a = a_next;
    }
}

}  // namespace

double siddon_trace(const Image& image, double sx, double sy, double dx, double dy) {
    if (!std::isfinite(sx) || !std::isfinite(sy) || !std::isfinite(dx) || !std::isfinite(dy))
        throw InvalidArgument("siddon_trace: endpoints must be finite");
    if (sx == dx && sy == dy) throw InvalidArgument("siddon_trace: source equals detector");
    double sum = 0.0;
    siddon_walk(image, sx, sy, dx, dy,
                [&](int row, int col, double len) { sum += len * image.at(row, col); });
    return sum;
}

Sinogram forward_project(const Image& image, const FanBeamGeometry& geom) {
    image.validate();
    geom.validate();
    Sinogram sino(geom.num_views(), geom.detector_count);
    for (int v = 0; v < geom.num_views(); ++v) {
        double sx, sy;
        source_position(geom, v, sx, sy);
        for (int d = 0; d < geom.detector_count; ++d) {
            double dx, dy;
            detector_position(geom, v, d, dx, dy);
            sino.at(v, d) = siddon_trace(image, sx, sy, dx, dy);
        }
    }
    return sino;
}

Image adjoint_backproject(const Sinogram& sino, const FanBeamGeometry& geom,
                          int width, int height, double half_extent) {
    sino.validate();
    geom.validate();
    if (sino.num_views != geom.num_views() || sino.detector_count != geom.detector_count)
        throw InvalidArgument("adjoint_backproject: sinogram dims do not match geometry");
    Image out(width, height, half_extent);
    for (int v = 0; v < geom.num_views(); ++v) {
        double sx, sy;
        source_position(geom, v, sx, sy);
        for (int d = 0; d < geom.detector_count; ++d) {
            double w = sino.at(v, d);
            if (w == 0.0) continue;
            double dx, dy;
            detector_position(geom, v, d, dx, dy);
            siddon_walk(out, sx, sy, dx, dy,
                        [&](int row, int col, double len) { out.at(row, col) += len * w; });
        }
    }
    return out;
}

double ramlak_kernel(int n, double tau) {
    if (n == 0) return 1.0 / (4.0 * tau * tau);
    if (n % 2 == 0) return 0.0;
    return -1.0 / (kPi * kPi * n * n * tau * tau);
}

namespace {

std::vector<double> build_kernel(int detector_count, FilterKind kind, double tau) {
    const int half = detector_count - 1;
    const int len = 2 * half + 1;
    std::vector<double> h(static_cast<std::size_t>(len));
    for (int n = -half; n <= half; ++n)
        h[static_cast<std::size_t>(n + half)] = ramlak_kernel(n, tau);
    if (kind == FilterKind::RamLak) return h;

    // Hann variant: multiply the truncated kernel's DFT by a Hann window.
    const std::size_t L = static_cast<std::size_t>(len);
    std::vector<std::complex<double>> spec(L);
    for (std::size_t k = 0; k < L; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t j = 0; j < L; ++j) {
            double phase = -2.0 * kPi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(L);
            acc += h[j] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        double f = static_cast<double>(k) / static_cast<double>(L);  // cycles/sample
        if (f > 0.5) f -= 1.0;
        double w = 0.5 * (1.0 + std::cos(2.0 * kPi * f));  // Hann, zero at Nyquist
        spec[k] = acc * w;
    }
    std::vector<double> out(L);
    for (std::size_t j = 0; j < L; ++j) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k < L; ++k) {
            double phase = 2.0 * kPi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(L);
            acc += spec[k] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        out[j] = acc.real() / static_cast<double>(L);
    }
    return out;
}

}  // namespace

Sinogram ramp_filter(const Sinogram& sino, FilterKind kind, double spacing) {
    sino.validate();
    if (sino.detector_count < 2) throw InvalidArgument("ramp_filter: detector_count must be >= 2");
    if (!(spacing > 0.0)) throw InvalidArgument("ramp_filter: spacing must be positive");
    const int n = sino.detector_count;
    const int half = n - 1;
    std::vector<double> h = build_kernel(n, kind, spacing);
    Sinogram out(sino.num_views, n);
    for (int v = 0; v < sino.num_views; ++v) {
        const double* row = &sino.values[static_cast<std::size_t>(v) * n];
        double* orow = &out.values[static_cast<std::size_t>(v) * n];
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += row[j] * h[static_cast<std::size_t>(i - j + half)];
            orow[i] = acc;
        }
    }
    return out;
}

Image fbp_reconstruct(const Sinogram& sino, const FanBeamGeometry& geom,
                      int width, int height, double half_extent, FilterKind kind) {
    sino.validate();
    geom.validate();
    if (sino.num_views != geom.num_views() || sino.detector_count != geom.detector_count)
        throw InvalidArgument("fbp_reconstruct: sinogram dims do not match geometry");

    const int n = geom.detector_count;
    const double dso = geom.source_distance;
    const double dsd = geom.source_distance + geom.detector_distance;
    // rescale detector coordinates to the virtual detector through the origin
    const double tau = (geom.detector_total_width / n) * (dso / dsd);

    // cosine pre-weighting on the virtual detector
    Sinogram weighted(sino.num_views, n);
    for (int v = 0; v < sino.num_views; ++v) {
        for (int d = 0; d < n; ++d) {
            double u = geom.detector_offset(d) * dso / dsd;
            weighted.at(v, d) = sino.at(v, d) * dso / std::sqrt(dso * dso + u * u);
        }
    }

    Sinogram filtered = ramp_filter(weighted, kind, tau);
    // quadrature spacing and the 1/2 of the full-rotation fan kernel
    const double fscale = 0.5 * tau;
    const double dbeta = 2.0 * kPi / geom.num_views();

    Image out(width, height, half_extent);
    const double px = out.pitch();
    const double x_base = -half_extent + 0.5 * px;
    const double y_base = -0.5 * height * px + 0.5 * px;

    std::vector<double> cos_a(static_cast<std::size_t>(geom.num_views()));
    std::vector<double> sin_a(static_cast<std::size_t>(geom.num_views()));
    for (int v = 0; v < geom.num_views(); ++v) {
        cos_a[static_cast<std::size_t>(v)] = std::cos(geom.view_angles[static_cast<std::size_t>(v)]);
        sin_a[static_cast<std::size_t>(v)] = std::sin(geom.view_angles[static_cast<std::size_t>(v)]);
    }

    for (int r = 0; r < height; ++r) {
        double y = y_base + r * px;
        for (int c = 0; c < width; ++c) {
            double x = x_base + c * px;
            double acc = 0.0;
            for (int v = 0; v < geom.num_views(); ++v) {
                double ca = cos_a[static_cast<std::size_t>(v)], sa = sin_a[static_cast<std::size_t>(v)];
                double L = dso - (x * ca + y * sa);   // distance along the central axis
                if (L <= 1e-9) continue;
                double m = -x * sa + y * ca;          // lateral coordinate
                double u = m * dso / L;
                double fd = u / tau + 0.5 * n - 0.5;  // fractional detector bin
                int i0 = static_cast<int>(std::floor(fd));
                double frac = fd - i0;
                if (i0 < -1 || i0 > n - 1) continue;
                double q0 = (i0 >= 0 && i0 < n) ? filtered.at(v, i0) : 0.0;
                double q1 = (i0 + 1 >= 0 && i0 + 1 < n) ? filtered.at(v, i0 + 1) : 0.0;
                double q = q0 + frac * (q1 - q0);
                acc += (dso * dso) / (L * L) * q;
            }
            out.at(r, c) = acc * dbeta * fscale;
        }
    }
    return out;
}

}  // namespace sinodiff::ct
