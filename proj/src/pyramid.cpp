#include "slidebench/pyramid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace slidebench::rhythm {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
  return FftwBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

/// Spectrum with DC moved to (rows/2, cols/2), integer division.
struct Spectrum {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> v;

  cplx& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

void transform(fftw_complex* buf, std::size_t rows, std::size_t cols, int sign) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buf, buf, sign,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

Spectrum forward_shifted(const Plane& p) {
  const std::size_t rows = p.height, cols = p.width;
  auto buf = fftw_buffer(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    buf[i][0] = p.data[i];
    buf[i][1] = 0.0;
  }
  transform(buf.get(), rows, cols, FFTW_FORWARD);
  Spectrum s{rows, cols, std::vector<cplx>(rows * cols)};
  const std::size_t r0 = rows / 2, c0 = cols / 2;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t rs = (r + r0) % rows;
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t cs = (c + c0) % cols;
      const auto& z = buf[r * cols + c];
      s.at(rs, cs) = {z[0], z[1]};
    }
  }
  return s;
}

Plane inverse_real(const Spectrum& s) {
  const std::size_t rows = s.rows, cols = s.cols;
  auto buf = fftw_buffer(rows * cols);
  const std::size_t r0 = rows / 2, c0 = cols / 2;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t rs = (r + r0) % rows;
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t cs = (c + c0) % cols;
      const cplx z = s.at(rs, cs);
      buf[r * cols + c][0] = z.real();
      buf[r * cols + c][1] = z.imag();
    }
  }
  transform(buf.get(), rows, cols, FFTW_BACKWARD);
  Plane out(cols, rows);
  const double norm = 1.0 / static_cast<double>(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) out.data[i] = buf[i][0] * norm;
  return out;
}

/// Polar frequency grid in the shifted layout; Nyquist sits at radius 1.
struct PolarGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> log_rad;
  std::vector<double> cos_angle;
  std::vector<double> sin_angle;
};

PolarGrid make_grid(std::size_t rows, std::size_t cols) {
  PolarGrid g{rows, cols, std::vector<double>(rows * cols), std::vector<double>(rows * cols),
              std::vector<double>(rows * cols)};
  const double hr = rows / 2.0, hc = cols / 2.0;
  const auto r0 = static_cast<double>(rows / 2), c0 = static_cast<double>(cols / 2);
  for (std::size_t r = 0; r < rows; ++r) {
    const double fy = (static_cast<double>(r) - r0) / hr;
    for (std::size_t c = 0; c < cols; ++c) {
      const double fx = (static_cast<double>(c) - c0) / hc;
      double rad = std::sqrt(fx * fx + fy * fy);
      if (rad == 0.0) {
        // DC borrows its horizontal neighbour's radius so log2 stays finite.
        rad = cols > 1 ? 1.0 / hc : 1.0;
      }
      g.log_rad[r * cols + c] = std::log2(rad);
      const double angle = std::atan2(fy, fx);
      g.cos_angle[r * cols + c] = std::cos(angle);
      g.sin_angle[r * cols + c] = std::sin(angle);
    }
  }
  return g;
}

/// Raised-cosine highpass transition over log2 radius in [-1, 0].
double hi_transition(double l) {
  if (l >= 0.0) return 1.0;
  if (l <= -1.0) return 0.0;
  return std::cos(kPi / 2.0 * l);
}

double lo_transition(double l) {
  const double h = hi_transition(l);
  return std::sqrt(std::max(0.0, 1.0 - h * h));
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <typename T>
std::vector<T> crop(const std::vector<T>& v, std::size_t cols, std::size_t r_start,
                    std::size_t c_start, std::size_t new_rows, std::size_t new_cols) {
  std::vector<T> out(new_rows * new_cols);
  for (std::size_t r = 0; r < new_rows; ++r) {
    for (std::size_t c = 0; c < new_cols; ++c) {
      out[r * new_cols + c] = v[(r + r_start) * cols + (c + c_start)];
    }
  }
  return out;
}

}  // namespace

void PyramidConfig::validate() const {
  if (levels < 1) throw std::invalid_argument("pyramid.levels must be >= 1");
  if (orientations < 1) throw std::invalid_argument("pyramid.orientations must be >= 1");
}

PyramidSizeError::PyramidSizeError(std::size_t width, std::size_t height, int limiting_level)
    : std::invalid_argument("image " + std::to_string(width) + "x" + std::to_string(height) +
                            " is too small for pyramid level " + std::to_string(limiting_level) +
                            " (needs min dimension >= " +
                            std::to_string(1ULL << limiting_level) + ")"),
      level_(limiting_level) {}

Pyramid steerable_pyramid(const Plane& channel, const PyramidConfig& config,
                          bool keep_residuals) {
  config.validate();
  const std::size_t min_dim = std::min(channel.width, channel.height);
  for (int level = 1; level <= config.levels; ++level) {
    if (min_dim < (std::size_t{1} << level)) {
      throw PyramidSizeError(channel.width, channel.height, level);
    }
  }

  const int k = config.orientations;
  const int order = k - 1;
  const double angle_norm =
      std::sqrt(std::pow(2.0, 2 * order) * factorial(order) * factorial(order) /
                (k * factorial(2 * order)));
  // (-i)^order, exact
  static constexpr cplx kPhases[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  const cplx phase = kPhases[order % 4];

  Spectrum spec = forward_shifted(channel);
  PolarGrid grid = make_grid(spec.rows, spec.cols);

  Pyramid pyr;
  if (keep_residuals) {
    Spectrum hi = spec;
    for (std::size_t i = 0; i < hi.v.size(); ++i) hi.v[i] *= hi_transition(grid.log_rad[i]);
    pyr.highpass = inverse_real(hi);
  }
  for (std::size_t i = 0; i < spec.v.size(); ++i) spec.v[i] *= lo_transition(grid.log_rad[i]);

  for (int level = 0; level < config.levels; ++level) {
    const double shift = level + 1.0;
    std::vector<double> radial(spec.v.size());
    for (std::size_t i = 0; i < radial.size(); ++i) {
      radial[i] = hi_transition(grid.log_rad[i] + shift);
    }
    for (int b = 0; b < k; ++b) {
      const double cb = std::cos(kPi * b / k);
      const double sb = std::sin(kPi * b / k);
      Spectrum band = spec;
      for (std::size_t i = 0; i < band.v.size(); ++i) {
        if (radial[i] == 0.0) {
          band.v[i] = 0.0;
          continue;
        }
        // cos(theta - theta_b)
        const double c = grid.cos_angle[i] * cb + grid.sin_angle[i] * sb;
        band.v[i] *= phase * (radial[i] * angle_norm * ipow(c, order));
      }
      pyr.bands.push_back({level, b, inverse_real(band)});
    }

    const std::size_t rows = spec.rows, cols = spec.cols;
    const std::size_t lo_rows = (rows + 1) / 2, lo_cols = (cols + 1) / 2;
    const std::size_t r_start = rows / 2 - lo_rows / 2, c_start = cols / 2 - lo_cols / 2;
    spec.v = crop(spec.v, cols, r_start, c_start, lo_rows, lo_cols);
    spec.rows = lo_rows;
    spec.cols = lo_cols;
    grid.log_rad = crop(grid.log_rad, cols, r_start, c_start, lo_rows, lo_cols);
    grid.cos_angle = crop(grid.cos_angle, cols, r_start, c_start, lo_rows, lo_cols);
    grid.sin_angle = crop(grid.sin_angle, cols, r_start, c_start, lo_rows, lo_cols);
    grid.rows = lo_rows;
    grid.cols = lo_cols;
    for (std::size_t i = 0; i < spec.v.size(); ++i) {
      spec.v[i] *= lo_transition(grid.log_rad[i] + shift);
    }
  }
  if (keep_residuals) pyr.lowpass = inverse_real(spec);
  return pyr;
}

double band_energy(const Plane& plane, std::size_t reference_size) {
  double e = 0.0;
  for (double v : plane.data) e += v * v;
  return e * static_cast<double>(plane.size()) / static_cast<double>(reference_size);
}

}  // namespace slidebench::rhythm
