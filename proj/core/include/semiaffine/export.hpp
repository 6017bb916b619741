#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "semiaffine/acim.hpp"
#include "semiaffine/affine.hpp"
#include "semiaffine/holder.hpp"
#include "semiaffine/measures.hpp"
#include "semiaffine/steering.hpp"

namespace semiaffine {

/// 17 significant digits, so equal doubles print equal and differing ones differ.
std::string format_double(double value);

/// `u,x,cdf` rows, one per grid node.
void write_grid_csv(const std::filesystem::path& path, const GridMeasure& mu);

struct GridSidecar {
  double a, b, p;
  double tol, residual;
  std::size_t iterations;
};
/// {a, b, p, N, tol, residual, mass_at_infinity, mean, second_moment, iterations}.
void write_grid_sidecar(const std::filesystem::path& path, const GridMeasure& mu, const GridSidecar& info);

/// `u,x,weight` rows in increasing x.
void write_point_mass_csv(const std::filesystem::path& path, const PointMassMeasure& mu);

/// `bin_left,bin_right,mass`.
void write_density_csv(const std::filesystem::path& path, const UlamDensity& density);
void write_support_json(const std::filesystem::path& path, const SupportReport& report, double gamma);

/// One 0/1 word per line plus a JSON sidecar with per-element error and slope.
void write_sequence(const std::filesystem::path& words_path, const std::filesystem::path& sidecar_path,
                    const std::vector<ApproxElement>& sequence);

void write_coincidence_json(const std::filesystem::path& path, const std::vector<CoincidenceClass>& classes,
                            std::size_t max_len, const SystemParams& params);

void write_certificate_json(const std::filesystem::path& path, const HolderCertificate& certificate);

}  // namespace semiaffine
