#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wellopt/grid.hpp"

namespace wellopt {

// Dimensions of a source dataset in SPE10 ASCII layout (full model, e.g.
// 60 x 220 x 85 for the base case). Declared by a sidecar config, never
// inferred from the value stream.
struct Spe10Dims {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  void validate() const;
  long cells_per_property() const {
    return static_cast<long>(nx) * ny * nz;
  }
};

// Rectangular window into one layer of a source dataset. Offsets are
// 0-based cell counts; layer is 1-based.
struct FieldWindow {
  int layer = 1;
  int i_offset = 0;
  int j_offset = 0;
  int width = 0;
  int height = 0;

  // Throws std::out_of_range unless the window fits inside dims.
  void validate(const Spe10Dims& dims) const;
};

// Per-cell rock properties on a grid. Arrays are x-fastest, 0-based,
// length nx*ny. Permeability in mD, porosity as a fraction in (0, 1].
// Immutable by convention once built; safe to share across threads.
struct RockField {
  Grid grid;
  std::vector<double> porosity;
  std::vector<double> perm_x;
  std::vector<double> perm_y;

  void validate() const;
};

// Parses one property block in SPE10 ASCII layout (whitespace-separated
// decimals, x fastest, then y, then z) and extracts the window from its
// layer. Reads exactly the tokens needed; every token scanned is validated.
// Throws ParseError (with line/column) on malformed tokens, std::out_of_range
// if the window does not fit.
std::vector<double> load_spe10_property(std::istream& source,
                                        const Spe10Dims& dims,
                                        const FieldWindow& window);

// Loads a windowed RockField from SPE10-format streams: porosity_source
// holds one block of dims values; perm_source holds three consecutive
// blocks (kx, ky, kz). kz is skipped (areal model). Values are used as
// parsed (mD / fraction, no conversion). Throws ParseError on bad tokens
// and std::invalid_argument when a parsed permeability is <= 0, a porosity
// is outside (0, 1], or the window does not match grid dimensions.
RockField load_spe10_layer(std::istream& porosity_source,
                           std::istream& perm_source, const Spe10Dims& dims,
                           const FieldWindow& window, const Grid& grid);

// Writes one property in the same ASCII layout (one j-row per line,
// full round-trip precision).
void write_spe10_property(std::ostream& out, std::span<const double> values,
                          int nx, int ny);

// Writes a field as an SPE10-style pair of blocks: porosity (one block)
// and permeability (kx, ky, kz blocks; kz duplicates kx in this 2D model).
void write_spe10_field(std::ostream& porosity_out, std::ostream& perm_out,
                       const RockField& rock);

// Deterministic synthetic heterogeneous field: log-permeability sampled
// i.i.d. Gaussian(log_mean, log_sigma), box-smoothed with the given radius
// (cells), exponentiated into isotropic perm_x = perm_y. Porosity is an
// affine map of min-max-normalized log-permeability into [0.05, 0.35].
RockField generate_synthetic_field(std::uint64_t seed, const Grid& grid,
                                   double log_mean, double log_sigma,
                                   int smoothing_radius);

}  // namespace wellopt
