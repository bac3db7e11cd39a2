#include "wellopt/rock.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "wellopt/errors.hpp"
#include "wellopt/rng.hpp"

namespace wellopt {

void Spe10Dims::validate() const {
  if (nx < 1 || ny < 1 || nz < 1)
    throw std::invalid_argument("spe10 dims: nx, ny, nz must be >= 1");
}

void FieldWindow::validate(const Spe10Dims& dims) const {
  dims.validate();
  if (width < 1 || height < 1)
    throw std::out_of_range("field window: width and height must be >= 1");
  if (layer < 1 || layer > dims.nz)
    throw std::out_of_range("field window: layer " + std::to_string(layer) +
                            " outside 1.." + std::to_string(dims.nz));
  if (i_offset < 0 || j_offset < 0 || i_offset + width > dims.nx ||
      j_offset + height > dims.ny)
    throw std::out_of_range(
        "field window: " + std::to_string(width) + "x" +
        std::to_string(height) + " at offset (" + std::to_string(i_offset) +
        "," + std::to_string(j_offset) + ") outside source " +
        std::to_string(dims.nx) + "x" + std::to_string(dims.ny));
}

void RockField::validate() const {
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.num_cells());
  if (porosity.size() != n || perm_x.size() != n || perm_y.size() != n)
    throw std::invalid_argument("rock field: array lengths must equal nx*ny");
  for (std::size_t c = 0; c < n; ++c) {
    if (!(perm_x[c] > 0.0) || !(perm_y[c] > 0.0))
      throw std::invalid_argument("rock field: permeability must be > 0 (cell " +
                                  std::to_string(c) + ")");
    if (!(porosity[c] > 0.0) || porosity[c] > 1.0)
      throw std::invalid_argument(
          "rock field: porosity must lie in (0, 1] (cell " +
          std::to_string(c) + ")");
  }
}

namespace {

// Whitespace-delimited token reader tracking 1-based line/column of the
// token start for parse diagnostics.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  double next(const char* what) {
    std::string token;
    int tok_line = 0, tok_col = 0;
    int ch;
    while ((ch = in_.get()) != EOF) {
      if (std::isspace(ch)) {
        if (!token.empty()) break;
        advance(ch);
        continue;
      }
      if (token.empty()) {
        tok_line = line_;
        tok_col = col_;
      }
      token.push_back(static_cast<char>(ch));
      advance(ch);
    }
    if (token.empty())
      throw ParseError(std::string("unexpected end of input while reading ") +
                           what,
                       line_, col_);
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
      throw ParseError("malformed token '" + token + "'", tok_line, tok_col);
    return value;
  }

 private:
  void advance(int ch) {
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
  }

  std::istream& in_;
  int line_ = 1;
  int col_ = 1;
};

// Reads one dims-sized property block, returning only the window of the
// requested layer. Tokens beyond the end of that layer are not consumed
// unless consume_whole_block is set (needed to reach subsequent blocks).
std::vector<double> read_property_window(TokenReader& reader,
                                         const Spe10Dims& dims,
                                         const FieldWindow& window,
                                         bool consume_whole_block) {
  window.validate(dims);
  const long per_layer = static_cast<long>(dims.nx) * dims.ny;
  const long layer_start = static_cast<long>(window.layer - 1) * per_layer;
  std::vector<double> out(static_cast<std::size_t>(window.width) *
                          window.height);
  long index = 0;
  const long layer_end = layer_start + per_layer;
  const long block_end =
      consume_whole_block ? dims.cells_per_property() : layer_end;
  for (; index < block_end; ++index) {
    const double value = reader.next("property value");
    if (index < layer_start || index >= layer_end) continue;
    const long in_layer = index - layer_start;
    const int i = static_cast<int>(in_layer % dims.nx);
    const int j = static_cast<int>(in_layer / dims.nx);
    if (i < window.i_offset || i >= window.i_offset + window.width ||
        j < window.j_offset || j >= window.j_offset + window.height)
      continue;
    const int wi = i - window.i_offset;
    const int wj = j - window.j_offset;
    out[static_cast<std::size_t>(wj) * window.width + wi] = value;
  }
  return out;
}

}  // namespace

std::vector<double> load_spe10_property(std::istream& source,
                                        const Spe10Dims& dims,
                                        const FieldWindow& window) {
  TokenReader reader(source);
  return read_property_window(reader, dims, window, false);
}

RockField load_spe10_layer(std::istream& porosity_source,
                           std::istream& perm_source, const Spe10Dims& dims,
                           const FieldWindow& window, const Grid& grid) {
  grid.validate();
  if (window.width != grid.nx || window.height != grid.ny)
    throw std::invalid_argument("load_spe10_layer: window " +
                                std::to_string(window.width) + "x" +
                                std::to_string(window.height) +
                                " does not match grid " +
                                std::to_string(grid.nx) + "x" +
                                std::to_string(grid.ny));

  RockField rock;
  rock.grid = grid;
  TokenReader poro_reader(porosity_source);
  rock.porosity = read_property_window(poro_reader, dims, window, false);

  TokenReader perm_reader(perm_source);
  rock.perm_x = read_property_window(perm_reader, dims, window, true);
  rock.perm_y = read_property_window(perm_reader, dims, window, false);
  // kz block ignored

  rock.validate();
  return rock;
}

void write_spe10_property(std::ostream& out, std::span<const double> values,
                          int nx, int ny) {
  if (values.size() != static_cast<std::size_t>(nx) * ny)
    throw std::invalid_argument("write_spe10_property: size mismatch");
  char buf[32];
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g",
                    values[static_cast<std::size_t>(j) * nx + i]);
      out << buf << (i + 1 == nx ? '\n' : ' ');
    }
  }
}

void write_spe10_field(std::ostream& porosity_out, std::ostream& perm_out,
                       const RockField& rock) {
  rock.validate();
  write_spe10_property(porosity_out, rock.porosity, rock.grid.nx, rock.grid.ny);
  write_spe10_property(perm_out, rock.perm_x, rock.grid.nx, rock.grid.ny);
  write_spe10_property(perm_out, rock.perm_y, rock.grid.nx, rock.grid.ny);
  // kz block: duplicate kx so the file parses as a standard 3-block set
  write_spe10_property(perm_out, rock.perm_x, rock.grid.nx, rock.grid.ny);
}

RockField generate_synthetic_field(std::uint64_t seed, const Grid& grid,
                                   double log_mean, double log_sigma,
                                   int smoothing_radius) {
  grid.validate();
  if (log_sigma < 0.0)
    throw std::invalid_argument("synthetic field: log_sigma must be >= 0");
  if (smoothing_radius < 0)
    throw std::invalid_argument(
        "synthetic field: smoothing_radius must be >= 0");

  const int nx = grid.nx, ny = grid.ny;
  const std::size_t n = static_cast<std::size_t>(grid.num_cells());

  RngStream rng(seed);
  std::vector<double> log_perm(n);
  for (std::size_t c = 0; c < n; ++c)
    log_perm[c] = log_mean + log_sigma * rng.next_normal();

  if (smoothing_radius > 0) {
    std::vector<double> smoothed(n);
    const int r = smoothing_radius;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        double sum = 0.0;
        int count = 0;
        const int j0 = std::max(0, j - r), j1 = std::min(ny - 1, j + r);
        const int i0 = std::max(0, i - r), i1 = std::min(nx - 1, i + r);
        for (int jj = j0; jj <= j1; ++jj)
          for (int ii = i0; ii <= i1; ++ii) {
            sum += log_perm[static_cast<std::size_t>(jj) * nx + ii];
            ++count;
          }
        smoothed[static_cast<std::size_t>(j) * nx + i] = sum / count;
      }
    }
    log_perm = std::move(smoothed);
  }

  RockField rock;
  rock.grid = grid;
  rock.perm_x.resize(n);
  rock.perm_y.resize(n);
  rock.porosity.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    rock.perm_x[c] = std::exp(log_perm[c]);
    rock.perm_y[c] = rock.perm_x[c];
  }

  const auto [lo_it, hi_it] =
      std::minmax_element(log_perm.begin(), log_perm.end());
  const double lo = *lo_it, hi = *hi_it;
  for (std::size_t c = 0; c < n; ++c) {
    const double z = hi > lo ? (log_perm[c] - lo) / (hi - lo) : 0.5;
    rock.porosity[c] = 0.05 + 0.30 * z;
  }

  rock.validate();
  return rock;
}

}  // namespace wellopt
