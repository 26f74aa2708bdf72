#include "qosc/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "qosc/errors.hpp"

namespace qosc {
namespace {

constexpr char kMagic[8] = {'Q', 'S', 'T', 'A', 'T', 'E', '0', '1'};
constexpr int kMinCells = 8;
constexpr int kMaxCells = 65536;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

double GridSpec::kx(int i) const {
  const int s = i < nx / 2 ? i : i - nx;
  return 2.0 * std::numbers::pi * s / (x_max - x_min);
}

double GridSpec::ky(int j) const {
  const int s = j < ny / 2 ? j : j - ny;
  return 2.0 * std::numbers::pi * s / (y_max - y_min);
}

void validate_grid(const GridSpec& g) {
  if (!(g.x_max > g.x_min) || !(g.y_max > g.y_min))
    throw std::invalid_argument("grid: extent must be positive");
  if (g.nx % 2 != 0 || g.ny % 2 != 0)
    throw std::invalid_argument("grid: cell counts must be even");
  if (g.nx < kMinCells || g.ny < kMinCells)
    throw GridTooSmall("grid: need at least 8 cells per axis");
  if (g.nx > kMaxCells || g.ny > kMaxCells)
    throw std::invalid_argument("grid: cell count exceeds supported maximum");
}

QuantumState QuantumState::zeros(const GridSpec& g) {
  validate_grid(g);
  QuantumState s;
  s.grid = g;
  s.psi.assign(static_cast<std::size_t>(g.size()), cplx(0, 0));
  return s;
}

double norm_sq(const QuantumState& s, Exec exec) {
  const int nx = s.grid.nx, ny = s.grid.ny;
  std::vector<double> row(ny, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < ny; ++iy) {
    const cplx* p = s.psi.data() + static_cast<std::size_t>(iy) * nx;
    double acc = 0;
    for (int ix = 0; ix < nx; ++ix) acc += std::norm(p[ix]);
    row[iy] = acc;
  }
  double total = 0;
  for (int iy = 0; iy < ny; ++iy) total += row[iy];
  return total * s.grid.cell_area();
}

cplx inner_product(const QuantumState& a, const QuantumState& b, Exec exec) {
  if (a.grid != b.grid) throw GridMismatch("grid: inner product on mismatched grids");
  const int nx = a.grid.nx, ny = a.grid.ny;
  std::vector<cplx> row(ny, cplx(0, 0));
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < ny; ++iy) {
    const cplx* pa = a.psi.data() + static_cast<std::size_t>(iy) * nx;
    const cplx* pb = b.psi.data() + static_cast<std::size_t>(iy) * nx;
    cplx acc(0, 0);
    for (int ix = 0; ix < nx; ++ix) acc += std::conj(pa[ix]) * pb[ix];
    row[iy] = acc;
  }
  cplx total(0, 0);
  for (int iy = 0; iy < ny; ++iy) total += row[iy];
  return total * a.grid.cell_area();
}

double fidelity(const QuantumState& a, const QuantumState& b, Exec exec) {
  const double na = norm_sq(a, exec), nb = norm_sq(b, exec);
  if (!(na > 0) || !(nb > 0)) throw std::invalid_argument("grid: fidelity of a null state");
  return std::abs(inner_product(a, b, exec)) / std::sqrt(na * nb);
}

void normalize(QuantumState& s, Exec exec) {
  const double n2 = norm_sq(s, exec);
  if (!(n2 > 0)) throw std::invalid_argument("grid: cannot normalize a null state");
  const double scale = 1.0 / std::sqrt(n2);
  for (auto& z : s.psi) z *= scale;
}

double boundary_fraction(const QuantumState& s, int cells, Exec exec) {
  const int nx = s.grid.nx, ny = s.grid.ny;
  if (cells < 1 || 2 * cells >= nx || 2 * cells >= ny)
    throw std::invalid_argument("grid: boundary band wider than the grid");
  std::vector<double> row(ny, 0.0);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (int iy = 0; iy < ny; ++iy) {
    const cplx* p = s.psi.data() + static_cast<std::size_t>(iy) * nx;
    const bool edge_row = iy < cells || iy >= ny - cells;
    double acc = 0;
    if (edge_row) {
      for (int ix = 0; ix < nx; ++ix) acc += std::norm(p[ix]);
    } else {
      for (int ix = 0; ix < cells; ++ix) acc += std::norm(p[ix]);
      for (int ix = nx - cells; ix < nx; ++ix) acc += std::norm(p[ix]);
    }
    row[iy] = acc;
  }
  double band = 0;
  for (int iy = 0; iy < ny; ++iy) band += row[iy];
  const double total = norm_sq(s, exec);
  if (!(total > 0)) return 0;
  return band * s.grid.cell_area() / total;
}

void write_state(const std::string& path, const QuantumState& s, double hbar, double time) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw ArtifactError("cannot open for writing: " + path);
  const std::int32_t nx = s.grid.nx, ny = s.grid.ny;
  const double header[6] = {s.grid.x_min, s.grid.x_max, s.grid.y_min, s.grid.y_max, hbar, time};
  bool ok = std::fwrite(kMagic, 1, 8, f.get()) == 8;
  ok = ok && std::fwrite(&nx, sizeof nx, 1, f.get()) == 1;
  ok = ok && std::fwrite(&ny, sizeof ny, 1, f.get()) == 1;
  ok = ok && std::fwrite(header, sizeof(double), 6, f.get()) == 6;
  ok = ok && std::fwrite(s.psi.data(), sizeof(cplx), s.psi.size(), f.get()) == s.psi.size();
  if (!ok || std::fflush(f.get()) != 0) throw ArtifactError("short write: " + path);
}

StateDump read_state(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw ArtifactError("missing state dump: " + path);
  char magic[8];
  std::int32_t nx = 0, ny = 0;
  double header[6];
  bool ok = std::fread(magic, 1, 8, f.get()) == 8;
  ok = ok && std::memcmp(magic, kMagic, 8) == 0;
  ok = ok && std::fread(&nx, sizeof nx, 1, f.get()) == 1;
  ok = ok && std::fread(&ny, sizeof ny, 1, f.get()) == 1;
  ok = ok && std::fread(header, sizeof(double), 6, f.get()) == 6;
  if (!ok) throw ArtifactError("not a QSTATE01 dump: " + path);
  if (nx < kMinCells || ny < kMinCells || nx > kMaxCells || ny > kMaxCells)
    throw ArtifactError("corrupt dump header: " + path);

  StateDump d;
  d.state.grid = GridSpec{nx, ny, header[0], header[1], header[2], header[3]};
  validate_grid(d.state.grid);
  d.hbar = header[4];
  d.time = header[5];
  d.state.psi.resize(static_cast<std::size_t>(nx) * ny);
  if (std::fread(d.state.psi.data(), sizeof(cplx), d.state.psi.size(), f.get()) !=
      d.state.psi.size())
    throw ArtifactError("truncated dump payload: " + path);
  return d;
}

}  // namespace qosc
