#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "qosc/errors.hpp"
#include "qosc/grid.hpp"

using namespace qosc;

namespace {

GridSpec small_grid() { return GridSpec{64, 64, -8, 8, -8, 8}; }

// Normalized isotropic Gaussian with momentum kick (px, py).
QuantumState gaussian(const GridSpec& g, double sx, double sy, double px = 0, double py = 0) {
  QuantumState s = QuantumState::zeros(g);
  const double norm = 1.0 / (std::numbers::pi * sx * sy);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.x(ix), y = g.y(iy);
      const double amp = std::sqrt(norm) * std::exp(-0.5 * (x * x / (sx * sx) + y * y / (sy * sy)));
      s.at(ix, iy) = amp * std::exp(cplx(0, px * x + py * y));
    }
  return s;
}

std::string temp_path(const char* stem) {
  return std::string("/tmp/qosc_grid_test_") + stem + ".qstate";
}

}  // namespace

TEST_CASE("cell centering is symmetric under reflection") {
  const GridSpec g = small_grid();
  CHECK(g.x(0) == doctest::Approx(-g.x(g.nx - 1)).epsilon(1e-15));
  CHECK(g.x(31) == doctest::Approx(-g.x(32)).epsilon(1e-15));
  CHECK(g.dx() == doctest::Approx(0.25));
  CHECK(g.cell_area() == doctest::Approx(0.0625));
}

TEST_CASE("fft frequencies cover both branches") {
  const GridSpec g = small_grid();
  CHECK(g.kx(0) == 0.0);
  CHECK(g.kx(1) == doctest::Approx(2 * std::numbers::pi / 16.0));
  // Negative branch: index n-1 is one bin below zero.
  CHECK(g.kx(g.nx - 1) == doctest::Approx(-2 * std::numbers::pi / 16.0));
}

TEST_CASE("grid validation rejects degenerate boxes") {
  GridSpec g = small_grid();
  g.nx = 0;
  CHECK_THROWS_AS(validate_grid(g), GridTooSmall);
  g = small_grid();
  g.x_max = g.x_min;
  CHECK_THROWS_AS(validate_grid(g), std::invalid_argument);
}

TEST_CASE("norm and inner product match analytic gaussian values") {
  const GridSpec g = small_grid();
  const QuantumState a = gaussian(g, 1.0, 1.0);
  CHECK(norm_sq(a) == doctest::Approx(1.0).epsilon(1e-12));

  // <a|b> for two real Gaussians of widths s and w: sqrt(2sw/(s^2+w^2)) per axis.
  const QuantumState b = gaussian(g, 1.5, 1.5);
  const double per_axis = std::sqrt(2 * 1.0 * 1.5 / (1.0 + 2.25));
  CHECK(inner_product(a, b).real() == doctest::Approx(per_axis * per_axis).epsilon(1e-12));
  CHECK(std::abs(inner_product(a, b).imag()) < 1e-14);
}

TEST_CASE("fidelity is scale invariant and bounded by one") {
  const GridSpec g = small_grid();
  const QuantumState a = gaussian(g, 1.0, 1.0);
  QuantumState c = a;
  for (auto& z : c.psi) z *= cplx(0.3, 0.4);  // overall complex scale
  CHECK(fidelity(a, c) == doctest::Approx(1.0).epsilon(1e-13));

  const QuantumState kicked = gaussian(g, 1.0, 1.0, 1.3, 0.0);
  // |<0|e^{ipx}|0>| = exp(-p^2 s^2 / 4)
  CHECK(fidelity(a, kicked) == doctest::Approx(std::exp(-1.3 * 1.3 / 4)).epsilon(1e-10));
}

TEST_CASE("normalize rescales to unit norm") {
  const GridSpec g = small_grid();
  QuantumState a = gaussian(g, 0.8, 1.2);
  for (auto& z : a.psi) z *= 3.7;
  normalize(a);
  CHECK(norm_sq(a) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("boundary fraction flags states near the edge") {
  const GridSpec g = small_grid();
  const QuantumState centered = gaussian(g, 1.0, 1.0);
  CHECK(boundary_fraction(centered, 4) < 1e-12);

  QuantumState edge = QuantumState::zeros(g);
  edge.at(1, 32) = 1.0;
  CHECK(boundary_fraction(edge, 4) == doctest::Approx(1.0));
}

TEST_CASE("state dump round-trips bit for bit") {
  const GridSpec g{32, 16, -4, 4, -3, 5};
  const QuantumState a = gaussian(g, 0.9, 1.1, 0.3, -0.2);
  const std::string path = temp_path("roundtrip");
  write_state(path, a, 0.7, 2.25);
  const StateDump d = read_state(path);
  CHECK(d.hbar == 0.7);
  CHECK(d.time == 2.25);
  CHECK(d.state.grid == g);
  REQUIRE(d.state.psi.size() == a.psi.size());
  for (std::size_t i = 0; i < a.psi.size(); ++i) CHECK(d.state.psi[i] == a.psi[i]);
  std::remove(path.c_str());
}

TEST_CASE("truncated and corrupt dumps are rejected") {
  const GridSpec g{16, 16, -4, 4, -4, 4};
  const QuantumState a = gaussian(g, 1.0, 1.0);
  const std::string path = temp_path("bad");

  write_state(path, a, 1.0, 0.0);
  {
    // Chop off the last half of the payload.
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  }
  CHECK_THROWS_AS(read_state(path), ArtifactError);

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "not a state dump";
  }
  CHECK_THROWS_AS(read_state(path), ArtifactError);

  CHECK_THROWS_AS(read_state("/tmp/qosc_grid_test_missing.qstate"), ArtifactError);
  std::remove(path.c_str());
}
