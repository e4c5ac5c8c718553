#ifndef FUSION_TF_HPP
#define FUSION_TF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fusion/system.hpp"

namespace fusion {

/// One analysis vector with its time-frequency coordinate.
struct TFAtom {
  enum class Source { Dgt, Fwt };

  Matrix vector; // L x 1
  double time = 0.0;
  double freq = 0.0;
  Source source = Source::Dgt;
  int index_a = 0; // modulation index m, or wavelet channel (0 = scaling)
  int index_b = 0; // translation index n
};

struct AtomFamily {
  std::vector<TFAtom> atoms;
  double redundancy = 1.0;
  std::size_t channels = 0;
};

/// Unit-norm periodized Gaussian exp(-pi (k + nL)^2 / (tfr L)), the
/// standard window for a Gabor lattice with time-frequency ratio
/// tfr = a M / L.
Matrix gaussian_window(std::size_t l, double tfr);

/// Discrete Gabor system g_{m,n}[k] = e^{2 pi i m b k / L} g[k - n a] with
/// cyclic translation, b = L / M. Time coordinate n a; frequency
/// coordinate m b folded onto the displayed half plane, min(m b, L - m b),
/// so conjugate channels land on the positive-frequency grid.
/// Throws ConfigError unless a | L and M | L.
AtomFamily gabor_system(std::size_t l, std::size_t a, std::size_t m, const Matrix& window);

/// Orthogonal perfect-reconstruction scaling filter.
struct WaveletFilters {
  std::vector<double> lowpass;
};

WaveletFilters haar_filters();
/// One coefficient per line; '#' starts a comment.
WaveletFilters wavelet_filters_from_file(const std::string& path);

/// Dyadic wavelet system of depth J built by the Mallat cascade on cyclic
/// convolutions: J detail channels plus one scaling channel (J+1 channels,
/// L atoms total, an orthonormal basis for orthogonal filters).
/// Channel frequencies: scaling L / 2^{J+1}, detail level j (3/2) L / 2^{j+1};
/// times 2^j (n + 1/2). Throws ConfigError for a bad depth or filters.
AtomFamily wavelet_system(std::size_t l, std::size_t j_depth, const WaveletFilters& filters);

/// Rectangle in the time-frequency plane; half open on the upper edges
/// except where it touches the grid boundary.
struct TFRegion {
  double t0 = 0.0, t1 = 0.0;
  double f0 = 0.0, f1 = 0.0;
  bool closed_t1 = false;
  bool closed_f1 = false;

  bool contains(double t, double f) const;
};

/// n_rows x n_cols tiles covering [0, L] x [0, L/2] (positive frequencies),
/// neighbouring tiles sharing the given overlap fraction of an edge; tile
/// extents follow L = n_c L_i - (n_c - 1) ol L_i. Row 0 is the lowest
/// frequency band; ordering is row-major.
std::vector<TFRegion> tf_regions(std::size_t l, std::size_t n_rows, std::size_t n_cols, double overlap);

/// Fusion frame system carrying its time-frequency layout.
struct TFFusionSystem {
  FusionFrameSystem system;
  std::vector<TFRegion> regions;
  std::vector<std::vector<TFAtom>> local_atoms; // selected atoms per region
  std::size_t grid_rows = 0;                    // L/2
  std::size_t grid_cols = 0;                    // L
};

/// Local frame i = atoms of its assigned source whose coordinate lies in
/// region i; weights 1. Throws ConfigError if a region captures no atoms.
TFFusionSystem build_tf_system(const std::vector<AtomFamily>& sources, const std::vector<TFRegion>& regions,
                               const std::vector<std::size_t>& assignment, std::size_t l,
                               const Tolerance& tol = {});

struct Fusiogram {
  std::size_t rows = 0; // frequency cells
  std::size_t cols = 0; // time cells
  Matrix grid;          // rows x cols, complex; masked cells hold 0
  std::vector<std::uint8_t> mask; // 1 = filled (atom or interpolation)
  std::vector<TFRegion> region_borders;

  bool filled(std::size_t r, std::size_t c) const { return mask[r * cols + c] != 0; }
};

/// Coefficient fusiogram: <f, psi_ik> placed at each atom cell, overlapping
/// contributions averaged, gaps filled by separable linear interpolation
/// along frequency then time; cells outside all regions stay masked.
Fusiogram fusiogram(const TFFusionSystem& sys, const Matrix& f);

/// Norm fusiogram: every cell of region i carries ||pi_{W_i} f||, averaged
/// over overlaps.
Fusiogram fusiogram_norms(const TFFusionSystem& sys, const Matrix& f);

/// log(|value| + offset) with offset = |min value| over filled cells,
/// masked cells mapped to the minimum. Rows x cols real matrix for display.
Matrix display_transform(const Fusiogram& fg);

} // namespace fusion

#endif
