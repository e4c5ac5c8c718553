#include "fusion/tf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fusion {

Matrix gaussian_window(std::size_t l, double tfr) {
  if (l == 0 || !(tfr > 0.0)) throw ConfigError("gaussian_window: bad length or ratio");
  Matrix g(l, 1, Field::Real);
  double ld = static_cast<double>(l);
  for (std::size_t k = 0; k < l; ++k) {
    double s = 0.0;
    for (int n = -8; n <= 8; ++n) {
      double x = static_cast<double>(k) + n * ld;
      s += std::exp(-std::numbers::pi * x * x / (tfr * ld));
    }
    g(k, 0) = s;
  }
  return (1.0 / g.norm()) * g;
}

AtomFamily gabor_system(std::size_t l, std::size_t a, std::size_t m, const Matrix& window) {
  if (a == 0 || m == 0 || l == 0 || l % a != 0 || l % m != 0)
    throw ConfigError("incompatible_lattice: need a | L and M | L");
  if (!window.is_vector() || window.rows() != l)
    throw ShapeError("gabor_system: window length must equal L");
  Matrix g = window.promoted(Field::Complex);
  const std::size_t b = l / m;
  const std::size_t n_shifts = l / a;
  AtomFamily fam;
  fam.redundancy = static_cast<double>(m) / static_cast<double>(a);
  fam.channels = m;
  fam.atoms.reserve(m * n_shifts);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t mm = 0; mm < m; ++mm) {
    for (std::size_t nn = 0; nn < n_shifts; ++nn) {
      TFAtom atom;
      atom.vector = Matrix(l, 1, Field::Complex);
      for (std::size_t k = 0; k < l; ++k) {
        double phase = two_pi * static_cast<double>(mm * b) * static_cast<double>(k) / static_cast<double>(l);
        std::size_t src = (k + l - (nn * a) % l) % l;
        atom.vector(k, 0) = cplx(std::cos(phase), std::sin(phase)) * g(src, 0);
      }
      atom.time = static_cast<double>(nn * a);
      double fpos = static_cast<double>(mm * b);
      atom.freq = std::min(fpos, static_cast<double>(l) - fpos);
      atom.source = TFAtom::Source::Dgt;
      atom.index_a = static_cast<int>(mm);
      atom.index_b = static_cast<int>(nn);
      fam.atoms.push_back(std::move(atom));
    }
  }
  return fam;
}

WaveletFilters haar_filters() {
  double c = 1.0 / std::sqrt(2.0);
  return {{c, c}};
}

WaveletFilters wavelet_filters_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("wavelet filters: cannot open " + path);
  WaveletFilters filt;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double x;
    while (ss >> x) filt.lowpass.push_back(x);
  }
  if (filt.lowpass.empty()) throw ParseError("wavelet filters: no coefficients in " + path);
  return filt;
}

namespace {

void validate_filters(const WaveletFilters& filters) {
  const auto& h = filters.lowpass;
  if (h.size() < 2 || h.size() % 2 != 0)
    throw ConfigError("bad_filters: scaling filter needs even length >= 2");
  double sum = 0.0, sq = 0.0;
  for (double x : h) {
    sum += x;
    sq += x * x;
  }
  if (std::abs(sum - std::sqrt(2.0)) > 1e-8 || std::abs(sq - 1.0) > 1e-8)
    throw ConfigError("bad_filters: scaling filter is not normalized (sum sqrt(2), unit energy)");
  for (std::size_t k = 1; 2 * k < h.size(); ++k) {
    double dot = 0.0;
    for (std::size_t n = 0; n + 2 * k < h.size(); ++n) dot += h[n] * h[n + 2 * k];
    if (std::abs(dot) > 1e-8)
      throw ConfigError("bad_filters: scaling filter is not orthogonal to its even shifts");
  }
}

std::vector<double> highpass_of(const std::vector<double>& h) {
  std::vector<double> g(h.size());
  for (std::size_t n = 0; n < h.size(); ++n)
    g[n] = ((n % 2 == 0) ? 1.0 : -1.0) * h[h.size() - 1 - n];
  return g;
}

// One synthesis step: a_{j-1}[2n + k] += h[k] a_j[n] + g[k] d_j[n] (mod L_out).
std::vector<double> idwt_level(const std::vector<double>& approx, const std::vector<double>& detail,
                               const std::vector<double>& h, const std::vector<double>& g) {
  const std::size_t half = approx.size();
  const std::size_t lout = 2 * half;
  std::vector<double> out(lout, 0.0);
  for (std::size_t n = 0; n < half; ++n) {
    double va = approx[n];
    double vd = detail[n];
    if (va == 0.0 && vd == 0.0) continue;
    for (std::size_t k = 0; k < h.size(); ++k) {
      std::size_t idx = (2 * n + k) % lout;
      out[idx] += h[k] * va + g[k] * vd;
    }
  }
  return out;
}

} // namespace

AtomFamily wavelet_system(std::size_t l, std::size_t j_depth, const WaveletFilters& filters) {
  if (j_depth < 1) throw ConfigError("bad_depth: need J >= 1");
  std::size_t block = std::size_t{1} << j_depth;
  if (l == 0 || l % block != 0 || l / block == 0)
    throw ConfigError("bad_depth: L must be divisible by 2^J with a nonempty scaling channel");
  validate_filters(filters);
  const auto& h = filters.lowpass;
  std::vector<double> g = highpass_of(h);

  auto synthesize = [&](std::size_t channel, std::size_t slot) {
    // channel 0 = scaling at level J; channel c in 1..J = detail level J+1-c.
    std::size_t n_scaling = l / block;
    std::vector<double> cur(n_scaling, 0.0);
    if (channel == 0) cur[slot] = 1.0;
    for (std::size_t j = j_depth; j >= 1; --j) {
      std::size_t n_detail = l / (std::size_t{1} << j);
      std::vector<double> detail(n_detail, 0.0);
      std::size_t channel_of_level = 1 + (j_depth - j);
      if (channel == channel_of_level) detail[slot] = 1.0;
      cur = idwt_level(cur, detail, h, g);
    }
    return cur;
  };

  AtomFamily fam;
  fam.redundancy = 1.0;
  fam.channels = j_depth + 1;
  fam.atoms.reserve(l);
  const double ld = static_cast<double>(l);
  for (std::size_t channel = 0; channel <= j_depth; ++channel) {
    std::size_t level = channel == 0 ? j_depth : j_depth + 1 - channel;
    std::size_t scale = std::size_t{1} << level;
    std::size_t count = l / scale;
    double freq = channel == 0 ? ld / static_cast<double>(std::size_t{2} << j_depth)
                               : 1.5 * ld / static_cast<double>(std::size_t{2} << level);
    for (std::size_t n = 0; n < count; ++n) {
      std::vector<double> atom = synthesize(channel, n);
      TFAtom a;
      a.vector = Matrix::column(atom);
      a.time = static_cast<double>(scale) * (static_cast<double>(n) + 0.5);
      a.freq = freq;
      a.source = TFAtom::Source::Fwt;
      a.index_a = static_cast<int>(channel);
      a.index_b = static_cast<int>(n);
      fam.atoms.push_back(std::move(a));
    }
  }
  return fam;
}

bool TFRegion::contains(double t, double f) const {
  bool t_ok = t >= t0 && (t < t1 || (closed_t1 && t <= t1));
  bool f_ok = f >= f0 && (f < f1 || (closed_f1 && f <= f1));
  return t_ok && f_ok;
}

std::vector<TFRegion> tf_regions(std::size_t l, std::size_t n_rows, std::size_t n_cols, double overlap) {
  if (l == 0 || n_rows == 0 || n_cols == 0 || overlap < 0.0 || overlap >= 1.0)
    throw ConfigError("bad_grid: need positive grid sizes and overlap in [0, 1)");
  double nr = static_cast<double>(n_rows);
  double nc = static_cast<double>(n_cols);
  double width = static_cast<double>(l) / (nc - (nc - 1.0) * overlap);
  double height = (static_cast<double>(l) / 2.0) / (nr - (nr - 1.0) * overlap);
  std::vector<TFRegion> regs;
  regs.reserve(n_rows * n_cols);
  for (std::size_t r = 0; r < n_rows; ++r)
    for (std::size_t c = 0; c < n_cols; ++c) {
      TFRegion reg;
      reg.t0 = static_cast<double>(c) * (1.0 - overlap) * width;
      reg.t1 = reg.t0 + width;
      reg.f0 = static_cast<double>(r) * (1.0 - overlap) * height;
      reg.f1 = reg.f0 + height;
      reg.closed_t1 = c + 1 == n_cols;
      reg.closed_f1 = r + 1 == n_rows;
      regs.push_back(reg);
    }
  return regs;
}

TFFusionSystem build_tf_system(const std::vector<AtomFamily>& sources, const std::vector<TFRegion>& regions,
                               const std::vector<std::size_t>& assignment, std::size_t l,
                               const Tolerance& tol) {
  if (regions.empty()) throw ConfigError("bad_grid: no regions");
  if (assignment.size() != regions.size())
    throw ShapeError("build_tf_system: one source index per region required");
  std::vector<std::vector<TFAtom>> selected(regions.size());
  std::vector<Matrix> syntheses;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (assignment[i] >= sources.size()) throw ShapeError("build_tf_system: source index out of range");
    std::vector<Matrix> cols;
    for (const TFAtom& atom : sources[assignment[i]].atoms) {
      if (!regions[i].contains(atom.time, atom.freq)) continue;
      selected[i].push_back(atom);
      cols.push_back(atom.vector.promoted(Field::Complex));
    }
    if (cols.empty()) throw ConfigError("empty_region: region " + std::to_string(i) + " captures no atoms");
    syntheses.push_back(Matrix::hcat(cols));
  }
  TFFusionSystem out{make_system(syntheses, std::vector<double>(regions.size(), 1.0), tol), regions,
                     std::move(selected), l / 2, l};
  return out;
}

namespace {

struct CellGrid {
  std::size_t rows, cols;
  std::vector<cplx> sum;
  std::vector<double> count;
  std::vector<std::uint8_t> inside;

  CellGrid(std::size_t r, std::size_t c)
      : rows(r), cols(c), sum(r * c, cplx(0.0)), count(r * c, 0.0), inside(r * c, 0) {}

  std::size_t at(std::size_t r, std::size_t c) const { return r * cols + c; }
};

void mark_inside(CellGrid& g, const std::vector<TFRegion>& regions) {
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      double t = static_cast<double>(c);
      double f = static_cast<double>(r);
      for (const auto& reg : regions)
        if (reg.contains(t, f)) {
          g.inside[g.at(r, c)] = 1;
          break;
        }
    }
}

// Linear interpolation between filled cells along one axis, constant
// extension to inside-region cells beyond the first/last filled cell.
void fill_line(Fusiogram& fg, const CellGrid& g, std::size_t fixed, bool along_rows) {
  std::size_t len = along_rows ? fg.rows : fg.cols;
  auto idx = [&](std::size_t k) { return along_rows ? k * fg.cols + fixed : fixed * fg.cols + k; };
  std::vector<std::size_t> filled;
  for (std::size_t k = 0; k < len; ++k)
    if (fg.mask[idx(k)]) filled.push_back(k);
  if (filled.empty()) return;
  for (std::size_t k = 0; k < len; ++k) {
    if (fg.mask[idx(k)] || !g.inside[idx(k)]) continue;
    auto it = std::lower_bound(filled.begin(), filled.end(), k);
    cplx value;
    if (it == filled.begin()) {
      value = fg.grid.data()[idx(filled.front())];
    } else if (it == filled.end()) {
      value = fg.grid.data()[idx(filled.back())];
    } else {
      std::size_t hi = *it;
      std::size_t lo = *(it - 1);
      double w = static_cast<double>(k - lo) / static_cast<double>(hi - lo);
      value = (1.0 - w) * fg.grid.data()[idx(lo)] + w * fg.grid.data()[idx(hi)];
    }
    fg.grid.data()[idx(k)] = value;
  }
  for (std::size_t k = 0; k < len; ++k)
    if (!fg.mask[idx(k)] && g.inside[idx(k)]) fg.mask[idx(k)] = 1;
}

Fusiogram finalize(CellGrid& g, const std::vector<TFRegion>& regions, bool interpolate) {
  Fusiogram fg;
  fg.rows = g.rows;
  fg.cols = g.cols;
  fg.grid = Matrix::zero(g.rows, g.cols, Field::Complex);
  fg.mask.assign(g.rows * g.cols, 0);
  fg.region_borders = regions;
  for (std::size_t k = 0; k < g.sum.size(); ++k)
    if (g.count[k] > 0.0) {
      fg.grid.data()[k] = g.sum[k] / g.count[k];
      fg.mask[k] = 1;
    }
  if (!interpolate) return fg;
  mark_inside(g, regions);
  for (std::size_t c = 0; c < fg.cols; ++c) fill_line(fg, g, c, true); // frequency axis first
  for (std::size_t r = 0; r < fg.rows; ++r) fill_line(fg, g, r, false);
  return fg;
}

} // namespace

Fusiogram fusiogram(const TFFusionSystem& sys, const Matrix& f) {
  if (!f.is_vector() || f.rows() != sys.grid_cols)
    throw ShapeError("fusiogram: signal length does not match L");
  Matrix fc = f.promoted(Field::Complex);
  CellGrid g(sys.grid_rows, sys.grid_cols);
  for (const auto& atoms : sys.local_atoms)
    for (const TFAtom& atom : atoms) {
      std::size_t row = std::min(static_cast<std::size_t>(atom.freq), g.rows - 1);
      std::size_t col = std::min(static_cast<std::size_t>(atom.time), g.cols - 1);
      g.sum[g.at(row, col)] += inner(fc, atom.vector.promoted(Field::Complex));
      g.count[g.at(row, col)] += 1.0;
    }
  return finalize(g, sys.regions, true);
}

Fusiogram fusiogram_norms(const TFFusionSystem& sys, const Matrix& f) {
  if (!f.is_vector() || f.rows() != sys.grid_cols)
    throw ShapeError("fusiogram: signal length does not match L");
  Matrix fc = f.promoted(sys.system.frame().field());
  CellGrid g(sys.grid_rows, sys.grid_cols);
  for (std::size_t i = 0; i < sys.regions.size(); ++i) {
    double norm = sys.system.frame()[i].subspace.project(fc).norm();
    const TFRegion& reg = sys.regions[i];
    for (std::size_t r = 0; r < g.rows; ++r)
      for (std::size_t c = 0; c < g.cols; ++c)
        if (reg.contains(static_cast<double>(c), static_cast<double>(r))) {
          g.sum[g.at(r, c)] += norm;
          g.count[g.at(r, c)] += 1.0;
        }
  }
  return finalize(g, sys.regions, false);
}

Matrix display_transform(const Fusiogram& fg) {
  Matrix out = Matrix::zero(fg.rows, fg.cols, Field::Real);
  double minval = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < fg.mask.size(); ++k)
    if (fg.mask[k]) {
      double v = std::abs(fg.grid.data()[k]);
      minval = any ? std::min(minval, v) : v;
      any = true;
    }
  if (!any) return out;
  double offset = std::abs(minval);
  double lo = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < fg.mask.size(); ++k) {
    if (!fg.mask[k]) continue;
    double v = std::log(std::max(std::abs(fg.grid.data()[k]) + offset, 1e-300));
    out.data()[k] = v;
    lo = first ? v : std::min(lo, v);
    first = false;
  }
  for (std::size_t k = 0; k < fg.mask.size(); ++k)
    if (!fg.mask[k]) out.data()[k] = lo;
  return out;
}

} // namespace fusion
