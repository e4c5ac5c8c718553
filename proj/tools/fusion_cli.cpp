#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "fusion/duality.hpp"
#include "fusion/io.hpp"
#include "fusion/reconstruct.hpp"
#include "fusion/tf.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  double tol_rel = 1e-10;
  double tol_abs = 1e-12;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "json";
  bool header = false;

  fusion::Tolerance tolerance() const { return {tol_rel, tol_abs}; }
  std::string path(const std::string& name) const { return (fs::path(out_dir) / name).string(); }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

const char* flag(bool b) { return b ? "true" : "false"; }

void ensure_out_dir(const Options& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
}

int cmd_bounds(const Options& opt, const std::string& frame_path) {
  fusion::FusionFrame frame = fusion::load_frame(frame_path, opt.tolerance());
  fusion::FrameBounds b = fusion::bounds(frame);
  fusion::Classification c = fusion::classify(frame, opt.tolerance());
  double cond = b.lower > 0.0 ? b.upper / b.lower : std::numeric_limits<double>::infinity();
  std::cout << "A=" << fmt(b.lower) << " B=" << fmt(b.upper) << " cond=" << fmt(cond)
            << " fusion_frame=" << flag(c.is_fusion_frame) << " tight=" << flag(c.is_tight)
            << " parseval=" << flag(c.is_parseval) << " onb_fusion_basis=" << flag(c.is_onb_fusion_basis)
            << " riesz=" << flag(c.is_riesz_basis) << " exact=" << flag(c.is_exact)
            << " minimal=" << flag(c.is_minimal) << "\n";
  return 0;
}

void write_certificate(const Options& opt, const std::string& name, const fusion::QDualCertificate& cert,
                       const std::string& mode, const json& extra = json()) {
  if (opt.format == "csv") {
    std::ofstream out(opt.path(name + ".csv"));
    out << "mode,residual,reverse_residual,tolerance,valid\n";
    out << mode << "," << cert.residual << "," << cert.reverse_residual << "," << cert.tol << ","
        << flag(cert.valid()) << "\n";
    return;
  }
  json j;
  j["schema_version"] = fusion::kSchemaVersion;
  j["mode"] = mode;
  j["residual"] = cert.residual;
  j["reverse_residual"] = cert.reverse_residual;
  j["tolerance"] = cert.tol;
  j["valid"] = cert.valid();
  if (!extra.is_null()) j["backward"] = extra;
  std::ofstream(opt.path(name + ".json")) << j.dump(2) << "\n";
}

std::vector<double> load_weights(const std::string& path, std::size_t n) {
  fusion::Matrix m = fusion::read_csv_matrix(path);
  if (m.cols() != 1 && m.rows() != 1) throw fusion::ParseError("weights file must be a single row or column");
  std::vector<double> w;
  for (const auto& v : m.data()) w.push_back(v.real());
  if (w.size() != n) throw fusion::ShapeError("weights file length does not match component count");
  return w;
}

int cmd_dual(const Options& opt, const std::string& frame_path, const std::string& mode,
             const std::string& weights_path, const std::string& with_path) {
  ensure_out_dir(opt);
  fusion::Tolerance tol = opt.tolerance();
  fusion::FusionFrame frame = fusion::load_frame(frame_path, tol);
  std::vector<double> weights;
  if (!weights_path.empty()) weights = load_weights(weights_path, frame.size());

  if (mode == "canonical") {
    fusion::DualFrame dual = fusion::canonical_dual(frame, weights, tol);
    fusion::write_frame_json(opt.path("dual.json"), dual.frame);
    write_certificate(opt, "certificate", dual.certificate, mode);
    std::cout << "residual=" << fmt(dual.certificate.residual) << " valid="
              << flag(dual.certificate.valid()) << "\n";
    return 0;
  }
  if (mode == "alternate") {
    if (with_path.empty()) throw fusion::ParseError("--with FRAME is required for alternate verification");
    fusion::FusionFrame other = fusion::load_frame(with_path, tol);
    fusion::Matrix sinv = fusion::solve_spd(frame.frame_operator(),
                                            fusion::Matrix::identity(frame.ambient_dim(), frame.field()), tol);
    std::vector<fusion::Matrix> qs(frame.size(), sinv);
    fusion::QDualCertificate cert = fusion::verify_block_dual(frame, other, qs, tol);
    // reversed composition D_V (+ S_W^{-1}) C_W, reported against c*I
    fusion::Matrix sinv_w = fusion::solve_spd(other.frame_operator(),
                                              fusion::Matrix::identity(other.ambient_dim(), other.field()), tol);
    std::vector<fusion::Matrix> qs_back(other.size(), sinv_w);
    fusion::QDualCertificate back = fusion::verify_block_dual(other, frame, qs_back, tol);
    const std::size_t l = frame.ambient_dim();
    fusion::Matrix composition = fusion::Matrix::zero(l, l, frame.field());
    for (std::size_t i = 0; i < other.size(); ++i)
      composition += (other[i].weight * frame[i].weight) *
                     (frame[i].subspace.projector() * (sinv_w * other[i].subspace.projector()));
    double scale = composition.trace().real() / static_cast<double>(l);
    double scaled_resid =
        fusion::norm_spectral(composition - scale * fusion::Matrix::identity(l, frame.field()));
    json extra = {{"residual", back.residual},
                  {"closest_scale", scale},
                  {"residual_to_scaled_identity", scaled_resid}};
    write_certificate(opt, "certificate", cert, mode, extra);
    std::cout << "residual=" << fmt(cert.residual) << " backward_scale=" << fmt(scale)
              << " backward_scaled_residual=" << fmt(scaled_resid) << "\n";
    return 0;
  }
  if (mode == "from-left-inverse") {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const std::size_t l = frame.ambient_dim();
    fusion::Matrix l_free(l, l * frame.size(), frame.field());
    for (auto& x : l_free.data())
      x = frame.field() == fusion::Field::Real ? fusion::cplx(uni(rng), 0.0)
                                               : fusion::cplx(uni(rng), uni(rng));
    fusion::LeftInverse linv = fusion::left_inverse(frame, l_free, tol);
    if (weights.empty()) weights = frame.weights();
    fusion::DualFrame dual = fusion::cp_dual_from_left_inverse(frame, linv, weights, tol);
    fusion::write_frame_json(opt.path("dual.json"), dual.frame);
    write_certificate(opt, "certificate", dual.certificate, mode);
    std::cout << "residual=" << fmt(dual.certificate.residual) << " valid="
              << flag(dual.certificate.valid()) << "\n";
    return 0;
  }
  throw fusion::ParseError("unknown --mode " + mode);
}

fusion::AtomFamily source_from_json(const json& src, std::size_t l, const fs::path& config_dir) {
  if (!src.is_object() || !src.contains("type")) throw fusion::ParseError("tf config: source needs a type");
  std::string type = src["type"].get<std::string>();
  if (type == "dgt") {
    std::size_t a = src.value("a", 1);
    std::size_t m = src.value("M", l);
    double tfr = src.value("tfr", static_cast<double>(a * m) / static_cast<double>(l));
    std::string window = src.value("window", "gauss");
    if (window != "gauss") throw fusion::ParseError("tf config: only the 'gauss' window is supported");
    return fusion::gabor_system(l, a, m, fusion::gaussian_window(l, tfr));
  }
  if (type == "fwt") {
    std::size_t j = src.value("J", 1);
    fusion::WaveletFilters filters;
    if (src.contains("wavelet_file")) {
      fs::path p = src["wavelet_file"].get<std::string>();
      if (p.is_relative()) p = config_dir / p;
      filters = fusion::wavelet_filters_from_file(p.string());
    } else {
      std::string name = src.value("wavelet", "haar");
      if (name != "haar") throw fusion::ParseError("tf config: named wavelets other than 'haar' need wavelet_file");
      filters = fusion::haar_filters();
    }
    return fusion::wavelet_system(l, j, filters);
  }
  throw fusion::ParseError("tf config: unknown source type '" + type + "'");
}

int cmd_fusiogram(const Options& opt, const std::string& signal_path, const std::string& config_path) {
  ensure_out_dir(opt);
  fusion::Tolerance tol = opt.tolerance();
  json cfg = json::parse(std::ifstream(config_path), nullptr, false);
  if (cfg.is_discarded()) throw fusion::ParseError("malformed JSON in " + config_path);
  if (!cfg.contains("L")) throw fusion::ParseError("tf config: missing L");
  std::size_t l = cfg["L"].get<std::size_t>();

  fusion::Matrix signal = fusion::read_csv_matrix(signal_path);
  if (signal.cols() != 1 && signal.rows() == 1) signal = signal.transpose();
  if (signal.cols() != 1 || signal.rows() != l)
    throw fusion::ShapeError("signal length does not match the configured L");

  json grid = cfg.value("grid", json::object());
  std::size_t rows = grid.value("rows", 1);
  std::size_t cols = grid.value("cols", 1);
  double overlap = grid.value("overlap", 0.0);
  std::vector<fusion::TFRegion> regions = fusion::tf_regions(l, rows, cols, overlap);

  if (!cfg.contains("sources") || !cfg["sources"].is_array() || cfg["sources"].empty())
    throw fusion::ParseError("tf config: missing sources");
  std::vector<fusion::AtomFamily> sources;
  for (const auto& src : cfg["sources"])
    sources.push_back(source_from_json(src, l, fs::path(config_path).parent_path()));

  std::vector<std::size_t> assignment;
  if (cfg.contains("assignment"))
    for (const auto& v : cfg["assignment"]) assignment.push_back(v.get<std::size_t>());
  else
    assignment.assign(regions.size(), 0);
  if (assignment.size() != regions.size())
    throw fusion::ParseError("tf config: assignment length must equal rows*cols");

  fusion::TFFusionSystem sys = fusion::build_tf_system(sources, regions, assignment, l, tol);
  fusion::Fusiogram fg = fusion::fusiogram(sys, signal);
  fusion::write_csv_matrix(opt.path("grid.csv"), fg.grid, opt.header);
  fusion::Matrix mask(fg.rows, fg.cols, fusion::Field::Real);
  for (std::size_t k = 0; k < fg.mask.size(); ++k) mask.data()[k] = fg.mask[k] ? 1.0 : 0.0;
  fusion::write_csv_matrix(opt.path("mask.csv"), mask, opt.header);
  fusion::write_pgm(opt.path("image.pgm"), fusion::display_transform(fg));
  fusion::write_regions_json(opt.path("borders.json"), sys.regions);
  fusion::Fusiogram norms = fusion::fusiogram_norms(sys, signal);
  fusion::write_csv_matrix(opt.path("norms.csv"), norms.grid, opt.header);
  for (std::size_t k = 0; k < norms.mask.size(); ++k) mask.data()[k] = norms.mask[k] ? 1.0 : 0.0;
  fusion::write_csv_matrix(opt.path("norms_mask.csv"), mask, opt.header);

  fusion::Matrix fc = signal.promoted(fusion::Field::Complex);
  fusion::Matrix rec = fusion::reconstruct_exact(sys.system.frame(), fc, tol);
  double err = (rec - fc).norm() / std::max(fc.norm(), tol.abs);
  fusion::FrameBounds fb = fusion::bounds(sys.system.frame());
  fusion::FrameBounds gb = fusion::vector_frame_bounds(fusion::global_frame(sys.system));

  json report;
  report["schema_version"] = fusion::kSchemaVersion;
  report["round_trip_error"] = err;
  report["fusion_bounds"] = {fb.lower, fb.upper};
  report["global_bounds"] = {gb.lower, gb.upper};
  json reds = json::array();
  for (const auto& s : sources) reds.push_back(s.redundancy);
  report["source_redundancies"] = reds;
  std::ofstream(opt.path("report.json")) << report.dump(2) << "\n";
  std::cout << "round_trip_error=" << fmt(err) << " A=" << fmt(fb.lower) << " B=" << fmt(fb.upper) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite fusion frame computations: bounds, duals, fusiograms"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--tol", opt.tol_rel, "Relative tolerance (default 1e-10)");
  app.add_option("--abs", opt.tol_abs, "Absolute tolerance floor (default 1e-12)");
  app.add_option("--seed", opt.seed, "Seed for randomized subcommands");
  app.add_option("--out", opt.out_dir, "Output directory (default .)");
  app.add_option("--format", opt.format, "Report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--header", opt.header, "Write CSV headers");

  std::string frame_path, mode = "canonical", weights_path, with_path, signal_path, config_path;

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Frame bounds and classification flags");
  bounds_cmd->add_option("frame", frame_path, "Fusion frame descriptor (JSON)")->required();

  CLI::App* dual_cmd = app.add_subcommand("dual", "Compute or verify dual fusion frames");
  dual_cmd->add_option("frame", frame_path, "Fusion frame descriptor (JSON)")->required();
  dual_cmd->add_option("--mode", mode, "canonical|alternate|from-left-inverse")
      ->check(CLI::IsMember({"canonical", "alternate", "from-left-inverse"}));
  dual_cmd->add_option("--weights", weights_path, "CSV file with dual weights");
  dual_cmd->add_option("--with", with_path, "Second frame for alternate verification");

  CLI::App* fus_cmd = app.add_subcommand("fusiogram", "Time-frequency fusion frame pipeline");
  fus_cmd->add_option("signal", signal_path, "Signal CSV (length L)")->required();
  fus_cmd->add_option("config", config_path, "TF configuration (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bounds_cmd->parsed()) return cmd_bounds(opt, frame_path);
    if (dual_cmd->parsed()) return cmd_dual(opt, frame_path, mode, weights_path, with_path);
    if (fus_cmd->parsed()) return cmd_fusiogram(opt, signal_path, config_path);
  } catch (const fusion::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fusion::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fusion::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
