#include "fusion/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fusion {

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("malformed number: '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("malformed number: '" + s + "'");
  return v;
}

json read_json(const std::string& path) {
  auto in = open_in(path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in " + path);
  return j;
}

cplx entry_from_json(const json& v, Field field, const char* where) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_string()) {
    cplx z = parse_scalar(v.get<std::string>());
    if (field == Field::Real && z.imag() != 0.0)
      throw ParseError(std::string(where) + ": complex entry in a real-tagged descriptor");
    return z;
  }
  throw ParseError(std::string(where) + ": entries must be numbers or scalar strings");
}

Matrix matrix_from_vector_list(const json& vecs, std::size_t ambient, Field field, const char* where) {
  if (!vecs.is_array() || vecs.empty()) throw ParseError(std::string(where) + ": expected a nonempty array");
  Matrix m(ambient, vecs.size(), field);
  std::size_t j = 0;
  for (const auto& vec : vecs) {
    if (!vec.is_array() || vec.size() != ambient)
      throw ParseError(std::string(where) + ": vector length does not match ambient_dim");
    std::size_t i = 0;
    for (const auto& v : vec) m(i++, j) = entry_from_json(v, field, where);
    ++j;
  }
  return m;
}

json vector_list_of_matrix(const Matrix& m) {
  json vecs = json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    json vec = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m.field() == Field::Real)
        vec.push_back(m(i, j).real());
      else
        vec.push_back(format_scalar(m(i, j), m.field()));
    }
    vecs.push_back(vec);
  }
  return vecs;
}

} // namespace

std::string format_scalar(cplx z, Field field) {
  if (field == Field::Real) return format_double(z.real());
  std::string out = format_double(z.real());
  out += z.imag() < 0.0 ? "-" : "+";
  out += format_double(std::abs(z.imag()));
  out += "i";
  return out;
}

cplx parse_scalar(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return cplx(parse_double(s), 0.0);
  s.pop_back();
  if (s.empty() || s == "+") return cplx(0.0, 1.0);
  if (s == "-") return cplx(0.0, -1.0);
  // split at the last +/- that is not a leading sign or an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    char c = s[k];
    if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return cplx(0.0, parse_double(s));
  std::string re = s.substr(0, split);
  std::string im = s.substr(split);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return cplx(parse_double(re), parse_double(im));
}

Matrix read_csv_matrix(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::vector<cplx>> rows;
  bool complex_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<cplx> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.find('i') != std::string::npos) complex_seen = true;
      row.push_back(parse_scalar(cell));
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(path + ": ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": empty CSV");
  Matrix m(rows.size(), rows.front().size(), complex_seen ? Field::Complex : Field::Real);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_csv_matrix(const std::string& path, const Matrix& m, bool header) {
  auto out = open_out(path);
  if (header) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << "c" << j;
    out << "\n";
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_scalar(m(i, j), m.field());
    out << "\n";
  }
}

namespace {

struct ParsedDescriptor {
  FusionFrame frame;
  json local_frames; // null when absent
  Field field;
};

ParsedDescriptor parse_descriptor(const std::string& path, const Tolerance& tol) {
  json j = read_json(path);
  if (!j.is_object()) throw ParseError(path + ": expected a JSON object");
  std::string field_name_str = j.value("field", "real");
  Field field;
  if (field_name_str == "real")
    field = Field::Real;
  else if (field_name_str == "complex")
    field = Field::Complex;
  else
    throw ParseError(path + ": field must be 'real' or 'complex'");
  if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_unsigned())
    throw ParseError(path + ": missing ambient_dim");
  std::size_t ambient = j["ambient_dim"].get<std::size_t>();
  if (ambient == 0) throw ParseError(path + ": ambient_dim must be positive");
  if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
    throw ParseError(path + ": missing components");
  std::vector<WeightedSubspace> comps;
  for (const auto& comp : j["components"]) {
    if (!comp.is_object() || !comp.contains("spanning_vectors"))
      throw ParseError(path + ": component without spanning_vectors");
    double weight = comp.value("weight", 1.0);
    Matrix span = matrix_from_vector_list(comp["spanning_vectors"], ambient, field, "spanning_vectors");
    if (!(weight > 0.0)) throw PreconditionError("descriptor: weights must be positive");
    comps.push_back({Subspace::span_of(span, tol), weight});
  }
  return {FusionFrame(std::move(comps)), j.value("local_frames", json()), field};
}

} // namespace

FusionFrame load_frame(const std::string& path, const Tolerance& tol) {
  return parse_descriptor(path, tol).frame;
}

std::optional<FusionFrameSystem> load_system(const std::string& path, const Tolerance& tol) {
  ParsedDescriptor d = parse_descriptor(path, tol);
  if (d.local_frames.is_null()) return std::nullopt;
  if (!d.local_frames.is_array() || d.local_frames.size() != d.frame.size())
    throw ParseError(path + ": local_frames must align with components");
  std::vector<LocalFrame> locals;
  for (const auto& lf : d.local_frames) {
    Matrix synth = matrix_from_vector_list(lf, d.frame.ambient_dim(), d.field, "local_frames");
    locals.push_back(make_local_frame(synth, tol));
  }
  return FusionFrameSystem(d.frame, std::move(locals));
}

void write_frame_json(const std::string& path, const FusionFrame& frame) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = field_name(frame.field());
  j["ambient_dim"] = frame.ambient_dim();
  j["components"] = json::array();
  for (const auto& c : frame.components()) {
    json comp;
    comp["weight"] = c.weight;
    comp["spanning_vectors"] = vector_list_of_matrix(c.subspace.basis());
    j["components"].push_back(comp);
  }
  open_out(path) << j.dump(2) << "\n";
}

void write_system_json(const std::string& path, const FusionFrameSystem& sys) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = field_name(sys.frame().field());
  j["ambient_dim"] = sys.ambient_dim();
  j["components"] = json::array();
  j["local_frames"] = json::array();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    json comp;
    comp["weight"] = sys.frame()[i].weight;
    comp["spanning_vectors"] = vector_list_of_matrix(sys.frame()[i].subspace.basis());
    j["components"].push_back(comp);
    j["local_frames"].push_back(vector_list_of_matrix(sys.locals()[i].synthesis));
  }
  open_out(path) << j.dump(2) << "\n";
}

void write_certificate_json(const std::string& path, const QDualCertificate& cert,
                            const std::string& mode) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = mode;
  j["residual"] = cert.residual;
  j["reverse_residual"] = cert.reverse_residual;
  j["tolerance"] = cert.tol;
  j["valid"] = cert.valid();
  open_out(path) << j.dump(2) << "\n";
}

void write_trace_csv(const std::string& path, const IterationTrace& trace, bool header) {
  auto out = open_out(path);
  if (header) out << "n,error,bound\n";
  double bound = trace.errors.empty() ? 0.0 : trace.errors.front();
  for (std::size_t n = 0; n < trace.errors.size(); ++n) {
    out << n << "," << format_double(trace.errors[n]) << "," << format_double(bound) << "\n";
    bound *= trace.rate_bound;
  }
}

void write_coefficients_csv(const std::string& path, const CoefficientArray& c, bool header) {
  if (c.blocks.empty()) throw ShapeError("write_coefficients_csv: empty coefficient array");
  write_csv_matrix(path, Matrix::hcat(c.blocks), header);
}

CoefficientArray read_coefficients_csv(const std::string& path) {
  Matrix m = read_csv_matrix(path);
  CoefficientArray c;
  for (std::size_t j = 0; j < m.cols(); ++j) c.blocks.push_back(m.col(j));
  return c;
}

void write_fusiogram_csv(const std::string& grid_path, const std::string& mask_path, const Fusiogram& fg) {
  write_csv_matrix(grid_path, fg.grid);
  Matrix mask(fg.rows, fg.cols, Field::Real);
  for (std::size_t k = 0; k < fg.mask.size(); ++k) mask.data()[k] = cplx(fg.mask[k] ? 1.0 : 0.0, 0.0);
  write_csv_matrix(mask_path, mask);
}

void write_regions_json(const std::string& path, const std::vector<TFRegion>& regions) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["regions"] = json::array();
  for (const auto& r : regions)
    j["regions"].push_back({{"t0", r.t0}, {"t1", r.t1}, {"f0", r.f0}, {"f1", r.f1}});
  open_out(path) << j.dump(2) << "\n";
}

void write_pgm(const std::string& path, const Matrix& display) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& v : display.data()) {
    double x = v.real();
    lo = first ? x : std::min(lo, x);
    hi = first ? x : std::max(hi, x);
    first = false;
  }
  double span = hi - lo;
  out << "P5\n" << display.cols() << " " << display.rows() << "\n255\n";
  for (std::size_t i = display.rows(); i-- > 0;) { // top image row = highest frequency
    for (std::size_t j = 0; j < display.cols(); ++j) {
      double x = display(i, j).real();
      int value = span > 0.0 ? static_cast<int>(std::lround(255.0 * (x - lo) / span)) : 0;
      out.put(static_cast<char>(std::clamp(value, 0, 255)));
    }
  }
}

} // namespace fusion
