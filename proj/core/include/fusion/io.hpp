#ifndef FUSION_IO_HPP
#define FUSION_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "fusion/duality.hpp"
#include "fusion/frame.hpp"
#include "fusion/reconstruct.hpp"
#include "fusion/system.hpp"
#include "fusion/tf.hpp"

namespace fusion {

inline constexpr int kSchemaVersion = 1;

/// Scalar formatting used by every CSV/JSON surface: '.' decimal separator,
/// complex entries as "a+bi".
std::string format_scalar(cplx z, Field field);
cplx parse_scalar(const std::string& text);

/// CSV matrix: one row per line, comma separated, no header by default.
/// The field tag is inferred on read: any entry containing 'i' makes the
/// matrix complex. Writing a complex-tagged matrix always emits "a+bi".
Matrix read_csv_matrix(const std::string& path);
void write_csv_matrix(const std::string& path, const Matrix& m, bool header = false);

/// Frame descriptor JSON:
/// {schema_version, field, ambient_dim,
///  components: [{weight, spanning_vectors: [[...]]}],
///  local_frames (optional): [[[...frame vectors...]]]}.
/// Spanning vectors are orthonormalized and validated on load.
FusionFrame load_frame(const std::string& path, const Tolerance& tol = {});
/// Loads the system when "local_frames" is present; nullopt otherwise.
std::optional<FusionFrameSystem> load_system(const std::string& path, const Tolerance& tol = {});
void write_frame_json(const std::string& path, const FusionFrame& frame);
void write_system_json(const std::string& path, const FusionFrameSystem& sys);

void write_certificate_json(const std::string& path, const QDualCertificate& cert,
                            const std::string& mode);

/// Iteration trace as CSV rows (n, error, bound), bound = rate^n * ||f||.
void write_trace_csv(const std::string& path, const IterationTrace& trace, bool header = false);

/// Coefficient array as an L x N CSV matrix, one column per block.
void write_coefficients_csv(const std::string& path, const CoefficientArray& c, bool header = false);
CoefficientArray read_coefficients_csv(const std::string& path);

void write_fusiogram_csv(const std::string& grid_path, const std::string& mask_path, const Fusiogram& fg);
void write_regions_json(const std::string& path, const std::vector<TFRegion>& regions);
/// 8-bit binary PGM (P5, maxval 255) of the display transform; the top
/// image row is the highest frequency.
void write_pgm(const std::string& path, const Matrix& display);

} // namespace fusion

#endif
