#pragma once

#include <string>

#include <json.hpp>

#include "gsteer/gaussian.hpp"

namespace gsteer {

/// States travel as JSON objects
///   {"n_modes": k, "ordering": "xp-interleaved", "matrix": [[...], ...]}
/// with a 2k x 2k numeric matrix.  The ordering tag is mandatory and only
/// "xp-interleaved" is accepted; anything else is a hard error, never a
/// silent reinterpretation.
inline constexpr const char* kOrderingTag = "xp-interleaved";

nlohmann::json cm_to_json(const CovarianceMatrix& g);

/// Parse and structurally validate a state object.  Physicality is *not*
/// checked here; operations that require it test it themselves.
CovarianceMatrix cm_from_json(const nlohmann::json& j);

CovarianceMatrix read_state_file(const std::string& path);

void write_state_file(const std::string& path, const CovarianceMatrix& g);

/// Pretty-printed JSON text of a state (2-space indent, trailing newline).
std::string cm_to_string(const CovarianceMatrix& g);

} // namespace gsteer
