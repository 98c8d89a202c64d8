#pragma once

// JSON forms of sequences, verdicts, frame-bound reports, interpolation
// results and Fock series, plus a dense binary matrix dump.

#include <filesystem>
#include <json.hpp>

#include "gcis/fock.hpp"
#include "gcis/gauss_space.hpp"
#include "gcis/generating.hpp"
#include "gcis/lattice.hpp"

namespace gcis {

using json = nlohmann::json;

/// { "kind": "affine"|"periodic"|"explicit", "alpha", "beta", "period",
///   "offsets", "nodes", "index_range": [lo, hi] }. For explicit sequences
/// index_range[0] is the first index; a given hi must match the node count.
/// Throws ConfigInvalid on malformed input, plus the NodeSequence errors.
NodeSequence sequence_from_json(const json& j);
json sequence_to_json(const NodeSequence& seq);

json to_json(const AvdoninVerdict& v);
json to_json(const FockVerdict& v);
json to_json(const DensityEstimate& d);
json to_json(const FrameBoundReport& r);
json to_json(const CoefficientVector& c);
json to_json(const InterpolationResult& r);
json to_json(const FockSeries& f);

/// { "n_lo": int, "re": [...], "im": [...] } ("im" optional).
CoefficientVector coefficients_from_json(const json& j);
/// [[log_mag, phase], ...] with null log_mag for zero coefficients.
FockSeries fock_series_from_json(const json& j);

/// Binary layout: magic "GCISMAT1", then int64 rows.lo, rows.hi, cols.lo,
/// cols.hi, then row-major (re, im) doubles, all little-endian.
void write_matrix_binary(const CollocationMatrix& m, const std::filesystem::path& path);
/// Reads back {rows, cols, entries}; nodes are not stored.
CollocationMatrix read_matrix_binary(const std::filesystem::path& path);

}  // namespace gcis
