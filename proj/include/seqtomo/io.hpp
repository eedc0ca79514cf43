#pragma once

#include <string>

#include <json.hpp>

#include "seqtomo/instrument.hpp"
#include "seqtomo/recon.hpp"

namespace seqtomo::io {

// Ordered keys keep dumped files byte-stable across runs.
using json = nlohmann::ordered_json;

// Complex matrix schema: array of rows, each entry a [re, im] pair.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

// Instrument schema: {dim, outcomes, operations, label}, operations an
// array (one per outcome) of arrays of Kraus matrices.
json instrument_to_json(const Instrument& instr);
Instrument instrument_from_json(const json& j);

json batch_to_json(const TrajectoryBatch& batch);
// The outcome count comes from the caller (the batch file does not store
// it); keys are parsed per-digit, or on commas when m > 9.
TrajectoryBatch batch_from_json(const json& j, int outcomes);

std::vector<Effect> effects_from_json(const json& j, const Tolerances& tol = {});

RealVector probabilities_from_json(const json& j);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Canonical serialization used for all file output: 2-space indent and a
// trailing newline.
std::string to_pretty_string(const json& j);

} // namespace seqtomo::io
