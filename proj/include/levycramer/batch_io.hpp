#pragma once

#include <iosfwd>
#include <string>

#include "levycramer/pathsim.hpp"

namespace levycramer {

// Batch file formats.
//
// CSV: `# key=value` comment header (model, seed, step, tol, horizon),
// then one value per line, printed with 17 significant digits so a
// round-trip reproduces the batch bit-for-bit.
//
// JSON: envelope {"model":..., "seed":..., "step":..., "tol":...,
// "horizon":..., "values":[...]}.

void write_batch_csv(const SampleBatch& batch, std::ostream& os);
SampleBatch read_batch_csv(std::istream& is);

std::string batch_to_json(const SampleBatch& batch);
SampleBatch batch_from_json(const std::string& text);

// File helpers; format picked by `format` ("csv"|"json").
void save_batch(const SampleBatch& batch, const std::string& path,
                const std::string& format);
SampleBatch load_batch(const std::string& path);

}  // namespace levycramer
