#pragma once

#include <string>

#include <json.hpp>

#include "cmv/coefficients.hpp"

namespace cmv {

using json = nlohmann::json;

json to_json(cplx v);
json to_json(const Mat& a);
cplx complex_from_json(const json& j);
Mat matrix_from_json(const json& j);

// {"m", "k_min", "k_max", "alphas": {"<k>": matrix}}; errors name the offending site.
VerblunskySequence sequence_from_json(const json& j);
json sequence_to_json(const VerblunskySequence& seq);

json read_json_file(const std::string& path);
// Writes to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace cmv
