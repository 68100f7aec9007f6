#pragma once

#include <string>

#include "aqc/model.hpp"

namespace aqc {

// Parse a model description from JSON text.  Throws ConfigError naming the
// offending key on any schema or validation problem.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ModelSpec model_from_json(const std::string& text);
ModelSpec model_from_file(const std::string& path);

std::string model_to_json(const ModelSpec& model); // round-trip serialization

} // namespace aqc
