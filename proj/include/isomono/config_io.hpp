#pragma once

#include "isomono/flow.hpp"

#include <optional>

#include <json.hpp>

namespace isomono {

// Malformed document; `pointer` is the JSON pointer of the offending field.
class SchemaError : public Error {
public:
    SchemaError(const std::string& pointer, const std::string& message)
        : Error(pointer + ": " + message), pointer(pointer) {}
    std::string pointer;
};

struct ParsedInput {
    ConnectionConfig config;
    std::optional<DarbouxState> state;
    std::optional<DeformationVector> deformation;
};

constexpr int kConfigSchemaVersion = 1;

nlohmann::json complex_to_json(cplx z);
nlohmann::json complex_list_to_json(const cvec& v);

// Throws SchemaError on structural problems only; no validation.
ParsedInput parse_config_json(const nlohmann::json& doc);
// Reads the file, parses it and runs validate / validate_state. Validation failures are
// thrown as ValidationError with the messages joined by "; ".
ParsedInput parse_config(const std::string& path, const Tolerances& tol = {});

nlohmann::json config_to_json(const ConnectionConfig& config, const DarbouxState* state = nullptr,
                              const DeformationVector* deformation = nullptr);

nlohmann::json rational_to_json(const RationalFunction& f);

}  // namespace isomono
