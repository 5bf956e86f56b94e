#pragma once

#include <string>

#include "epka/action.hpp"

namespace epka {

// Parsed pieces of a system description, before validation.
struct SystemData {
    KGraphData graph;
    Group group;
    std::vector<GeneratorTables> tables;
};

// Parses the JSON document (see README for the schema).  SchemaError on
// structural problems; no mathematical validation yet.
SystemData parse_system_json(const std::string& json_text);

// Parse + validate + build; ValidationError lists every violated axiom.
SystemPtr load_system(const std::string& json_text);
SystemPtr load_system_file(const std::string& path);

// Report-valued pipeline for `validate`: structural errors throw
// SchemaError, axiom violations land in the report.
ValidationReport validate_system_json(const std::string& json_text);

}  // namespace epka
