#pragma once

#include <string>
#include <vector>

namespace qcirc {

// Built-in example netlists, keyed by circuit name.
std::vector<std::string> fixture_names();
std::string fixture_netlist(const std::string& name);  // JSON text; throws if unknown
void write_fixture_files(const std::string& dir);

}  // namespace qcirc
