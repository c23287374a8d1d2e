#pragma once

// File formats: JSON for domains, fields, brick diagrams and LPP results;
// CSV for birth matrices and decompositions.

#include <iosfwd>
#include <string>
#include <vector>

#include "brokenlines/lines.hpp"
#include "brokenlines/lpp.hpp"
#include "json.hpp"

namespace brokenlines {

nlohmann::json domain_to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json field_to_json(const FlowField& f);
FlowField field_from_json(const nlohmann::json& j);

nlohmann::json brick_to_json(const BrickDiagram& b);
nlohmann::json lpp_to_json(const LppResult& r);
nlohmann::json path_to_json(const LatticePath& p);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

/// Birth matrix CSV: N rows of M comma-separated values; '#' lines ignored.
std::vector<std::vector<double>> read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const std::vector<std::vector<double>>& m);

/// Decomposition CSV: "# domain <json>" and "# mode <float|int>" header
/// lines, then "j,weight,sites" with sites written as "t:x" separated by
/// spaces, left to right.
void write_decomposition_csv(std::ostream& out, const Domain& d, const Decomposition& dec);
struct DecompositionFile {
  DomainPtr domain;
  Decomposition dec;
};
DecompositionFile read_decomposition_csv(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace brokenlines
