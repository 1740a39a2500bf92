#ifndef OPQ_IO_HPP
#define OPQ_IO_HPP

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "opq/tridiagonal.hpp"
#include "opq/verification.hpp"

namespace opq {

// CSV columns carry 12 significant digits, JSON carries full precision
std::string fmt_csv(double v);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_matrix_market(std::ostream& os, const TridiagonalOperator& h);
void write_csv_triplets(std::ostream& os, const TridiagonalOperator& h);

nlohmann::json report_to_json(const SuiteReport& rep);
std::string report_table(const SuiteReport& rep, bool failures_only = false);

nlohmann::json catalog_metadata_json();

CustomFamily read_bd_csv(const std::string& path);

}  // namespace opq

#endif
