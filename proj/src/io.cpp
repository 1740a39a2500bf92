#include "opq/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"

namespace opq {

std::string fmt_csv(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt_csv(row[i]);
    os << "\n";
  }
}

void write_matrix_market(std::ostream& os, const TridiagonalOperator& h) {
  const int n = h.size();
  int nnz = n + 2 * (n - 1);
  if (h.symmetric) nnz = n + (n - 1);
  os << "%%MatrixMarket matrix coordinate real "
     << (h.symmetric ? "symmetric" : "general") << "\n";
  os << n << " " << n << " " << nnz << "\n";
  for (int i = 0; i < n; ++i) {
    os << i + 1 << " " << i + 1 << " " << fmt_csv(h.diag[i]) << "\n";
    if (i + 1 < n) {
      os << i + 2 << " " << i + 1 << " " << fmt_csv(h.sub[i]) << "\n";
      if (!h.symmetric)
        os << i + 1 << " " << i + 2 << " " << fmt_csv(h.super[i]) << "\n";
    }
  }
}

void write_csv_triplets(std::ostream& os, const TridiagonalOperator& h) {
  os << "x,y,value\n";
  const int n = h.size();
  for (int i = 0; i < n; ++i) {
    os << i << "," << i << "," << fmt_csv(h.diag[i]) << "\n";
    if (i + 1 < n) {
      os << i << "," << i + 1 << "," << fmt_csv(h.super[i]) << "\n";
      os << i + 1 << "," << i << "," << fmt_csv(h.sub[i]) << "\n";
    }
  }
}

nlohmann::json report_to_json(const SuiteReport& rep) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rep.records) {
    records.push_back({{"family", r.family},
                       {"params", r.params},
                       {"check", r.check},
                       {"residual", r.residual},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass},
                       {"skipped", r.skipped},
                       {"note", r.note}});
  }
  return {{"meta",
           {{"passed", rep.passed},
            {"failed", rep.failed},
            {"skipped", rep.skipped}}},
          {"data", records}};
}

std::string report_table(const SuiteReport& rep, bool failures_only) {
  std::ostringstream os;
  os << std::left << std::setw(32) << "family" << std::setw(44) << "params"
     << std::setw(28) << "check" << std::setw(12) << "residual"
     << std::setw(12) << "tol" << "status\n";
  for (const auto& r : rep.records) {
    if (failures_only && (r.pass || r.skipped)) continue;
    std::string status = r.skipped ? "SKIP" : (r.pass ? "ok" : "FAIL");
    char res[24];
    std::snprintf(res, sizeof res, "%.3g", r.residual);
    char tol[24];
    std::snprintf(tol, sizeof tol, "%.1g", r.tolerance);
    os << std::left << std::setw(32) << r.family << std::setw(44) << r.params
       << std::setw(28) << r.check << std::setw(12) << (r.skipped ? "-" : res)
       << std::setw(12) << (r.skipped ? "-" : tol) << status;
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << "\n";
  }
  os << "passed " << rep.passed << ", failed " << rep.failed << ", skipped "
     << rep.skipped << "\n";
  return os.str();
}

nlohmann::json catalog_metadata_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : Catalog::instance().families()) {
    out.push_back({{"id", s.info.id},
                   {"finite", s.info.finite},
                   {"q_type", s.info.q_type},
                   {"parameters", s.info.param_names},
                   {"ranges", s.info.ranges_text},
                   {"duality", s.info.duality},
                   {"reference", s.info.ks_ref}});
  }
  return out;
}

CustomFamily read_bd_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  CustomFamily cf;
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string a, b, c;
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    std::getline(ls, c, ',');
    if (!header_done) {
      header_done = true;
      try {
        (void)std::stod(a);
      } catch (...) {
        continue;  // header row
      }
    }
    cf.B.push_back(std::stod(b));
    cf.D.push_back(std::stod(c));
  }
  if (cf.B.size() < 2) throw Error(path + ": expected rows x,B,D");
  return cf;
}

}  // namespace opq
