#include "jointboost/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace jointboost {

namespace {

std::string quote(const std::string& s) { return "'" + s + "'"; }

void check_name(const std::string& name, const char* what) {
  if (name.empty() || name.find(',') != std::string::npos ||
      name.find('\n') != std::string::npos) {
    throw validation_error("cannot write CSV",
                           {std::string(what) + " name " + quote(name) +
                            " is empty or contains a comma or newline"});
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // fixed newlines on all platforms
  if (!out) {
    throw validation_error("cannot write CSV", {"cannot open " + quote(path) +
                                                " for writing"});
  }
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

/// Collects per-line problems; the reader reports all of them at once.
struct Issues {
  std::string path;
  std::vector<std::string> messages;

  void add(int line, const std::string& message) {
    std::ostringstream os;
    os << path << " line " << line << ": " << message;
    messages.push_back(os.str());
  }
  void raise_if_any(const std::string& summary) const {
    if (!messages.empty()) throw validation_error(summary, messages);
  }
};

bool parse_double(const std::string& field, double& out) {
  if (field.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(field.c_str(), &end);
  return errno == 0 && end == field.c_str() + field.size();
}

bool parse_id(const std::string& field, long long& out) {
  if (field.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtoll(field.c_str(), &end, 10);
  return errno == 0 && end == field.c_str() + field.size();
}

/// Lines of the file with trailing carriage returns stripped; a trailing
/// newline does not produce an empty last line.
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw validation_error("cannot read CSV",
                           {"cannot open " + quote(path) + " for reading"});
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

struct Header {
  std::vector<std::string> long_names;    // stripped of the l_ prefix
  std::vector<std::string> shared_names;  // stripped of the ls_ prefix
  std::vector<std::string> surv_names;    // stripped of the s_ prefix
  std::vector<int> long_cols;             // source column per name
  std::vector<int> shared_cols;
  std::vector<int> surv_cols;
  int n_cols = 0;
};

bool has_prefix(const std::string& s, const std::string& prefix) {
  return s.size() > prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

Header parse_header(const std::vector<std::string>& lines, Issues& issues,
                    const std::vector<std::string>& fixed, bool longitudinal) {
  Header h;
  if (lines.empty()) {
    issues.add(1, "file is empty; expected a header line");
    return h;
  }
  const auto fields = split_line(lines[0]);
  h.n_cols = static_cast<int>(fields.size());
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    if (k >= fields.size() || fields[k] != fixed[k]) {
      issues.add(1, "column " + std::to_string(k + 1) + " must be " + quote(fixed[k]) +
                        (k < fields.size() ? ", found " + quote(fields[k]) : ""));
    }
  }
  for (std::size_t k = fixed.size(); k < fields.size(); ++k) {
    const std::string& name = fields[k];
    const int col = static_cast<int>(k);
    if (longitudinal && has_prefix(name, "ls_")) {
      h.shared_names.push_back(name.substr(3));
      h.shared_cols.push_back(col);
    } else if (longitudinal && has_prefix(name, "l_")) {
      h.long_names.push_back(name.substr(2));
      h.long_cols.push_back(col);
    } else if (!longitudinal && has_prefix(name, "s_")) {
      h.surv_names.push_back(name.substr(2));
      h.surv_cols.push_back(col);
    } else {
      issues.add(1, "covariate column " + quote(name) + " must start with " +
                        (longitudinal ? "'l_' or 'ls_'" : "'s_'"));
    }
  }
  return h;
}

double field_as_double(const std::vector<std::string>& fields, int col,
                       const std::string& column_name, int line, Issues& issues) {
  double v = 0.0;
  if (!parse_double(fields[static_cast<std::size_t>(col)], v)) {
    issues.add(line, "column " + quote(column_name) + ": not a number: " +
                         quote(fields[static_cast<std::size_t>(col)]));
  }
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_longitudinal_csv(const std::string& path, const LongitudinalDataset& data) {
  for (const auto& n : data.long_names) check_name(n, "longitudinal covariate");
  for (const auto& n : data.shared_names) check_name(n, "shared covariate");
  auto out = open_out(path);
  out << "id,time,y";
  for (const auto& n : data.long_names) out << ",l_" << n;
  for (const auto& n : data.shared_names) out << ",ls_" << n;
  out << "\n";
  for (int r = 0; r < data.n_rows(); ++r) {
    out << data.external_id[static_cast<std::size_t>(data.individual[r])] << ','
        << format_double(data.time[r]) << ',' << format_double(data.outcome[r]);
    for (int k = 0; k < data.x_long.cols(); ++k) out << ',' << format_double(data.x_long(r, k));
    for (int k = 0; k < data.x_shared.cols(); ++k)
      out << ',' << format_double(data.x_shared(r, k));
    out << "\n";
  }
  if (!out) throw validation_error("cannot write CSV", {"write to " + quote(path) + " failed"});
}

void write_survival_csv(const std::string& path, const SurvivalDataset& data) {
  for (const auto& n : data.surv_names) check_name(n, "survival covariate");
  auto out = open_out(path);
  out << "id,time,status";
  for (const auto& n : data.surv_names) out << ",s_" << n;
  out << "\n";
  for (int i = 0; i < data.n_individuals(); ++i) {
    out << data.external_id[static_cast<std::size_t>(i)] << ','
        << format_double(data.event_time[i]) << ',' << (data.event[static_cast<std::size_t>(i)] ? 1 : 0);
    for (int k = 0; k < data.x_surv.cols(); ++k) out << ',' << format_double(data.x_surv(i, k));
    out << "\n";
  }
  if (!out) throw validation_error("cannot write CSV", {"write to " + quote(path) + " failed"});
}

LongitudinalDataset read_longitudinal_csv(const std::string& path) {
  const auto lines = read_lines(path);
  Issues issues{path, {}};
  const Header h = parse_header(lines, issues, {"id", "time", "y"}, true);
  issues.raise_if_any("invalid longitudinal CSV");

  std::vector<LongitudinalRow> rows;
  rows.reserve(lines.size());
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;  // ignore blank lines
    const int line_no = static_cast<int>(ln) + 1;
    const auto fields = split_line(lines[ln]);
    if (static_cast<int>(fields.size()) != h.n_cols) {
      issues.add(line_no, "expected " + std::to_string(h.n_cols) + " fields, found " +
                              std::to_string(fields.size()));
      continue;
    }
    LongitudinalRow row;
    if (!parse_id(fields[0], row.id))
      issues.add(line_no, "column 'id': not an integer: " + quote(fields[0]));
    row.time = field_as_double(fields, 1, "time", line_no, issues);
    row.outcome = field_as_double(fields, 2, "y", line_no, issues);
    for (std::size_t k = 0; k < h.long_cols.size(); ++k)
      row.x_long.push_back(
          field_as_double(fields, h.long_cols[k], "l_" + h.long_names[k], line_no, issues));
    for (std::size_t k = 0; k < h.shared_cols.size(); ++k)
      row.x_shared.push_back(field_as_double(fields, h.shared_cols[k],
                                             "ls_" + h.shared_names[k], line_no, issues));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) issues.add(static_cast<int>(lines.size()), "no data rows");
  issues.raise_if_any("invalid longitudinal CSV");
  return make_longitudinal(rows, h.long_names, h.shared_names);
}

SurvivalDataset read_survival_csv(const std::string& path) {
  const auto lines = read_lines(path);
  Issues issues{path, {}};
  const Header h = parse_header(lines, issues, {"id", "time", "status"}, false);
  issues.raise_if_any("invalid survival CSV");

  std::vector<SurvivalRow> rows;
  rows.reserve(lines.size());
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const int line_no = static_cast<int>(ln) + 1;
    const auto fields = split_line(lines[ln]);
    if (static_cast<int>(fields.size()) != h.n_cols) {
      issues.add(line_no, "expected " + std::to_string(h.n_cols) + " fields, found " +
                              std::to_string(fields.size()));
      continue;
    }
    SurvivalRow row;
    if (!parse_id(fields[0], row.id))
      issues.add(line_no, "column 'id': not an integer: " + quote(fields[0]));
    row.event_time = field_as_double(fields, 1, "time", line_no, issues);
    if (fields[2] == "0") {
      row.event = false;
    } else if (fields[2] == "1") {
      row.event = true;
    } else {
      issues.add(line_no, "column 'status': must be 0 or 1, found " + quote(fields[2]));
    }
    for (std::size_t k = 0; k < h.surv_cols.size(); ++k)
      row.x_surv.push_back(
          field_as_double(fields, h.surv_cols[k], "s_" + h.surv_names[k], line_no, issues));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) issues.add(static_cast<int>(lines.size()), "no data rows");
  issues.raise_if_any("invalid survival CSV");
  return make_survival(rows, h.surv_names);
}

}  // namespace jointboost
