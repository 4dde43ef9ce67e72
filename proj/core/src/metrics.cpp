#include "abssim/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "abssim/errors.hpp"

namespace abssim {

namespace {

const char* kHeader =
    "round,sim_time,loss,k_t,tau_t,uploads,downloads,discarded,max_staleness,mean_staleness";

double parse_double(const std::string& field) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw InputError("metrics csv: bad numeric field '" + field + "'");
  return v;
}

long long parse_int(const std::string& field) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw InputError("metrics csv: bad integer field '" + field + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records) {
  out << kHeader << '\n';
  for (const auto& r : records) {
    out << r.round << ',' << format_double(r.sim_time) << ',' << format_double(r.loss)
        << ',' << r.k_t << ',' << format_double(r.tau_t) << ',' << r.uploads << ','
        << r.downloads << ',' << r.discarded << ',' << r.max_staleness << ','
        << format_double(r.mean_staleness) << '\n';
  }
}

void write_metrics_csv_file(const std::string& path, const std::vector<MetricsRecord>& records) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  write_metrics_csv(out, records);
}

std::vector<MetricsRecord> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw InputError("metrics csv: missing or unexpected header");
  std::vector<MetricsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) throw InputError("metrics csv: expected 10 fields per row");
    MetricsRecord r;
    r.round = static_cast<int>(parse_int(f[0]));
    r.sim_time = parse_double(f[1]);
    r.loss = parse_double(f[2]);
    r.k_t = static_cast<int>(parse_int(f[3]));
    r.tau_t = parse_double(f[4]);
    r.uploads = parse_int(f[5]);
    r.downloads = parse_int(f[6]);
    r.discarded = parse_int(f[7]);
    r.max_staleness = static_cast<int>(parse_int(f[8]));
    r.mean_staleness = parse_double(f[9]);
    records.push_back(r);
  }
  return records;
}

std::vector<MetricsRecord> read_metrics_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open for reading: " + path);
  return read_metrics_csv(in);
}

}  // namespace abssim
