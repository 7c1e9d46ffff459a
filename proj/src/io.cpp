#include "vpack/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace vpack {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_field(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                       ": bad decimal value '" + field + "'");
  }
  return value;
}

void require_unit_range(double w, std::size_t line_no) {
  if (!(w >= 0.0)) {
    throw Error(errc::negative_weight,
                "line " + std::to_string(line_no) + ": negative weight");
  }
  if (w > 1.0) {
    throw Error(errc::item_exceeds_capacity,
                "line " + std::to_string(line_no) +
                    ": normalized weight above 1");
  }
}

ordered_json metrics_to_json(const Metrics& m) {
  ordered_json j;
  j["swaps"] = m.swaps;
  j["cursorAdvances"] = m.cursor_advances;
  j["binsOpened"] = m.bins_opened;
  j["overflowEjections"] = m.overflow_ejections;
  j["loopIterations"] = m.loop_iterations;
  return j;
}

ordered_json config_to_json(const RunConfig& config) {
  ordered_json j;
  j["input"] = config.input;
  j["algorithm"] = config.algorithm;
  j["rhoOverride"] =
      config.rho_override ? ordered_json(*config.rho_override) : ordered_json();
  j["debugAssertions"] = config.debug_assertions;
  j["capS"] = config.cap_s ? ordered_json(*config.cap_s) : ordered_json();
  j["capL"] = config.cap_l ? ordered_json(*config.cap_l) : ordered_json();
  return j;
}

ordered_json packing_to_json(const Packing& packing) {
  ordered_json j;
  std::vector<std::size_t> boundaries;
  boundaries.reserve(packing.boundaries.size());
  for (std::size_t b : packing.boundaries) boundaries.push_back(b + 1);
  std::vector<std::size_t> order;
  order.reserve(packing.order.size());
  for (std::size_t idx : packing.order) order.push_back(idx + 1);
  j["boundaries"] = boundaries;
  j["order"] = order;
  return j;
}

}  // namespace

LoadedInstance load_instance_csv(std::istream& in, std::optional<double> cap_s,
                                 std::optional<double> cap_l,
                                 std::optional<double> rho_override) {
  LoadedInstance loaded;
  std::string line;
  if (!std::getline(in, line)) {
    // Empty file: empty two-dimensional instance.
    loaded.inst2 = make_instance({}, rho_override);
    return loaded;
  }
  line = strip_cr(line);

  enum class Format { normalized2, normalized3, raw2 } format;
  if (line == "s,l") {
    format = Format::normalized2;
  } else if (line == "s,l,t") {
    format = Format::normalized3;
  } else if (line == "size,load") {
    format = Format::raw2;
    if (!cap_s || !cap_l) {
      throw Error(errc::parse_error,
                  "raw instance file requires --cap-s and --cap-l");
    }
  } else {
    throw Error(errc::parse_error, "unrecognized CSV header '" + line + "'");
  }

  std::vector<Item> items2;
  std::vector<Item3> items3;
  std::vector<RawItem> raw_items;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    const std::size_t expected = format == Format::normalized3 ? 3 : 2;
    if (fields.size() != expected) {
      throw Error(errc::parse_error, "line " + std::to_string(line_no) +
                                         ": expected " + std::to_string(expected) +
                                         " fields");
    }
    const double a = parse_field(fields[0], line_no);
    const double b = parse_field(fields[1], line_no);
    switch (format) {
      case Format::normalized2:
        require_unit_range(a, line_no);
        require_unit_range(b, line_no);
        items2.push_back({a, b});
        break;
      case Format::normalized3: {
        const double c = parse_field(fields[2], line_no);
        require_unit_range(a, line_no);
        require_unit_range(b, line_no);
        require_unit_range(c, line_no);
        items3.push_back({a, b, c});
        break;
      }
      case Format::raw2:
        raw_items.push_back({a, b});
        break;
    }
  }

  switch (format) {
    case Format::normalized2:
      loaded.inst2 = make_instance(std::move(items2), rho_override);
      break;
    case Format::normalized3:
      loaded.dims = 3;
      loaded.inst3 = make_instance3(std::move(items3), rho_override);
      break;
    case Format::raw2:
      loaded.inst2 = normalize({std::move(raw_items), *cap_s, *cap_l}, rho_override);
      break;
  }
  return loaded;
}

LoadedInstance load_instance_file(const std::string& path,
                                  std::optional<double> cap_s,
                                  std::optional<double> cap_l,
                                  std::optional<double> rho_override) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::parse_error, "cannot open '" + path + "'");
  }
  return load_instance_csv(in, cap_s, cap_l, rho_override);
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_instance_csv(std::ostream& out, std::span<const Item> items) {
  out << "s,l\n";
  for (const Item& it : items) {
    out << format_double(it.s) << ',' << format_double(it.l) << '\n';
  }
}

void write_instance_csv(std::ostream& out, std::span<const Item3> items) {
  out << "s,l,t\n";
  for (const Item3& it : items) {
    out << format_double(it.s) << ',' << format_double(it.l) << ','
        << format_double(it.t) << '\n';
  }
}

ordered_json verification_to_json(const VerificationReport& report) {
  ordered_json j;
  j["feasible"] = report.feasible;
  ordered_json bins = ordered_json::array();
  for (const BinCheck& bin : report.per_bin) {
    ordered_json b;
    b["S"] = bin.s_sum;
    b["L"] = bin.l_sum;
    b["sComplete"] = bin.s_complete;
    b["lComplete"] = bin.l_complete;
    b["complete"] = bin.complete;
    bins.push_back(std::move(b));
  }
  j["perBin"] = std::move(bins);
  j["caseClass"] = std::string(to_string(report.case_class));
  j["boundOk"] = report.bound_ok ? ordered_json(*report.bound_ok) : ordered_json();
  return j;
}

ordered_json make_run_report(const RunConfig& config, const Instance& instance,
                             const Packing& packing, const Metrics& metrics,
                             const VerificationReport& verification,
                             std::uint64_t wall_time_nanos) {
  ordered_json j;
  j["algorithm"] = config.algorithm;
  j["n"] = instance.items.size();
  j["dims"] = 2;
  j["rho"] = instance.rho;
  j["rhoOverridden"] = config.rho_override.has_value();
  j["q"] = packing.bin_count();
  const ordered_json pj = packing_to_json(packing);
  j["boundaries"] = pj["boundaries"];
  j["order"] = pj["order"];
  j["feasible"] = verification.feasible;
  j["caseClass"] = std::string(to_string(verification.case_class));
  ordered_json bins = ordered_json::array();
  for (const BinCheck& bin : verification.per_bin) {
    ordered_json b;
    b["S"] = bin.s_sum;
    b["L"] = bin.l_sum;
    b["sComplete"] = bin.s_complete;
    b["lComplete"] = bin.l_complete;
    b["complete"] = bin.complete;
    bins.push_back(std::move(b));
  }
  j["perBin"] = std::move(bins);
  j["metrics"] = metrics_to_json(metrics);
  j["wallTimeNanos"] = wall_time_nanos;
  j["config"] = config_to_json(config);
  return j;
}

ordered_json make_run_report3(const RunConfig& config, const Instance3& instance,
                              const Packing& packing, const Metrics& metrics,
                              const TriReport& verification,
                              std::uint64_t wall_time_nanos) {
  ordered_json j;
  j["algorithm"] = config.algorithm;
  j["n"] = instance.items.size();
  j["dims"] = 3;
  j["rho"] = instance.rho;
  j["rhoOverridden"] = config.rho_override.has_value();
  j["q"] = packing.bin_count();
  const ordered_json pj = packing_to_json(packing);
  j["boundaries"] = pj["boundaries"];
  j["order"] = pj["order"];
  j["feasible"] = verification.feasible;
  j["caseClass"] = "not-applicable";
  ordered_json bins = ordered_json::array();
  for (const TriBinSums& bin : verification.per_bin) {
    ordered_json b;
    b["S"] = bin.s_sum;
    b["L"] = bin.l_sum;
    b["T"] = bin.t_sum;
    bins.push_back(std::move(b));
  }
  j["perBin"] = std::move(bins);
  j["metrics"] = metrics_to_json(metrics);
  j["wallTimeNanos"] = wall_time_nanos;
  j["config"] = config_to_json(config);
  return j;
}

Packing packing_from_report(const ordered_json& report, std::size_t n) {
  Packing packing;
  if (!report.contains("boundaries") || !report["boundaries"].is_array()) {
    throw Error(errc::parse_error, "report is missing a boundaries array");
  }
  for (const auto& b : report["boundaries"]) {
    if (!b.is_number_integer() || b.get<std::int64_t>() <= 0) {
      throw Error(errc::malformed_boundaries,
                  "boundaries must be positive 1-based positions");
    }
    packing.boundaries.push_back(b.get<std::size_t>() - 1);
  }
  if (report.contains("order") && !report["order"].is_null()) {
    for (const auto& o : report["order"]) {
      if (!o.is_number_integer() || o.get<std::int64_t>() <= 0) {
        throw Error(errc::not_a_permutation,
                    "order must hold positive 1-based indices");
      }
      packing.order.push_back(o.get<std::size_t>() - 1);
    }
  } else {
    packing.order.resize(n);
    for (std::size_t i = 0; i < n; ++i) packing.order[i] = i;
  }
  return packing;
}

}  // namespace vpack
