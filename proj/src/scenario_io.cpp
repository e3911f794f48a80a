#include "shardsec/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace shardsec {

namespace {

constexpr const char* kCountFields[] = {"N", "K", "M", "M_sel", "n", "N_s"};
constexpr const char* kRationalFields[] = {"r", "R"};

bool is_count_field(const std::string& name) {
  return std::find(std::begin(kCountFields), std::end(kCountFields), name) !=
         std::end(kCountFields);
}

bool is_rational_field(const std::string& name) {
  return std::find(std::begin(kRationalFields), std::end(kRationalFields), name) !=
         std::end(kRationalFields);
}

std::int64_t parse_count(const std::string& field, const std::string& text) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("malformed count field", field + "='" + text + "'");
  }
  return value;
}

Rational parse_resiliency(const std::string& field, const std::string& text) {
  try {
    return parse_rational_text(text);
  } catch (const std::invalid_argument&) {
    throw ValidationError("malformed rational field", field + "='" + text + "'");
  }
}

// Scalar JSON value -> the literal text a user wrote. Doubles round-trip via
// the shortest representation, so 0.333 stays "0.333" (exactly 333/1000).
std::string json_scalar_text(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void set_field(RawParams& raw, const std::string& field, const std::string& text) {
  if (field == "N") raw.total_nodes = parse_count(field, text);
  else if (field == "K") raw.selection_pool = parse_count(field, text);
  else if (field == "M") raw.sybil_ids = parse_count(field, text);
  else if (field == "M_sel") raw.sybil_selected = parse_count(field, text);
  else if (field == "n") raw.committee_size = parse_count(field, text);
  else if (field == "N_s") raw.rounds_per_year = parse_count(field, text);
  else if (field == "r") raw.committee_resiliency = parse_resiliency(field, text);
  else if (field == "R") raw.selection_resiliency = parse_resiliency(field, text);
  else if (field == "label") raw.label = text;
  else throw ValidationError("unknown scenario field", field);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  return cells;
}

const char* kSweepOutputs[] = {"P", "P_prime", "P_double_prime", "A", "bcp"};

std::string sweep_cell(const AttackSummary& summary, const NetworkParams& params,
                       const std::string& output) {
  const SecurityReport& rep = summary.report;
  if (output == "P") return to_scientific(rep.pool_breach, 3);
  if (output == "P_prime") return to_scientific(rep.takeover, 3);
  if (output == "P_double_prime") return to_scientific(rep.attack, 3);
  if (output == "A") return rep.years.to_decimal(2);
  if (output == "bcp") return to_scientific(bcp_comparator(params), 3);
  throw ValidationError("unknown sweep output", output);
}

}  // namespace

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read file: " + file.string());
  return buffer.str();
}

void write_file(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot open file for writing: " + file.string());
  out << content;
  if (!out) throw IoError("cannot write file: " + file.string());
}

RawParams scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("scenario must be a JSON object");
  RawParams raw;
  bool seen[8] = {};
  const std::string required[8] = {"N", "K", "M", "M_sel", "n", "r", "R", "N_s"};
  for (const auto& [key, value] : j.items()) {
    set_field(raw, key, json_scalar_text(value));
    for (int i = 0; i < 8; ++i) {
      if (key == required[i]) seen[i] = true;
    }
  }
  for (int i = 0; i < 8; ++i) {
    if (!seen[i]) throw ValidationError("missing scenario field", required[i]);
  }
  return raw;
}

RawParams scenario_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string header_line, data_line;
  if (!std::getline(in, header_line) || !std::getline(in, data_line)) {
    throw ValidationError("scenario CSV needs a header line and one data row");
  }
  const auto header = split_csv_line(header_line);
  const auto data = split_csv_line(data_line);
  if (header.size() != data.size()) {
    throw ValidationError("scenario CSV header/row width mismatch");
  }
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < header.size(); ++i) j[header[i]] = data[i];
  return scenario_from_json(j);
}

RawParams load_scenario(const std::filesystem::path& file) {
  const std::string text = read_file(file);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("malformed scenario JSON", e.what());
    }
    return scenario_from_json(j);
  }
  return scenario_from_csv(text);
}

SweepSpec sweep_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("sweep must be a JSON object");
  if (!j.contains("base")) throw ValidationError("missing sweep field", "base");
  if (!j.contains("axis")) throw ValidationError("missing sweep field", "axis");
  if (!j.contains("values")) throw ValidationError("missing sweep field", "values");

  SweepSpec spec;
  spec.base = scenario_from_json(j.at("base"));
  spec.axis = j.at("axis").get<std::string>();
  if (!is_count_field(spec.axis) && !is_rational_field(spec.axis)) {
    throw ValidationError("axis is not a parameter field", spec.axis);
  }
  for (const auto& v : j.at("values")) spec.values.push_back(json_scalar_text(v));
  if (spec.values.empty()) throw ValidationError("empty sweep");
  if (j.contains("outputs")) {
    for (const auto& o : j.at("outputs")) {
      const std::string name = o.get<std::string>();
      if (std::find(std::begin(kSweepOutputs), std::end(kSweepOutputs), name) ==
          std::end(kSweepOutputs)) {
        throw ValidationError("unknown sweep output", name);
      }
      spec.outputs.push_back(name);
    }
    if (spec.outputs.empty()) throw ValidationError("empty sweep outputs");
  } else {
    spec.outputs = {"P", "P_prime", "P_double_prime", "A"};
  }
  if (j.contains("tie_M_sel_to_M")) spec.tie_sybil_counts = j.at("tie_M_sel_to_M").get<bool>();
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "base" && key != "axis" && key != "values" && key != "outputs" &&
        key != "tie_M_sel_to_M") {
      throw ValidationError("unknown sweep field", key);
    }
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed sweep JSON", e.what());
  }
  return sweep_from_json(j);
}

RawParams apply_axis(RawParams base, const std::string& axis, const std::string& value,
                     bool tie_sybil_counts) {
  set_field(base, axis, value);
  if (axis == "M" && tie_sybil_counts) set_field(base, "M_sel", value);
  return base;
}

std::string rational_text(const Rational& x) {
  const BigInt& den = boost::multiprecision::denominator(x);
  const std::string num = boost::multiprecision::numerator(x).str();
  return den == 1 ? num : num + "/" + den.str();
}

nlohmann::ordered_json report_json(const AttackSummary& summary, bool include_exact) {
  const SecurityReport& rep = summary.report;
  const NetworkParams& p = rep.params;
  nlohmann::ordered_json j;
  j["label"] = p.label();
  j["method"] = method_label(rep.method);
  j["threshold_mode"] = threshold_mode_label(rep.threshold_mode);
  j["pool_threshold"] = rep.threshold;
  j["params"] = {
      {"N", p.total_nodes()},
      {"K", p.selection_pool()},
      {"M", p.sybil_ids()},
      {"M_sel", p.sybil_selected()},
      {"n", p.committee_size()},
      {"r", rational_text(p.committee_resiliency())},
      {"R", rational_text(p.selection_resiliency())},
      {"N_s", p.rounds_per_year()},
      {"lambda", p.committee_count()},
      {"Lambda", p.id_pool()},
      {"committee_capacity", p.committee_capacity()},
      {"leftover_ids", p.leftover_ids()},
  };
  j["P"] = to_scientific(rep.pool_breach, 3);
  j["P_prime"] = to_scientific(rep.takeover, 3);
  j["P_double_prime"] = to_scientific(rep.attack, 3);
  j["p_e"] = to_scientific(rep.epoch_failure, 3);
  j["E_s"] = rep.rounds.to_decimal(2);
  j["A"] = rep.years.to_decimal(2);
  j["secure"] = summary.secure;
  j["secure_threshold_years"] = rational_text(summary.secure_threshold_years);
  if (include_exact) {
    j["exact"] = {
        {"P", rep.pool_breach.numerator().str() + "/" + rep.pool_breach.denominator().str()},
        {"P_prime", rep.takeover.numerator().str() + "/" + rep.takeover.denominator().str()},
        {"P_double_prime", rep.attack.numerator().str() + "/" + rep.attack.denominator().str()},
    };
  }
  return j;
}

std::string report_csv_header() {
  return "label,N,K,M,M_sel,n,lambda,r,R,N_s,threshold_mode,pool_threshold,method,"
         "P,P_prime,P_double_prime,p_e,E_s,A,secure";
}

std::string report_csv_row(const AttackSummary& summary) {
  const SecurityReport& rep = summary.report;
  const NetworkParams& p = rep.params;
  std::ostringstream out;
  out << p.label() << ',' << p.total_nodes() << ',' << p.selection_pool() << ','
      << p.sybil_ids() << ',' << p.sybil_selected() << ',' << p.committee_size() << ','
      << p.committee_count() << ',' << rational_text(p.committee_resiliency()) << ','
      << rational_text(p.selection_resiliency()) << ',' << p.rounds_per_year() << ','
      << threshold_mode_label(rep.threshold_mode) << ',' << rep.threshold << ','
      << method_label(rep.method) << ',' << to_scientific(rep.pool_breach, 3) << ','
      << to_scientific(rep.takeover, 3) << ',' << to_scientific(rep.attack, 3) << ','
      << to_scientific(rep.epoch_failure, 3) << ',' << rep.rounds.to_decimal(2) << ','
      << rep.years.to_decimal(2) << ',' << (summary.secure ? "true" : "false");
  return out.str();
}

std::string run_sweep_csv(const SweepSpec& spec, const AnalysisOptions& options, unsigned jobs) {
  const std::size_t points = spec.values.size();
  std::vector<std::string> rows(points);

  const auto evaluate = [&](std::size_t index) {
    const std::string& value = spec.values[index];
    try {
      const RawParams raw = apply_axis(spec.base, spec.axis, value, spec.tie_sybil_counts);
      const NetworkParams params = NetworkParams::validate(raw);
      const AttackSummary summary = analyze(params, options);
      std::ostringstream row;
      row << value;
      for (const auto& output : spec.outputs) {
        row << ',' << sweep_cell(summary, params, output);
      }
      rows[index] = row.str();
    } catch (const ValidationError& e) {
      throw ValidationError(e.invariant(),
                            std::string(e.what()) + " at " + spec.axis + "=" + value);
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, points));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < points; ++i) evaluate(i);
  } else {
    std::vector<std::future<void>> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < points; i += jobs) evaluate(i);
      }));
    }
    for (auto& worker : workers) worker.get();  // rethrows the first failure
  }

  std::ostringstream out;
  out << spec.axis;
  for (const auto& output : spec.outputs) out << ',' << output;
  out << '\n';
  for (const auto& row : rows) out << row << '\n';
  return out.str();
}

}  // namespace shardsec
