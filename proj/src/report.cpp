#include "gisin/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace gisin {

namespace {

nlohmann::json vec(const Vec3& v) { return nlohmann::json::array({v[0], v[1], v[2]}); }

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const nlohmann::json& node, const std::string& prefix, std::ostringstream& out) {
  auto join = [&prefix](const std::string& key) { return prefix.empty() ? key : prefix + "." + key; };
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, join(key), out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], join(std::to_string(i)), out);
  } else if (node.is_number_float()) {
    out << prefix << ',' << format_double(node.get<double>()) << '\n';
  } else if (node.is_string()) {
    out << prefix << ',' << csv_field(node.get<std::string>()) << '\n';
  } else if (node.is_null()) {
    out << prefix << ",\n";
  } else {
    out << prefix << ',' << node.dump() << '\n';
  }
}

} // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

nlohmann::json to_json(const Bipartition& p, std::size_t index) {
  return {{"index", index}, {"label", p.label()}, {"A", p.parties_a}, {"B", p.parties_b},
          {"dim_a", p.dim_a}, {"dim_b", p.dim_b}};
}

nlohmann::json to_json(const Generator& g) {
  return {{"dim", g.dim}, {"j", g.j}, {"k", g.k}, {"index", g.index()}};
}

nlohmann::json to_json(const MeasurementSetting& s) {
  return {{"a1", vec(s.a1)}, {"a2", vec(s.a2)}, {"b1", vec(s.b1)}, {"b2", vec(s.b2)}};
}

nlohmann::json to_json(const ViolationRecord& r) {
  nlohmann::json doc;
  doc["partition"] = to_json(r.provenance.partition, r.partition_index);
  doc["alpha"] = to_json(r.provenance.a);
  doc["beta"] = to_json(r.provenance.b);
  doc["degenerate"] = r.degenerate;
  doc["weight"] = r.weight;
  doc["concurrence"] = r.concurrence;
  doc["max_violation"] = r.max_violation;
  doc["settings"] = r.settings ? to_json(*r.settings) : nlohmann::json(nullptr);
  return doc;
}

nlohmann::json to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const SweepReport& report, bool with_records) {
  nlohmann::json doc;
  doc["kind"] = to_string(report.kind);
  doc["dims"] = report.dims;
  doc["tolerance"] = report.tolerance;
  doc["verdict"] = to_string(report.verdict);
  doc["projection_count"] = report.records.size();
  doc["best_violation"] = report.best_violation();
  doc["best_index"] = report.best ? nlohmann::json(*report.best) : nlohmann::json(nullptr);
  doc["best"] = report.best ? to_json(*report.best_record()) : nlohmann::json(nullptr);
  if (with_records) {
    auto records = nlohmann::json::array();
    for (const auto& r : report.records) records.push_back(to_json(r));
    doc["records"] = std::move(records);
  }
  return doc;
}

nlohmann::json to_json(const DistillWitness& w) {
  nlohmann::json doc;
  doc["verdict"] = to_string(w.verdict);
  doc["best_violation"] = w.best_violation;
  if (w.verdict != Distillability::Distillable) {
    doc["record"] = nullptr;
    doc["projectors"] = nullptr;
    doc["output"] = nullptr;
    return doc;
  }
  doc["record"] = to_json(*w.record);
  doc["projectors"] = {{"P", to_json(w.projectors->p)}, {"Q", to_json(w.projectors->q)}};
  doc["output"] = to_json(w.output);
  doc["success_weight"] = w.success_weight;
  doc["output_concurrence"] = w.output_concurrence;
  doc["output_min_pt_eigenvalue"] = w.output_min_pt_eigenvalue;
  return doc;
}

nlohmann::json to_json(const TrialStatistics& s) {
  return {
      {"dims", s.dims},
      {"n", s.n},
      {"seed", s.seed},
      {"tolerance", s.tolerance},
      {"entangled_threshold", s.entangled_threshold},
      {"separable_threshold", s.separable_threshold},
      {"counts",
       {{"entangled_violating", s.entangled_violating},
        {"entangled_not_violating", s.entangled_not_violating},
        {"separable_violating", s.separable_violating},
        {"separable_quiet", s.separable_quiet},
        {"indeterminate", s.indeterminate}}},
      {"min_best_violation", finite_or_null(s.min_best_violation)},
      {"max_best_violation", finite_or_null(s.max_best_violation)},
      {"max_gisin_gap", s.max_gisin_gap},
      {"theorem_holds", s.theorem_holds()},
  };
}

nlohmann::json to_json(const std::vector<PptEntry>& entries) {
  auto out = nlohmann::json::array();
  for (const auto& e : entries) {
    out.push_back({{"partition", to_json(e.partition, e.index)},
                   {"min_eigenvalue", e.result.min_eigenvalue},
                   {"is_ppt", e.result.is_ppt}});
  }
  return out;
}

std::string flat_csv(const nlohmann::json& doc) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(doc, "", out);
  return out.str();
}

} // namespace gisin
