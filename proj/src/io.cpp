#include "nieval/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "nieval/errors.hpp"

#ifndef NIEVAL_VERSION
#define NIEVAL_VERSION "0.0.0"
#endif

namespace nieval {

using nlohmann::json;

namespace {

std::string trim_field(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

double count_field(const json& obj, const char* key, std::size_t index) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw InputError(fmt::format("model {}: missing numeric field '{}'", index + 1, key));
  }
  const double v = it->get<double>();
  if (!std::isfinite(v) || v < 0.0) {
    throw InputError(fmt::format("model {}: '{}' must be nonnegative", index + 1, key));
  }
  return v;
}

ModelRecord model_from_json(const json& obj, std::size_t index, bool lone) {
  if (!obj.is_object()) throw InputError(fmt::format("model {}: expected an object", index + 1));
  const double tp = count_field(obj, "tp", index);
  const double fp = count_field(obj, "fp", index);
  const double tn = count_field(obj, "tn", index);
  const double fn = count_field(obj, "fn", index);
  std::string name = lone ? "model" : fmt::format("M_{}", index + 1);
  if (const auto it = obj.find("name"); it != obj.end()) {
    if (!it->is_string()) throw InputError(fmt::format("model {}: name must be a string", index + 1));
    name = it->get<std::string>();
  }
  const bool complemented = obj.value("complemented", false);
  return ModelRecord{std::move(name), ConfusionMatrix::analysis(tp, fp, tn, fn), complemented};
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

json domain_json(const Domain& d) { return json::array({d.lo, d.hi}); }

json base_manifest(std::string_view dataset, ClassSizes s, json parameters) {
  json config = {{"dataset", dataset}, {"w1", s.w1}, {"w2", s.w2},
                 {"parameters", std::move(parameters)}};
  json m = config;
  m["tool"] = "nieval";
  m["version"] = NIEVAL_VERSION;
  m["config_hash"] = "fnv1a64:" + fnv1a_hex(config.dump());
  m["columns"] = {"x", "y", "value", "series"};
  m["series"] = json::array();
  return m;
}

void append_curve(Dataset& d, const CurveSamples& c, const char* kind) {
  const std::string series = std::string(kind) + ":" + c.name;
  for (const auto& p : c.points) d.rows.push_back({p.x, p.y, "", series});
  d.manifest["series"].push_back({
      {"name", series},
      {"formula", c.formula},
      {"printed_domain", domain_json(c.printed)},
      {"sampled_domain", domain_json(c.sampled)},
      {"domain_source", c.source == DomainSource::Printed ? "printed" : "observed"},
      {"samples", c.points.size()},
  });
}

void append_points(Dataset& d, const std::vector<SpecialPoint>& points) {
  for (const auto& p : points) d.rows.push_back({p.x, p.y, "", "point:" + p.name});
  if (!points.empty()) {
    d.manifest["series"].push_back({{"name", "point:*"}, {"count", points.size()}});
  }
}

bool whole_within(ClassSizes s, std::uint32_t cap) {
  return std::floor(s.w1) == s.w1 && std::floor(s.w2) == s.w2 && s.w1 + s.w2 <= cap;
}

Dataset surface_dataset(std::string name, const SurfaceGrid& g, json manifest,
                        std::string_view series) {
  Dataset d{std::move(name), {}, std::move(manifest)};
  d.rows.reserve(g.values.size());
  std::size_t infeasible = 0;
  for (std::size_t j = 0; j < g.ys.size(); ++j) {
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
      const std::size_t k = g.index(i, j);
      std::string value;
      if (g.values[k]) {
        value = num(*g.values[k]);
      } else {
        value = g.feasible[k] ? "undefined" : "infeasible";
      }
      if (!g.feasible[k]) ++infeasible;
      d.rows.push_back({g.xs[i], g.ys[j], std::move(value),
                        std::string(series) + (g.feasible[k] ? "" : "-infeasible")});
    }
  }
  d.manifest["axes"] = {{"x", g.x_axis}, {"y", g.y_axis}};
  d.manifest["grid"] = {{"nx", g.xs.size()}, {"ny", g.ys.size()}};
  d.manifest["infeasible_cells"] = infeasible;
  return d;
}

}  // namespace

std::vector<LabelPair> read_label_pairs_csv(std::istream& in, bool has_header) {
  std::vector<LabelPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_field(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InputError(fmt::format("line {}: expected two columns target,predicted", line_no));
    }
    LabelPair pair{trim_field(std::string_view(line).substr(0, comma)),
                   trim_field(std::string_view(line).substr(comma + 1))};
    if (pair.target.empty() || pair.predicted.empty()) {
      throw InputError(fmt::format("line {}: empty label", line_no));
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<ModelRecord> read_models_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("models")) doc = doc["models"];
  std::vector<ModelRecord> models;
  if (doc.is_object()) {
    models.push_back(model_from_json(doc, 0, true));
  } else if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) models.push_back(model_from_json(doc[i], i, false));
  } else {
    throw InputError("expected a JSON object or array of confusion matrices");
  }
  return models;
}

std::string dataset_csv(const Dataset& d) {
  std::string out = "x,y,value,series\n";
  for (const auto& r : d.rows) {
    out += num(r.x);
    out += ',';
    out += num(r.y);
    out += ',';
    out += r.value;
    out += ',';
    out += r.series;
    out += '\n';
  }
  return out;
}

std::string dataset_manifest(const Dataset& d) { return d.manifest.dump(2) + "\n"; }

void write_dataset(const Dataset& d, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << bytes;
  };
  write(dir / (d.name + ".csv"), dataset_csv(d));
  write(dir / (d.name + ".manifest.json"), dataset_manifest(d));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

Dataset projection_map_dataset(MapKind map, ClassSizes sizes, std::size_t n_samples,
                               std::uint32_t scatter_cap) {
  const std::string name(to_string(map));
  Dataset d{name, {}, base_manifest(name, sizes, {{"samples", n_samples},
                                                  {"scatter_cap", scatter_cap}})};
  for (const auto& c : boundary_curves(map, sizes, n_samples)) append_curve(d, c, "continuous");
  append_points(d, special_points(map, sizes));
  if (whole_within(sizes, scatter_cap)) {
    const auto scatter = envelope_scatter(map, static_cast<std::uint32_t>(sizes.w1),
                                          static_cast<std::uint32_t>(sizes.w2), scatter_cap);
    for (const auto& p : scatter.points) d.rows.push_back({p.x, p.ni, "", "integer:scatter"});
    d.manifest["series"].push_back({{"name", "integer:scatter"},
                                    {"count", scatter.points.size()},
                                    {"envelope_violations", scatter.violations}});
  }
  return d;
}

Dataset pr_region_dataset(ClassSizes sizes, std::size_t n_samples, std::uint32_t scatter_cap) {
  Dataset d{"pr-region", {}, base_manifest("pr-region", sizes, {{"samples", n_samples},
                                                                {"scatter_cap", scatter_cap}})};
  const FeasibleRegion region = feasible_region_pr(sizes, n_samples);
  append_curve(d, region.curves[0], "continuous");
  append_curve(d, region.curves[1], "continuous");
  append_curve(d, region.curves[2], "derived");
  append_curve(d, region.curves[3], "derived");
  append_points(d, {region.alpha_ap});
  json matches = json::array();
  for (const auto& m : region.matches) {
    matches.push_back({{"curve", m.printed}, {"constraint", m.derived}, {"max_gap", m.max_gap}});
  }
  d.manifest["matches"] = std::move(matches);
  if (whole_within(sizes, scatter_cap)) {
    const auto pts = integer_pr_points(static_cast<std::uint32_t>(sizes.w1),
                                       static_cast<std::uint32_t>(sizes.w2));
    for (const auto& p : pts) d.rows.push_back({p.p, p.r, "", "integer:feasible"});
    d.manifest["series"].push_back({{"name", "integer:feasible"}, {"count", pts.size()}});
  }
  return d;
}

Dataset pr_surface_dataset(ClassSizes sizes, std::size_t nx, std::size_t ny, SurfaceMode mode) {
  const char* mode_name = mode == SurfaceMode::Ideal ? "ideal" : "actual";
  json manifest = base_manifest("pr-surface", sizes,
                                {{"nx", nx}, {"ny", ny}, {"mode", mode_name}});
  return surface_dataset("pr-surface-" + std::string(mode_name),
                         surface_pr(sizes, nx, ny, mode), std::move(manifest),
                         std::string("continuous:") + mode_name);
}

Dataset fr_surface_dataset(ClassSizes sizes, std::size_t nx, std::size_t ny) {
  json manifest = base_manifest("fr-surface", sizes, {{"nx", nx}, {"ny", ny}});
  return surface_dataset("fr-surface", surface_fr(sizes, nx, ny), std::move(manifest),
                         "continuous:fr");
}

}  // namespace nieval
