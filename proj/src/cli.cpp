#include "nieval/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nieval/closed_form.hpp"
#include "nieval/errors.hpp"
#include "nieval/evaluation.hpp"
#include "nieval/io.hpp"
#include "nieval/relation_maps.hpp"

namespace nieval {

namespace {

using nlohmann::json;

struct InputOptions {
  std::string path;
  std::string format;  // csv-pairs | json-matrix; empty = by extension
  std::string positive = "1";
  std::string negative;
  bool header = false;
};

struct RunConfig {
  InputOptions input;
  std::string output = "text";
  int decimals = 4;
  double tolerance = 1e-9;
  bool literal_def4 = false;

  std::string map_kind;
  double w1 = 50.0;
  double w2 = 50.0;
  std::size_t samples = kDefaultCurveSamples;
  std::size_t nx = kDefaultGrid;
  std::size_t ny = kDefaultGrid;
  std::string mode = "actual";
  bool swap_classes = false;
  std::uint32_t scatter_cap = kDefaultScatterCap;
  std::string out_dir = ".";
};

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-i,--input", cfg.input.path, "Input file")->required()->check(CLI::ExistingFile);
  cmd->add_option("-f,--format", cfg.input.format, "csv-pairs or json-matrix (default: by extension)")
      ->check(CLI::IsMember({"csv-pairs", "json-matrix"}));
  cmd->add_option("--positive", cfg.input.positive, "Positive label for csv-pairs");
  cmd->add_option("--negative", cfg.input.negative, "Negative label for csv-pairs");
  cmd->add_flag("--header", cfg.input.header, "csv-pairs input has a header line");
  cmd->add_option("-o,--output", cfg.output, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_option("--decimals", cfg.decimals, "Decimal places for reported ratios")
      ->check(CLI::Range(0, 17));
}

std::vector<ModelRecord> load_models(const InputOptions& in) {
  std::string format = in.format;
  if (format.empty()) {
    format = std::filesystem::path(in.path).extension() == ".csv" ? "csv-pairs" : "json-matrix";
  }
  std::ifstream file(in.path);
  if (!file) throw InputError("cannot open " + in.path);
  if (format == "json-matrix") return read_models_json(file);

  const auto pairs = read_label_pairs_csv(file, in.header);
  BinaryAlphabet alphabet{in.positive, std::nullopt};
  if (!in.negative.empty()) alphabet.negative = in.negative;
  const auto name = std::filesystem::path(in.path).stem().string();
  return {ModelRecord{name, from_label_pairs(pairs, alphabet), false}};
}

TableFormat table_format(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "json") return TableFormat::Json;
  return TableFormat::Text;
}

std::string fixed(double v, int decimals) { return fmt::format("{:.{}f}", v, decimals); }

json ratio_json(const Ratio& r) { return r ? json(*r) : json(nullptr); }

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  const auto models = load_models(cfg.input);
  std::vector<DispatchResult> paths;
  for (const auto& m : models) {
    if (!m.report().ni) {
      throw DomainError("model '" + m.display_name() + "': target entropy is zero");
    }
    paths.push_back(dispatch_ni(m.cm, cfg.tolerance));
  }

  if (cfg.output == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < models.size(); ++i) {
      const auto& m = models[i];
      const auto rep = m.report();
      json forms = json::object();
      for (const auto& f : paths[i].evaluated()) forms[std::string(f.form)] = f.value;
      arr.push_back({{"model", m.display_name()},
                     {"tp", m.cm.tp()}, {"fp", m.cm.fp()}, {"tn", m.cm.tn()}, {"fn", m.cm.fn()},
                     {"accuracy", rep.accuracy},
                     {"precision", ratio_json(rep.precision)},
                     {"recall", ratio_json(rep.recall)},
                     {"false_alarm", ratio_json(rep.false_alarm)},
                     {"ni", ratio_json(rep.ni)},
                     {"case", to_string(paths[i].case_id)},
                     {"ni_direct", paths[i].direct},
                     {"ni_closed_form", paths[i].forms[0].value},
                     {"closed_forms", std::move(forms)},
                     {"path_difference", paths[i].max_deviation()},
                     {"quarantined", paths[i].quarantined}});
    }
    out << arr.dump(2) << "\n";
    return kExitOk;
  }

  out << table_report(models, table_format(cfg.output), cfg.decimals);
  if (cfg.output == "csv") {
    out << "\nmodel,case,ni_direct,ni_closed_form,path_difference,quarantined\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
      out << fmt::format("{},{},{:.17g},{:.17g},{:.3g},{}\n", models[i].display_name(),
                         to_string(paths[i].case_id), paths[i].direct,
                         paths[i].forms[0].value, paths[i].max_deviation(),
                         paths[i].quarantined ? "true" : "false");
    }
    return kExitOk;
  }
  out << "\n";
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& p = paths[i];
    out << fmt::format("{}: {}  NI direct {}  closed form {} ({})  |delta| {:.3g}{}\n",
                       models[i].display_name(), to_string(p.case_id),
                       fixed(p.direct, cfg.decimals), fixed(p.forms[0].value, cfg.decimals),
                       p.forms[0].form, p.max_deviation(),
                       p.quarantined ? "  QUARANTINED: closed form disagrees, direct value used" : "");
  }
  return kExitOk;
}

int cmd_ni(const RunConfig& cfg, std::ostream& out) {
  const auto models = load_models(cfg.input);
  json arr = json::array();
  for (const auto& m : models) {
    const Ratio ni = m.report().ni;
    if (!ni) throw DomainError("model '" + m.display_name() + "': target entropy is zero");
    if (cfg.output == "json") {
      arr.push_back({{"model", m.display_name()}, {"ni", *ni}});
    } else if (cfg.output == "csv") {
      out << m.display_name() << "," << fixed(*ni, cfg.decimals) << "\n";
    } else {
      out << m.display_name() << "  " << fixed(*ni, cfg.decimals) << "\n";
    }
  }
  if (cfg.output == "json") out << arr.dump(2) << "\n";
  return kExitOk;
}

int cmd_case(const RunConfig& cfg, std::ostream& out) {
  const auto models = load_models(cfg.input);
  json arr = json::array();
  for (const auto& m : models) {
    const auto id = to_string(classify_case(m.cm));
    if (cfg.output == "json") {
      arr.push_back({{"model", m.display_name()}, {"case", id}});
    } else if (cfg.output == "csv") {
      out << m.display_name() << "," << id << "\n";
    } else {
      out << m.display_name() << "  " << id << "\n";
    }
  }
  if (cfg.output == "json") out << arr.dump(2) << "\n";
  return kExitOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  const auto models = load_models(cfg.input);
  const auto mode = cfg.literal_def4 ? CompareMode::Literal : CompareMode::Normalized;
  const Ranking ranking = rank(models, mode);
  if (cfg.output == "json") {
    json order = json::array();
    for (const auto& m : ranking.order) order.push_back(m.display_name());
    json rationale = json::array();
    for (std::size_t i = 0; i < ranking.rationale.size(); ++i) {
      rationale.push_back({{"above", ranking.order[i].display_name()},
                           {"below", ranking.order[i + 1].display_name()},
                           {"rule", to_string(ranking.rationale[i])}});
    }
    out << json{{"ranking", ranking.to_string()},
                {"order", order},
                {"rationale", rationale},
                {"cycle_detected", ranking.cycle_detected},
                {"mode", cfg.literal_def4 ? "literal" : "normalized"}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << ranking.to_string() << "\n";
  for (std::size_t i = 0; i < ranking.rationale.size(); ++i) {
    out << fmt::format("  {} > {}: {}\n", ranking.order[i].display_name(),
                       ranking.order[i + 1].display_name(), to_string(ranking.rationale[i]));
  }
  if (ranking.cycle_detected) {
    out << "  pairwise rule is cyclic on this input; ordered by (NI, accuracy, name)\n";
  }
  return kExitOk;
}

int cmd_map(const RunConfig& cfg, std::ostream& out) {
  ClassSizes sizes{cfg.w1, cfg.w2};
  if (cfg.swap_classes && sizes.w1 < sizes.w2) std::swap(sizes.w1, sizes.w2);

  Dataset d;
  if (cfg.map_kind == "acc") {
    d = projection_map_dataset(MapKind::Accuracy, sizes, cfg.samples, cfg.scatter_cap);
  } else if (cfg.map_kind == "pre") {
    d = projection_map_dataset(MapKind::Precision, sizes, cfg.samples, cfg.scatter_cap);
  } else if (cfg.map_kind == "rec") {
    d = projection_map_dataset(MapKind::Recall, sizes, cfg.samples, cfg.scatter_cap);
  } else if (cfg.map_kind == "pr-region") {
    d = pr_region_dataset(sizes, cfg.samples, cfg.scatter_cap);
  } else if (cfg.map_kind == "pr-surface") {
    d = pr_surface_dataset(sizes, cfg.nx, cfg.ny,
                           cfg.mode == "ideal" ? SurfaceMode::Ideal : SurfaceMode::Actual);
  } else {
    d = fr_surface_dataset(sizes, cfg.nx, cfg.ny);
  }
  if (cfg.swap_classes) d.manifest["swap_classes"] = true;
  write_dataset(d, cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  out << (dir / (d.name + ".csv")).string() << "\n"
      << (dir / (d.name + ".manifest.json")).string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalized mutual information for binary classifiers", "nieval"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* report = app.add_subcommand("report", "Indexes, case and both NI paths per model");
  add_input_options(report, cfg);
  report->add_option("--tolerance", cfg.tolerance, "Closed-form vs direct agreement tolerance");

  auto* ni = app.add_subcommand("ni", "NI per model");
  add_input_options(ni, cfg);

  auto* cas = app.add_subcommand("case", "Zero-pattern case per model");
  add_input_options(cas, cfg);

  auto* rnk = app.add_subcommand("rank", "Rank models by NI and accuracy");
  add_input_options(rnk, cfg);
  rnk->add_flag("--literal-def4", cfg.literal_def4,
                "Apply the pairwise rule without complementing low-accuracy models");

  auto* map = app.add_subcommand("map", "Export relation-map datasets");
  map->add_option("kind", cfg.map_kind, "acc, pre, rec, pr-region, pr-surface or fr-surface")
      ->required()
      ->check(CLI::IsMember({"acc", "pre", "rec", "pr-region", "pr-surface", "fr-surface"}));
  map->add_option("--w1", cfg.w1, "Positive class size")->check(CLI::PositiveNumber);
  map->add_option("--w2", cfg.w2, "Negative class size")->check(CLI::PositiveNumber);
  map->add_option("--samples", cfg.samples, "Samples per curve")->check(CLI::Range(2, 1000000));
  map->add_option("--nx", cfg.nx, "Surface grid columns")->check(CLI::Range(2, 100000));
  map->add_option("--ny", cfg.ny, "Surface grid rows")->check(CLI::Range(2, 100000));
  map->add_option("--mode", cfg.mode, "pr-surface mode: ideal or actual")
      ->check(CLI::IsMember({"ideal", "actual"}));
  map->add_flag("--swap-classes", cfg.swap_classes, "Swap w1 and w2 when w1 < w2");
  map->add_option("--scatter-cap", cfg.scatter_cap, "Largest w1 + w2 for integer enumeration");
  map->add_option("--out-dir", cfg.out_dir, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (report->parsed()) return cmd_report(cfg, out);
    if (ni->parsed()) return cmd_ni(cfg, out);
    if (cas->parsed()) return cmd_case(cfg, out);
    if (rnk->parsed()) return cmd_rank(cfg, out);
    return cmd_map(cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace nieval
