#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "nieval/confusion.hpp"
#include "nieval/evaluation.hpp"
#include "nieval/relation_maps.hpp"

namespace nieval {

// --- ingestion --------------------------------------------------------------

/// Two columns `target,predicted` per line. Blank lines are skipped;
/// surrounding whitespace and double quotes are stripped from each field.
std::vector<LabelPair> read_label_pairs_csv(std::istream& in, bool has_header);

/// `{"tp":..,"fp":..,"tn":..,"fn":..}` with an optional "name", an array of
/// such objects, or `{"models": [...]}`. Unnamed models become M_1, M_2, ...
/// (a lone object becomes "model").
std::vector<ModelRecord> read_models_json(std::istream& in);

// --- dataset export -----------------------------------------------------------

/// One row of a long-form dataset file: x,y,value,series.
struct DatasetRow {
  double x = 0.0;
  double y = 0.0;
  /// Empty for curve and point rows; a number, "undefined" or "infeasible"
  /// for surface cells.
  std::string value;
  std::string series;
};

struct Dataset {
  std::string name;
  std::vector<DatasetRow> rows;
  nlohmann::json manifest;
};

/// Long-form CSV with a header line; numbers use 17 significant digits.
std::string dataset_csv(const Dataset& d);
/// Pretty-printed manifest with sorted keys and a trailing newline.
std::string dataset_manifest(const Dataset& d);
/// Writes <dir>/<name>.csv and <dir>/<name>.manifest.json.
void write_dataset(const Dataset& d, const std::filesystem::path& dir);

/// Stable 64-bit FNV-1a hash, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

inline constexpr std::size_t kDefaultCurveSamples = 201;
inline constexpr std::size_t kDefaultGrid = 201;
inline constexpr std::uint32_t kDefaultScatterCap = 200;

/// Envelope curves and special points of one projection map. When both class
/// sizes are whole and within `scatter_cap`, the exhaustive integer scatter is
/// appended under series "integer:scatter".
Dataset projection_map_dataset(MapKind map, ClassSizes sizes, std::size_t n_samples,
                               std::uint32_t scatter_cap = kDefaultScatterCap);
Dataset pr_region_dataset(ClassSizes sizes, std::size_t n_samples,
                          std::uint32_t scatter_cap = kDefaultScatterCap);
Dataset pr_surface_dataset(ClassSizes sizes, std::size_t nx, std::size_t ny, SurfaceMode mode);
Dataset fr_surface_dataset(ClassSizes sizes, std::size_t nx, std::size_t ny);

}  // namespace nieval
