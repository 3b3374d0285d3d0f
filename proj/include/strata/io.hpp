#ifndef STRATA_IO_HPP
#define STRATA_IO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "strata/core.hpp"
#include "strata/embedding_fit.hpp"
#include "strata/metrics.hpp"

namespace strata::io {

using nlohmann::json;

/// Malformed input. `row` and `field` are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t field = 0);
    std::size_t row() const { return row_; }
    std::size_t field() const { return field_; }

private:
    std::size_t row_;
    std::size_t field_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CloudFormat { csv, json };

/// json for a ".json" extension, csv otherwise.
CloudFormat format_for(const std::filesystem::path& path);

// Point cloud CSV: one point per line, comma separated, no header. Epsilon is
// supplied out-of-band.
PointCloud parse_cloud_csv(std::string_view text, double epsilon);
std::string format_cloud_csv(const PointCloud& cloud);

// Point cloud JSON: {"epsilon": e, "points": [[...], ...]}.
json cloud_to_json(const PointCloud& cloud);
PointCloud cloud_from_json(const json& j);

// EmbeddedGraph JSON: {"vertices": [[...], ...], "edges": [[i, j], ...]}.
json graph_to_json(const EmbeddedGraph& g);
EmbeddedGraph graph_from_json(const json& j);

// {"labels": [...], "vertex_clusters": [[...]], "edge_clusters": [[...]],
//  "incidence": [[j1, j2], ...]}. Writing also adds the implied abstract graph
// under "graph"; reading ignores it.
json stratification_to_json(const Stratification& s);
Stratification stratification_from_json(const json& j);

json fit_result_to_json(const FitResult& r);
FitResult fit_result_from_json(const json& j);

json report_to_json(const EvaluationReport& r);

/// Reads a cloud. For CSV `epsilon` is required; for JSON it overrides the
/// stored value when given.
PointCloud read_cloud(const std::filesystem::path& path, std::optional<double> epsilon = std::nullopt);
PointCloud read_cloud(const std::filesystem::path& path, CloudFormat format, std::optional<double> epsilon);
void write_cloud(const std::filesystem::path& path, const PointCloud& cloud);
void write_cloud(const std::filesystem::path& path, const PointCloud& cloud, CloudFormat format);

EmbeddedGraph read_embedded_graph(const std::filesystem::path& path);
void write_embedded_graph(const std::filesystem::path& path, const EmbeddedGraph& g);

Stratification read_stratification(const std::filesystem::path& path);
void write_stratification(const std::filesystem::path& path, const Stratification& s);

void write_report(const std::filesystem::path& path, const EvaluationReport& r);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace strata::io

#endif
