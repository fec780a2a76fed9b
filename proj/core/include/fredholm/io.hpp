#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "fredholm/cloud.hpp"
#include "fredholm/gp_model.hpp"
#include "fredholm/grid.hpp"
#include "fredholm/sde.hpp"

namespace fredholm {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);
/// Strict parse of a full field; throws IoError on trailing garbage.
double parse_double(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

/// Two columns (x, value) preceded by a `# producer: ...` comment line.
void write_grid_density(const std::filesystem::path& path, const GridDensity& density, std::string_view producer);
GridDensity read_grid_density(const std::filesystem::path& path);

/// Columns step, particle_id, x_1..x_d; one block of rows per snapshot.
class CloudWriter {
 public:
  CloudWriter(const std::filesystem::path& path, int dim);

  void write(const ParticleCloud& cloud);

 private:
  std::ofstream out_;
  int dim_;
};

void write_clouds(const std::filesystem::path& path, const std::vector<ParticleCloud>& snapshots);
std::vector<ParticleCloud> read_clouds(const std::filesystem::path& path);

/// Columns step, functional_estimate, w1_to_reference (empty for NaN).
void write_trace(const std::filesystem::path& path, const std::vector<TraceRow>& trace);
std::vector<TraceRow> read_trace(const std::filesystem::path& path);

struct SummaryRow {
  std::string experiment;
  std::uint64_t seed = 0;
  std::size_t particles = 0;
  double gamma = 0.0;
  double alpha = 0.0;
  std::string metric;
  double value = 0.0;

  bool operator==(const SummaryRow&) const = default;
};

/// Appends rows, writing the header first when the file is new or empty.
void append_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary(const std::filesystem::path& path);

/// Two columns x, z with an optional header line.
TrainingData read_training_data(const std::filesystem::path& path);
void write_training_data(const std::filesystem::path& path, const TrainingData& data);

/// Numeric rows with `dim` columns (an optional non-numeric header is skipped), flattened row-major.
std::vector<double> read_samples(const std::filesystem::path& path, int dim);

}  // namespace fredholm
