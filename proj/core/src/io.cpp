#include "fredholm/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fredholm/errors.hpp"

namespace fredholm {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::trunc) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::out | mode);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

bool is_comment(std::string_view line) { return line.empty() || line.front() == '#'; }

bool is_numeric(std::string_view field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_optional(std::string_view field) {
  return trim(field).empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(field);
}

std::string format_optional(double v) { return std::isnan(v) ? std::string() : format_double(v); }

template <class T>
T parse_integer(std::string_view text) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

// Reads data lines (skipping comments and a non-numeric header) and checks the column count.
template <class Row>
void for_each_row(const std::filesystem::path& path, std::size_t columns, Row&& row) {
  std::ifstream in = open_in(path);
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment(trim(line))) continue;
    const auto fields = split_csv_line(line);
    if (first) {
      first = false;
      if (!fields.empty() && !is_numeric(trim(fields.back()))) continue;
    }
    if (fields.size() != columns) {
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                    " columns, got " + std::to_string(fields.size()));
    }
    row(fields);
  }
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw IoError("cannot format number");
  return {buf.data(), ptr};
}

double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw IoError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_grid_density(const std::filesystem::path& path, const GridDensity& density, std::string_view producer) {
  std::ofstream out = open_out(path);
  out << "# producer: " << producer << "\n";
  out << "x,value\n";
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    out << format_double(density.grid.at(i)) << ',' << format_double(density.values[i]) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

GridDensity read_grid_density(const std::filesystem::path& path) {
  std::vector<double> xs, values;
  for_each_row(path, 2, [&](const std::vector<std::string>& f) {
    xs.push_back(parse_double(f[0]));
    values.push_back(parse_double(f[1]));
  });
  if (xs.size() < 2) throw IoError(path.string() + ": a grid density needs at least 2 rows");
  GridDensity out{{xs.front(), xs.back(), xs.size()}, std::move(values), 0};
  // Positions are derived from the endpoints; reject files whose x column is not that uniform grid.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(out.grid.at(i) - xs[i]) > 1e-9 * (1.0 + std::abs(xs[i]))) {
      throw IoError(path.string() + ": x column is not a uniform grid");
    }
  }
  return out;
}

CloudWriter::CloudWriter(const std::filesystem::path& path, int dim) : out_(open_out(path)), dim_(dim) {
  out_ << "step,particle_id";
  for (int c = 1; c <= dim; ++c) out_ << ",x_" << c;
  out_ << '\n';
}

void CloudWriter::write(const ParticleCloud& cloud) {
  if (cloud.dim() != dim_) throw PreconditionError("cloud dimension does not match the writer");
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out_ << cloud.step() << ',' << i;
    for (double v : cloud.point(i)) out_ << ',' << format_double(v);
    out_ << '\n';
  }
  out_.flush();
  if (!out_) throw IoError("failed writing particle cloud");
}

void write_clouds(const std::filesystem::path& path, const std::vector<ParticleCloud>& snapshots) {
  if (snapshots.empty()) throw PreconditionError("no snapshots to write");
  CloudWriter writer(path, snapshots.front().dim());
  for (const auto& cloud : snapshots) writer.write(cloud);
}

std::vector<ParticleCloud> read_clouds(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string header;
  if (!std::getline(in, header)) throw IoError(path.string() + ": empty file");
  const auto names = split_csv_line(header);
  if (names.size() < 3 || names[0] != "step" || names[1] != "particle_id") {
    throw IoError(path.string() + ": not a particle cloud file");
  }
  const int dim = static_cast<int>(names.size() - 2);

  std::vector<ParticleCloud> out;
  std::vector<double> current;
  std::size_t current_step = 0;
  bool open = false;
  auto flush = [&] {
    if (open) out.emplace_back(std::move(current), dim, current_step);
    current.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    if (is_comment(trim(line))) continue;
    const auto f = split_csv_line(line);
    if (f.size() != names.size()) throw IoError(path.string() + ": ragged row");
    const auto step = parse_integer<std::size_t>(f[0]);
    const auto id = parse_integer<std::size_t>(f[1]);
    if (!open || step != current_step || id == 0) {
      flush();
      current_step = step;
      open = true;
    }
    if (id != current.size() / static_cast<std::size_t>(dim)) throw IoError(path.string() + ": particle ids out of order");
    for (std::size_t c = 2; c < f.size(); ++c) current.push_back(parse_double(f[c]));
  }
  flush();
  return out;
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
  std::ofstream out = open_out(path);
  out << "step,functional_estimate,w1_to_reference\n";
  for (const auto& row : trace) {
    out << row.step << ',' << format_optional(row.functional) << ',' << format_optional(row.w1) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<TraceRow> read_trace(const std::filesystem::path& path) {
  std::vector<TraceRow> out;
  std::ifstream in = open_in(path);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (is_comment(trim(line))) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw IoError(path.string() + ": expected 3 trace columns");
    out.push_back({parse_integer<std::size_t>(f[0]), parse_optional(f[1]), parse_optional(f[2])});
  }
  return out;
}

void append_summary(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out = open_out(path, std::ios::app);
  if (fresh) out << "experiment,seed,N,gamma,alpha,metric_name,value\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.seed << ',' << r.particles << ',' << format_double(r.gamma) << ','
        << format_double(r.alpha) << ',' << r.metric << ',' << format_optional(r.value) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path) {
  std::vector<SummaryRow> out;
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "experiment,seed,N,gamma,alpha,metric_name,value") {
    throw IoError(path.string() + ": not a summary file");
  }
  while (std::getline(in, line)) {
    if (is_comment(trim(line))) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw IoError(path.string() + ": expected 7 summary columns");
    out.push_back({f[0], parse_integer<std::uint64_t>(f[1]), parse_integer<std::size_t>(f[2]), parse_double(f[3]),
                   parse_double(f[4]), f[5], parse_optional(f[6])});
  }
  return out;
}

TrainingData read_training_data(const std::filesystem::path& path) {
  TrainingData data;
  for_each_row(path, 2, [&](const std::vector<std::string>& f) {
    data.x.push_back(parse_double(f[0]));
    data.z.push_back(parse_double(f[1]));
  });
  return data;
}

void write_training_data(const std::filesystem::path& path, const TrainingData& data) {
  std::ofstream out = open_out(path);
  out << "x,z\n";
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    out << format_double(data.x[i]) << ',' << format_double(data.z[i]) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> read_samples(const std::filesystem::path& path, int dim) {
  if (dim < 1) throw PreconditionError("dimension must be >= 1");
  std::vector<double> out;
  for_each_row(path, static_cast<std::size_t>(dim), [&](const std::vector<std::string>& f) {
    for (const auto& v : f) out.push_back(parse_double(v));
  });
  return out;
}

}  // namespace fredholm
