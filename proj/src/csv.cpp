#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "wmrmr/dataset.hpp"

namespace wmrmr {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool parse_double(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Dataset parse_csv(const std::string& text, const CsvOptions& options) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  // Skip a UTF-8 byte order mark and leading blank lines.
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    for (auto cell : split_commas(view)) header.emplace_back(cell);
    break;
  }
  if (header.empty()) throw DataError("CSV has no header row");

  int label_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == options.label_column) label_col = static_cast<int>(c);
  }
  if (label_col < 0) throw DataError(fmt::format("label column '{}' not found in header", options.label_column));

  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (static_cast<int>(c) != label_col) names.push_back(header[c]);
  }

  std::vector<double> flat;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != header.size()) {
      throw DataError(fmt::format("line {}: expected {} cells, found {}", line_no, header.size(), cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (static_cast<int>(c) == label_col) {
        if (cells[c] == options.negative_label) {
          labels.push_back(kStable);
        } else if (cells[c] == options.positive_label) {
          labels.push_back(kUnstable);
        } else {
          throw DataError(fmt::format("line {}, column '{}': label '{}' is neither '{}' nor '{}'", line_no,
                                      header[c], cells[c], options.negative_label, options.positive_label));
        }
        continue;
      }
      double v = 0.0;
      if (!parse_double(cells[c], v) || !std::isfinite(v)) {
        throw DataError(fmt::format("line {}, column '{}': non-numeric cell '{}'", line_no, header[c], cells[c]));
      }
      flat.push_back(v);
    }
  }

  const auto rows = static_cast<Eigen::Index>(labels.size());
  const auto cols = static_cast<Eigen::Index>(names.size());
  Matrix values = Eigen::Map<Matrix>(flat.data(), rows, cols);
  return Dataset(std::move(values), std::move(labels), std::move(names));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_csv(buffer.str(), options);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_csv(const Dataset& d, const std::filesystem::path& path, const std::string& label_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  for (const auto& name : d.feature_names()) out << name << ',';
  out << label_column << '\n';
  fmt::memory_buffer buf;
  for (std::size_t i = 0; i < d.n_samples(); ++i) {
    buf.clear();
    for (std::size_t j = 0; j < d.n_features(); ++j) {
      fmt::format_to(std::back_inserter(buf), "{},", d.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    fmt::format_to(std::back_inserter(buf), "{}\n", d.labels()[i]);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) throw DataError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace wmrmr
