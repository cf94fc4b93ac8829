#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ivams/error.hpp"
#include "ivams/sample_set.hpp"

namespace ivams {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const SampleSet& set) {
  std::string out;
  bool first = true;
  for (const auto& n : set.variable_names()) {
    if (!first) out += ',';
    out += n;
    first = false;
  }
  for (const auto& n : set.response_names()) {
    out += ',';
    out += n;
  }
  out += '\n';
  for (std::size_t r = 0; r < set.rows(); ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    for (std::size_t c = 0; c < set.dim(); ++c) {
      if (c) out += ',';
      out += format_double(set.inputs()(ri, static_cast<Eigen::Index>(c)));
    }
    for (const auto& n : set.response_names()) {
      out += ',';
      out += format_double(set.response(n)[ri]);
    }
    out += '\n';
  }
  return out;
}

void save_csv(const SampleSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << to_csv(set);
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ',';
    s += names[i];
  }
  return s;
}

}  // namespace

SampleSet parse_csv(std::string_view text, std::span<const std::string> variable_names,
                    std::optional<std::vector<std::string>> response_names) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!trim(line).empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::parse_error, "CSV is empty; expected a header row");

  const auto header = split(lines.front());
  const std::size_t nvar = variable_names.size();
  std::vector<std::string> expected(variable_names.begin(), variable_names.end());
  if (response_names) expected.insert(expected.end(), response_names->begin(), response_names->end());

  bool ok = header.size() >= nvar;
  for (std::size_t i = 0; ok && i < nvar; ++i) ok = header[i] == variable_names[i];
  if (ok && response_names) {
    ok = header.size() == expected.size();
    for (std::size_t i = nvar; ok && i < header.size(); ++i) ok = header[i] == expected[i];
  }
  if (!ok) {
    std::string got;
    for (std::size_t i = 0; i < header.size(); ++i) got += (i ? "," : "") + std::string(header[i]);
    throw Error(ErrorCode::parse_error, "malformed CSV header '" + got + "'; expected '" + join(expected) +
                                            (response_names ? "'" : ",<responses...>'"));
  }

  std::vector<std::string> responses;
  for (std::size_t i = nvar; i < header.size(); ++i) responses.emplace_back(header[i]);

  const std::size_t n = lines.size() - 1;
  const std::size_t width = header.size();
  SampleMatrix inputs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nvar));
  std::vector<Eigen::VectorXd> resp(responses.size(), Eigen::VectorXd(static_cast<Eigen::Index>(n)));
  for (std::size_t r = 0; r < n; ++r) {
    const auto cells = split(lines[r + 1]);
    const std::size_t row_no = r + 2;  // 1-based, header is line 1
    if (cells.size() != width) {
      throw Error(ErrorCode::parse_error, "CSV row " + std::to_string(row_no) + " has " + std::to_string(cells.size()) +
                                              " cells, expected " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      const auto cell = cells[c];
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::parse_error, "CSV row " + std::to_string(row_no) + ", column " + std::to_string(c + 1) +
                                                " ('" + std::string(header[c]) + "'): '" + std::string(cell) +
                                                "' is not a finite number");
      }
      if (c < nvar) {
        inputs(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
      } else {
        resp[c - nvar][static_cast<Eigen::Index>(r)] = v;
      }
    }
  }
  SampleSet set(std::vector<std::string>(variable_names.begin(), variable_names.end()), std::move(inputs),
                Provenance::imported);
  for (std::size_t k = 0; k < responses.size(); ++k) set.add_response(responses[k], std::move(resp[k]));
  return set;
}

SampleSet load_csv(const std::filesystem::path& path, std::span<const std::string> variable_names,
                   std::optional<std::vector<std::string>> response_names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), variable_names, std::move(response_names));
}

}  // namespace ivams
