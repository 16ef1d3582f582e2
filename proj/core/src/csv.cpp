#include "gammareg/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gammareg/errors.hpp"

namespace gammareg {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> CsvTable::column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(j));
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << "line " << line_no << ": not a finite number: '" << cell << "'";
    throw ParseError(msg.str());
  }
  return v;
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::vector<std::string>& expected) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      if (table.header.size() < expected.size() ||
          !std::equal(expected.begin(), expected.end(), table.header.begin())) {
        std::string want;
        for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
        throw ParseError("CSV header must start with '" + want + "'");
      }
      continue;
    }
    if (cells.size() != table.header.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << table.header.size()
          << " cells, got " << cells.size();
      throw ParseError(msg.str());
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ParseError("CSV input is empty");
  return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    out << (j ? "," : "") << table.header[j];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << format_double(row[j]);
    }
    out << '\n';
  }
}

SampledFn1D read_sampled_1d(std::istream& in) {
  const CsvTable table = read_csv(in, {"x", "value"});
  if (table.rows.size() < 2) throw ParseError("1D CSV needs at least 2 rows");
  std::vector<double> xs, vs;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double x = table.rows[i][0];
    if (!xs.empty() && !(x > xs.back())) {
      throw ParseError("1D CSV abscissae must be strictly ascending (row " +
                       std::to_string(i + 1) + ")");
    }
    xs.push_back(x);
    vs.push_back(table.rows[i][1]);
  }
  return SampledFn1D(Grid1D(std::move(xs)), std::move(vs));
}

void write_sampled_1d(std::ostream& out, const SampledFn1D& f) {
  out << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.x(i)) << ',' << format_double(f[i]) << '\n';
  }
}

SampledFn2D read_sampled_2d(std::istream& in) {
  const CsvTable table = read_csv(in, {"x", "y", "value"});
  if (table.rows.empty()) throw ParseError("2D CSV has no rows");
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& a = table.rows[i - 1];
    const auto& b = table.rows[i];
    const bool ordered = b[1] > a[1] || (b[1] == a[1] && b[0] > a[0]);
    if (!ordered) {
      throw ParseError("2D CSV rows must be strictly row-major ascending (row " +
                       std::to_string(i + 1) + ")");
    }
  }
  std::vector<double> xs = table.column(0);
  std::vector<double> ys = table.column(1);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (xs.size() < 2 || ys.size() < 2) {
    throw GeometryError("2D CSV nodes are collinear");
  }
  const Grid1D gx(xs), gy(ys);
  std::vector<bool> mask(xs.size() * ys.size(), false);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    const auto ix = *gx.find(r[0]);
    const auto iy = *gy.find(r[1]);
    mask[iy * xs.size() + ix] = true;
    values.push_back(r[2]);
  }
  // Row-major input order matches the masked-node numbering of Grid2D.
  return SampledFn2D(Grid2D(gx, gy, std::move(mask)), std::move(values));
}

void write_sampled_2d(std::ostream& out, const SampledFn2D& f) {
  out << "x,y,value\n";
  const Grid2D& g = f.grid();
  for (std::size_t k = 0; k < f.size(); ++k) {
    out << format_double(g.x_of(k)) << ',' << format_double(g.y_of(k)) << ','
        << format_double(f[k]) << '\n';
  }
}

}  // namespace gammareg
