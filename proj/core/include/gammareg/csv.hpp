#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gammareg/gridfn.hpp"

namespace gammareg {

// Shortest-safe round-trip text for a double (17 significant digits).
std::string format_double(double v);

// Numeric CSV: a header line and rows of doubles, all of equal width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(std::size_t j) const;
};

// Throws ParseError on ragged rows, non-numeric cells, or a header that does
// not start with `expected` (when given).
CsvTable read_csv(std::istream& in,
                  const std::vector<std::string>& expected = {});
void write_csv(std::ostream& out, const CsvTable& table);

// `x,value`, ascending x. Extra trailing columns are ignored on read.
SampledFn1D read_sampled_1d(std::istream& in);
void write_sampled_1d(std::ostream& out, const SampledFn1D& f);

// `x,y,value`, masked nodes only, row-major (y outer, x inner). The grid is
// the tensor product of the distinct x and y values; absent pairs are
// off-mask.
SampledFn2D read_sampled_2d(std::istream& in);
void write_sampled_2d(std::ostream& out, const SampledFn2D& f);

}  // namespace gammareg
