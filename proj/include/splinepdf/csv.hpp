#pragma once

#include "splinepdf/datagen.hpp"
#include "splinepdf/histogram.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace splinepdf::csv {

//! Shortest text that parses back to the same double.
std::string format_double(double v);

//! Values of a named column from a headered CSV file. Throws IoError, or
//! ParseError naming the row and column at fault.
std::vector<double> read_column(const std::filesystem::path& path, const std::string& column);

//! Two named columns read row by row.
std::pair<std::vector<double>, std::vector<double>> read_columns(const std::filesystem::path& path,
                                                                 const std::string& first,
                                                                 const std::string& second);

//! series_id,t,x
void write_corpus(const std::filesystem::path& path, const std::vector<TimeSeries>& corpus);
//! left,right,height
void write_histogram(const std::filesystem::path& path, const Histogram& hist);
//! u,pdf
void write_curve(const std::filesystem::path& path,
                 const std::vector<double>& u,
                 const std::vector<double>& pdf);

} // namespace splinepdf::csv
