#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "maxeig/iterations.hpp"

namespace maxeig {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline constexpr std::size_t kDefaultTableMaxN = 1000;

/// Model sizes used by the single-birth and branching tables.
inline constexpr std::size_t kTableSizes[] = {8, 16, 32, 50, 100, 500, 1000, 5000, 10000};
inline constexpr double kTableB4[] = {0.01, 1.0, 100.0, 1e4};

/// Settings of the example-1 runs. The eigenvalues there are as small as 3e-4,
/// so an absolute 1e-6 on the shift difference would stop before z(2).
IterationConfig example1_table_config();

/// Regenerates one of the tables (ids 1, 2, 4, 6, 7, 8, 9, 10). Rows run
/// concurrently; their order is fixed. Throws InvalidArgument for other ids.
Table make_table(int id, std::size_t max_n = kDefaultTableMaxN);

std::string format_table_csv(const Table& t);

/// "%.6g"
std::string display6(double x);
/// re and im at 6 significant digits; an imaginary part below the display
/// precision of |y| is omitted.
std::string display6(Complex y);

/// Formats the sequence and drops trailing entries that display the same as
/// the one before them.
std::vector<std::string> display_sequence(const std::vector<double>& zs);
std::vector<std::string> display_sequence(const std::vector<Complex>& ys);

}  // namespace maxeig
