#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bhc::tables {

/// One recomputed value next to its archived reference. Flagged when the
/// relative deviation exceeds kFlagTolerance (exact cells flag on any
/// difference).
struct Cell {
    std::string column;
    std::string computed_text;
    double computed = 0.0;
    std::optional<double> reference;
    std::string reference_text;
    bool flagged = false;
    double rel_diff = 0.0;
};

struct Row {
    std::string label;
    std::vector<Cell> cells;
    std::vector<std::string> notes;
};

struct Table {
    int id = 0;
    std::string title;
    std::string note;
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

inline constexpr double kFlagTolerance = 0.10;

/// Recomputes reference table `id` (1..5) and marks every cell whose value
/// disagrees with the archived one.
Table make_table(int id);

}  // namespace bhc::tables
