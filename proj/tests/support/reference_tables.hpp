#pragma once

// Reference two-decimal bounds for the chain rows (f) to (k): the four
// SHARPENING conclusions, then CHAINING and FUSION, then COMBINATION.

#include <array>
#include <string>

namespace taxoprob::testing {

struct ReferenceBound {
    const char* conclusion; // in roles A, B, C; "AC" is the product of A and C
    const char* premise;
    double lo;
    double hi;
};

struct ReferenceRow {
    char row;
    std::array<ReferenceBound, 12> bounds;
};

inline const std::array<ReferenceRow, 6>& reference_rows()
{
    static const std::array<ReferenceRow, 6> rows{{
        {'f',
         {{{"B", "A", 0.90, 0.95}, {"A", "B", 0.10, 0.15}, {"C", "B", 0.20, 0.25}, {"B", "C", 0.75, 0.80},
           {"C", "A", 0.00, 0.10}, {"A", "C", 0.00, 0.07}, {"B", "AC", 0.00, 0.00}, {"AC", "B", 0.00, 0.00},
           {"C", "AB", 0.00, 0.00}, {"AB", "C", 0.00, 0.00}, {"A", "BC", 0.00, 0.00}, {"BC", "A", 0.00, 0.00}}}},
        {'g',
         {{{"B", "A", 0.60, 0.65}, {"A", "B", 0.30, 0.30}, {"C", "B", 0.30, 0.30}, {"B", "C", 0.75, 0.80},
           {"C", "A", 0.75, 0.87}, {"A", "C", 1.00, 1.00}, {"B", "AC", 0.75, 0.80}, {"AC", "B", 0.30, 0.30},
           {"C", "AB", 1.00, 1.00}, {"AB", "C", 0.75, 0.80}, {"A", "BC", 1.00, 1.00}, {"BC", "A", 0.60, 0.65}}}},
        {'h',
         {{{"B", "A", 0.85, 0.88}, {"A", "B", 0.30, 0.35}, {"C", "B", 0.20, 0.25}, {"B", "C", 0.76, 0.80},
           {"C", "A", 0.61, 0.75}, {"A", "C", 1.00, 1.00}, {"B", "AC", 0.76, 0.80}, {"AC", "B", 0.20, 0.25},
           {"C", "AB", 0.57, 0.71}, {"AB", "C", 0.76, 0.80}, {"A", "BC", 1.00, 1.00}, {"BC", "A", 0.49, 0.60}}}},
        {'i',
         {{{"B", "A", 0.90, 0.95}, {"A", "B", 0.30, 0.35}, {"C", "B", 0.20, 0.25}, {"B", "C", 0.75, 0.80},
           {"C", "A", 0.51, 0.85}, {"A", "C", 0.75, 0.96}, {"B", "AC", 0.84, 1.00}, {"AC", "B", 0.20, 0.25},
           {"C", "AB", 0.57, 0.83}, {"AB", "C", 0.75, 0.80}, {"A", "BC", 1.00, 1.00}, {"BC", "A", 0.51, 0.79}}}},
        {'j',
         {{{"B", "A", 0.85, 0.88}, {"A", "B", 0.30, 0.35}, {"C", "B", 0.20, 0.25}, {"B", "C", 0.76, 0.80},
           {"C", "A", 0.61, 0.75}, {"A", "C", 1.00, 1.00}, {"B", "AC", 0.76, 0.80}, {"AC", "B", 0.20, 0.25},
           {"C", "AB", 0.57, 0.71}, {"AB", "C", 0.76, 0.80}, {"A", "BC", 1.00, 1.00}, {"BC", "A", 0.49, 0.60}}}},
        {'k',
         {{{"B", "A", 0.85, 0.90}, {"A", "B", 0.30, 0.35}, {"C", "B", 0.20, 0.25}, {"B", "C", 0.75, 0.80},
           {"C", "A", 0.00, 0.86}, {"A", "C", 0.00, 1.00}, {"B", "AC", 0.00, 1.00}, {"AC", "B", 0.00, 0.25},
           {"C", "AB", 0.00, 0.83}, {"AB", "C", 0.00, 0.80}, {"A", "BC", 0.00, 1.00}, {"BC", "A", 0.00, 0.75}}}},
    }};
    return rows;
}

} // namespace taxoprob::testing
