#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hints {

using Label = int;
inline constexpr Label kNoLabel = -1;

// Data cost sentinel: a label with +inf data cost is unassignable at that
// pixel. It never enters oracle enumeration and becomes an infinite-capacity
// chain edge in move graphs.
inline constexpr double kForbiddenCost = std::numeric_limits<double>::infinity();

enum class Neighborhood { N4, N8 };

struct Pixel {
    int x = 0;
    int y = 0;
    bool operator==(const Pixel&) const = default;
};

// One label id per pixel, row-major.
struct Labeling {
    int width = 0;
    int height = 0;
    std::vector<Label> at;

    Labeling() = default;
    Labeling(int w, int h, Label fill = 0) : width(w), height(h), at(size_t(w) * h, fill) {}

    Label operator()(int x, int y) const { return at[size_t(y) * width + x]; }
    Label& operator()(int x, int y) { return at[size_t(y) * width + x]; }
    size_t size() const { return at.size(); }
    bool operator==(const Labeling&) const = default;
};

// Error taxonomy; the CLI maps these onto distinct exit codes.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hints
