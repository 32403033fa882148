#pragma once

namespace kontsevich {

/// Default cap on chord degree for diagram enumeration.
inline constexpr int kDefaultDiagramDegreeCap = 6;
/// Default cap on the truncation degree of coefficient tables.
inline constexpr int kDefaultTableDegreeCap = 4;

/// Applies the `KONTSEVICH_CAP_DEGREE` environment override, if set, to `fallback`.
int degree_cap(int fallback);

}  // namespace kontsevich
