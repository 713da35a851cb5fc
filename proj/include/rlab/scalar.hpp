#pragma once

// scalar_value(x): the plain double underneath a generic scalar (identity
// for double, value part for jets, recursively for nested jets).  Used for
// domain checks and diagnostics in code templated on the scalar type.

namespace rlab {

template <class T>
double scalar_value(const T&);

inline double scalar_value(double x) { return x; }

}  // namespace rlab
