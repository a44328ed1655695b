#pragma once
// State vectors are plain std::vector<double>; the helpers here are the
// serial reductions and elementwise conveniences used throughout.

#include <cstddef>
#include <vector>

namespace avf {

using Vec = std::vector<double>;

double dot(const Vec& x, const Vec& y);
double norm_inf(const Vec& x);
double norm2(const Vec& x);

Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec operator*(double a, const Vec& x);

bool all_finite(const Vec& x);

}  // namespace avf
