#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bqmaxwell/field_grid.hpp"

namespace bqmaxwell {

/// BQMX dump, all little-endian:
///   "BQMX" | u32 version (=1) | u32 n | f64 L | u32 nt | f64 dt | u8 domain
///   | nt * n^3 * 8 f64
/// where nt is the number of stored slices and each node carries
/// (c0.re, c0.im, ..., c3.re, c3.im), slice-major then row-major.
void write_bqmx(std::ostream& out, const SpaceTimeField& w);
SpaceTimeField read_bqmx(std::istream& in);

void write_bqmx_file(const std::string& path, const SpaceTimeField& w);
SpaceTimeField read_bqmx_file(const std::string& path);

/// Axis-aligned plane (axis in 0..2, node index along it) at the requested
/// slices, columns x1,x2,x3,t,c0re,c0im,...,c3im.
void write_csv_slice(std::ostream& out, const SpaceTimeField& w, int axis,
                     int index, const std::vector<int>& time_slices);

}  // namespace bqmaxwell
