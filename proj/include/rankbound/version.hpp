#pragma once

namespace rankbound {

inline constexpr const char* kToolVersion = "0.1.0";

// Flattening convention used for all tensor coordinates: entry (i,j,k) of an
// a x b x c tensor lives at index ((i*b)+j)*c + k.
inline constexpr const char* kIndexOrder = "row-major-ijk";

}  // namespace rankbound
