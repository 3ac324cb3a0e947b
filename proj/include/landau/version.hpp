#ifndef LANDAU_VERSION_HPP
#define LANDAU_VERSION_HPP

namespace landau {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
