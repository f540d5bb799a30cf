#ifndef KOENIGS_VERSION_HPP
#define KOENIGS_VERSION_HPP

namespace koenigs {
inline constexpr const char* version = "0.1.0";
}

#endif  // KOENIGS_VERSION_HPP
