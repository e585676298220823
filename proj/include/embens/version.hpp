#ifndef EMBENS_VERSION_HPP
#define EMBENS_VERSION_HPP

namespace embens {

inline constexpr const char* kVersion = "0.1.0";

} // namespace embens

#endif
