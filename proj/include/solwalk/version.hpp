#ifndef SOLWALK_VERSION_HPP_
#define SOLWALK_VERSION_HPP_

namespace solwalk {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace solwalk

#endif  // SOLWALK_VERSION_HPP_
