#pragma once

namespace glucospec {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kModelSchemaVersion = 1;

}  // namespace glucospec
