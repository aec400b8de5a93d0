#pragma once

#include <string>

namespace glucospec::logging {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Threshold from SPECTRO_LOG (error|warn|info|debug), default warn.
Level threshold();

void log(Level level, const std::string& message);

inline void error(const std::string& m) { log(Level::Error, m); }
inline void warn(const std::string& m) { log(Level::Warn, m); }
inline void info(const std::string& m) { log(Level::Info, m); }
inline void debug(const std::string& m) { log(Level::Debug, m); }

}  // namespace glucospec::logging
