#include "glucospec/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace glucospec::logging {

Level threshold() {
    static const Level level = [] {
        const char* env = std::getenv("SPECTRO_LOG");
        if (!env)
            return Level::Warn;
        if (!std::strcmp(env, "error")) return Level::Error;
        if (!std::strcmp(env, "warn")) return Level::Warn;
        if (!std::strcmp(env, "info")) return Level::Info;
        if (!std::strcmp(env, "debug")) return Level::Debug;
        return Level::Warn;
    }();
    return level;
}

void log(Level level, const std::string& message) {
    if (level > threshold())
        return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::fprintf(stderr, "[glucospec %s] %s\n", names[static_cast<int>(level)],
                 message.c_str());
}

}  // namespace glucospec::logging
